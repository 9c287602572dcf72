"""Benchmark energies: binary deconvolution, repulsion segmentation, random."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .energy import BinaryEnergy, ParameterError

WINDOW_3X3 = [(dy, dx) for dy in (-1, 0, 1) for dx in (-1, 0, 1)]
# one offset per unordered neighbour pair; mirrored offsets give the other 8
NEIGHBORHOOD_16 = [(0, 1), (1, -1), (1, 0), (1, 1), (1, -2), (1, 2), (2, -1), (2, 1)]


@dataclass(frozen=True, eq=False)
class GrayImage:
    """Row-major grayscale image, intensities nominally in [0, 1]."""

    width: int
    height: int
    pixels: np.ndarray

    def __post_init__(self):
        px = np.array(self.pixels, dtype=np.float64).ravel()
        if self.width < 0 or self.height < 0 or px.size != self.width * self.height:
            raise ValueError(f"{self.width}x{self.height} image needs "
                             f"{self.width * self.height} pixels, got {px.size}")
        px.flags.writeable = False
        object.__setattr__(self, "pixels", px)

    @classmethod
    def from_array(cls, a) -> "GrayImage":
        a = np.asarray(a, dtype=np.float64)
        return cls(a.shape[1], a.shape[0], a.ravel())

    def as_array(self) -> np.ndarray:
        return self.pixels.reshape(self.height, self.width)


@dataclass(frozen=True)
class RepulsionParams:
    mu_fg: float = 0.4
    mu_bg: float = 0.6
    sigma_app: float = 0.2
    lam_reg: float = 100.0
    c: float = 0.06

    def __post_init__(self):
        if not self.sigma_app > 0:
            raise ParameterError("sigma_app must be positive")
        if not self.lam_reg >= 0:
            raise ParameterError("lam_reg must be nonnegative")


def _shifted_pairs(h, w, a, b):
    """Index pairs ``(p + a, p + b)`` for every ``p`` keeping both inside."""
    ys, xs = np.mgrid[0:h, 0:w]
    ya, xa, yb, xb = ys + a[0], xs + a[1], ys + b[0], xs + b[1]
    ok = ((ya >= 0) & (ya < h) & (xa >= 0) & (xa < w)
          & (yb >= 0) & (yb < h) & (xb >= 0) & (xb < w))
    return ok, (ya * w + xa)[ok], (yb * w + xb)[ok]


def box_sum(a: np.ndarray) -> np.ndarray:
    """3x3 window sum with zeros outside the image."""
    padded = np.pad(np.asarray(a, dtype=np.float64), 1)
    h, w = a.shape
    return sum(padded[1 + dy:1 + dy + h, 1 + dx:1 + dx + w] for dy, dx in WINDOW_3X3)


def build_deconvolution_energy(img: GrayImage) -> BinaryEnergy:
    """Expand ``sum_p (I_p - box_sum(S)_p / 9)**2`` into unary/pairwise form.

    Windows are clipped at the border but the divisor stays 9.  Using
    ``s**2 = s``, pixel ``p`` contributes ``I_p**2`` to the constant,
    ``1/81 - 2 I_p / 9`` to the unary of each window member and ``2/81`` to
    every unordered pair of window members.
    """
    if img.width * img.height == 0:
        raise ValueError("empty image")
    h, w = img.height, img.width
    I = img.as_array()
    unary = np.zeros(h * w)
    for a in WINDOW_3X3:
        ok, q, _ = _shifted_pairs(h, w, a, a)
        np.add.at(unary, q, 1.0 / 81.0 - 2.0 * I[ok] / 9.0)
    ps, qs = [], []
    for a, b in combinations(WINDOW_3X3, 2):
        _, q, r = _shifted_pairs(h, w, a, b)
        ps.append(q)
        qs.append(r)
    p = np.concatenate(ps)
    q = np.concatenate(qs)
    lo, hi = np.minimum(p, q), np.maximum(p, q)
    return BinaryEnergy._canonical(h * w, unary, lo, hi, np.full(p.size, 2.0 / 81.0),
                                   float(np.sum(I * I)))


def deconvolution_residual(img: GrayImage, s) -> float:
    """Direct sum of squared residuals between ``img`` and the blurred labeling."""
    S = np.asarray(s, dtype=np.float64).reshape(img.height, img.width)
    r = img.as_array() - box_sum(S) / 9.0
    return float(np.sum(r * r))


def make_shape(width: int, height: int, shape: str = "disk") -> np.ndarray:
    """Binary ground truth: ``disk``, ``rect``, ``empty`` or ``full``."""
    ys, xs = np.mgrid[0:height, 0:width]
    cy, cx = (height - 1) / 2, (width - 1) / 2
    if shape == "disk":
        r = min(width, height) / 3
        m = (ys - cy) ** 2 + (xs - cx) ** 2 <= r * r
    elif shape == "rect":
        m = (np.abs(ys - cy) <= height / 4) & (np.abs(xs - cx) <= width / 3)
    elif shape == "empty":
        m = np.zeros((height, width), dtype=bool)
    elif shape == "full":
        m = np.ones((height, width), dtype=bool)
    else:
        raise ValueError(f"unknown shape {shape!r}")
    return m.astype(np.uint8)


def synthesize_deconv_instance(width: int, height: int, shape: str = "disk",
                               sigma: float = 0.05, seed: int = 0
                               ) -> tuple[GrayImage, np.ndarray]:
    """Blur a binary shape with the clipped 3x3 box (divisor 9) and add noise.

    Returns the observed image and the flattened ground-truth labeling.
    """
    if width < 1 or height < 1:
        raise ValueError("image dimensions must be positive")
    if not sigma >= 0:
        raise ParameterError("sigma must be nonnegative")
    truth = make_shape(width, height, shape)
    observed = box_sum(truth) / 9.0
    if sigma > 0:
        observed = observed + np.random.default_rng(seed).normal(0.0, sigma, observed.shape)
    return GrayImage.from_array(observed), truth.ravel()


def potts_weights(img: GrayImage, params: RepulsionParams):
    """Pixel pairs of the 16-neighbourhood and their weights ``lam_reg * omega``.

    ``omega = (c - |I_p - I_q|) / dist(p, q)``: positive (attraction) for
    similar intensities, negative (repulsion) otherwise.
    """
    h, w = img.height, img.width
    I = img.pixels
    ps, qs, vs = [], [], []
    for off in NEIGHBORHOOD_16:
        _, p, q = _shifted_pairs(h, w, (0, 0), off)
        omega = (params.c - np.abs(I[p] - I[q])) / np.hypot(*off)
        ps.append(p)
        qs.append(q)
        vs.append(params.lam_reg * omega)
    return np.concatenate(ps), np.concatenate(qs), np.concatenate(vs)


def build_repulsion_energy(img: GrayImage, params: RepulsionParams | None = None
                           ) -> BinaryEnergy:
    """Segmentation energy with attractive and repulsive Potts terms.

    Unary: Gaussian negative log-likelihood of foreground minus background.
    Each weighted Potts term ``v |s_p - s_q|`` is expanded to
    ``v s_p + v s_q - 2 v s_p s_q``; pairs with zero weight are dropped.
    """
    params = params or RepulsionParams()
    I = img.pixels
    two_var = 2.0 * params.sigma_app ** 2
    unary = ((I - params.mu_fg) ** 2 - (I - params.mu_bg) ** 2) / two_var
    p, q, v = potts_weights(img, params)
    keep = v != 0
    p, q, v = p[keep], q[keep], v[keep]
    np.add.at(unary, p, v)
    np.add.at(unary, q, v)
    lo, hi = np.minimum(p, q), np.maximum(p, q)
    return BinaryEnergy._canonical(img.width * img.height, unary, lo, hi, -2.0 * v, 0.0)


def random_energy(n: int, pair_density: float = 0.5, sup_fraction: float = 0.5,
                  magnitude: float = 1.0, seed: int = 0) -> BinaryEnergy:
    """Seeded random energy for tests.

    Each pair ``p < q`` is present with probability ``pair_density`` and is
    supermodular with probability ``sup_fraction``; unary, constant and pair
    magnitudes are uniform with scale ``magnitude``.
    """
    if n < 1:
        raise ParameterError("n must be positive")
    if not (0 <= pair_density <= 1 and 0 <= sup_fraction <= 1):
        raise ParameterError("densities must lie in [0, 1]")
    if not magnitude > 0:
        raise ParameterError("magnitude must be positive")
    rng = np.random.default_rng(seed)
    unary = rng.uniform(-magnitude, magnitude, n)
    constant = float(rng.uniform(-magnitude, magnitude))
    p, q = np.triu_indices(n, 1)
    present = rng.random(p.size) < pair_density
    p, q = p[present], q[present]
    # 1 - U(0,1) lies in (0, 1], so no coefficient is exactly zero
    mag = magnitude * (1.0 - rng.random(p.size))
    sign = np.where(rng.random(p.size) < sup_fraction, 1.0, -1.0)
    return BinaryEnergy(n, unary, p, q, sign * mag, constant)

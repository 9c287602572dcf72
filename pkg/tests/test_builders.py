from itertools import product

import numpy as np
import pytest

from lsaqpbo import (GrayImage, ParameterError, RepulsionParams,
                     build_deconvolution_energy, build_repulsion_energy, decompose,
                     eval_energy, minimize_submodular, random_energy,
                     synthesize_deconv_instance)
from lsaqpbo.builders import NEIGHBORHOOD_16, deconvolution_residual


def direct_deconvolution(I, s):
    """Squared residuals with explicit loops over the clipped 3x3 windows."""
    h, w = I.shape
    S = np.asarray(s).reshape(h, w)
    total = 0.0
    for y, x in product(range(h), range(w)):
        acc = 0.0
        for dy, dx in product((-1, 0, 1), repeat=2):
            if 0 <= y + dy < h and 0 <= x + dx < w:
                acc += S[y + dy, x + dx]
        total += (I[y, x] - acc / 9.0) ** 2
    return total


def test_single_pixel_deconvolution():
    e = build_deconvolution_energy(GrayImage(1, 1, [0.0]))
    assert e.unary.tolist() == [1.0 / 81.0] and e.num_pairs == 0 and e.constant == 0.0
    assert eval_energy(e, [1]) == pytest.approx(1.0 / 81.0)


def test_zero_image_zero_labeling():
    e = build_deconvolution_energy(GrayImage(4, 3, np.zeros(12)))
    assert eval_energy(e, np.zeros(12, dtype=int)) == 0.0


def test_deconvolution_matches_direct_formula():
    rng = np.random.default_rng(0)
    I = rng.random((5, 5))
    e = build_deconvolution_energy(GrayImage.from_array(I))
    assert np.all(e.pair_w > 0)
    for _ in range(20):
        s = rng.integers(0, 2, 25)
        assert eval_energy(e, s) == pytest.approx(direct_deconvolution(I, s), abs=1e-9)
        assert deconvolution_residual(GrayImage.from_array(I), s) == pytest.approx(
            direct_deconvolution(I, s), abs=1e-9)


@pytest.mark.parametrize("h,w", [(1, 1), (2, 3), (5, 5), (7, 4)])
def test_deconvolution_positive_mass(h, w):
    e = build_deconvolution_energy(GrayImage(w, h, np.zeros(h * w)))
    sizes = [sum(0 <= y + dy < h and 0 <= x + dx < w for dy, dx in product((-1, 0, 1), repeat=2))
             for y, x in product(range(h), range(w))]
    expected = sum(k * (k - 1) // 2 for k in sizes) * 2.0 / 81.0
    assert e.pair_w.sum() == pytest.approx(expected, rel=1e-12)


def test_deconvolution_empty_image():
    with pytest.raises(ValueError):
        build_deconvolution_energy(GrayImage(0, 0, []))


def test_synthesize_noise_free_cases():
    img, truth = synthesize_deconv_instance(6, 5, "empty", 0.0, seed=1)
    assert np.all(img.pixels == 0) and np.all(truth == 0)
    img, truth = synthesize_deconv_instance(6, 5, "full", 0.0, seed=1)
    a = img.as_array()
    assert np.all(a[1:-1, 1:-1] == 1.0)
    assert a[0, 0] == 4 / 9 and a[0, 2] == 6 / 9 and a[2, 0] == 6 / 9


def test_synthesize_deterministic():
    a, ta = synthesize_deconv_instance(16, 16, "disk", 0.1, seed=7)
    b, tb = synthesize_deconv_instance(16, 16, "disk", 0.1, seed=7)
    assert a.pixels.tobytes() == b.pixels.tobytes() and np.array_equal(ta, tb)
    c, _ = synthesize_deconv_instance(16, 16, "disk", 0.1, seed=8)
    assert a.pixels.tobytes() != c.pixels.tobytes()


def test_synthesize_validation():
    with pytest.raises(ValueError):
        synthesize_deconv_instance(0, 4)
    with pytest.raises(ParameterError):
        synthesize_deconv_instance(4, 4, sigma=-1)
    with pytest.raises(ValueError):
        synthesize_deconv_instance(4, 4, "star")


def test_sixteen_neighbourhood():
    offsets = set(NEIGHBORHOOD_16) | {(-dy, -dx) for dy, dx in NEIGHBORHOOD_16}
    assert len(offsets) == 16
    assert all(max(abs(dy), abs(dx)) <= 2 and (dy, dx) != (0, 0) for dy, dx in offsets)
    assert sum(1 for dy, dx in offsets if abs(dy) + abs(dx) == 3) == 8


def test_repulsion_two_pixel_attraction():
    p = RepulsionParams(lam_reg=1.0, c=0.06)
    e = build_repulsion_energy(GrayImage(2, 1, [0.2, 0.2]), p)
    assert e.pairs == [(0, 1, pytest.approx(-0.12))]
    base = ((0.2 - 0.4) ** 2 - (0.2 - 0.6) ** 2) / (2 * 0.04)
    np.testing.assert_allclose(e.unary, [base + 0.06, base + 0.06])


def test_repulsion_two_pixel_repulsion():
    p = RepulsionParams(lam_reg=1.0, c=0.06)
    e = build_repulsion_energy(GrayImage(2, 1, [0.0, 1.0]), p)
    (_, _, w), = e.pairs
    assert w == pytest.approx(1.88)


def test_repulsion_zero_weight_dropped():
    p = RepulsionParams(lam_reg=1.0, c=0.25)
    e = build_repulsion_energy(GrayImage(2, 1, [0.25, 0.5]), p)
    assert e.num_pairs == 0


def test_potts_expansion_identity():
    for v in (0.7, -1.3):
        for sp, sq in product((0, 1), repeat=2):
            assert v * abs(sp - sq) == pytest.approx(v * sp + v * sq - 2 * v * sp * sq)


def test_repulsion_energy_equals_direct_potts():
    rng = np.random.default_rng(2)
    I = rng.random((4, 5))
    params = RepulsionParams()
    e = build_repulsion_energy(GrayImage.from_array(I), params)
    h, w = I.shape
    for _ in range(10):
        s = rng.integers(0, 2, h * w)
        S = s.reshape(h, w)
        direct = 0.0
        for y, x in product(range(h), range(w)):
            if S[y, x]:
                direct += ((I[y, x] - 0.4) ** 2 - (I[y, x] - 0.6) ** 2) / (2 * 0.04)
            for dy, dx in NEIGHBORHOOD_16:
                if 0 <= y + dy < h and 0 <= x + dx < w:
                    omega = (params.c - abs(I[y, x] - I[y + dy, x + dx])) / np.hypot(dy, dx)
                    direct += params.lam_reg * omega * abs(S[y, x] - S[y + dy, x + dx])
        assert eval_energy(e, s) == pytest.approx(direct, rel=1e-10, abs=1e-9)


def test_repulsion_large_c_is_submodular():
    rng = np.random.default_rng(4)
    e = build_repulsion_energy(GrayImage(6, 6, rng.random(36)), RepulsionParams(c=2.0))
    assert e.is_submodular() and e.num_pairs > 0
    minimize_submodular(e)


def test_repulsion_params_validation():
    with pytest.raises(ParameterError):
        RepulsionParams(sigma_app=0)
    with pytest.raises(ParameterError):
        RepulsionParams(lam_reg=-1)


def test_random_energy_modes():
    assert random_energy(10, 0.8, 0.0, 1.0, seed=1).is_submodular()
    e = random_energy(10, 0.8, 1.0, 1.0, seed=1)
    assert np.all(e.pair_w > 0)
    a, b = random_energy(10, 0.5, 0.5, 1.0, seed=3), random_energy(10, 0.5, 0.5, 1.0, seed=3)
    assert a.pairs == b.pairs and np.array_equal(a.unary, b.unary)
    assert len(decompose(random_energy(30, 1.0, 0.3, 1.0, 0)).sup_pairs) > 0


@pytest.mark.parametrize("kw", [dict(n=0), dict(pair_density=1.5), dict(sup_fraction=-0.1),
                                dict(magnitude=0)])
def test_random_energy_validation(kw):
    args = dict(n=5, pair_density=0.5, sup_fraction=0.5, magnitude=1.0, seed=0)
    args.update(kw)
    with pytest.raises(ParameterError):
        random_energy(**args)

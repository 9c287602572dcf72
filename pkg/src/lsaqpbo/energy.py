"""Binary pairwise energies.

An energy over ``n`` binary variables is stored as

    E(S) = constant + sum_p u_p s_p + sum_{p<q} w_pq s_p s_q

with every unordered pair kept once.  A symmetric matrix form ``S^T M S``
maps onto this with ``w_pq = m_pq + m_qp``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


class DimensionError(ValueError):
    """Labeling length does not match the energy."""


class ParameterError(ValueError):
    """Invalid numeric parameter."""


class NonSubmodularError(ValueError):
    """A positive pairwise coefficient reached a submodular-only routine."""


def _frozen(a, dtype):
    a = np.array(a, dtype=dtype, copy=True)
    a.flags.writeable = False
    return a


def as_labeling(bits, num_vars: int | None = None) -> np.ndarray:
    """Return ``bits`` as a read-only uint8 vector of zeros and ones."""
    s = np.asarray(bits)
    if s.ndim != 1:
        raise DimensionError(f"labeling must be 1-D, got shape {s.shape}")
    if s.size and not np.all((s == 0) | (s == 1)):
        raise ValueError("labeling entries must be 0 or 1")
    if num_vars is not None and s.size != num_vars:
        raise DimensionError(f"labeling has {s.size} entries, energy has {num_vars}")
    return _frozen(s, np.uint8)


@dataclass(frozen=True, eq=False)
class BinaryEnergy:
    """Quadratic pseudo-Boolean energy with canonical pair storage.

    Use :meth:`from_terms` to build one from loose input; the plain
    constructor expects already canonical arrays (pairs sorted, ``p < q``,
    no duplicates) and checks them.
    """

    num_vars: int
    unary: np.ndarray
    pair_p: np.ndarray
    pair_q: np.ndarray
    pair_w: np.ndarray
    constant: float = 0.0

    def __post_init__(self):
        n = int(self.num_vars)
        if n < 0:
            raise ParameterError("num_vars must be nonnegative")
        object.__setattr__(self, "num_vars", n)
        object.__setattr__(self, "unary", _frozen(self.unary, np.float64))
        object.__setattr__(self, "pair_p", _frozen(self.pair_p, np.int64))
        object.__setattr__(self, "pair_q", _frozen(self.pair_q, np.int64))
        object.__setattr__(self, "pair_w", _frozen(self.pair_w, np.float64))
        object.__setattr__(self, "constant", float(self.constant))

        if self.unary.shape != (n,):
            raise DimensionError(f"unary has shape {self.unary.shape}, expected ({n},)")
        m = self.pair_w.shape[0]
        if self.pair_p.shape != (m,) or self.pair_q.shape != (m,):
            raise DimensionError("pair arrays must have equal length")
        if m:
            if self.pair_p.min() < 0 or self.pair_q.max() >= n:
                raise ValueError("pair index out of range")
            if np.any(self.pair_p >= self.pair_q):
                raise ValueError("pairs must satisfy p < q")
            key = self.pair_p * n + self.pair_q
            if np.any(np.diff(key) <= 0):
                raise ValueError("pairs must be sorted and unique")
        if not (np.all(np.isfinite(self.unary)) and np.all(np.isfinite(self.pair_w))
                and math.isfinite(self.constant)):
            raise ValueError("energy coefficients must be finite")

    @classmethod
    def from_terms(cls, num_vars, unary=None, pairs=(), constant=0.0):
        """Build an energy from possibly messy terms.

        ``pairs`` is an iterable of ``(p, q, w)`` or an ``(m, 3)`` array.
        Pairs with ``p > q`` are swapped, duplicates are summed, and
        diagonal entries ``p == q`` are folded into the unary (``s^2 = s``).
        """
        n = int(num_vars)
        u = np.zeros(n) if unary is None else np.array(unary, dtype=np.float64)
        arr = np.asarray(list(pairs) if not isinstance(pairs, np.ndarray) else pairs,
                         dtype=np.float64).reshape(-1, 3)
        p = arr[:, 0].astype(np.int64)
        q = arr[:, 1].astype(np.int64)
        w = arr[:, 2]
        if np.any(arr[:, :2] != np.stack([p, q], axis=1)):
            raise ValueError("pair indices must be integers")
        if p.size and (min(p.min(), q.min()) < 0 or max(p.max(), q.max()) >= n):
            raise ValueError("pair index out of range")
        diag = p == q
        if np.any(diag):
            u = u.copy()
            np.add.at(u, p[diag], w[diag])
            p, q, w = p[~diag], q[~diag], w[~diag]
        lo, hi = np.minimum(p, q), np.maximum(p, q)
        return cls._canonical(n, u, lo, hi, w, constant)

    @classmethod
    def _canonical(cls, n, unary, p, q, w, constant):
        if len(w) == 0:
            e = np.zeros(0, dtype=np.int64)
            return cls(n, unary, e, e, np.zeros(0), constant)
        key = np.asarray(p, dtype=np.int64) * max(n, 1) + np.asarray(q, dtype=np.int64)
        uniq, inv = np.unique(key, return_inverse=True)
        # bincount accumulates in input order, so folding is deterministic
        ws = np.bincount(inv.ravel(), weights=w, minlength=uniq.size)
        return cls(n, unary, uniq // max(n, 1), uniq % max(n, 1), ws, constant)

    @property
    def num_pairs(self) -> int:
        return int(self.pair_w.shape[0])

    @property
    def pairs(self) -> list[tuple[int, int, float]]:
        return list(zip(self.pair_p.tolist(), self.pair_q.tolist(), self.pair_w.tolist()))

    def is_submodular(self) -> bool:
        return bool(np.all(self.pair_w <= 0))

    def replace(self, *, unary=None, pair_mask=None, constant=None) -> "BinaryEnergy":
        """Copy with new unary/constant and an optional subset of the pairs."""
        m = slice(None) if pair_mask is None else pair_mask
        return BinaryEnergy(
            self.num_vars,
            self.unary if unary is None else unary,
            self.pair_p[m], self.pair_q[m], self.pair_w[m],
            self.constant if constant is None else constant,
        )

    def __call__(self, s) -> float:
        return eval_energy(self, s)

    def __repr__(self):
        return (f"BinaryEnergy(num_vars={self.num_vars}, num_pairs={self.num_pairs}, "
                f"constant={self.constant!r})")


def _terms(e: BinaryEnergy, s: np.ndarray) -> list[float]:
    # constant, unaries by index, pairs in lexicographic order
    on = s.astype(bool)
    both = on[e.pair_p] & on[e.pair_q]
    return [e.constant] + e.unary[on].tolist() + e.pair_w[both].tolist()


def eval_energy(e: BinaryEnergy, s) -> float:
    """Energy of labeling ``s``.

    Summation uses :func:`math.fsum`, so the result is the correctly rounded
    sum of all active terms and does not depend on how the terms are grouped.
    """
    s = np.asarray(s)
    if s.shape != (e.num_vars,):
        raise DimensionError(f"labeling has shape {s.shape}, energy has {e.num_vars} vars")
    return math.fsum(_terms(e, s))


def evaluate_many(e: BinaryEnergy, labelings) -> np.ndarray:
    """Vectorised energies for a ``(k, n)`` stack of labelings.

    Plain floating point sums; meant for enumeration oracles, not for
    reported values.
    """
    S = np.asarray(labelings, dtype=np.float64)
    if S.ndim != 2 or S.shape[1] != e.num_vars:
        raise DimensionError(f"expected (k, {e.num_vars}) labelings, got {S.shape}")
    out = S @ e.unary + e.constant
    if e.num_pairs:
        out += (S[:, e.pair_p] * S[:, e.pair_q]) @ e.pair_w
    return out


def all_labelings(n: int) -> np.ndarray:
    """All ``2**n`` labelings in lexicographic order (``s_0`` most significant)."""
    k = np.arange(2 ** n, dtype=np.int64)
    shifts = np.arange(n - 1, -1, -1, dtype=np.int64)
    return ((k[:, None] >> shifts[None, :]) & 1).astype(np.uint8)


@dataclass(frozen=True, eq=False)
class Decomposition:
    """Split ``E = E_sub + E_sup``.

    ``sub`` keeps the unary, the constant and every pair with ``w <= 0``;
    ``sup_*`` hold the pairs with ``w > 0``.
    """

    sub: BinaryEnergy
    sup_p: np.ndarray
    sup_q: np.ndarray
    sup_w: np.ndarray

    @property
    def num_vars(self) -> int:
        return self.sub.num_vars

    @property
    def sup_pairs(self) -> list[tuple[int, int, float]]:
        return list(zip(self.sup_p.tolist(), self.sup_q.tolist(), self.sup_w.tolist()))

    def sup_value(self, s) -> float:
        s = np.asarray(s).astype(bool)
        return math.fsum(self.sup_w[s[self.sup_p] & s[self.sup_q]].tolist())

    def eval(self, s) -> float:
        """Energy of the recombined parts, summed as one pool of terms."""
        s = np.asarray(s)
        if s.shape != (self.num_vars,):
            raise DimensionError("labeling length mismatch")
        on = s.astype(bool)
        sup = self.sup_w[on[self.sup_p] & on[self.sup_q]].tolist()
        return math.fsum(_terms(self.sub, s) + sup)


def decompose(e: BinaryEnergy) -> Decomposition:
    """Separate submodular (``w <= 0``) and supermodular (``w > 0``) pairs."""
    pos = e.pair_w > 0
    return Decomposition(
        sub=e.replace(pair_mask=~pos),
        sup_p=_frozen(e.pair_p[pos], np.int64),
        sup_q=_frozen(e.pair_q[pos], np.int64),
        sup_w=_frozen(e.pair_w[pos], np.float64),
    )


def hamming(a, b) -> int:
    a, b = np.asarray(a), np.asarray(b)
    if a.shape != b.shape:
        raise DimensionError(f"shape mismatch {a.shape} vs {b.shape}")
    return int(np.count_nonzero(a != b))


def hamming_unaries(s0, lam: float) -> tuple[np.ndarray, float]:
    """Unary encoding of ``lam * hamming(S, s0)``.

    Returns ``(d, c)`` with ``c + d @ S == lam * hamming(S, s0)`` for every
    labeling ``S``: ``d_p = lam`` where ``s0_p = 0``, ``-lam`` where
    ``s0_p = 1``, and ``c = lam * sum(s0)``.
    """
    if not lam >= 0:
        raise ParameterError(f"lambda must be nonnegative, got {lam}")
    s0 = np.asarray(s0)
    d = np.where(s0 == 1, -float(lam), float(lam))
    return d, float(lam) * int(np.count_nonzero(s0))

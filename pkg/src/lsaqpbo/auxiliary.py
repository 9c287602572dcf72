"""LSA-AUX: majorize-minimize with linear upper bounds on supermodular pairs.

For a pair ``f(x, y) = w x y`` with ``w > 0`` and current state
``(x_t, y_t)`` the bound planes are

    (0, 1) -> w x            (1, 0) -> w y
    (0, 0), (1, 1) -> w/2 x + w/2 y     (standard)
                   -> w x or w y         (permutation, one coin per pair)

Each plane lies above ``f`` on {0,1}^2 and touches it at ``(x_t, y_t)``
and at ``(0, 0)``.  Adding the planes to the submodular part gives a
submodular upper bound that touches ``E`` at the current labeling.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .energy import (BinaryEnergy, Decomposition, as_labeling, decompose,
                     eval_energy)
from .maxflow import minimize_submodular
from .trace import SolverTrace, TraceRecord

STANDARD = "standard"
PERMUTATION = "permutation"
DECREASE_TOL = 1e-10
MAX_STALL = 5


@dataclass(frozen=True)
class BoundVariant:
    """Which plane to use at the ambiguous states (0,0) and (1,1).

    ``redraw=False`` keeps the first iteration's coins for the whole run.
    """

    kind: str = STANDARD
    seed: int = 0
    redraw: bool = True

    def __post_init__(self):
        if self.kind not in (STANDARD, PERMUTATION):
            raise ValueError(f"unknown bound variant {self.kind!r}")

    def coins(self, iteration: int, size: int) -> np.ndarray:
        """Boolean per pair; True selects ``w x`` (bound on the first index)."""
        step = iteration if self.redraw else 0
        rng = np.random.default_rng([self.seed, step])
        return rng.random(size) < 0.5


def aux_bound_unaries(dec: Decomposition, s_t, variant: BoundVariant | None = None,
                      iteration: int = 0, coins=None) -> np.ndarray:
    """Unary vector ``U_t`` with ``E_sup(S) <= S @ U_t`` and equality at ``s_t``.

    ``coins`` overrides the variant's draws (PERMUTATION only).
    """
    variant = variant or BoundVariant()
    s = np.asarray(s_t, dtype=np.float64)
    p, q, w = dec.sup_p, dec.sup_q, dec.sup_w
    sp, sq = s[p], s[q]
    # (w/2)(1 + s_q - s_p) on p and (w/2)(1 + s_p - s_q) on q
    to_p = 0.5 * w * (1.0 + sq - sp)
    to_q = 0.5 * w * (1.0 + sp - sq)
    if variant.kind == PERMUTATION:
        if coins is None:
            coins = variant.coins(iteration, w.size)
        coins = np.asarray(coins, dtype=bool)
        tied = sp == sq
        to_p = np.where(tied, np.where(coins, w, 0.0), to_p)
        to_q = np.where(tied, np.where(coins, 0.0, w), to_q)
    u = np.zeros(dec.num_vars)
    np.add.at(u, p, to_p)
    np.add.at(u, q, to_q)
    return u


def build_auxiliary(dec: Decomposition, u_t) -> BinaryEnergy:
    """``A_t(S) = S @ u_t + E_sub(S)``."""
    sub = dec.sub
    return sub.replace(unary=sub.unary + np.asarray(u_t, dtype=np.float64))


def lsa_aux_solve(e: BinaryEnergy, variant: BoundVariant | None = None, init=None,
                  max_iters: int = 1000) -> SolverTrace:
    """Iterate ``S_{t+1} = argmin A_t(S)`` until the energy stops decreasing.

    The standard variant stops on the first iteration without a decrease
    larger than ``1e-10``; the permutation variant tolerates up to five
    such iterations in a row because a fresh draw can still escape.
    """
    variant = variant or BoundVariant()
    dec = decompose(e)
    s_t = as_labeling(np.ones(e.num_vars) if init is None else init, e.num_vars)
    e_cur = eval_energy(e, s_t)
    method = "lsa-aux-p" if variant.kind == PERMUTATION else "lsa-aux"
    trace = SolverTrace(method=method, initial_energy=e_cur)
    patience = MAX_STALL if variant.kind == PERMUTATION else 1
    stall = 0
    reason = "max_iters"

    for it in range(max_iters):
        t0 = time.perf_counter()
        aux = build_auxiliary(dec, aux_bound_unaries(dec, s_t, variant, it))
        s_next, a_next = minimize_submodular(aux)
        e_next = eval_energy(e, s_next)
        predicted = eval_energy(aux, s_t) - a_next
        actual = e_cur - e_next
        if variant.kind == PERMUTATION:
            # equal-energy moves are allowed so later draws see a new state
            move = e_next <= e_cur
        else:
            move = e_next < e_cur
        move = move and not np.array_equal(s_next, s_t)
        trace.records.append(TraceRecord(
            iter=it, lam=0.0, energy=e_cur, predicted=predicted, actual=actual,
            accepted=move, wall_ms=(time.perf_counter() - t0) * 1e3))
        if move:
            s_t = as_labeling(s_next)
            e_cur_prev, e_cur = e_cur, e_next
        else:
            e_cur_prev = e_cur
        stall = 0 if e_cur_prev - e_cur > DECREASE_TOL else stall + 1
        if stall >= patience:
            reason = "converged"
            break

    trace.labeling = s_t
    trace.energy = e_cur
    trace.termination = reason
    return trace

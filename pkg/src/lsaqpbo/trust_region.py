"""LSA-TR: trust-region descent on local submodular approximations.

At the current labeling ``S_t`` the supermodular pairs are replaced by their
first-order Taylor expansion, which keeps the model submodular.  The step is
the global minimizer of the model plus ``lam * hamming(S, S_t)``; ``lam`` is
adapted from the ratio of actual to predicted reduction.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .energy import (BinaryEnergy, Decomposition, ParameterError, as_labeling,
                     decompose, eval_energy, hamming_unaries)
from .maxflow import minimize_submodular
from .trace import SolverTrace, TraceRecord


@dataclass(frozen=True)
class TrustRegionParams:
    """Step control for :func:`lsa_tr_solve`.

    ``alpha`` multiplies/divides ``lam0`` after a poor/good step.  A step is
    accepted when actual/predicted reduction exceeds ``tau1``; ``lam`` is
    relaxed when the ratio exceeds ``tau2``.
    """

    lam0: float = 1.0
    alpha: float = 2.0
    tau1: float = 0.0
    tau2: float = 0.25
    max_iters: int = 1000
    lam_max: float = 1e6

    def __post_init__(self):
        if not self.lam0 > 0:
            raise ParameterError("lam0 must be positive")
        if not self.alpha > 1:
            raise ParameterError("alpha must exceed 1")
        if self.tau1 > self.tau2:
            raise ParameterError("tau1 must not exceed tau2")
        if self.max_iters < 1:
            raise ParameterError("max_iters must be positive")
        if not self.lam_max > self.lam0:
            raise ParameterError("lam_max must exceed lam0")


def taylor_linearize_sup(dec: Decomposition, s_t) -> tuple[np.ndarray, float]:
    """Tangent plane of the supermodular part at ``s_t``.

    Each pair ``w x y`` becomes ``w s_t[q] x + w s_t[p] y - w s_t[p] s_t[q]``,
    exact at ``s_t`` and at its two Hamming neighbours within the pair.
    """
    s = np.asarray(s_t, dtype=np.float64)
    if s.shape != (dec.num_vars,):
        raise ValueError("labeling length mismatch")
    return _tangent(dec.num_vars, dec.sup_p, dec.sup_q, dec.sup_w, s)


def _tangent(n, p, q, w, s):
    u = np.zeros(n)
    np.add.at(u, p, w * s[q])
    np.add.at(u, q, w * s[p])
    on = (s[p] * s[q]) > 0
    const = -float(np.sum(w[on])) if np.any(on) else 0.0
    return u, const


def approximation(dec: Decomposition, u_t, const_t) -> BinaryEnergy:
    """``E_t(S) = E_sub(S) + S @ u_t + const_t`` as an energy."""
    sub = dec.sub
    return sub.replace(unary=sub.unary + u_t, constant=sub.constant + const_t)


def build_lagrangian(dec: Decomposition, u_t, const_t, s_t, lam: float) -> BinaryEnergy:
    """``L_t(S) = E_t(S) + lam * hamming(S, s_t)``; submodular by construction."""
    d, c = hamming_unaries(s_t, lam)
    sub = dec.sub
    return sub.replace(unary=sub.unary + u_t + d, constant=sub.constant + const_t + c)


def _model_optimal(model, u_t, c_t, s_t) -> bool:
    """True when ``s_t`` globally minimizes the approximation itself."""
    approx = approximation(model, u_t, c_t)
    _, best = minimize_submodular(approx)
    return eval_energy(approx, s_t) <= best


def _trust_region(e: BinaryEnergy, model: Decomposition, params: TrustRegionParams,
                  init, method: str) -> SolverTrace:
    # ``model.sub`` is kept exactly; every pair in ``model.sup_*`` is linearized.
    s_t = as_labeling(init, e.num_vars)
    e_cur = eval_energy(e, s_t)
    trace = SolverTrace(method=method, initial_energy=e_cur)
    lam = params.lam0
    reason = "max_iters"
    prev_rejected = False

    for it in range(params.max_iters):
        t0 = time.perf_counter()
        u_t, c_t = _tangent(e.num_vars, model.sup_p, model.sup_q, model.sup_w,
                            s_t.astype(np.float64))
        lag = build_lagrangian(model, u_t, c_t, s_t, lam)
        s_star, _ = minimize_submodular(lag)

        if np.array_equal(s_star, s_t):
            predicted = actual = 0.0
            e_star = e_cur
        else:
            approx = approximation(model, u_t, c_t)
            e_star = eval_energy(e, s_star)
            # E_t(S_t) equals E(S_t); evaluate it through the model anyway so
            # both sides of P carry the same rounding
            predicted = eval_energy(approx, s_t) - eval_energy(approx, s_star)
            actual = e_cur - e_star

        good = predicted > 0
        accept = good and actual / predicted > params.tau1
        shrink = good and actual / predicted > params.tau2
        trace.records.append(TraceRecord(
            iter=it, lam=lam, energy=e_cur, predicted=predicted, actual=actual,
            accepted=accept, wall_ms=(time.perf_counter() - t0) * 1e3))

        null = predicted == 0.0 and np.array_equal(s_star, s_t)
        if accept:
            s_t, e_cur = as_labeling(s_star), e_star
        if null:
            # S_t minimizes L_t, so it minimizes L_t for every larger lam too;
            # only a wider region (smaller lam) can still produce a step
            if prev_rejected or _model_optimal(model, u_t, c_t, s_t):
                reason = "converged"
                break
            lam = lam / params.alpha
        else:
            lam = lam / params.alpha if shrink else lam * params.alpha
        prev_rejected = not null and not accept
        if lam > params.lam_max:
            reason = "lam_max"
            break

    trace.labeling = s_t
    trace.energy = e_cur
    trace.termination = reason
    return trace


def lsa_tr_solve(e: BinaryEnergy, params: TrustRegionParams | None = None,
                 init=None) -> SolverTrace:
    """Minimize ``e`` with LSA-TR starting from ``init`` (default all ones).

    Submodular pairs are kept in the model; supermodular pairs are
    linearized around the current labeling at each iteration.
    """
    params = params or TrustRegionParams()
    if init is None:
        init = np.ones(e.num_vars, dtype=np.uint8)
    return _trust_region(e, decompose(e), params, init, "lsa-tr")

"""Reference and comparison solvers.

``brute_force_min`` is the ground-truth oracle for small instances.  The
others are the weaker baselines that the LSA methods are compared with:
truncation of supermodular pairs, LSA-TR with every pair linearized
(LSA-TR-L), parallel ICM and IPFP.
"""

from __future__ import annotations

import time

import numpy as np

from .energy import (BinaryEnergy, Decomposition, ParameterError, all_labelings,
                     as_labeling, eval_energy, evaluate_many)
from .maxflow import minimize_submodular
from .trace import SolverTrace, TraceRecord
from .trust_region import TrustRegionParams, _trust_region

BRUTE_FORCE_MAX_VARS = 24
_CHUNK_BITS = 16


def brute_force_min(e: BinaryEnergy) -> tuple[np.ndarray, float]:
    """Exact minimum by enumeration, ties to the lexicographically smallest labeling."""
    n = e.num_vars
    if n > BRUTE_FORCE_MAX_VARS:
        raise ParameterError(f"brute force limited to {BRUTE_FORCE_MAX_VARS} variables, got {n}")
    if n <= _CHUNK_BITS:
        vals = evaluate_many(e, all_labelings(n))
        k = int(np.argmin(vals))
    else:
        low = all_labelings(_CHUNK_BITS)
        best_val, k = np.inf, 0
        for hi in range(2 ** (n - _CHUNK_BITS)):
            prefix = (hi >> np.arange(n - _CHUNK_BITS - 1, -1, -1)) & 1
            block = np.hstack([np.broadcast_to(prefix, (low.shape[0], prefix.size)), low])
            vals = evaluate_many(e, block)
            j = int(np.argmin(vals))
            if vals[j] < best_val:
                best_val, k = vals[j], (hi << _CHUNK_BITS) | j
    s = ((k >> np.arange(n - 1, -1, -1)) & 1).astype(np.uint8)
    return s, eval_energy(e, s)


def truncate(e: BinaryEnergy) -> BinaryEnergy:
    """Drop every pair with ``w > 0``."""
    return e.replace(pair_mask=e.pair_w <= 0)


def truncation_solve(e: BinaryEnergy) -> SolverTrace:
    """Minimize the truncated energy; the trace reports energies under ``e``."""
    t0 = time.perf_counter()
    te = truncate(e)
    s, te_val = minimize_submodular(te)
    val = eval_energy(e, s)
    trace = SolverTrace(method="truncate", initial_energy=val)
    trace.records.append(TraceRecord(0, 0.0, val, 0.0, 0.0, True,
                                     (time.perf_counter() - t0) * 1e3))
    trace.labeling, trace.energy, trace.termination = s, val, "exact"
    trace.extras["truncated_energy"] = te_val
    return trace


def lsa_tr_l_solve(e: BinaryEnergy, params: TrustRegionParams | None = None,
                   init=None) -> SolverTrace:
    """Trust region over the full tangent plane: every pair is linearized."""
    params = params or TrustRegionParams()
    if init is None:
        init = np.ones(e.num_vars, dtype=np.uint8)
    model = Decomposition(sub=e.replace(pair_mask=np.zeros(e.num_pairs, dtype=bool)),
                          sup_p=e.pair_p, sup_q=e.pair_q, sup_w=e.pair_w)
    return _trust_region(e, model, params, init, "lsa-tr-l")


def gradient(e: BinaryEnergy, x) -> np.ndarray:
    """Gradient of the multilinear extension at ``x`` in [0,1]^n."""
    x = np.asarray(x, dtype=np.float64)
    g = e.unary.copy()
    np.add.at(g, e.pair_p, e.pair_w * x[e.pair_q])
    np.add.at(g, e.pair_q, e.pair_w * x[e.pair_p])
    return g


def parallel_icm_step(e: BinaryEnergy, s_t) -> np.ndarray:
    """Integer minimizer of the tangent plane at ``s_t``; zero slope keeps the label."""
    s = as_labeling(s_t, e.num_vars)
    g = gradient(e, s)
    return np.where(g < 0, 1, np.where(g > 0, 0, s)).astype(np.uint8)


def icm_solve(e: BinaryEnergy, init=None, max_iters: int = 1000) -> SolverTrace:
    """Parallel ICM until a fixed point.

    The parallel update can cycle, so the best labeling seen is returned and
    the run stops when a labeling repeats.
    """
    s_t = as_labeling(np.ones(e.num_vars) if init is None else init, e.num_vars)
    e_cur = eval_energy(e, s_t)
    trace = SolverTrace(method="icm", initial_energy=e_cur)
    best_s, best_e = s_t, e_cur
    seen = {s_t.tobytes()}
    reason = "max_iters"
    for it in range(max_iters):
        t0 = time.perf_counter()
        g = gradient(e, s_t)
        s_next = parallel_icm_step(e, s_t)
        e_next = eval_energy(e, s_next)
        predicted = float(g @ (s_t.astype(float) - s_next))
        trace.records.append(TraceRecord(it, 0.0, e_cur, predicted, e_cur - e_next,
                                         True, (time.perf_counter() - t0) * 1e3))
        if e_next < best_e:
            best_s, best_e = s_next, e_next
        if np.array_equal(s_next, s_t):
            reason = "converged"
            break
        key = s_next.tobytes()
        if key in seen:
            reason = "cycle"
            break
        seen.add(key)
        s_t, e_cur = s_next, e_next
    trace.labeling, trace.energy, trace.termination = best_s, best_e, reason
    return trace


def relaxed_energy(e: BinaryEnergy, x) -> float:
    """Multilinear extension of ``e`` at a relaxed point."""
    x = np.asarray(x, dtype=np.float64)
    val = e.constant + float(e.unary @ x)
    if e.num_pairs:
        val += float(e.pair_w @ (x[e.pair_p] * x[e.pair_q]))
    return val


def line_search(e: BinaryEnergy, x, d) -> float:
    """Step in [0, 1] minimizing the relaxed energy along ``x + t d``.

    Along the segment the energy is ``E(x) + a t + b t^2`` with ``a`` the
    directional derivative and ``b`` the pairwise form of ``d``.
    """
    x = np.asarray(x, dtype=np.float64)
    d = np.asarray(d, dtype=np.float64)
    a = float(gradient(e, x) @ d)
    b = float(e.pair_w @ (d[e.pair_p] * d[e.pair_q])) if e.num_pairs else 0.0
    if b > 0:
        return float(np.clip(-a / (2 * b), 0.0, 1.0))
    return 1.0 if a + b < 0 else 0.0


def ipfp_solve(e: BinaryEnergy, init=None, max_iters: int = 1000,
               tol: float = 1e-9) -> tuple[np.ndarray, SolverTrace]:
    """Integer projected fixed point iteration.

    Each step moves the relaxed point toward the integer minimizer of its
    tangent plane by the exact line-search step.  The output labeling is the
    relaxed point rounded at 0.5 (ties to 0).
    """
    x = np.ones(e.num_vars) if init is None else np.asarray(init, dtype=np.float64)
    if x.shape != (e.num_vars,) or np.any((x < 0) | (x > 1)):
        raise ParameterError("relaxed start must lie in [0,1]^n")
    x = x.copy()
    e_cur = relaxed_energy(e, x)
    trace = SolverTrace(method="ipfp", initial_energy=e_cur)
    reason = "max_iters"
    steps = []
    for it in range(max_iters):
        t0 = time.perf_counter()
        g = gradient(e, x)
        keep = (x > 0.5).astype(np.float64)
        s_int = np.where(g < 0, 1.0, np.where(g > 0, 0.0, keep))
        d = s_int - x
        step = line_search(e, x, d)
        x_next = np.clip(x + step * d, 0.0, 1.0)
        e_next = relaxed_energy(e, x_next)
        steps.append(step)
        trace.records.append(TraceRecord(it, 0.0, e_cur, -float(g @ d), e_cur - e_next,
                                         step > 0, (time.perf_counter() - t0) * 1e3))
        moved = float(np.max(np.abs(x_next - x))) if x.size else 0.0
        if e_next <= e_cur:
            x, e_cur = x_next, e_next
        if step == 0.0 or moved < tol:
            reason = "converged"
            break
    s = (x > 0.5).astype(np.uint8)
    trace.labeling, trace.energy, trace.termination = s, eval_energy(e, s), reason
    trace.extras.update(relaxed=x, steps=steps)
    return s, trace

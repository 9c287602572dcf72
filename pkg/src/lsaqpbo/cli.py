"""Command-line harness.

    lsaqpbo solve ENERGY --method lsa-tr --trace t.csv --labeling s.pgm
    lsaqpbo make-deconv --width 32 --height 32 --sigma 0.05 --seed 0 --out-prefix d
    lsaqpbo make-repulsion image.pgm --out rep.energy
    lsaqpbo eval ENERGY LABELING
    lsaqpbo batch A.energy B.energy --method lsa-aux --jobs 4 --out-dir runs

Exit status: 0 on success, 1 on runtime/IO failure, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import formats
from .auxiliary import PERMUTATION, STANDARD, BoundVariant, lsa_aux_solve
from .baselines import (brute_force_min, icm_solve, ipfp_solve, lsa_tr_l_solve,
                        truncation_solve)
from .builders import (RepulsionParams, build_deconvolution_energy,
                       build_repulsion_energy, synthesize_deconv_instance)
from .energy import BinaryEnergy, eval_energy
from .trace import SolverTrace, TraceRecord
from .trust_region import TrustRegionParams, lsa_tr_solve

METHODS = ("lsa-tr", "lsa-tr-l", "lsa-aux", "lsa-aux-p", "icm", "ipfp", "truncate", "brute")


def run_method(e: BinaryEnergy, method: str, init=None, params: TrustRegionParams | None = None,
               seed: int = 0, max_iters: int = 1000) -> SolverTrace:
    """Dispatch one solve by method name; every method returns a SolverTrace."""
    if init is None:
        init = np.ones(e.num_vars, dtype=np.uint8)
    if params is None:
        params = TrustRegionParams(max_iters=max_iters)
    if method == "lsa-tr":
        return lsa_tr_solve(e, params, init)
    if method == "lsa-tr-l":
        return lsa_tr_l_solve(e, params, init)
    if method in ("lsa-aux", "lsa-aux-p"):
        kind = PERMUTATION if method == "lsa-aux-p" else STANDARD
        return lsa_aux_solve(e, BoundVariant(kind, seed), init, max_iters)
    if method == "icm":
        return icm_solve(e, init, max_iters)
    if method == "ipfp":
        return ipfp_solve(e, init, max_iters)[1]
    if method == "truncate":
        return truncation_solve(e)
    if method == "brute":
        t0 = time.perf_counter()
        s, val = brute_force_min(e)
        tr = SolverTrace(method="brute", initial_energy=val)
        tr.records.append(TraceRecord(0, 0.0, val, 0.0, 0.0, True,
                                      (time.perf_counter() - t0) * 1e3))
        tr.labeling, tr.energy, tr.termination = s, val, "exact"
        return tr
    raise ValueError(f"unknown method {method!r}")


def _parse_shape(text):
    if text is None:
        return None
    w, h = text.lower().split("x")
    return int(w), int(h)


def _initial(spec: str, n: int):
    if spec == "all-ones":
        return np.ones(n, dtype=np.uint8)
    if spec == "all-zeros":
        return np.zeros(n, dtype=np.uint8)
    return formats.read_labeling(spec)


def _solve_one(energy_path, method, init_spec, params, seed, max_iters,
               labeling_path, trace_path, summary_path, shape):
    e = formats.read_energy(energy_path)
    init = _initial(init_spec, e.num_vars)
    trace = run_method(e, method, init, params, seed, max_iters)
    summary = {
        "method": method,
        "energy": trace.energy,
        "initial_energy": trace.initial_energy,
        "iterations": trace.iterations,
        "termination": trace.termination,
        "num_vars": e.num_vars,
        "seed": seed,
    }
    if "truncated_energy" in trace.extras:
        summary["truncated_energy"] = trace.extras["truncated_energy"]
    summary["wall_ms"] = round(trace.wall_ms, 3)
    for path in (labeling_path, trace_path, summary_path):
        if path:
            formats.ensure_parent(path)
    if labeling_path:
        formats.write_labeling(labeling_path, trace.labeling, shape)
    if trace_path:
        with open(trace_path, "w") as f:
            f.write(trace.to_csv())
    text = formats.format_summary(summary)
    if summary_path:
        with open(summary_path, "w") as f:
            f.write(text)
    return text


def _params(args) -> TrustRegionParams:
    return TrustRegionParams(lam0=args.lam0, alpha=args.alpha, tau1=args.tau1,
                             tau2=args.tau2, max_iters=args.max_iters, lam_max=args.lam_max)


def cmd_solve(args) -> int:
    text = _solve_one(args.energy, args.method, args.init, _params(args), args.seed,
                      args.max_iters, args.labeling, args.trace, args.summary,
                      _parse_shape(args.shape))
    if not args.summary:
        sys.stdout.write(text)
    return 0


def cmd_batch(args) -> int:
    os.makedirs(args.out_dir, exist_ok=True)
    params = _params(args)
    jobs = []
    for path in args.energies:
        stem = os.path.join(args.out_dir, os.path.splitext(os.path.basename(path))[0])
        jobs.append((path, args.method, args.init, params, args.seed, args.max_iters,
                     stem + ".labeling.pgm", stem + ".trace.csv", stem + ".summary", None))
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            futures = [pool.submit(_solve_one, *j) for j in jobs]
            for path, fut in zip(args.energies, futures):
                fut.result()
                print(f"done {path}")
    else:
        for j in jobs:
            _solve_one(*j)
            print(f"done {j[0]}")
    return 0


def cmd_make_deconv(args) -> int:
    img, truth = synthesize_deconv_instance(args.width, args.height, args.shape,
                                            args.sigma, args.seed)
    prefix = args.out_prefix
    formats.ensure_parent(prefix)
    formats.write_pgm(prefix + "_observed.pgm", img, maxval=65535)
    formats.write_labeling(prefix + "_truth.pgm", truth, (args.width, args.height))
    e = build_deconvolution_energy(img)
    formats.write_energy(prefix + ".energy", e)
    sys.stdout.write(formats.format_summary({
        "width": args.width, "height": args.height, "shape": args.shape,
        "sigma": args.sigma, "seed": args.seed, "num_vars": e.num_vars,
        "num_pairs": e.num_pairs, "truth_energy": eval_energy(e, truth)}))
    return 0


def cmd_make_repulsion(args) -> int:
    img = formats.read_pgm(args.image)
    params = RepulsionParams(args.mu_fg, args.mu_bg, args.sigma_app, args.lam_reg, args.c)
    e = build_repulsion_energy(img, params)
    formats.ensure_parent(args.out)
    formats.write_energy(args.out, e)
    sup = int(np.count_nonzero(e.pair_w > 0))
    sys.stdout.write(formats.format_summary({
        "mu_fg": params.mu_fg, "mu_bg": params.mu_bg, "sigma_app": params.sigma_app,
        "lam_reg": params.lam_reg, "c": params.c, "num_vars": e.num_vars,
        "num_pairs": e.num_pairs, "supermodular_pairs": sup}))
    return 0


def cmd_eval(args) -> int:
    e = formats.read_energy(args.energy)
    s = formats.read_labeling(args.labeling)
    print(repr(eval_energy(e, s)))
    return 0


def _add_solver_options(p):
    p.add_argument("--method", choices=METHODS, default="lsa-tr")
    p.add_argument("--init", default="all-ones",
                   help="all-ones, all-zeros, or a labeling PGM")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-iters", type=int, default=1000)
    d = TrustRegionParams()
    p.add_argument("--lam0", type=float, default=d.lam0)
    p.add_argument("--alpha", type=float, default=d.alpha)
    p.add_argument("--tau1", type=float, default=d.tau1)
    p.add_argument("--tau2", type=float, default=d.tau2)
    p.add_argument("--lam-max", type=float, default=d.lam_max)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lsaqpbo", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="minimize an energy file")
    p.add_argument("energy")
    _add_solver_options(p)
    p.add_argument("--labeling", help="output labeling (P2, maxval 1)")
    p.add_argument("--shape", help="WxH of the labeling image (default Nx1)")
    p.add_argument("--trace", help="output trace CSV")
    p.add_argument("--summary", help="output summary (key=value lines); stdout if omitted")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("batch", help="solve several energy files")
    p.add_argument("energies", nargs="+")
    _add_solver_options(p)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=cmd_batch)

    p = sub.add_parser("make-deconv", help="synthesize a binary deconvolution instance")
    p.add_argument("--width", type=int, default=32)
    p.add_argument("--height", type=int, default=32)
    p.add_argument("--shape", default="disk", choices=("disk", "rect", "empty", "full"))
    p.add_argument("--sigma", type=float, default=0.05)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-prefix", required=True)
    p.set_defaults(func=cmd_make_deconv)

    p = sub.add_parser("make-repulsion", help="segmentation energy with repulsion")
    p.add_argument("image")
    d = RepulsionParams()
    p.add_argument("--mu-fg", type=float, default=d.mu_fg)
    p.add_argument("--mu-bg", type=float, default=d.mu_bg)
    p.add_argument("--sigma-app", type=float, default=d.sigma_app)
    p.add_argument("--lam-reg", type=float, default=d.lam_reg)
    p.add_argument("--c", type=float, default=d.c)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_make_repulsion)

    p = sub.add_parser("eval", help="print the energy of a labeling")
    p.add_argument("energy")
    p.add_argument("labeling")
    p.set_defaults(func=cmd_eval)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (OSError, ValueError) as exc:
        print(f"lsaqpbo: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

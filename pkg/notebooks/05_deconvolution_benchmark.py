"""
Binary deconvolution benchmark
==============================

A binary disk is blurred by a 3x3 box filter and corrupted by Gaussian noise.
Recovering it is a dense non-submodular problem: every pair of pixels sharing
a window gets a positive weight. Ten seeds, mean final energy per method.
"""

# %%
import numpy as np

from lsaqpbo import (BoundVariant, PERMUTATION, build_deconvolution_energy, eval_energy,
                     ipfp_solve, lsa_aux_solve, lsa_tr_solve, synthesize_deconv_instance,
                     truncation_solve)
from lsaqpbo.baselines import icm_solve

methods = {
    "lsa-tr": lambda e: lsa_tr_solve(e).energy,
    "lsa-aux": lambda e: lsa_aux_solve(e).energy,
    "lsa-aux-p": lambda e: lsa_aux_solve(e, BoundVariant(PERMUTATION, 0)).energy,
    "truncation": lambda e: truncation_solve(e).energy,
    "icm": lambda e: icm_solve(e).energy,
    "ipfp": lambda e: ipfp_solve(e)[1].energy,
}
results = {m: [] for m in methods}
truth_e = []
for seed in range(10):
    img, truth = synthesize_deconv_instance(32, 32, "disk", 0.05, seed)
    e = build_deconvolution_energy(img)
    truth_e.append(eval_energy(e, truth))
    for m, f in methods.items():
        results[m].append(f(e))

# %%
for m, v in results.items():
    v = np.array(v)
    print(f"{m:11s} mean {v.mean():8.3f}  +/-2std {2 * v.std():.3f}")
print(f"{'truth':11s} mean {np.mean(truth_e):8.3f}")

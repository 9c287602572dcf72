"""
LSA-TR on a random non-submodular energy
========================================

Each iteration replaces the supermodular pairs by their tangent plane at the
current labeling and solves the resulting submodular model plus a Hamming
penalty. The trace records the penalty weight and the predicted and actual
reductions.
"""

# %%
from lsaqpbo import TrustRegionParams, brute_force_min, lsa_tr_solve, random_energy

e = random_energy(16, pair_density=0.5, sup_fraction=0.3, seed=11)
tr = lsa_tr_solve(e)
print(tr.to_csv(include_time=False))
print("final:", tr.energy, "termination:", tr.termination)
print("optimum:", brute_force_min(e)[1])

# %%
# A larger initial penalty starts with shorter steps.

tr2 = lsa_tr_solve(e, TrustRegionParams(lam0=50.0))
print(tr2.iterations, "iterations, final", tr2.energy)

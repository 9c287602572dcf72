"""
Quadratic binary energies
=========================

Building an energy, evaluating labelings and splitting it into its
submodular and supermodular parts.
"""

# %%
# An energy is a constant, one unary per variable and one weight per pair.
# Duplicate pairs are summed and ``p > q`` is swapped on construction.

import numpy as np

from lsaqpbo import BinaryEnergy, decompose, eval_energy
from lsaqpbo.energy import all_labelings, evaluate_many

e = BinaryEnergy.from_terms(
    3, unary=[1.0, -2.0, 0.5],
    pairs=[(0, 1, -1.5), (2, 1, 2.0), (0, 2, 0.25), (0, 1, 0.5)],
    constant=0.1)
print(e.pairs)
print("submodular:", e.is_submodular())

# %%
# Evaluate every labeling. ``all_labelings`` enumerates with s_0 as the most
# significant bit.

S = all_labelings(3)
for s, v in zip(S, evaluate_many(e, S)):
    print(s, round(v, 3))

# %%
# Pairs with positive weight are the supermodular part. The decomposition
# reconstructs the energy exactly.

dec = decompose(e)
print("sub pairs:", dec.sub.pairs)
print("sup pairs:", dec.sup_pairs)
s = np.array([1, 1, 0])
print(eval_energy(e, s), dec.eval(s))

# %% [markdown]
# # Isotropic flags in E10 / 2 E10
#
# The even unimodular lattice E10 reduces mod 2 to a plus-type quadratic
# space of dimension 10 over F2.  This script builds that space, computes
# the order of the group generated by its transvections, and counts
# flags of isotropic vectors pairing to 1 with each other.

# %%
import random

from enriques_bench.ortho_f2 import (
    QuadSpaceF2,
    all_transvections,
    census,
    census_counts,
    factorize,
    group_order,
    homogeneity_check,
    model_counts,
)

Q = QuadSpaceF2.e10()
print("isotropic nonzero vectors:", sum(1 for _ in Q.isotropic()))

# %% Group order from the 496 transvections
gens = all_transvections(Q)
order = group_order(gens)
print(len(gens), "generators, order", order, factorize(order))

# %% Extension counts along a standard flag
for n in (1, 2, 3, 10):
    _, raw, independent = census_counts(n, Q)
    print(f"n={n:2d}  independent={independent}  census={census(n, Q)}")

# %% The counts do not depend on the prefix
print(homogeneity_check(Q, 3, 20, random.Random(1)))

# %% Model counts
for name, value in model_counts(Q).items():
    print(f"{name:13s} {value:>10d}  {factorize(value)}")

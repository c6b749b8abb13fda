# %% [markdown]
# # Two double-cover families and their maps
#
# w^2 = F(y, z) with F linear in the parameters.  The maps are checked
# identically in the parameters, then at random points over finite fields.

# %%
import random

from enriques_bench.ohashi import (
    deck_map,
    eighth_root_map,
    map_order,
    order_four_map,
    preserves_equation,
    six_parameter_family,
    specialize_and_check,
    three_parameter_family,
)

S6 = six_parameter_family()
g1 = order_four_map(S6)
print(preserves_equation(S6, g1), map_order(g1), g1.power(2) == deck_map(S6))

# %%
S3 = three_parameter_family()
g2 = eighth_root_map(S3)
print(preserves_equation(S3, g2), map_order(g2), g2.power(4) == deck_map(S3))
print(g2.power(2).describe())

# %% Specializations
rng = random.Random(0)
print(all(specialize_and_check(S6, g1, [rng.randrange(5) for _ in S6.params], 5) for _ in range(10)))
print(all(specialize_and_check(S3, g2, [rng.randrange(17) for _ in S3.params], 17) for _ in range(10)))

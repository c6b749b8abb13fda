# %% [markdown]
# # Symmetries of two-marked Weierstrass families
#
# A family y^2 = x^3 + a2 x^2 + a4 x + a6 over the t-line is checked for
# irreducible fibers, then searched for automorphisms of 2-power order
# fixing the pair {0, infinity}.

# %%
import random

from enriques_bench.aut2 import enum_aut2, order_bound_survey
from enriques_bench.scalars import QQ, Cyclotomic, PrimeField
from enriques_bench.weierstrass import WeierstrassFamily, normalize, star_check

# %% Twelve nodal fibers
W = WeierstrassFamily(QQ, [0], [0, 0, 0, 0, 1], [1])
report = star_check(W)
print(report.verdict, report.type_counts(), "sum of orders:", report.total_order)

# %% A reducible example fails the check
bad = star_check(WeierstrassFamily(QQ, [0], [1, 0, 0, 0, 1], [0]))
print(bad.verdict, [(f.symbol, f.ord_delta, f.ord_c4) for f in bad.fibers])

# %% Normal form and automorphisms
N, chart, swapped = normalize(W)
print("chart:", chart, "swapped ends:", swapped)
K4 = Cyclotomic(4)
rep = enum_aut2(WeierstrassFamily(K4, [], [0, 0, 0, 0, 1], [1]))
print(rep.image_tag, rep.image_order)
rep = enum_aut2(WeierstrassFamily(QQ, [], [0], [1, 0, 0, 0, 0, 0, 1]))
print(rep.image_tag, rep.image_order)

# %% Image orders over a few fields
for F in (QQ, PrimeField(101), PrimeField(3)):
    print(order_bound_survey(F, 50, random.Random(0)).to_json())

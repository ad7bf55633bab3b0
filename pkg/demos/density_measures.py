# %% [markdown]
# Exact density measures
#
# Both mad/2 and the fractional arboricity are computed exactly, as
# fractions, from parametric min cuts. Each comes with the vertex set that
# attains it.

# %%
from fractions import Fraction

from pseudoforest import MultiGraph, fractional_arboricity, hypothesis_check, max_density, minimal_d

wheel = MultiGraph(6, [(0, i) for i in range(1, 6)] + [(i, i % 5 + 1) for i in range(1, 6)])
mad = max_density(wheel)
gamma = fractional_arboricity(wheel)
print("wheel W5: mad/2 =", mad.value, "on", sorted(mad.vertices))
print("          gamma =", gamma.value, "on", sorted(gamma.vertices))

# %% [markdown]
# The bound k + d/(d+k+1) climbs toward k+1 as d grows, so a density just
# below k+1 needs a large d.

# %%
for dens in (Fraction(3, 2), Fraction(5, 3), Fraction(19, 10), Fraction(2)):
    print(dens, "->", {k: minimal_d(dens, k) for k in (1, 2)})

ok, margin = hypothesis_check(wheel, 1, minimal_d(mad.value, 1))
print("hypothesis holds:", ok, "slack:", margin)

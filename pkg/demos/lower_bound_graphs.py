# %% [markdown]
# Graphs that show the bounds are tight
#
# A diameter example glues p colourful trees to a hub S. Its density,
# measured over the vertices outside S, matches a closed form exactly and
# does not depend on p.

# %%
from fractions import Fraction

from pseudoforest import DiamSpec, ZSpec, build_diameter_example, build_z_example, fractional_arboricity, predicted_density
from pseudoforest.constructions import hub_density, target_fraction

for p in (1, 2, 3):
    spec = DiamSpec(k=1, ell=1, alpha=1, delta=3, p=p, eps=Fraction(1))
    g, col = build_diameter_example(spec)
    print(f"p={p}: {g.n} vertices, {g.m} edges, e/|V-S| = {hub_density(g, col)}, predicted {predicted_density(spec)}")

# %% [markdown]
# Its fractional arboricity sits just above k + d/(d+k+1), inside the window
# that the depth delta controls.

# %%
low = spec.k + target_fraction(spec)
print("gamma =", fractional_arboricity(g).value, " window:", low, "..", low + spec.eps)
print("validity flags:", spec.validity())

# %% [markdown]
# The big-component family hangs a spider of d - z(k-1) + 1 edges and
# diameter 2(z+1) on each root.

# %%
spec = ZSpec(k=2, d=7, z=1, delta=3)
g, col = build_z_example(spec)
root = col.roots[0]
print(f"{g.n} vertices, {g.m} edges, density {hub_density(g, col)}")
print("root component edges:", len(col.red_parts[root]), " long path:", len(col.q_paths[root]))

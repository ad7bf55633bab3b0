# %% [markdown]
# Decomposing a multigraph
#
# K4 has mad/2 = 3/2. With k = 1 the smallest admissible d is 2, so K4 splits
# into one pseudoforest plus a red forest whose components have at most two
# edges. One extra parallel edge pushes the density past the bound and the
# engine answers with a certificate instead.

# %%
from itertools import combinations

from pseudoforest import (
    Certificate,
    MultiGraph,
    Params,
    decompose,
    max_density,
    minimal_d,
    verify_certificate,
    verify_decomposition,
)

k4 = MultiGraph(4, combinations(range(4), 2))
dens = max_density(k4).value
d = minimal_d(dens, 1)
print("mad/2 =", dens, " minimal d for k=1:", d)

# %%
p = Params(1, d)
dec = decompose(k4, p)
for i, cls in enumerate(dec.blue):
    print(f"blue class {i}:", [k4.edges[e] for e in sorted(cls)])
print("red forest:", [k4.edges[e] for e in sorted(dec.red)])
print("verified:", verify_decomposition(k4, dec, p).passed)

# %% [markdown]
# Too dense: the result is an exploration subgraph whose red edges are denser
# than d/(d+k+1). The verifier re-derives that inequality from scratch.

# %%
heavy = k4.add_edges([(0, 1)])
cert = decompose(heavy, p)
assert isinstance(cert, Certificate)
print("certificate on", sorted(cert.vertices), "red/vertices =", cert.red_count, "/", cert.vertex_count)
print("excess over d/(d+k+1):", cert.density_excess(p))
print("verified:", verify_certificate(heavy, cert, p).passed)

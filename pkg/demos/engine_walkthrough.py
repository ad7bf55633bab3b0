# %% [markdown]
# Inside the engine
#
# The engine starts from an orientation with outdegree at most k+1, turns
# one out-arc of every overloaded vertex red, then improves the red forest
# with exchanges and chain reversals until no bad component is left.

# %%
from itertools import combinations

from pseudoforest import MultiGraph, Params, initial_colouring, orient_bounded, repair_and_split
from pseudoforest.engine import Snapshot, exploration_subgraph, find_improving_move, potential, smallest_legal_order

g = MultiGraph(5, list(combinations(range(5), 2))[:9])
p = Params(1, 3)
o, split = repair_and_split(orient_bounded(g, p.k + 1), p.k)
f = initial_colouring(g, o, split, p.k)
print("red edges:", [g.edges[e] for e in f.red_edges()], " passive:", sorted(split.passive))

# %%
snap = Snapshot(f, p)
for cid, (comp, cls) in enumerate(zip(snap.components, snap.badness)):
    if comp.edge_count:
        print(f"component {cid}: {comp.edge_count} edges, diameter {snap.diameters[cid]}, {cls}")

# %% [markdown]
# Around a bad root the exploration subgraph follows blue arcs and red
# edges. Its smallest legal order gives sigma, the tie-breaker in the
# potential.

# %%
root = snap.worst_bad()
if root is None:
    print("already good")
else:
    h = exploration_subgraph(snap, root)
    order, sigma = smallest_legal_order(h)
    print("exploration vertices:", sorted(h.vertices), " sigma:", sigma)
    edges = snap.components[root].edge_indices
    print("potential:", potential(f, edges, p))
    print("improving move:", find_improving_move(f, edges, p))

# %% [markdown]
# Exhaustive searches
#
# For tiny graphs a backtracking search decides whether any decomposition
# meets a set of red constraints. Here it confirms that no colouring of a
# small diameter example keeps the red part a matching with short
# components, while allowing red degree two admits one.

# %%
import time

from pseudoforest import Constraints, DiamSpec, MultiGraph, Params, brute_force_search, build_diameter_example, check_lower_bound
from pseudoforest.search import lower_bound_constraints
from pseudoforest.verifier import verify_constraints

g, col = build_diameter_example(DiamSpec(k=1, ell=0, alpha=1, delta=3, p=3))
start = time.perf_counter()
print("D=1, diameter < 2:", check_lower_bound(g, 1, 1, 2, hub=col.hub), f"({time.perf_counter() - start:.2f}s)")

found = check_lower_bound(g, 1, 2, 3, hub=col.hub)
print("D=2, diameter < 3: witness re-verifies =", verify_constraints(g, found, 1, lower_bound_constraints(2, 3)).passed)

# %% [markdown]
# The same search, with the full set of red-forest bounds, serves as an oracle for
# the engine on small inputs.

# %%
k5 = MultiGraph(5, [(i, (i + 1) % 5) for i in range(5)] + [(i, (i + 2) % 5) for i in range(5)])
p = Params(1, 2)
print("K5 with k=1, d=2:", brute_force_search(k5, 1, Constraints.for_params(p)))

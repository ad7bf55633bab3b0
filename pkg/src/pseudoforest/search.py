"""Exhaustive and backtracking searches over (k+1)-colourings of the edges.

Colours ``0..k-1`` are the blue pseudoforests and colour ``k`` is red. Every
colour class must stay a pseudoforest; the red class also has to meet a
:class:`~pseudoforest.verifier.Constraints`.

``plain_search`` checks complete assignments only and serves as the ground
truth for the pruned searches. ``brute_force_search`` and
``check_lower_bound`` share one depth-first search with union-find
propagation, most-constrained-edge ordering and blue symmetry breaking.
"""

from __future__ import annotations

import itertools
import os
import time
from collections import deque
from dataclasses import dataclass

from .engine import Decomposition
from .graph import MultiGraph
from .verifier import Constraints, verify_constraints

DEFAULT_BRUTE_FORCE_CAP = 14
DEFAULT_LOWER_BOUND_CAP = 40


@dataclass(frozen=True)
class Unsat:
    nodes: int = 0


class SearchTimeout(RuntimeError):
    pass


class SearchCapExceeded(ValueError):
    pass


def _decomposition(k: int, colours: list[int]) -> Decomposition:
    blue = tuple(frozenset(e for e, c in enumerate(colours) if c == i) for i in range(k))
    return Decomposition(blue, frozenset(e for e, c in enumerate(colours) if c == k))


def plain_search(graph: MultiGraph, k: int, c: Constraints) -> Decomposition | Unsat:
    """Try all (k+1)^m assignments in lexicographic order; no pruning."""
    tried = 0
    for colours in itertools.product(range(k + 1), repeat=graph.m):
        tried += 1
        dec = _decomposition(k, list(colours))
        if verify_constraints(graph, dec, k, c).passed:
            return dec
    return Unsat(tried)


class _Classes:
    """Union-find with undo; each root knows whether its component has a cycle."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n
        self.cyclic = [False] * n
        self.trail: list[tuple] = []

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            x = self.parent[x]
        return x

    def can_add(self, u: int, v: int) -> bool:
        ru, rv = self.find(u), self.find(v)
        if ru == rv:
            return not self.cyclic[ru]
        return not (self.cyclic[ru] and self.cyclic[rv])

    def add(self, u: int, v: int) -> None:
        ru, rv = self.find(u), self.find(v)
        if ru == rv:
            self.trail.append(("cycle", ru))
            self.cyclic[ru] = True
            return
        if self.size[ru] < self.size[rv]:
            ru, rv = rv, ru
        self.trail.append(("union", ru, rv, self.cyclic[ru]))
        self.parent[rv] = ru
        self.size[ru] += self.size[rv]
        self.cyclic[ru] = self.cyclic[ru] or self.cyclic[rv]

    def undo(self) -> None:
        step = self.trail.pop()
        if step[0] == "cycle":
            self.cyclic[step[1]] = False
        else:
            _, ru, rv, was = step
            self.parent[rv] = rv
            self.size[ru] -= self.size[rv]
            self.cyclic[ru] = was


class _Search:
    def __init__(self, graph: MultiGraph, k: int, c: Constraints, first=(), deadline=None):
        self.g = graph
        self.k = k
        self.c = c
        self.deadline = deadline
        self.classes = [_Classes(graph.n) for _ in range(k + 1)]
        self.colour = [-1] * graph.m
        self.red_adj: list[list[int]] = [[] for _ in range(graph.n)]
        self.red_deg = [0] * graph.n
        self.first = set(first)
        self.nodes = 0
        self.max_blue = -1

    # -- red component bookkeeping ------------------------------------------

    def _component(self, start: int) -> tuple[set[int], int]:
        seen = {start}
        queue = deque([start])
        edges = set()
        while queue:
            x = queue.popleft()
            for e in self.red_adj[x]:
                edges.add(e)
                y = self.g.other(e, x)
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return seen, len(edges)

    def _ecc(self, start: int) -> tuple[int, int]:
        dist = {start: 0}
        queue = deque([start])
        far = start
        while queue:
            x = queue.popleft()
            if dist[x] > dist[far]:
                far = x
            for e in self.red_adj[x]:
                y = self.g.other(e, x)
                if y not in dist:
                    dist[y] = dist[x] + 1
                    queue.append(y)
        return far, dist[far]

    def _diameter(self, verts: set[int], cyclic: bool) -> int:
        if not cyclic:
            a, _ = self._ecc(next(iter(verts)))
            return self._ecc(a)[1]
        return max(self._ecc(x)[1] for x in verts)

    def _red_ok_after(self, u: int, v: int) -> bool:
        """Red constraints on the component of the edge just added at u, v."""
        c = self.c
        if c.max_red_degree is not None and max(self.red_deg[u], self.red_deg[v]) > c.max_red_degree:
            return False
        if c.max_diam is None and not c.size_caps and c.max_component_edges is None:
            return True
        verts, edges = self._component(u)
        if c.max_component_edges is not None and edges > c.max_component_edges:
            return False
        cyclic = edges >= len(verts)
        diam = self._diameter(verts, cyclic)
        # an acyclic part may still close a cycle, which can halve its diameter
        floor = diam if cyclic or c.red_forest else (diam + 1) // 2
        if c.max_diam is not None and floor > c.max_diam:
            return False
        return not any(edges >= f and floor > cap for f, cap in c.size_caps)

    def _exact_ok(self) -> bool:
        """Exact red-diameter check once every edge is coloured (pruning only bounds it)."""
        c = self.c
        if c.red_forest or (c.max_diam is None and not c.size_caps):
            return True
        seen: set[int] = set()
        for x in range(self.g.n):
            if x in seen or not self.red_adj[x]:
                continue
            verts, edges = self._component(x)
            seen |= verts
            diam = self._diameter(verts, edges >= len(verts))
            if c.max_diam is not None and diam > c.max_diam:
                return False
            if any(edges >= f and diam > cap for f, cap in c.size_caps):
                return False
        return True

    # -- assignment -------------------------------------------------------------

    def _feasible(self, e: int, colour: int) -> bool:
        u, v = self.g.edges[e]
        if not self.classes[colour].can_add(u, v):
            return False
        if colour == self.k:
            if self.c.red_forest and self.classes[colour].find(u) == self.classes[colour].find(v):
                return False
            limit = self.c.max_red_degree
            if limit is not None and self.red_deg[u] + 1 + (u == v) > limit:
                return False
            if limit is not None and u != v and self.red_deg[v] + 1 > limit:
                return False
        return True

    def _assign(self, e: int, colour: int) -> bool:
        u, v = self.g.edges[e]
        self.colour[e] = colour
        self.classes[colour].add(u, v)
        if colour != self.k:
            return True
        self.red_adj[u].append(e)
        if v != u:
            self.red_adj[v].append(e)
        self.red_deg[u] += 1
        self.red_deg[v] += 1
        return self._red_ok_after(u, v)

    def _unassign(self, e: int) -> None:
        u, v = self.g.edges[e]
        colour = self.colour[e]
        self.classes[colour].undo()
        if colour == self.k:
            self.red_adj[u].pop()
            if v != u:
                self.red_adj[v].pop()
            self.red_deg[u] -= 1
            self.red_deg[v] -= 1
        self.colour[e] = -1

    def _options(self, e: int) -> list[int]:
        blues = range(min(self.k, self.max_blue + 2))
        return [c for c in (*blues, self.k) if self._feasible(e, c)]

    def run(self) -> list[int] | None:
        return self._dfs()

    def _dfs(self) -> list[int] | None:
        self.nodes += 1
        if self.deadline is not None and self.nodes % 256 == 0 and time.monotonic() > self.deadline:
            raise SearchTimeout(f"search exceeded its time budget after {self.nodes} nodes")
        best, best_opts = None, None
        for e in range(self.g.m):
            if self.colour[e] != -1:
                continue
            opts = self._options(e)
            if not opts:
                return None
            key = (len(opts), e not in self.first, e)
            if best is None or key < best:
                best, best_opts = key, (e, opts)
        if best is None:
            return list(self.colour) if self._exact_ok() else None
        e, opts = best_opts
        for colour in opts:
            saved = self.max_blue
            if colour < self.k:
                self.max_blue = max(self.max_blue, colour)
            if self._assign(e, colour):
                found = self._dfs()
                if found is not None:
                    return found
            self._unassign(e)
            self.max_blue = saved
        return None


def brute_force_search(
    graph: MultiGraph, k: int, c: Constraints, cap: int | None = None
) -> Decomposition | Unsat:
    """Exhaustive search with pseudoforest and red-constraint pruning."""
    cap = int(os.environ.get("PSEUDOFOREST_BRUTE_CAP", DEFAULT_BRUTE_FORCE_CAP)) if cap is None else cap
    if graph.m > cap:
        raise SearchCapExceeded(f"{graph.m} edges exceeds the brute-force cap of {cap}")
    if k < 0:
        raise ValueError("k must be non-negative")
    s = _Search(graph, k, c)
    found = s.run()
    return Unsat(s.nodes) if found is None else _decomposition(k, found)


def lower_bound_constraints(D: int, diam_strict_bound: int, size_floor: int | None = None) -> Constraints:
    if size_floor is None:
        return Constraints(red_forest=False, max_diam=diam_strict_bound - 1, max_red_degree=D)
    return Constraints(red_forest=False, max_red_degree=D, size_caps=((size_floor, diam_strict_bound - 1),))


def check_lower_bound(
    graph: MultiGraph,
    k: int,
    D: int,
    diam_strict_bound: int,
    size_floor: int | None = None,
    hub: tuple[int, ...] = (),
    timeout: float | None = None,
    cap: int | None = None,
) -> Decomposition | Unsat:
    """Look for k blue pseudoforests plus a red pseudoforest of max degree D whose
    components all have diameter below ``diam_strict_bound`` (with
    ``size_floor``: only components with at least that many edges are limited).

    Edges touching ``hub`` are branched on first. Returns a witness or Unsat;
    raises :class:`SearchTimeout` when ``timeout`` seconds pass.
    """
    cap = int(os.environ.get("PSEUDOFOREST_SEARCH_CAP", DEFAULT_LOWER_BOUND_CAP)) if cap is None else cap
    if graph.m > cap:
        raise SearchCapExceeded(f"{graph.m} edges exceeds the search cap of {cap}")
    if timeout is None and "PSEUDOFOREST_SEARCH_TIMEOUT" in os.environ:
        timeout = float(os.environ["PSEUDOFOREST_SEARCH_TIMEOUT"])
    deadline = None if timeout is None else time.monotonic() + timeout
    hub = set(hub)
    first = [e for e, (u, v) in enumerate(graph.edges) if u in hub or v in hub]
    c = lower_bound_constraints(D, diam_strict_bound, size_floor)
    s = _Search(graph, k, c, first, deadline)
    found = s.run()
    return Unsat(s.nodes) if found is None else _decomposition(k, found)


def pruned_search(graph: MultiGraph, k: int, c: Constraints) -> Decomposition | Unsat:
    """The pruned search without a size cap (for soundness tests)."""
    s = _Search(graph, k, c)
    found = s.run()
    return Unsat(s.nodes) if found is None else _decomposition(k, found)

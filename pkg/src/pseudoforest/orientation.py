"""Bounded-outdegree orientations and the active/passive region split.

A graph splits into c pseudoforests exactly when it has an orientation with
every outdegree at most c. ``orient_bounded`` finds one by augmenting-path
reversal (equivalently, max-flow with unit edge supplies and vertex capacity c)
or returns a dense vertex set proving none exists.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .colouring import RED, RedBlueColouring
from .graph import MultiGraph


@dataclass(frozen=True)
class Orientation:
    graph: MultiGraph
    tails: tuple[int, ...]

    def __post_init__(self):
        if len(self.tails) != self.graph.m:
            raise ValueError("one tail per edge required")
        for e, t in enumerate(self.tails):
            if t not in self.graph.edges[e]:
                raise ValueError(f"tail {t} is not an endpoint of edge {e}")

    def head(self, e: int) -> int:
        return self.graph.other(e, self.tails[e])

    def arcs(self) -> list[tuple[int, int]]:
        return [(t, self.head(e)) for e, t in enumerate(self.tails)]

    def outdegrees(self) -> list[int]:
        out = [0] * self.graph.n
        for t in self.tails:
            out[t] += 1
        return out

    def out_edges(self) -> list[list[int]]:
        lists: list[list[int]] = [[] for _ in range(self.graph.n)]
        for e, t in enumerate(self.tails):
            lists[t].append(e)
        return lists


@dataclass(frozen=True)
class InfeasibleWitness:
    """Vertex set X with e(G[X]) > c * |X|; no outdegree-c orientation exists."""

    vertices: frozenset[int]
    edge_count: int
    bound: int


@dataclass(frozen=True)
class RegionSplit:
    active: frozenset[int]
    passive: frozenset[int]


def _find_path(graph, tails, out_edges, start, is_target):
    """BFS along out-arcs from ``start``; edge path to the first target or None."""
    prev_edge = {start: None}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        if x != start and is_target(x):
            path = []
            while prev_edge[x] is not None:
                e = prev_edge[x]
                path.append(e)
                x = tails[e]
            return path[::-1], None
        for e in out_edges[x]:
            y = graph.other(e, x)
            if y not in prev_edge:
                prev_edge[y] = e
                queue.append(y)
    return None, set(prev_edge)


def _reverse(graph, tails, out_edges, path):
    for e in path:
        t = tails[e]
        h = graph.other(e, t)
        out_edges[t].remove(e)
        out_edges[h].append(e)
        tails[e] = h


def orient_bounded(graph: MultiGraph, c: int) -> Orientation | InfeasibleWitness:
    if c < 1:
        raise ValueError("outdegree bound must be at least 1")
    tails = [u for u, _ in graph.edges]
    out_edges: list[list[int]] = [[] for _ in range(graph.n)]
    for e, t in enumerate(tails):
        out_edges[t].append(e)
    for x in range(graph.n):
        while len(out_edges[x]) > c:
            path, reach = _find_path(
                graph, tails, out_edges, x, lambda y: len(out_edges[y]) < c
            )
            if path is None:
                # reach is closed under out-arcs, every member has outdegree >= c
                edges = graph.induced_edges(reach)
                return InfeasibleWitness(frozenset(reach), len(edges), c)
            _reverse(graph, tails, out_edges, path)
    return Orientation(graph, tuple(tails))


def _reaching(graph: MultiGraph, tails, targets: set[int]) -> set[int]:
    """Vertices with a directed path into ``targets`` (targets included)."""
    into: list[list[int]] = [[] for _ in range(graph.n)]
    for e, t in enumerate(tails):
        into[graph.other(e, t)].append(t)
    seen = set(targets)
    queue = deque(targets)
    while queue:
        y = queue.popleft()
        for x in into[y]:
            if x not in seen:
                seen.add(x)
                queue.append(x)
    return seen


def repair_and_split(o: Orientation, k: int) -> tuple[Orientation, RegionSplit]:
    """Move surplus from outdegree-(k+1) vertices to deficient ones, then split.

    Afterwards no vertex of outdegree k+1 reaches a vertex of outdegree < k.
    Passive vertices are those that do reach one; they have outdegree <= k and
    every arc into the passive region starts inside it.
    """
    graph = o.graph
    if max(o.outdegrees(), default=0) > k + 1:
        raise ValueError(f"orientation has a vertex of outdegree above {k + 1}")
    tails = list(o.tails)
    out_edges: list[list[int]] = [[] for _ in range(graph.n)]
    for e, t in enumerate(tails):
        out_edges[t].append(e)
    while True:
        deficient = {x for x in range(graph.n) if len(out_edges[x]) < k}
        reaching = _reaching(graph, tails, deficient)
        surplus = [x for x in sorted(reaching) if len(out_edges[x]) == k + 1]
        if not surplus:
            break
        path, _ = _find_path(
            graph, tails, out_edges, surplus[0], lambda y: len(out_edges[y]) < k
        )
        _reverse(graph, tails, out_edges, path)
    passive = frozenset(reaching)
    active = frozenset(range(graph.n)) - passive
    return Orientation(graph, tuple(tails)), RegionSplit(active, passive)


def initial_colouring(
    graph: MultiGraph, o: Orientation, split: RegionSplit, k: int
) -> RedBlueColouring:
    """Blue everywhere except the lowest-index out-arc of each outdegree-(k+1) vertex."""
    tails = list(o.tails)
    for x, edges in enumerate(o.out_edges()):
        if len(edges) == k + 1:
            if x in split.passive:
                raise ValueError(f"passive vertex {x} has outdegree {k + 1}")
            tails[min(edges)] = RED
        elif len(edges) > k + 1:
            raise ValueError(f"vertex {x} has outdegree above {k + 1}")
    return RedBlueColouring(graph, k, tails, split.passive)

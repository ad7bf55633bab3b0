"""Exact maximum subgraph densities.

``max_density`` returns mad(G)/2 = max e(X)/|X| and ``fractional_arboricity``
returns max e(X)/(|X|-1) over |X| >= 2, both as :class:`fractions.Fraction`
together with a maximizing vertex set.

Both use a parametric search: for a candidate ratio p/q the question "is there
X with q*e(X) - p*|X| > 0" is a maximum-weight closure problem (edges are
projects worth q that require their endpoints, each endpoint costs p), solved
with a single s-t minimum cut. The ratio of the maximizing set becomes the next
candidate, which converges to the exact optimum in a handful of cuts.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import networkx as nx

from .graph import EdgeSubgraph, MultiGraph


@dataclass(frozen=True)
class DensityWitness:
    value: Fraction
    vertices: frozenset[int]
    subgraph: EdgeSubgraph

    @property
    def edge_count(self) -> int:
        return len(self.subgraph.members)


def _witness(graph: MultiGraph, xs: Iterable[int], value: Fraction) -> DensityWitness:
    xs = frozenset(xs)
    sub = EdgeSubgraph(graph, frozenset(graph.induced_edges(xs)), xs)
    return DensityWitness(value, xs, sub)


def _best_closure(
    graph: MultiGraph,
    p: int,
    q: int,
    forced: Iterable[int] = (),
    excluded: Iterable[int] = (),
) -> tuple[int, set[int]]:
    """max over X (forced within X, excluded outside) of q*e(X) - p*|X|."""
    excluded = set(excluded)
    forced = set(forced)
    pairs: Counter[tuple[int, int]] = Counter()
    for u, v in graph.edges:
        if u in excluded or v in excluded:
            continue
        pairs[(min(u, v), max(u, v))] += 1
    net = nx.DiGraph()
    net.add_node("s")
    net.add_node("t")
    total = 0
    for (u, v), mult in pairs.items():
        node = ("e", u, v)
        net.add_edge("s", node, capacity=q * mult)
        net.add_edge(node, ("v", u))
        net.add_edge(node, ("v", v))
        total += q * mult
    for x in range(graph.n):
        if x in excluded:
            continue
        net.add_edge(("v", x), "t", capacity=p)
        if x in forced:
            net.add_edge("s", ("v", x))
    cut, (side, _) = nx.minimum_cut(net, "s", "t")
    chosen = {node[1] for node in side if isinstance(node, tuple) and node[0] == "v"}
    return total - cut, chosen


def _edges_within(graph: MultiGraph, xs: set[int]) -> int:
    return sum(1 for u, v in graph.edges if u in xs and v in xs)


def max_density(graph: MultiGraph) -> DensityWitness:
    """Exact max over nonempty vertex sets X of e(X)/|X| (this is mad(G)/2)."""
    if graph.n == 0:
        raise ValueError("max_density needs at least one vertex")
    best = set(range(graph.n))
    ratio = Fraction(graph.m, graph.n)
    while True:
        value, chosen = _best_closure(graph, ratio.numerator, ratio.denominator)
        if value <= 0:
            return _witness(graph, best, ratio)
        best = chosen
        ratio = Fraction(_edges_within(graph, chosen), len(chosen))


def _best_arboricity_set(graph: MultiGraph, ratio: Fraction) -> tuple[int, set[int]]:
    """max over |X| >= 2 of q*e(X) - p*(|X| - 1) for ratio = p/q."""
    p, q = ratio.numerator, ratio.denominator
    has_loops = any(u == v for u, v in graph.edges)
    best_value, best_set = 0, set()
    if not has_loops:
        # Singletons score 0 here, so a positive optimum always has |X| >= 2.
        for x in range(graph.n):
            value, chosen = _best_closure(graph, p, q, forced=[x], excluded=range(x))
            value += p
            if value > best_value:
                best_value, best_set = value, chosen
        return best_value, best_set
    # With loops a singleton can score positively, so force two members:
    # x is the smallest and y the second smallest vertex of X.
    for x in range(graph.n):
        for y in range(x + 1, graph.n):
            excluded = [w for w in range(y) if w != x]
            value, chosen = _best_closure(graph, p, q, forced=[x, y], excluded=excluded)
            value += p
            if value > best_value:
                best_value, best_set = value, chosen
    return best_value, best_set


def fractional_arboricity(graph: MultiGraph) -> DensityWitness:
    """Exact max over vertex sets X with |X| >= 2 of e(X)/(|X| - 1)."""
    if graph.n < 2:
        raise ValueError("fractional arboricity needs at least two vertices")
    if graph.m == 0:
        raise ValueError("fractional arboricity needs at least one edge")
    best = set(range(graph.n))
    ratio = Fraction(graph.m, graph.n - 1)
    while True:
        value, chosen = _best_arboricity_set(graph, ratio)
        if value <= 0:
            return _witness(graph, best, ratio)
        best = chosen
        ratio = Fraction(_edges_within(graph, chosen), len(chosen) - 1)


def density_bound(k: int, d: int) -> Fraction:
    """The admissible value of mad(G)/2: k + d/(d+k+1)."""
    return k + Fraction(d, d + k + 1)


def hypothesis_check(graph: MultiGraph, k: int, d: int) -> tuple[bool, Fraction]:
    """Whether mad(G) <= 2(k + d/(d+k+1)); also returns bound - mad(G)/2."""
    if graph.n == 0:
        return True, density_bound(k, d)
    margin = density_bound(k, d) - max_density(graph).value
    return margin >= 0, margin


def minimal_d(density: Fraction, k: int) -> int | None:
    """Smallest d >= 1 with density <= k + d/(d+k+1); None if no d works."""
    beta = density - k
    if beta <= 0:
        return 1
    if beta >= 1:
        return None
    # d/(d+k+1) >= beta  <=>  d >= beta(k+1)/(1-beta)
    need = beta * (k + 1) / (1 - beta)
    d = max(1, -(-need.numerator // need.denominator))
    assert density <= density_bound(k, d)
    return d

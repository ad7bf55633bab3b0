"""Red-blue colouring state shared by the orientation and engine modules."""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph import Component, MultiGraph, components_of

RED = -1


@dataclass
class RedBlueColouring:
    """Each edge is either a blue arc (stored as its tail) or red (``RED``).

    Active vertices carry exactly ``k`` blue out-arcs. Passive vertices carry
    at most ``k`` and never touch a red edge; they are never modified.
    """

    graph: MultiGraph
    k: int
    tails: list[int]
    passive: frozenset[int] = field(default_factory=frozenset)

    def copy(self) -> "RedBlueColouring":
        return RedBlueColouring(self.graph, self.k, list(self.tails), self.passive)

    def is_red(self, e: int) -> bool:
        return self.tails[e] == RED

    def head(self, e: int) -> int:
        return self.graph.other(e, self.tails[e])

    def red_edges(self) -> list[int]:
        return [e for e, t in enumerate(self.tails) if t == RED]

    def blue_edges(self) -> list[int]:
        return [e for e, t in enumerate(self.tails) if t != RED]

    def blue_outdegrees(self) -> list[int]:
        out = [0] * self.graph.n
        for t in self.tails:
            if t != RED:
                out[t] += 1
        return out

    def active(self) -> list[int]:
        return [x for x in range(self.graph.n) if x not in self.passive]

    def red_components(self) -> list[Component]:
        """Red components over all vertices; isolated vertices have zero edges."""
        return components_of(self.graph, self.red_edges(), range(self.graph.n))

    def invariant_violations(self) -> list[str]:
        problems = []
        out = self.blue_outdegrees()
        for x in range(self.graph.n):
            if x in self.passive:
                if out[x] > self.k:
                    problems.append(f"passive vertex {x} has {out[x]} blue out-arcs")
            elif out[x] != self.k:
                problems.append(f"active vertex {x} has {out[x]} blue out-arcs, expected {self.k}")
        for e in self.red_edges():
            u, v = self.graph.edges[e]
            if u in self.passive or v in self.passive:
                problems.append(f"red edge {e} touches the passive region")
        for comp in self.red_components():
            if comp.edge_count > comp.vertex_count:
                problems.append(f"red component at {comp.min_vertex} has two cycles")
        return problems

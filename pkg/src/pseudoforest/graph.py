"""Multigraphs with loops and parallel edges, plus component utilities.

Edges are addressed by their index in the edge list; every other module
refers to edges this way, so the list order of a :class:`MultiGraph` is never
changed after construction.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence


class GraphParseError(ValueError):
    """Base class for edge-list parse failures; carries the offending line."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + message)


class MalformedLineError(GraphParseError):
    pass


class VertexRangeError(GraphParseError):
    pass


class EdgeCountError(GraphParseError):
    pass


@dataclass(frozen=True)
class MultiGraph:
    n: int
    edges: tuple[tuple[int, int], ...]

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        edges = tuple((int(u), int(v)) for u, v in edges)
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        for i, (u, v) in enumerate(edges):
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {i} = ({u}, {v}) out of range for n={n}")
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "edges", edges)

    @property
    def m(self) -> int:
        return len(self.edges)

    def other(self, e: int, x: int) -> int:
        """Endpoint of edge ``e`` opposite to ``x`` (``x`` itself for a loop)."""
        u, v = self.edges[e]
        return v if u == x else u

    def incidence(self) -> list[list[int]]:
        """Per-vertex list of incident edge indices; a loop is listed once."""
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for i, (u, v) in enumerate(self.edges):
            inc[u].append(i)
            if v != u:
                inc[v].append(i)
        return inc

    def induced_edges(self, vertices: Iterable[int]) -> list[int]:
        vs = set(vertices)
        return [i for i, (u, v) in enumerate(self.edges) if u in vs and v in vs]

    def add_edges(self, extra: Iterable[Sequence[int]]) -> "MultiGraph":
        return MultiGraph(self.n, list(self.edges) + [tuple(e) for e in extra])

    def to_text(self) -> str:
        lines = [f"{self.n} {self.m}"]
        lines.extend(f"{u} {v}" for u, v in self.edges)
        return "\n".join(lines) + "\n"


def parse_graph(text: str | bytes) -> MultiGraph:
    """Read the ``n m`` header + ``u v`` lines edge-list format.

    Blank lines and lines starting with ``#`` are skipped.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    header: tuple[int, int] | None = None
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise MalformedLineError(f"expected two integers, got {line!r}", lineno)
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise MalformedLineError(f"non-integer token in {line!r}", lineno) from None
        if header is None:
            if a < 0 or b < 0:
                raise MalformedLineError("negative header value", lineno)
            header = (a, b)
            continue
        n = header[0]
        if not (0 <= a < n and 0 <= b < n):
            raise VertexRangeError(f"vertex id out of range [0, {n}) in {line!r}", lineno)
        if len(edges) == header[1]:
            raise EdgeCountError(f"more than the declared {header[1]} edges", lineno)
        edges.append((a, b))
    if header is None:
        raise MalformedLineError("missing 'n m' header")
    if len(edges) != header[1]:
        raise EdgeCountError(f"header declares {header[1]} edges, found {len(edges)}")
    return MultiGraph(header[0], edges)


@dataclass(frozen=True)
class EdgeSubgraph:
    parent: MultiGraph
    members: frozenset[int]
    extra_vertices: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(self.members))
        object.__setattr__(self, "extra_vertices", frozenset(self.extra_vertices))
        bad = [e for e in self.members if not 0 <= e < self.parent.m]
        if bad:
            raise ValueError(f"edge indices {sorted(bad)} not in parent graph")

    def vertices(self) -> set[int]:
        vs = set(self.extra_vertices)
        for e in self.members:
            vs.update(self.parent.edges[e])
        return vs


@dataclass(frozen=True)
class Component:
    vertices: frozenset[int]
    edge_indices: frozenset[int]

    @property
    def edge_count(self) -> int:
        return len(self.edge_indices)

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    @property
    def is_cyclic(self) -> bool:
        return self.edge_count >= self.vertex_count

    @property
    def min_vertex(self) -> int:
        return min(self.vertices)


class _DSU:
    def __init__(self, items: Iterable[int]):
        self.parent = {x: x for x in items}

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


def components_of(
    graph: MultiGraph, edge_ids: Iterable[int], vertices: Iterable[int] = ()
) -> list[Component]:
    """Connected components of the edges ``edge_ids`` plus isolated ``vertices``.

    Ordered by minimum vertex id.
    """
    edge_ids = list(edge_ids)
    vs = set(vertices)
    for e in edge_ids:
        vs.update(graph.edges[e])
    dsu = _DSU(vs)
    for e in edge_ids:
        dsu.union(*graph.edges[e])
    vgroups: dict[int, set[int]] = {}
    for x in vs:
        vgroups.setdefault(dsu.find(x), set()).add(x)
    egroups: dict[int, set[int]] = {r: set() for r in vgroups}
    for e in edge_ids:
        egroups[dsu.find(graph.edges[e][0])].add(e)
    comps = [Component(frozenset(vgroups[r]), frozenset(egroups[r])) for r in vgroups]
    comps.sort(key=lambda c: c.min_vertex)
    return comps


def components(sub: EdgeSubgraph) -> list[Component]:
    return components_of(sub.parent, sub.members, sub.extra_vertices)


def _adjacency(graph: MultiGraph, edge_ids: Iterable[int]) -> dict[int, list[int]]:
    adj: dict[int, list[int]] = {}
    for e in edge_ids:
        u, v = graph.edges[e]
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    return adj


def _bfs_far(adj: dict[int, list[int]], start: int) -> tuple[int, int]:
    dist = {start: 0}
    queue = deque([start])
    far = start
    while queue:
        x = queue.popleft()
        if dist[x] > dist[far]:
            far = x
        for y in adj.get(x, ()):
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    return far, dist[far]


def tree_diameter(graph: MultiGraph, comp: Component) -> int:
    """Longest path length (in edges) of an acyclic component, by double BFS."""
    if comp.is_cyclic:
        raise ValueError("tree_diameter needs an acyclic component")
    if comp.edge_count == 0:
        return 0
    adj = _adjacency(graph, comp.edge_indices)
    a, _ = _bfs_far(adj, comp.min_vertex)
    _, length = _bfs_far(adj, a)
    return length


def eccentricity_diameter(graph: MultiGraph, comp: Component) -> int:
    """Exact diameter of any connected component via BFS from every vertex."""
    adj = _adjacency(graph, comp.edge_indices)
    return max((_bfs_far(adj, x)[1] for x in comp.vertices), default=0)


class ClassKind(str, Enum):
    FOREST = "forest"
    PSEUDOFOREST = "pseudoforest-not-forest"
    NEITHER = "neither"


def class_kind(sub: EdgeSubgraph) -> ClassKind:
    comps = components(sub)
    if all(not c.is_cyclic for c in comps):
        return ClassKind.FOREST
    if all(c.edge_count <= c.vertex_count for c in comps):
        return ClassKind.PSEUDOFOREST
    return ClassKind.NEITHER


def edge_class_kind(graph: MultiGraph, edge_ids: Iterable[int]) -> ClassKind:
    return class_kind(EdgeSubgraph(graph, frozenset(edge_ids)))


def is_star(graph: MultiGraph, comp: Component) -> bool:
    """A tree in which one vertex meets every edge (single vertices count)."""
    if comp.is_cyclic:
        return False
    if comp.edge_count <= 1:
        return True
    deg: dict[int, int] = {}
    for e in comp.edge_indices:
        for x in set(graph.edges[e]):
            deg[x] = deg.get(x, 0) + 1
    return max(deg.values()) == comp.edge_count

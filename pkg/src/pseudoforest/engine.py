"""Augmentation engine: turns a red-blue colouring into a good decomposition.

The red class starts as an arbitrary pseudoforest. While some red component is
bad, the engine explores the graph around it (the exploration subgraph),
and searches for an exchange or chain reversal that strictly lowers the
potential: the histograms of bad components, then the smallest legal order of
the root. When no move helps, the exploration subgraph is returned as a
certificate that the density hypothesis fails.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import zip_longest
from typing import Iterator, Union

from .colouring import RED, RedBlueColouring
from .graph import Component, MultiGraph
from .orientation import (
    InfeasibleWitness,
    initial_colouring,
    orient_bounded,
    repair_and_split,
)

DEFAULT_MAX_ITERATIONS = 10**6


@dataclass(frozen=True)
class Params:
    k: int
    d: int

    def __post_init__(self):
        if self.k < 1 or self.d < 1:
            raise ValueError("k and d must be positive")

    @property
    def ell(self) -> int:
        return (self.d - 1) // (self.k + 1)

    @property
    def diam_bound(self) -> int:
        """Largest diameter a good red component may have."""
        if self.d % (self.k + 1) == 1 % (self.k + 1):
            return 2 * self.ell + 1
        return 2 * self.ell + 2

    def size_floor(self, z: int) -> int:
        """Edge count from which a component must have diameter at most 2z."""
        return self.d - z * (self.k - 1) + 1


# -- classification ----------------------------------------------------------


@dataclass(frozen=True)
class BadClass:
    """``level`` is the first failing clause 1..5, or 0 when not bad."""

    level: int
    z: int | None = None

    @property
    def is_bad(self) -> bool:
        return self.level > 0

    def __str__(self) -> str:
        if not self.level:
            return "NotBad"
        return f"Bad{self.level}" + (f"(z={self.z})" if self.z is not None else "")


NOT_BAD = BadClass(0)


def classify_component(comp: Component, diam: int | None, p: Params) -> BadClass:
    if comp.is_cyclic:
        return BadClass(1)
    e = comp.edge_count
    if e > p.d:
        return BadClass(2)
    if diam is None:
        raise ValueError("acyclic component needs its diameter")
    if diam > 2 * p.ell + 2:
        return BadClass(3)
    if p.d % (p.k + 1) == 1 % (p.k + 1) and diam == 2 * p.ell + 2:
        return BadClass(4)
    for z in range(1, p.ell + 1):
        if diam > 2 * z and e >= p.size_floor(z):
            return BadClass(5, z)
    return NOT_BAD


def small(comp: Component, p: Params) -> bool:
    return not comp.is_cyclic and comp.edge_count <= p.ell


# -- snapshots of a colouring ------------------------------------------------


class Snapshot:
    """Red components, diameters, badness and blue adjacency of one colouring."""

    def __init__(self, f: RedBlueColouring, p: Params):
        self.f = f
        self.p = p
        g = f.graph
        n = g.n
        self.red_adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        self.blue_out: list[list[int]] = [[] for _ in range(n)]
        self.blue_in: list[list[int]] = [[] for _ in range(n)]
        for e, t in enumerate(f.tails):
            u, v = g.edges[e]
            if t == RED:
                self.red_adj[u].append((e, v))
                if v != u:
                    self.red_adj[v].append((e, u))
            else:
                self.blue_out[t].append(e)
                self.blue_in[u if t == v else v].append(e)

        self.comp_of = [-1] * n
        self.components: list[Component] = []
        for s in range(n):
            if self.comp_of[s] != -1:
                continue
            cid = len(self.components)
            self.comp_of[s] = cid
            verts, edges = [s], set()
            queue = deque([s])
            while queue:
                x = queue.popleft()
                for e, y in self.red_adj[x]:
                    edges.add(e)
                    if self.comp_of[y] == -1:
                        self.comp_of[y] = cid
                        verts.append(y)
                        queue.append(y)
            self.components.append(Component(frozenset(verts), frozenset(edges)))

        self.diameters: list[int | None] = []
        self.badness: list[BadClass] = []
        for comp in self.components:
            diam = None
            if comp.is_cyclic:
                cls = BadClass(1)
            elif comp.edge_count <= 2 * p.ell + 1:
                # too few edges for any clause; diameter still recorded
                diam = self._diameter(comp) if comp.edge_count > 1 else comp.edge_count
                cls = NOT_BAD
            else:
                diam = self._diameter(comp)
                cls = classify_component(comp, diam, p)
            self.diameters.append(diam)
            self.badness.append(cls)

    def _far(self, start: int) -> tuple[int, int]:
        dist = {start: 0}
        queue = deque([start])
        far = start
        while queue:
            x = queue.popleft()
            if dist[x] > dist[far]:
                far = x
            for _, y in self.red_adj[x]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    queue.append(y)
        return far, dist[far]

    def _diameter(self, comp: Component) -> int:
        a, _ = self._far(comp.min_vertex)
        return self._far(a)[1]

    def histograms(self) -> tuple[tuple[int, ...], ...]:
        n = self.f.graph.n
        hist = [[0] * (n + 1) for _ in range(5)]
        for comp, cls in zip(self.components, self.badness):
            if cls.is_bad:
                hist[cls.level - 1][n - comp.edge_count] += 1
        return tuple(tuple(h) for h in hist)

    def bad_components(self) -> list[int]:
        return [i for i, cls in enumerate(self.badness) if cls.is_bad]

    def worst_bad(self) -> int | None:
        bad = self.bad_components()
        if not bad:
            return None
        return min(
            bad,
            key=lambda i: (
                self.badness[i].level,
                -self.components[i].edge_count,
                self.components[i].min_vertex,
            ),
        )

    def find_component(self, edges: frozenset[int]) -> int | None:
        """Index of the red component with exactly this (nonempty) edge set."""
        e = next(iter(edges))
        if self.f.tails[e] != RED:
            return None
        cid = self.comp_of[self.f.graph.edges[e][0]]
        return cid if self.components[cid].edge_indices == edges else None


# -- exploration subgraph and legal orders ----------------------------------


@dataclass(frozen=True)
class ExplorationSubgraph:
    root: int
    vertices: frozenset[int]
    edges: tuple[int, ...]
    component_ids: tuple[int, ...]
    snapshot: Snapshot = field(repr=False, compare=False)

    @property
    def red_edge_count(self) -> int:
        return sum(1 for e in self.edges if self.snapshot.f.tails[e] == RED)

    def components(self) -> list[Component]:
        return [self.snapshot.components[c] for c in self.component_ids]


def exploration_subgraph(snap: Snapshot, root: int) -> ExplorationSubgraph:
    """Everything reachable from the root along blue arcs (forward) and red edges."""
    g = snap.f.graph
    seen = set(snap.components[root].vertices)
    queue = deque(seen)
    while queue:
        x = queue.popleft()
        nxt = [y for _, y in snap.red_adj[x]]
        nxt.extend(g.other(e, x) for e in snap.blue_out[x])
        for y in nxt:
            if y not in seen:
                seen.add(y)
                queue.append(y)
    edges = tuple(e for e, (u, v) in enumerate(g.edges) if u in seen and v in seen)
    cids = sorted({snap.comp_of[x] for x in seen}, key=lambda c: snap.components[c].min_vertex)
    return ExplorationSubgraph(root, frozenset(seen), edges, tuple(cids), snap)


@dataclass(frozen=True)
class LegalOrder:
    components: tuple[int, ...]
    witnesses: tuple[int | None, ...]  # blue edge index entering each entry

    def sigma(self, snap: Snapshot) -> tuple[int, ...]:
        return tuple(snap.components[c].edge_count for c in self.components)


def child_map(h: ExplorationSubgraph) -> dict[int, dict[int, int]]:
    """comp -> {child comp: lowest blue edge index from comp into it}."""
    snap = h.snapshot
    g = snap.f.graph
    children: dict[int, dict[int, int]] = {c: {} for c in h.component_ids}
    for c in h.component_ids:
        for x in snap.components[c].vertices:
            for e in snap.blue_out[x]:
                c2 = snap.comp_of[g.other(e, x)]
                if c2 != c and (c2 not in children[c] or e < children[c][c2]):
                    children[c][c2] = e
    return children


def smallest_legal_order(h: ExplorationSubgraph) -> tuple[LegalOrder, tuple[int, ...]]:
    """Legal order with lexicographically smallest edge-count sequence.

    The next entry always carries the minimum value among available
    components. Ties only matter when some tied component leads, through
    components of value at most that minimum, to a strictly smaller value; in
    that case all tied choices are searched (memoised on the placed set).
    """
    snap = h.snapshot
    comps = list(h.component_ids)
    index = {c: i for i, c in enumerate(comps)}
    val = [snap.components[c].edge_count for c in comps]
    key = [snap.components[c].min_vertex for c in comps]
    children = child_map(h)
    kids = [[index[c2] for c2 in children[c]] for c in comps]
    full = (1 << len(comps)) - 1
    memo: dict[int, tuple[tuple[int, ...], int]] = {}

    def available(mask: int) -> list[int]:
        out = set()
        for i in range(len(comps)):
            if mask >> i & 1:
                out.update(j for j in kids[i] if not mask >> j & 1)
        return sorted(out, key=lambda j: (val[j], key[j]))

    def needs_branching(mask: int, tied: list[int], m: int) -> bool:
        seen = set(tied)
        stack = list(tied)
        while stack:
            i = stack.pop()
            for j in kids[i]:
                if mask >> j & 1 or j in seen:
                    continue
                if val[j] < m:
                    return True
                if val[j] == m:
                    seen.add(j)
                    stack.append(j)
        return False

    def best(mask: int) -> tuple[int, ...]:
        if mask == full:
            return ()
        if mask in memo:
            return memo[mask][0]
        avail = available(mask)
        if not avail:
            raise ValueError("exploration subgraph has an unreachable component")
        m = val[avail[0]]
        tied = [j for j in avail if val[j] == m]
        choices = tied if len(tied) > 1 and needs_branching(mask, tied, m) else tied[:1]
        result, pick = None, -1
        for j in choices:
            cand = (m,) + best(mask | 1 << j)
            if result is None or cand < result:
                result, pick = cand, j
        memo[mask] = (result, pick)
        return result

    r = index[h.root]
    start = 1 << r
    suffix = best(start)
    order, mask = [r], start
    while mask != full:
        j = memo[mask][1]
        order.append(j)
        mask |= 1 << j
    witnesses: list[int | None] = [None]
    for pos in range(1, len(order)):
        j = comps[order[pos]]
        witnesses.append(
            min(children[comps[i]][j] for i in order[:pos] if j in children[comps[i]])
        )
    sigma = (val[r],) + suffix
    return LegalOrder(tuple(comps[i] for i in order), tuple(witnesses)), sigma


def legal_order_is_valid(h: ExplorationSubgraph, order: tuple[int, ...]) -> bool:
    if not order or order[0] != h.root or sorted(order) != sorted(h.component_ids):
        return False
    children = child_map(h)
    for pos in range(1, len(order)):
        if not any(order[pos] in children[c] for c in order[:pos]):
            return False
    return True


# -- potential ----------------------------------------------------------------


def _padded_less(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    for x, y in zip_longest(a, b, fillvalue=0):
        if x != y:
            return x < y
    return False


@dataclass(frozen=True)
class Potential:
    """Bad-component histograms (largest edge count first) then sigma."""

    histograms: tuple[tuple[int, ...], ...]
    sigma: tuple[int, ...]

    def __lt__(self, other: "Potential") -> bool:
        if self.histograms != other.histograms:
            return self.histograms < other.histograms
        return _padded_less(self.sigma, other.sigma)

    def __le__(self, other: "Potential") -> bool:
        return not other < self

    def count(self, level: int, edges: int) -> int:
        """Number of ``level``-bad red components with exactly ``edges`` edges."""
        hist = self.histograms[level - 1]
        return hist[len(hist) - 1 - edges]


def potential(f: RedBlueColouring, root_edges: frozenset[int], p: Params) -> Potential:
    snap = Snapshot(f, p)
    root = snap.find_component(root_edges)
    if root is None:
        raise ValueError("root is not a red component of this colouring")
    _, sigma = smallest_legal_order(exploration_subgraph(snap, root))
    return Potential(snap.histograms(), sigma)


# -- moves ------------------------------------------------------------------------


class MoveError(ValueError):
    pass


@dataclass(frozen=True)
class Exchange:
    """Blue arc ``arc`` = (x, y) turns red; red edge ``edge`` = xv turns into (x, v)."""

    edge: int
    arc: int


@dataclass(frozen=True)
class ChainReversal:
    """``path`` lists the blue arcs x_n -> ... -> x_1 -> x -> y in order.

    The last arc (x, y) turns red, the others are reversed, and the red edge
    ``edge`` at x_n becomes a blue arc leaving x_n.
    """

    edge: int
    path: tuple[int, ...]


Move = Union[Exchange, ChainReversal]


def apply_move(f: RedBlueColouring, move: Move, snap: Snapshot | None = None) -> RedBlueColouring:
    g = f.graph
    if snap is None or snap.f is not f:
        snap = Snapshot(f, Params(f.k, 1))
    arc = move.arc if isinstance(move, Exchange) else move.path[-1]
    if not 0 <= move.edge < g.m or not 0 <= arc < g.m:
        raise MoveError("edge index out of range")
    if f.tails[move.edge] != RED:
        raise MoveError(f"edge {move.edge} is not red")
    if f.tails[arc] == RED:
        raise MoveError(f"edge {arc} is not a blue arc")
    x = f.tails[arc]
    y = g.other(arc, x)
    cx, cy = snap.comp_of[x], snap.comp_of[y]
    if cx == cy:
        raise MoveError("arc (x, y) stays inside one red component")
    if snap.components[cy].is_cyclic:
        raise MoveError("the component of y is not acyclic")
    out = f.copy()
    if isinstance(move, Exchange):
        if x not in g.edges[move.edge]:
            raise MoveError(f"red edge {move.edge} does not meet x = {x}")
        touched = {x, y, g.other(move.edge, x)}
        start = x
    else:
        path = move.path
        if len(path) < 2:
            raise MoveError("a chain reversal needs at least two arcs")
        walk = [f.tails[path[0]]]
        for e in path:
            if f.tails[e] == RED:
                raise MoveError(f"path edge {e} is not blue")
            if f.tails[e] != walk[-1]:
                raise MoveError(f"path is not a directed walk at edge {e}")
            walk.append(g.other(e, walk[-1]))
        if len(set(walk)) != len(walk):
            raise MoveError("path is not simple")
        for v in walk[1:-2]:
            if snap.components[snap.comp_of[v]].edge_count != 0:
                raise MoveError(f"intermediate vertex {v} lies in a component with edges")
        start = walk[0]
        if start not in g.edges[move.edge]:
            raise MoveError(f"red edge {move.edge} does not meet the path start {start}")
        for e, head in zip(path[:-1], walk[1:-1]):
            out.tails[e] = head
        touched = set(walk) | {g.other(move.edge, start)}
    if touched & f.passive:
        raise MoveError("move touches the passive region")
    out.tails[arc] = RED
    out.tails[move.edge] = start
    return out


def _chains_into(snap: Snapshot, h_vertices, x: int, y: int, cap: int) -> Iterator[tuple[int, ...]]:
    """Backward blue paths ending at x whose inner vertices are red-isolated."""
    g = snap.f.graph
    found = 0
    stack: list[tuple[int, tuple[int, ...], frozenset[int]]] = [(x, (), frozenset((x, y)))]
    while stack:
        u, suffix, used = stack.pop()
        for e in sorted(snap.blue_in[u], reverse=True):
            w = snap.f.tails[e]
            if w in used or w not in h_vertices or w in snap.f.passive:
                continue
            path = (e,) + suffix
            if snap.components[snap.comp_of[w]].edge_count:
                yield path
                found += 1
                if found >= cap:
                    return
            else:
                stack.append((w, path, used | {w}))


def candidate_moves(snap: Snapshot, h: ExplorationSubgraph, chain_cap: int = 2000) -> Iterator[Move]:
    """Exchanges first, then chain reversals, each in edge-index order."""
    g = snap.f.graph
    passive = snap.f.passive
    arcs = []
    for x in sorted(h.vertices - passive):
        for a in sorted(snap.blue_out[x]):
            y = g.other(a, x)
            cy = snap.comp_of[y]
            if y in passive:
                continue
            if cy != snap.comp_of[x] and not snap.components[cy].is_cyclic:
                arcs.append((a, x, y))
    arcs.sort()
    for a, x, _ in arcs:
        for e in sorted(e for e, _ in snap.red_adj[x]):
            yield Exchange(e, a)
    for a, x, y in arcs:
        chains = sorted(_chains_into(snap, h.vertices, x, y, chain_cap), key=lambda c: (len(c), c))
        for chain in chains:
            start = snap.f.tails[chain[0]]
            for e in sorted(e for e, _ in snap.red_adj[start]):
                yield ChainReversal(e, chain + (a,))


def _improves(
    f2: RedBlueColouring, snap: Snapshot, root: int, current: Potential, p: Params
) -> Snapshot | None:
    snap2 = Snapshot(f2, p)
    hist = snap2.histograms()
    if hist < current.histograms:
        return snap2
    if hist > current.histograms:
        return None
    root2 = snap2.find_component(snap.components[root].edge_indices)
    if root2 is None:
        return None
    _, sigma = smallest_legal_order(exploration_subgraph(snap2, root2))
    return snap2 if _padded_less(sigma, current.sigma) else None


def find_improving_move(
    f: RedBlueColouring, root_edges: frozenset[int], p: Params
) -> Move | None:
    snap = Snapshot(f, p)
    root = snap.find_component(root_edges)
    if root is None or not snap.badness[root].is_bad:
        raise ValueError("root must be a bad red component")
    found = _search(snap, root, p)
    return found[0] if found else None


def _search(snap: Snapshot, root: int, p: Params):
    h = exploration_subgraph(snap, root)
    _, sigma = smallest_legal_order(h)
    current = Potential(snap.histograms(), sigma)
    for move in candidate_moves(snap, h):
        f2 = apply_move(snap.f, move, snap)
        snap2 = _improves(f2, snap, root, current, p)
        if snap2 is not None:
            return move, f2, snap2, current
    return None


# -- results ------------------------------------------------------------------


@dataclass(frozen=True)
class Decomposition:
    blue: tuple[frozenset[int], ...]
    red: frozenset[int]
    iterations: int = 0

    @property
    def classes(self) -> tuple[frozenset[int], ...]:
        return self.blue + (self.red,)


@dataclass(frozen=True)
class Cell:
    parent: Component
    children: tuple[Component, ...]

    @property
    def edge_count(self) -> int:
        return self.parent.edge_count + sum(c.edge_count for c in self.children)

    @property
    def vertex_count(self) -> int:
        return self.parent.vertex_count + sum(c.vertex_count for c in self.children)


@dataclass(frozen=True)
class Certificate:
    """Proof that mad(G)/2 exceeds k + d/(d+k+1).

    ``kind == "exploration"``: ``vertices`` span an exploration subgraph of the
    colouring ``tails`` whose red edges number ``red_count`` over
    ``vertex_count`` vertices. ``kind == "dense"``: the orientation step found
    more than (k+1)|X| edges inside ``vertices``.
    """

    kind: str
    vertices: frozenset[int]
    edges: tuple[int, ...]
    red_count: int
    vertex_count: int
    tails: tuple[int, ...] = ()
    root: frozenset[int] = frozenset()
    cells: tuple[Cell, ...] = ()
    orphans: tuple[Component, ...] = ()
    iterations: int = 0

    def density_excess(self, p: Params) -> Fraction:
        """e_r/v - d/(d+k+1) for exploration certificates."""
        return Fraction(self.red_count, self.vertex_count) - Fraction(p.d, p.d + p.k + 1)


class IterationCapExceeded(RuntimeError):
    pass


class EngineStuck(RuntimeError):
    """No improving move, yet the exploration subgraph is not dense enough."""


def split_blue(f: RedBlueColouring, k: int | None = None) -> tuple[frozenset[int], ...]:
    """Label each vertex's blue out-arcs 1..k by edge index; each label is a pseudoforest."""
    k = f.k if k is None else k
    classes: list[set[int]] = [set() for _ in range(k)]
    per_tail: dict[int, list[int]] = {}
    for e in f.blue_edges():
        per_tail.setdefault(f.tails[e], []).append(e)
    for x, edges in per_tail.items():
        if len(edges) > k:
            raise ValueError(f"vertex {x} has more than {k} blue out-arcs")
        for label, e in enumerate(sorted(edges)):
            classes[label].add(e)
    return tuple(frozenset(c) for c in classes)


def build_certificate(snap: Snapshot, root: int, p: Params, iterations: int = 0) -> Certificate:
    h = exploration_subgraph(snap, root)
    order, _ = smallest_legal_order(h)
    children = child_map(h)
    comps = snap.components
    position = {c: i for i, c in enumerate(order.components)}
    non_small = [c for c in h.component_ids if not small(comps[c], p)]
    assigned: dict[int, list[int]] = {c: [] for c in non_small}
    orphans = []
    for c in h.component_ids:
        if not small(comps[c], p):
            continue
        parents = [
            q for q in non_small if c in children[q] and position[q] < position[c]
        ]
        if parents:
            assigned[min(parents, key=lambda q: comps[q].min_vertex)].append(c)
        else:
            orphans.append(comps[c])
    cells = tuple(
        Cell(comps[q], tuple(comps[c] for c in assigned[q])) for q in non_small
    )
    return Certificate(
        kind="exploration",
        vertices=h.vertices,
        edges=h.edges,
        red_count=h.red_edge_count,
        vertex_count=len(h.vertices),
        tails=tuple(snap.f.tails),
        root=comps[root].edge_indices,
        cells=cells,
        orphans=tuple(orphans),
        iterations=iterations,
    )


def _iteration_cap() -> int:
    return int(os.environ.get("PSEUDOFOREST_MAX_ITERATIONS", DEFAULT_MAX_ITERATIONS))


def decompose(
    graph: MultiGraph,
    p: Params,
    max_iterations: int | None = None,
    check_invariants: bool = True,
) -> Decomposition | Certificate:
    """Split G into k blue pseudoforests and a red forest meeting every bound,
    or certify that mad(G) is too large."""
    cap = _iteration_cap() if max_iterations is None else max_iterations
    k = p.k
    o = orient_bounded(graph, k + 1)
    if isinstance(o, InfeasibleWitness):
        xs = o.vertices
        edges = tuple(graph.induced_edges(xs))
        return Certificate("dense", frozenset(xs), edges, len(edges), len(xs))
    o, split = repair_and_split(o, k)
    f = initial_colouring(graph, o, split, k)
    snap = Snapshot(f, p)
    root_edges: frozenset[int] | None = None
    iterations = 0
    while True:
        hist = snap.histograms()
        bad = snap.bad_components()
        if not bad:
            return Decomposition(split_blue(f), frozenset(f.red_edges()), iterations)
        root = snap.find_component(root_edges) if root_edges else None
        if root is None or not snap.badness[root].is_bad:
            root = snap.worst_bad()
        found = _search(snap, root, p)
        if found is None:
            cert = build_certificate(snap, root, p, iterations)
            if cert.density_excess(p) <= 0:
                raise EngineStuck(
                    f"no improving move at iteration {iterations} but red density "
                    f"{cert.red_count}/{cert.vertex_count} is within the bound"
                )
            return cert
        iterations += 1
        if iterations > cap:
            raise IterationCapExceeded(f"more than {cap} moves")
        move, f2, snap2, before = found
        hist2 = snap2.histograms()
        if hist2 == hist:
            # sigma-only progress: the root survives and stays the root
            root_edges = snap.components[root].edge_indices
            after = potential(f2, root_edges, p)
            assert after < before, "potential did not decrease"
        else:
            assert hist2 < hist, "bad-component histograms increased"
            root_edges = None
        if check_invariants:
            problems = f2.invariant_violations()
            assert not problems, problems
        f, snap = f2, snap2

"""Extremal graphs showing the red-forest bounds cannot be improved.

Both families glue ``p`` copies of a *colourful tree* to a hub
``S = {s_1..s_k}``. A colourful tree is a directed colour-1 path of odd length
``delta`` (each even-depth vertex also gets k-1 leaf children in colours
2..k) with a red component hung on every tree vertex. Every vertex then sends
an arc of each colour it still lacks to the matching hub vertex. The result
comes with its *example colouring*: k blue pseudoforests (outdegree at most
one per colour) plus the red forest.

Vertex layout: S is ``0..k-1``; each copy follows as one contiguous block.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .engine import Decomposition
from .graph import MultiGraph


@dataclass(frozen=True)
class DiamSpec:
    """Diameter family: red path of length 2*ell+1+alpha through each root."""

    k: int
    ell: int
    alpha: int
    delta: int
    p: int = 1
    D: int | None = None
    eps: Fraction | None = None

    def __post_init__(self):
        if self.k < 1 or self.ell < 0 or self.p < 1:
            raise ValueError("need k >= 1, ell >= 0, p >= 1")
        if self.alpha not in (0, 1):
            raise ValueError("alpha must be 0 or 1")
        if self.delta < 1 or self.delta % 2 == 0:
            raise ValueError("delta must be odd and positive")

    @property
    def d(self) -> int:
        """The d whose bound k + d/(d+k+1) the family approaches from above."""
        return self.ell * (self.k + 1) + self.alpha

    def validity(self) -> dict[str, bool]:
        flags = {}
        if self.eps is not None:
            flags["delta"] = self.delta >= Fraction(2 * (self.ell + 1)) / Fraction(self.eps) - 1
        if self.D is not None:
            flags["p"] = self.p >= self.k * self.D + self.k**2 + 1
        return flags


@dataclass(frozen=True)
class ZSpec:
    """Big-component family: red component with d - z(k-1) + 1 edges and diameter 2(z+1)."""

    k: int
    d: int
    z: int
    delta: int
    p: int = 1
    D: int | None = None
    eps: Fraction | None = None

    def __post_init__(self):
        if self.k < 2 or self.p < 1:
            raise ValueError("need k >= 2 and p >= 1")
        if not 1 <= self.z <= (self.d - 1) // (self.k + 1):
            raise ValueError("z must lie in [1, floor((d-1)/(k+1))]")
        if self.delta < 1 or self.delta % 2 == 0:
            raise ValueError("delta must be odd and positive")

    def validity(self) -> dict[str, bool]:
        flags = {}
        if self.eps is not None:
            flags["delta"] = self.delta > Fraction(2 * (self.z + 1)) / Fraction(self.eps) - 1
        if self.D is not None:
            flags["p"] = self.p >= self.k * self.D + self.k**2 + 1
        return flags


@dataclass
class ExampleColouring:
    """Colour (1..k blue, k+1 red) and orientation of each edge plus labels.

    ``anchor`` maps every copy vertex to the tree vertex whose red component
    it belongs to; ``red_parts[t]`` lists the red edges of that component and
    ``q_paths[t]`` the designated long red path (big-component family only).
    """

    k: int
    colours: list[int] = field(default_factory=list)
    tails: list[int] = field(default_factory=list)
    hub: tuple[int, ...] = ()
    roots: list[int] = field(default_factory=list)
    copies: list[range] = field(default_factory=list)
    depth: dict[int, int] = field(default_factory=dict)
    anchor: dict[int, int] = field(default_factory=dict)
    red_parts: dict[int, list[int]] = field(default_factory=dict)
    q_paths: dict[int, list[int]] = field(default_factory=dict)

    @property
    def red(self) -> int:
        return self.k + 1

    def decomposition(self) -> Decomposition:
        blue = tuple(
            frozenset(e for e, c in enumerate(self.colours) if c == i) for i in range(1, self.k + 1)
        )
        return Decomposition(blue, frozenset(e for e, c in enumerate(self.colours) if c == self.red))

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "colours": self.colours,
            "tails": self.tails,
            "S": list(self.hub),
            "roots": self.roots,
            "copies": [[r.start, r.stop] for r in self.copies],
            "depth": {str(v): dv for v, dv in sorted(self.depth.items())},
            "anchor": {str(v): t for v, t in sorted(self.anchor.items())},
            "red_parts": {str(t): es for t, es in sorted(self.red_parts.items())},
            "q_paths": {str(t): es for t, es in sorted(self.q_paths.items())},
        }


class _Builder:
    def __init__(self, k: int):
        self.k = k
        self.n = k
        self.edges: list[tuple[int, int]] = []
        self.col = ExampleColouring(k, hub=tuple(range(k)))

    def vertex(self) -> int:
        self.n += 1
        return self.n - 1

    def arc(self, tail: int, head: int, colour: int) -> int:
        self.edges.append((tail, head))
        self.col.colours.append(colour)
        self.col.tails.append(tail)
        return len(self.edges) - 1

    def red_leg(self, t: int, length: int) -> list[int]:
        """Red path of ``length`` new vertices ending at t, oriented toward t."""
        out, nearer = [], t
        for _ in range(length):
            v = self.vertex()
            self.col.anchor[v] = t
            out.append(self.arc(v, nearer, self.k + 1))
            nearer = v
        return out

    def tree(self, delta: int) -> tuple[list[int], dict[int, list[int]]]:
        """Colour-1 path plus colour 2..k leaves at even depths; returns (T order, out-colours)."""
        k = self.k
        path = [self.vertex() for _ in range(delta + 1)]
        order = list(path)
        used: dict[int, list[int]] = {v: [] for v in path}
        for i, v in enumerate(path):
            self.col.depth[v] = i
            self.col.anchor[v] = v
        for i in range(delta):
            self.arc(path[i], path[i + 1], 1)
            used[path[i]].append(1)
        for i in range(0, delta + 1, 2):
            for c in range(2, k + 1):
                leaf = self.vertex()
                self.col.depth[leaf] = i + 1
                self.col.anchor[leaf] = leaf
                used[leaf] = []
                order.append(leaf)
                self.arc(path[i], leaf, c)
                used[path[i]].append(c)
        return order, used

    def hub_arcs(self, start: int, used: dict[int, list[int]]) -> None:
        for x in range(start, self.n):
            have = used.get(x, [])
            for c in range(1, self.k + 1):
                if c not in have:
                    self.arc(x, self.col.hub[c - 1], c)

    def finish(self) -> tuple[MultiGraph, ExampleColouring]:
        return MultiGraph(self.n, self.edges), self.col


def build_diameter_example(s: DiamSpec) -> tuple[MultiGraph, ExampleColouring]:
    b = _Builder(s.k)
    for _ in range(s.p):
        start = b.n
        order, used = b.tree(s.delta)
        root = order[0]
        b.col.roots.append(root)
        for t in order:
            dt = b.col.depth[t]
            if t == root:
                edges = b.red_leg(t, s.ell + 1) + b.red_leg(t, s.ell + s.alpha)
            elif dt % 2 == 0:
                edges = b.red_leg(t, s.ell + s.alpha)
            else:
                edges = b.red_leg(t, s.ell)
            b.col.red_parts[t] = edges
        b.hub_arcs(start, used)
        b.col.copies.append(range(start, b.n))
    return b.finish()


def spider_legs(total: int, z: int) -> list[int]:
    """Legs of length z+1 first, then the remainder."""
    legs = [z + 1] * (total // (z + 1))
    if total % (z + 1):
        legs.append(total % (z + 1))
    return legs


def build_z_example(s: ZSpec) -> tuple[MultiGraph, ExampleColouring]:
    k, d, z = s.k, s.d, s.z
    b = _Builder(k)
    for _ in range(s.p):
        start = b.n
        order, used = b.tree(s.delta)
        root = order[0]
        b.col.roots.append(root)
        for t in order:
            dt = b.col.depth[t]
            if dt % 2:
                edges = b.red_leg(t, z)
            else:
                legs = spider_legs(d - z * k, z)
                if t == root:
                    legs = [z + 1] + legs
                edges, q, q_legs = [], [], 2 if t == root else 1
                for length in legs:
                    leg = b.red_leg(t, length)
                    if length == z + 1 and q_legs:
                        # Q_t is listed from its far end; at the root it continues out the second leg
                        q = q + leg if q else leg[::-1]
                        q_legs -= 1
                    edges += leg
                b.col.q_paths[t] = q
            b.col.red_parts[t] = edges
        b.hub_arcs(start, used)
        b.col.copies.append(range(start, b.n))
    return b.finish()


def predicted_density(s: DiamSpec | ZSpec) -> Fraction:
    """Closed form of e(G)/|V(G) minus S| for the family."""
    if isinstance(s, DiamSpec):
        tail = Fraction(2 * (s.ell + 1), s.delta + 1)
        num = s.ell * (s.k + 1) + s.alpha + tail
        den = (s.ell + 1) * (s.k + 1) + s.alpha + tail
    else:
        tail = Fraction(2 * (s.z + 1), s.delta + 1)
        num = s.d + tail
        den = s.d + s.k + 1 + tail
    return s.k + num / den


def target_fraction(s: DiamSpec | ZSpec) -> Fraction:
    """The limit of the red part of the density as delta grows: d/(d+k+1)."""
    d = s.d
    return Fraction(d, d + s.k + 1)


def hub_density(graph: MultiGraph, col: ExampleColouring) -> Fraction:
    return Fraction(graph.m, graph.n - len(col.hub))

"""Independent checks for decompositions and certificates.

Nothing here reuses the engine's bookkeeping: components are rebuilt from the
edge sets and diameters come from all-source BFS.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .colouring import RED
from .density import density_bound, max_density
from .engine import Certificate, Decomposition, Params
from .graph import (
    ClassKind,
    MultiGraph,
    components_of,
    eccentricity_diameter,
    edge_class_kind,
    is_star,
)


@dataclass
class Report:
    """Named verdicts plus, per failing check, the offending component ids.

    Component ids are the minimum vertex of the red component (or the class
    index for per-class checks).
    """

    checks: dict[str, bool] = field(default_factory=dict)
    failures: dict[str, list[int]] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def record(self, name: str, bad: list[int]) -> None:
        self.checks[name] = not bad
        if bad:
            self.failures[name] = sorted(bad)

    def to_json(self) -> dict:
        return {"passed": self.passed, "checks": self.checks, "failures": self.failures, "notes": self.notes}


def _partition_problems(graph: MultiGraph, classes) -> list[int]:
    seen: dict[int, int] = {}
    bad = []
    for i, cls in enumerate(classes):
        for e in cls:
            if not 0 <= e < graph.m or e in seen:
                bad.append(i)
            seen[e] = i
    if len(seen) != graph.m:
        bad.append(-1)
    return sorted(set(bad))


def verify_decomposition(graph: MultiGraph, dec: Decomposition, p: Params) -> Report:
    """Check the k+1 classes against every guarantee for the red forest."""
    report = Report()
    classes = list(dec.classes)
    if len(classes) != p.k + 1:
        report.notes.append(f"expected {p.k + 1} classes, got {len(classes)}")
        report.checks["class_count"] = False
    report.record("partition", _partition_problems(graph, classes))
    in_range = [e for cls in classes for e in cls if 0 <= e < graph.m]
    if len(in_range) != sum(len(c) for c in classes):
        return report
    report.record(
        "pseudoforests",
        [i for i, cls in enumerate(classes) if edge_class_kind(graph, cls) == ClassKind.NEITHER],
    )
    red = components_of(graph, dec.red)
    report.record("red_forest", [c.min_vertex for c in red if c.is_cyclic])
    acyclic = [(c, eccentricity_diameter(graph, c)) for c in red if not c.is_cyclic]
    report.record("size", [c.min_vertex for c in red if c.edge_count > p.d])
    report.record("diameter", [c.min_vertex for c, diam in acyclic if diam > p.diam_bound])
    report.record(
        "z_clause",
        [
            c.min_vertex
            for c, diam in acyclic
            if any(c.edge_count >= p.size_floor(z) and diam > 2 * z for z in range(1, p.ell + 1))
        ],
    )
    if p.d <= p.k + 1:
        report.record(
            "stars",
            [c.min_vertex for c in red if not is_star(graph, c) or c.edge_count > p.d],
        )
    return report


def verify_certificate(graph: MultiGraph, cert: Certificate, p: Params, strict_cells: bool = True) -> Report:
    """Check that the certificate proves mad(G)/2 > k + d/(d+k+1).

    With ``strict_cells`` the per-cell bounds (each non-small component with its
    assigned small children is at least as dense as d/(d+k+1), strictly for bad
    ones) are part of the verdict; otherwise they are only reported in notes.
    """
    report = Report()
    bound = density_bound(p.k, p.d)
    xs = set(cert.vertices)
    if not xs or any(not 0 <= x < graph.n for x in xs):
        report.checks["vertices"] = False
        return report
    induced = graph.induced_edges(xs)
    report.checks["edges"] = sorted(cert.edges) == induced

    if cert.kind == "dense":
        report.checks["dense"] = Fraction(len(induced), len(xs)) > bound
        report.checks["mad"] = max_density(graph).value > bound
        return report

    tails = cert.tails
    if len(tails) != graph.m or any(t != RED and t not in graph.edges[e] for e, t in enumerate(tails)):
        report.checks["tails"] = False
        return report
    escaping = []
    out = {x: 0 for x in xs}
    for e, t in enumerate(tails):
        u, v = graph.edges[e]
        if t == RED:
            if (u in xs) != (v in xs):
                escaping.append(e)
        elif t in xs:
            out[t] += 1
            if graph.other(e, t) not in xs:
                escaping.append(e)
    report.record("closure", escaping)
    report.record("blue_outdegree", [x for x, c in out.items() if c != p.k])

    red = [e for e in induced if tails[e] == RED]
    e_r, v = len(red), len(xs)
    report.checks["counts"] = (e_r, v) == (cert.red_count, cert.vertex_count)
    report.checks["red_density"] = e_r * (p.d + p.k + 1) > p.d * v
    # with k blue out-arcs per vertex, e(H)/v(H) = k + e_r/v
    report.checks["identity"] = len(induced) == p.k * v + e_r
    report.checks["mad"] = Fraction(len(induced), v) > bound and max_density(graph).value > bound

    comps = components_of(graph, red, xs)
    listed = [c for cell in cert.cells for c in (cell.parent, *cell.children)] + list(cert.orphans)
    report.checks["cells_partition"] = sorted(listed, key=lambda c: c.min_vertex) == comps
    weak = []
    for cell in cert.cells:
        parent = cell.parent
        diam = None if parent.is_cyclic else eccentricity_diameter(graph, parent)
        bad = parent.is_cyclic or _violates(parent.edge_count, diam, p)
        lhs = cell.edge_count * (p.d + p.k + 1)
        rhs = p.d * cell.vertex_count
        if lhs < rhs or (bad and lhs == rhs):
            weak.append(parent.min_vertex)
    if strict_cells:
        report.record("cells", weak + [c.min_vertex for c in cert.orphans])
    elif weak or cert.orphans:
        report.notes.append(f"cells below the per-cell bound at {sorted(weak)}; orphans {len(cert.orphans)}")
    return report


def _violates(e: int, diam: int | None, p: Params) -> bool:
    if diam is None or e > p.d or diam > p.diam_bound:
        return True
    return any(e >= p.size_floor(z) and diam > 2 * z for z in range(1, p.ell + 1))


@dataclass(frozen=True)
class Constraints:
    """Requirements on the red class of a k+1 pseudoforest decomposition.

    ``size_caps`` holds pairs (floor, cap): a red component with at least
    ``floor`` edges must have diameter at most ``cap``.
    """

    red_forest: bool = True
    max_component_edges: int | None = None
    max_diam: int | None = None
    max_red_degree: int | None = None
    size_caps: tuple[tuple[int, int], ...] = ()

    @classmethod
    def for_params(cls, p: Params) -> "Constraints":
        caps = tuple((p.size_floor(z), 2 * z) for z in range(1, p.ell + 1))
        return cls(True, p.d, p.diam_bound, None, caps)

    def to_json(self) -> dict:
        return {
            "red_forest": self.red_forest,
            "max_component_edges": self.max_component_edges,
            "max_diam": self.max_diam,
            "max_red_degree": self.max_red_degree,
            "size_caps": [list(c) for c in self.size_caps],
        }


def red_degrees(graph: MultiGraph, red) -> list[int]:
    deg = [0] * graph.n
    for e in red:
        u, v = graph.edges[e]
        deg[u] += 1
        deg[v] += 1
    return deg


def verify_constraints(graph: MultiGraph, dec: Decomposition, k: int, c: Constraints) -> Report:
    """Check a decomposition against explicit constraints (search witnesses)."""
    report = Report()
    classes = list(dec.classes)
    report.checks["class_count"] = len(classes) == k + 1
    report.record("partition", _partition_problems(graph, classes))
    if not report.passed:
        return report
    report.record(
        "pseudoforests",
        [i for i, cls in enumerate(classes) if edge_class_kind(graph, cls) == ClassKind.NEITHER],
    )
    red = components_of(graph, dec.red)
    if c.red_forest:
        report.record("red_forest", [x.min_vertex for x in red if x.is_cyclic])
    diams = {x.min_vertex: eccentricity_diameter(graph, x) for x in red}
    if c.max_component_edges is not None:
        report.record("size", [x.min_vertex for x in red if x.edge_count > c.max_component_edges])
    if c.max_diam is not None:
        report.record("diameter", [x.min_vertex for x in red if diams[x.min_vertex] > c.max_diam])
    if c.max_red_degree is not None:
        deg = red_degrees(graph, dec.red)
        report.record("red_degree", [x for x in range(graph.n) if deg[x] > c.max_red_degree])
    if c.size_caps:
        report.record(
            "size_caps",
            [
                x.min_vertex
                for x in red
                if any(x.edge_count >= f and diams[x.min_vertex] > cap for f, cap in c.size_caps)
            ],
        )
    return report

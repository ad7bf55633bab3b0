"""JSON encodings of decompositions, certificates and run manifests."""

from __future__ import annotations

import hashlib
import json
import sys
import time
from dataclasses import asdict, dataclass, field
from typing import IO, Any

from .engine import Cell, Certificate, Decomposition
from .graph import Component


def _component_json(c: Component) -> dict:
    return {"vertices": sorted(c.vertices), "edges": sorted(c.edge_indices)}


def _component_from(obj: dict) -> Component:
    return Component(frozenset(obj["vertices"]), frozenset(obj["edges"]))


def certificate_to_json(cert: Certificate) -> dict:
    return {
        "kind": cert.kind,
        "vertices": sorted(cert.vertices),
        "edges": list(cert.edges),
        "red_count": cert.red_count,
        "vertex_count": cert.vertex_count,
        "tails": list(cert.tails),
        "root": sorted(cert.root),
        "cells": [
            {"parent": _component_json(c.parent), "children": [_component_json(x) for x in c.children]}
            for c in cert.cells
        ],
        "orphans": [_component_json(c) for c in cert.orphans],
    }


def certificate_from_json(obj: dict, iterations: int = 0) -> Certificate:
    cells = tuple(
        Cell(_component_from(c["parent"]), tuple(_component_from(x) for x in c["children"]))
        for c in obj.get("cells", [])
    )
    return Certificate(
        kind=obj["kind"],
        vertices=frozenset(obj["vertices"]),
        edges=tuple(obj["edges"]),
        red_count=obj["red_count"],
        vertex_count=obj["vertex_count"],
        tails=tuple(obj.get("tails", [])),
        root=frozenset(obj.get("root", [])),
        cells=cells,
        orphans=tuple(_component_from(c) for c in obj.get("orphans", [])),
        iterations=iterations,
    )


def result_to_json(result: Decomposition | Certificate) -> dict:
    """The ``decompose`` output: classes (red last), red, certificate, iterations."""
    if isinstance(result, Certificate):
        return {"classes": [], "red": [], "certificate": certificate_to_json(result), "iterations": result.iterations}
    return {
        "classes": [sorted(c) for c in result.classes],
        "red": sorted(result.red),
        "certificate": None,
        "iterations": result.iterations,
    }


def result_from_json(obj: dict) -> Decomposition | Certificate:
    if obj.get("certificate"):
        return certificate_from_json(obj["certificate"], obj.get("iterations", 0))
    classes = [frozenset(c) for c in obj["classes"]]
    red = frozenset(obj.get("red", classes[-1] if classes else []))
    if classes and classes[-1] != red:
        raise ValueError("the last class must be the red class")
    return Decomposition(tuple(classes[:-1]), red, obj.get("iterations", 0))


def sha256(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


@dataclass
class RunManifest:
    command: str
    parameters: dict[str, Any] = field(default_factory=dict)
    input_hash: str | None = None
    outcome: str = "error"
    iterations: int | None = None
    wall_time: float = 0.0
    _start: float = field(default_factory=time.monotonic, repr=False)

    def finish(self, outcome: str, iterations: int | None = None) -> None:
        self.outcome = outcome
        if iterations is not None:
            self.iterations = iterations
        self.wall_time = round(time.monotonic() - self._start, 6)

    def to_json(self) -> dict:
        out = asdict(self)
        out.pop("_start")
        return out

    def emit(self, path: str | None, stream: IO[str] | None = None) -> None:
        line = json.dumps(self.to_json(), sort_keys=True, default=str)
        if path:
            with open(path, "a", encoding="utf-8") as fh:
                fh.write(line + "\n")
        else:
            print("manifest " + line, file=stream or sys.stderr)

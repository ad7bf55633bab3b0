"""Command-line interface.

Exit codes: 0 success, 1 negative outcome (certificate, Unsat, failed check),
2 usage or parse error, 3 iteration cap or timeout. Every run emits one
manifest record, to stderr or appended to ``--manifest`` /
``$PSEUDOFOREST_MANIFEST``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from .constructions import DiamSpec, ZSpec, build_diameter_example, build_z_example, hub_density, predicted_density
from .corpus import run_corpus
from .density import fractional_arboricity, max_density
from .engine import Certificate, IterationCapExceeded, Params, decompose
from .graph import GraphParseError, MultiGraph, parse_graph
from .search import SearchCapExceeded, SearchTimeout, Unsat, brute_force_search, check_lower_bound
from .serialize import RunManifest, result_from_json, result_to_json, sha256
from .verifier import Constraints, verify_certificate, verify_constraints, verify_decomposition

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_LIMIT = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _read_graph(path: str, manifest: RunManifest) -> MultiGraph:
    data = sys.stdin.buffer.read() if path == "-" else Path(path).read_bytes()
    manifest.input_hash = sha256(data)
    return parse_graph(data)


def _write_json(obj: dict, path: str | None) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True)
    if path:
        Path(path).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)


def cmd_decompose(args, manifest: RunManifest) -> int:
    graph = _read_graph(args.graph, manifest)
    p = Params(args.k, args.d)
    result = decompose(graph, p, max_iterations=args.max_iterations)
    _write_json(result_to_json(result), args.output)
    if isinstance(result, Certificate):
        manifest.finish("certificate", result.iterations)
        return EXIT_NEGATIVE
    manifest.finish("success", result.iterations)
    return EXIT_OK


def cmd_density(args, manifest: RunManifest) -> int:
    graph = _read_graph(args.graph, manifest)
    if graph.n == 0:
        raise UsageError("density needs at least one vertex")
    mad = max_density(graph)
    parts = [f"mad/2 = {mad.value}"]
    gamma = None
    if graph.n >= 2 and graph.m >= 1:
        gamma = fractional_arboricity(graph)
        parts.append(f"gamma = {gamma.value}")
    else:
        parts.append("gamma = undefined")
    print(", ".join(parts))
    print(f"mad/2 witness: {sorted(mad.vertices)}")
    if gamma is not None:
        print(f"gamma witness: {sorted(gamma.vertices)}")
    manifest.finish("success")
    return EXIT_OK


def cmd_generate(args, manifest: RunManifest) -> int:
    eps = Fraction(args.eps) if args.eps is not None else None
    if args.family == "diam":
        spec = DiamSpec(args.k, args.ell, args.alpha, args.delta, args.p, args.D, eps)
        graph, colouring = build_diameter_example(spec)
    else:
        spec = ZSpec(args.k, args.d, args.z, args.delta, args.p, args.D, eps)
        graph, colouring = build_z_example(spec)
    text = graph.to_text()
    manifest.input_hash = sha256(text.encode())
    sidecar = {
        "family": args.family,
        "spec": {key: (str(v) if isinstance(v, Fraction) else v) for key, v in vars(spec).items()},
        "validity": spec.validity(),
        "density": str(hub_density(graph, colouring)),
        "predicted_density": str(predicted_density(spec)),
        "colouring": colouring.to_json(),
    }
    summary = f"graph with {graph.n} vertices, {graph.m} edges"
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
        _write_json(sidecar, args.output + ".json")
        print(summary)
    else:
        sys.stdout.write(text)
        print(summary, file=sys.stderr)
    manifest.finish("success")
    return EXIT_OK


def cmd_verify(args, manifest: RunManifest) -> int:
    graph = _read_graph(args.graph, manifest)
    result = result_from_json(json.loads(Path(args.result).read_text(encoding="utf-8")))
    p = Params(args.k, args.d)
    if isinstance(result, Certificate):
        report = verify_certificate(graph, result, p)
        kind = "certificate"
    else:
        report = verify_decomposition(graph, result, p)
        kind = "decomposition"
    out = report.to_json()
    out["kind"] = kind
    _write_json(out, args.output)
    manifest.finish("success" if report.passed else "failed")
    return EXIT_OK if report.passed else EXIT_NEGATIVE


def _constraints(args) -> Constraints:
    if args.d is not None:
        return Constraints.for_params(Params(args.k, args.d))
    return Constraints(
        red_forest=not args.allow_red_cycles,
        max_component_edges=args.max_edges,
        max_diam=args.max_diam,
        max_red_degree=args.max_red_degree,
    )


def cmd_oracle(args, manifest: RunManifest) -> int:
    graph = _read_graph(args.graph, manifest)
    c = _constraints(args)
    found = brute_force_search(graph, args.k, c, cap=args.cap)
    if isinstance(found, Unsat):
        _write_json({"result": "unsat", "nodes": found.nodes, "constraints": c.to_json()}, args.output)
        manifest.finish("unsat")
        return EXIT_NEGATIVE
    report = verify_constraints(graph, found, args.k, c)
    out = result_to_json(found)
    out["report"] = report.to_json()
    _write_json(out, args.output)
    manifest.finish("success")
    return EXIT_OK


def cmd_lbcheck(args, manifest: RunManifest) -> int:
    graph = _read_graph(args.graph, manifest)
    hub: tuple[int, ...] = ()
    sidecar = args.sidecar or (args.graph + ".json" if os.path.exists(args.graph + ".json") else None)
    if sidecar:
        hub = tuple(json.loads(Path(sidecar).read_text(encoding="utf-8"))["colouring"]["S"])
    found = check_lower_bound(
        graph, args.k, args.D, args.bound, args.size_floor, hub=hub, timeout=args.timeout, cap=args.cap
    )
    if isinstance(found, Unsat):
        _write_json({"result": "unsat", "nodes": found.nodes}, args.output)
        manifest.finish("unsat")
        return EXIT_NEGATIVE
    out = result_to_json(found)
    out["result"] = "witness"
    _write_json(out, args.output)
    manifest.finish("witness")
    return EXIT_OK


def cmd_corpus(args, manifest: RunManifest) -> int:
    ks = tuple(int(x) for x in args.ks.split(","))
    summary = run_corpus(args.seed, args.count, args.n_max, args.m_max, ks)
    out = summary.to_json()
    _write_json(out, args.output)
    manifest.finish("success" if not out["failures"] else "failed")
    return EXIT_OK if not out["failures"] else EXIT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pseudoforest", description=__doc__.splitlines()[0])
    parser.add_argument("--manifest", help="append the run manifest (JSON line) to this file")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="k blue pseudoforests plus a bounded red forest, or a certificate")
    p.add_argument("graph")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("-o", "--output")
    p.add_argument("--max-iterations", type=int)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("density", help="exact mad/2 and fractional arboricity")
    p.add_argument("graph")
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("generate", help="lower-bound constructions")
    fam = p.add_subparsers(dest="family", required=True)
    g = fam.add_parser("diam")
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--ell", type=int, required=True)
    g.add_argument("--alpha", type=int, required=True)
    g.add_argument("--delta", type=int, required=True)
    g.add_argument("--p", type=int, default=1)
    g.add_argument("--D", type=int)
    g.add_argument("--eps")
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_generate)
    g = fam.add_parser("zbig")
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--d", type=int, required=True)
    g.add_argument("--z", type=int, required=True)
    g.add_argument("--delta", type=int, required=True)
    g.add_argument("--p", type=int, default=1)
    g.add_argument("--D", type=int)
    g.add_argument("--eps")
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_generate)

    p = sub.add_parser("verify", help="check a decompose result")
    p.add_argument("graph")
    p.add_argument("result")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="exhaustive search for a constrained decomposition")
    p.add_argument("graph")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--d", type=int, help="use the full set of bounds for this d")
    p.add_argument("--max-edges", type=int)
    p.add_argument("--max-diam", type=int)
    p.add_argument("--max-red-degree", type=int)
    p.add_argument("--allow-red-cycles", action="store_true")
    p.add_argument("--cap", type=int)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("lbcheck", help="backtracking check of a lower-bound instance")
    p.add_argument("graph")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--D", type=int, required=True)
    p.add_argument("--bound", type=int, required=True, help="red diameters must stay below this")
    p.add_argument("--size-floor", type=int)
    p.add_argument("--sidecar", help="generator sidecar JSON naming the hub vertices")
    p.add_argument("--timeout", type=float)
    p.add_argument("--cap", type=int)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_lbcheck)

    p = sub.add_parser("corpus", help="seeded random corpus: decompose and verify")
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--n-max", type=int, default=10)
    p.add_argument("--m-max", type=int, default=20)
    p.add_argument("--ks", default="1,2,3")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_corpus)
    return parser


def _parameters(args) -> dict:
    skip = {"func", "manifest", "command"}
    return {k: v for k, v in vars(args).items() if k not in skip}


def run_cli(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else EXIT_USAGE
        RunManifest("usage", {"argv": list(argv or sys.argv[1:])}).emit(os.environ.get("PSEUDOFOREST_MANIFEST"))
        return code
    manifest = RunManifest(args.command, _parameters(args))
    target = args.manifest or os.environ.get("PSEUDOFOREST_MANIFEST")
    try:
        code = args.func(args, manifest)
    except (IterationCapExceeded, SearchTimeout, SearchCapExceeded) as exc:
        # before ValueError: the size cap subclasses it
        print(f"limit: {exc}", file=sys.stderr)
        manifest.finish("timeout")
        code = EXIT_LIMIT
    except (GraphParseError, UsageError, FileNotFoundError, ValueError, json.JSONDecodeError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        manifest.finish("error")
        code = EXIT_USAGE
    manifest.emit(target)
    return code


def main() -> None:
    sys.exit(run_cli())

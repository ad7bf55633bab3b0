"""Split multigraphs into k pseudoforests plus one forest with small, shallow components.

Given k and d, :func:`decompose` either returns k blue pseudoforests and a red
forest whose components have at most d edges and bounded diameter, or a
certificate that the maximum average degree exceeds 2(k + d/(d+k+1)).
"""

from __future__ import annotations

from .constructions import (
    DiamSpec,
    ExampleColouring,
    ZSpec,
    build_diameter_example,
    build_z_example,
    predicted_density,
)
from .density import DensityWitness, fractional_arboricity, hypothesis_check, max_density, minimal_d
from .engine import (
    BadClass,
    Certificate,
    ChainReversal,
    Decomposition,
    Exchange,
    Params,
    Potential,
    apply_move,
    classify_component,
    decompose,
    exploration_subgraph,
    find_improving_move,
    potential,
    small,
    smallest_legal_order,
    split_blue,
)
from .graph import Component, EdgeSubgraph, MultiGraph, class_kind, components, parse_graph, tree_diameter
from .orientation import initial_colouring, orient_bounded, repair_and_split
from .search import Unsat, brute_force_search, check_lower_bound
from .verifier import Constraints, Report, verify_certificate, verify_decomposition

__all__ = [
    "BadClass",
    "Certificate",
    "ChainReversal",
    "Component",
    "Constraints",
    "Decomposition",
    "DensityWitness",
    "DiamSpec",
    "EdgeSubgraph",
    "ExampleColouring",
    "Exchange",
    "MultiGraph",
    "Params",
    "Potential",
    "Report",
    "Unsat",
    "ZSpec",
    "apply_move",
    "brute_force_search",
    "build_diameter_example",
    "build_z_example",
    "check_lower_bound",
    "class_kind",
    "classify_component",
    "components",
    "decompose",
    "exploration_subgraph",
    "find_improving_move",
    "fractional_arboricity",
    "hypothesis_check",
    "initial_colouring",
    "max_density",
    "minimal_d",
    "orient_bounded",
    "parse_graph",
    "potential",
    "predicted_density",
    "repair_and_split",
    "small",
    "smallest_legal_order",
    "split_blue",
    "tree_diameter",
    "verify_certificate",
    "verify_decomposition",
]

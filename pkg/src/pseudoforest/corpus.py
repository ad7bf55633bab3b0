"""Seeded random multigraphs and the decompose-and-verify corpus driver."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .density import max_density, minimal_d
from .engine import Certificate, Params, decompose
from .graph import MultiGraph
from .verifier import verify_certificate, verify_decomposition


def random_multigraph(rng: random.Random, n_max: int, m_max: int) -> MultiGraph:
    """Uniform n in [1, n_max], m in [0, m_max]; loops and parallel edges allowed."""
    n = rng.randint(1, n_max)
    m = rng.randint(0, m_max)
    return MultiGraph(n, [(rng.randrange(n), rng.randrange(n)) for _ in range(m)])


def make_corpus(seed: int, count: int, n_max: int, m_max: int) -> list[MultiGraph]:
    rng = random.Random(seed)
    return [random_multigraph(rng, n_max, m_max) for _ in range(count)]


@dataclass
class CaseResult:
    index: int
    k: int
    d: int
    hypothesis: bool
    outcome: str  # "decomposition" or "certificate"
    verified: bool
    iterations: int
    star_case: bool = False


@dataclass
class CorpusSummary:
    seed: int
    count: int
    n_max: int
    m_max: int
    cases: list[CaseResult] = field(default_factory=list)

    @property
    def decomposed(self) -> int:
        return sum(c.outcome == "decomposition" for c in self.cases)

    @property
    def all_verified(self) -> bool:
        return all(c.verified for c in self.cases)

    def to_json(self) -> dict:
        cert = [c for c in self.cases if c.outcome == "certificate"]
        under = [c for c in self.cases if c.hypothesis]
        return {
            "seed": self.seed,
            "count": self.count,
            "n_max": self.n_max,
            "m_max": self.m_max,
            "runs": len(self.cases),
            "hypothesis_runs": len(under),
            "hypothesis_decomposed_verified": sum(
                c.outcome == "decomposition" and c.verified for c in under
            ),
            "certificates": len(cert),
            "certificates_verified": sum(c.verified for c in cert),
            "max_iterations": max((c.iterations for c in self.cases), default=0),
            "failures": [
                {"graph": c.index, "k": c.k, "d": c.d, "outcome": c.outcome}
                for c in self.cases
                if not c.verified or (c.hypothesis and c.outcome != "decomposition")
            ],
        }


def run_corpus(
    seed: int, count: int, n_max: int, m_max: int, ks: tuple[int, ...] = (1, 2, 3)
) -> CorpusSummary:
    """Decompose every graph with the minimal admissible d for each k and verify.

    When no d is admissible (density at least k+1) the run uses d = 1 and the
    expected outcome is a certificate.
    """
    summary = CorpusSummary(seed, count, n_max, m_max)
    for i, graph in enumerate(make_corpus(seed, count, n_max, m_max)):
        density = max_density(graph).value
        for k in ks:
            d = minimal_d(density, k)
            hypothesis = d is not None
            p = Params(k, d if hypothesis else 1)
            result = decompose(graph, p)
            if isinstance(result, Certificate):
                ok = verify_certificate(graph, result, p).passed
                outcome = "certificate"
            else:
                ok = verify_decomposition(graph, result, p).passed
                outcome = "decomposition"
            summary.cases.append(
                CaseResult(i, k, p.d, hypothesis, outcome, ok, result.iterations, p.d <= k + 1)
            )
    return summary

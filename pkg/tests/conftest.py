from __future__ import annotations

import itertools

import pytest

from pseudoforest.graph import MultiGraph


def complete(n: int) -> MultiGraph:
    return MultiGraph(n, itertools.combinations(range(n), 2))


def cycle(n: int) -> MultiGraph:
    return MultiGraph(n, [(i, (i + 1) % n) for i in range(n)])


@pytest.fixture
def k4() -> MultiGraph:
    return complete(4)


@pytest.fixture
def k4_plus() -> MultiGraph:
    return complete(4).add_edges([(0, 1)])


@pytest.fixture
def c5() -> MultiGraph:
    return cycle(5)

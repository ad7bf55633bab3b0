from __future__ import annotations

import random

from hypothesis import given, settings
from hypothesis import strategies as st

from pseudoforest.colouring import RED
from pseudoforest.graph import ClassKind, MultiGraph, edge_class_kind
from pseudoforest.orientation import (
    InfeasibleWitness,
    Orientation,
    _reaching,
    initial_colouring,
    orient_bounded,
    repair_and_split,
)


def test_cycle_with_bound_one(c5):
    o = orient_bounded(c5, 1)
    assert isinstance(o, Orientation)
    assert o.outdegrees() == [1] * 5


def test_k4_with_bound_two(k4):
    o = orient_bounded(k4, 2)
    assert isinstance(o, Orientation)
    assert max(o.outdegrees()) <= 2 and sum(o.outdegrees()) == 6


def test_k4_plus_parallel_edge_is_infeasible_for_one(k4_plus):
    w = orient_bounded(k4_plus, 1)
    assert isinstance(w, InfeasibleWitness)
    assert w.edge_count > w.bound * len(w.vertices)
    assert w.edge_count == len(k4_plus.induced_edges(w.vertices))


def test_cycle_repair_has_no_passive_vertices(c5):
    o, split = repair_and_split(orient_bounded(c5, 2), 1)
    assert split.passive == frozenset()
    assert o.outdegrees() == [1] * 5


def test_directed_path_is_entirely_passive():
    g = MultiGraph(3, [(0, 1), (1, 2)])
    o, split = repair_and_split(Orientation(g, (0, 1)), 1)
    assert split.passive == frozenset({0, 1, 2})
    assert split.active == frozenset()


def test_k4_repair_trace():
    k4 = MultiGraph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (1, 3)])
    o = Orientation(k4, (0, 0, 0, 1, 2, 3))
    assert o.outdegrees() == [3, 1, 1, 1]
    repaired, split = repair_and_split(o, 2)
    assert repaired.outdegrees() == [2, 2, 1, 1]
    assert repaired.tails == (1, 0, 0, 1, 2, 3)
    # the outdegree-1 vertices and everything reaching them
    assert split.passive == frozenset({0, 1, 2, 3})


def test_initial_colouring_examples(c5):
    o, split = repair_and_split(orient_bounded(c5, 2), 1)
    f = initial_colouring(c5, o, split, 1)
    assert f.red_edges() == []

    k4 = MultiGraph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (1, 3)])
    o, split = repair_and_split(Orientation(k4, (0, 0, 3, 1, 2, 1)), 1)
    assert o.outdegrees() == [2, 2, 1, 1]
    f = initial_colouring(k4, o, split, 1)
    assert f.red_edges() == [0, 3]
    assert edge_class_kind(k4, f.red_edges()) != ClassKind.NEITHER
    assert not f.invariant_violations()


def test_low_outdegrees_give_no_red_edges():
    g = MultiGraph(4, [(0, 1), (1, 2), (2, 3)])
    o, split = repair_and_split(orient_bounded(g, 3), 2)
    assert initial_colouring(g, o, split, 2).red_edges() == []


multigraphs = st.integers(1, 9).flatmap(
    lambda n: st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=22).map(
        lambda es: MultiGraph(n, es)
    )
)


@settings(max_examples=250, deadline=None)
@given(multigraphs, st.integers(1, 3))
def test_repair_and_split_invariants(g, k):
    o = orient_bounded(g, k + 1)
    if isinstance(o, InfeasibleWitness):
        assert o.edge_count > (k + 1) * len(o.vertices)
        return
    assert max(o.outdegrees(), default=0) <= k + 1
    o, split = repair_and_split(o, k)
    out = o.outdegrees()
    deficient = {x for x in range(g.n) if out[x] < k}
    reaching = _reaching(g, o.tails, deficient)
    assert not any(out[x] == k + 1 for x in reaching)
    for x in split.active:
        assert out[x] in (k, k + 1)
    for x in split.passive:
        assert out[x] <= k
    for e, t in enumerate(o.tails):
        if o.head(e) in split.passive:
            assert t in split.passive
    f = initial_colouring(g, o, split, k)
    assert not f.invariant_violations()
    assert edge_class_kind(g, f.red_edges()) != ClassKind.NEITHER
    for e in f.red_edges():
        assert not set(g.edges[e]) & split.passive
    assert all(t == RED or t in g.edges[e] for e, t in enumerate(f.tails))


def test_witness_density_on_random_dense_graphs():
    rng = random.Random(2)
    for _ in range(100):
        n = rng.randint(1, 8)
        g = MultiGraph(n, [(rng.randrange(n), rng.randrange(n)) for _ in range(rng.randint(n, 4 * n))])
        for c in (1, 2, 3):
            o = orient_bounded(g, c)
            if isinstance(o, InfeasibleWitness):
                assert len(g.induced_edges(o.vertices)) > c * len(o.vertices)
            else:
                assert max(o.outdegrees()) <= c

from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pseudoforest.graph import (
    ClassKind,
    Component,
    EdgeCountError,
    EdgeSubgraph,
    GraphParseError,
    MalformedLineError,
    MultiGraph,
    VertexRangeError,
    class_kind,
    components,
    components_of,
    eccentricity_diameter,
    edge_class_kind,
    is_star,
    parse_graph,
    tree_diameter,
)

from .oracles import all_pairs_diameter


def test_parse_triangle():
    g = parse_graph("3 3\n0 1\n1 2\n2 0")
    assert g.n == 3 and g.m == 3
    assert g.edges == ((0, 1), (1, 2), (2, 0))


def test_parse_loop_and_parallel():
    loop = parse_graph(b"1 1\n0 0\n")
    assert loop.edges == ((0, 0),)
    pair = parse_graph("2 2\n0 1\n0 1")
    assert pair.m == 2 and pair.edges[0] == pair.edges[1]


def test_parse_skips_comments_and_blanks():
    g = parse_graph("# header next\n2 1\n\n# edge\n0 1\n")
    assert g.edges == ((0, 1),)


@pytest.mark.parametrize(
    "text, error, line",
    [
        ("2 1\n0 x\n", MalformedLineError, 2),
        ("2 1\n0 1 2\n", MalformedLineError, 2),
        ("2 1\n0 2\n", VertexRangeError, 2),
        ("2 2\n0 1\n", EdgeCountError, None),
        ("2 1\n0 1\n1 0\n", EdgeCountError, 3),
        ("", MalformedLineError, None),
    ],
)
def test_parse_errors_are_distinct_and_name_the_line(text, error, line):
    with pytest.raises(error) as info:
        parse_graph(text)
    assert isinstance(info.value, GraphParseError)
    assert info.value.line == line


def test_round_trip_preserves_edge_order():
    rng = random.Random(3)
    for _ in range(50):
        n = rng.randint(1, 9)
        g = MultiGraph(n, [(rng.randrange(n), rng.randrange(n)) for _ in range(rng.randint(0, 15))])
        assert parse_graph(g.to_text()) == g


def test_constructor_rejects_out_of_range():
    with pytest.raises(ValueError):
        MultiGraph(2, [(0, 2)])


def test_components_of_triangle_is_one_cyclic_component():
    g = parse_graph("3 3\n0 1\n1 2\n2 0")
    (comp,) = components(EdgeSubgraph(g, frozenset(range(3))))
    assert comp.is_cyclic and comp.edge_count == 3 and comp.vertex_count == 3


def test_components_two_disjoint_edges():
    g = MultiGraph(4, [(0, 1), (2, 3)])
    comps = components(EdgeSubgraph(g, frozenset({0, 1})))
    assert [c.edge_count for c in comps] == [1, 1]
    assert [c.min_vertex for c in comps] == [0, 2]


def test_components_path_without_middle_edges():
    # path 0-1-2 with both edges at 1 removed leaves three isolated vertices
    g = MultiGraph(3, [(0, 1), (1, 2)])
    comps = components(EdgeSubgraph(g, frozenset(), frozenset({0, 1, 2})))
    assert [(c.vertex_count, c.edge_count) for c in comps] == [(1, 0)] * 3


def test_loop_is_a_cyclic_component():
    g = MultiGraph(1, [(0, 0)])
    (comp,) = components_of(g, [0])
    assert comp.is_cyclic and comp.edge_count == 1


@pytest.mark.parametrize(
    "n, edges, expected",
    [
        (1, [], 0),
        (6, [(i, i + 1) for i in range(5)], 5),
        (8, [(0, i) for i in range(1, 8)], 2),
    ],
)
def test_tree_diameter(n, edges, expected):
    g = MultiGraph(n, edges)
    comp = components_of(g, range(g.m), [0])[0]
    assert tree_diameter(g, comp) == expected


def test_tree_diameter_rejects_cycles():
    g = parse_graph("3 3\n0 1\n1 2\n2 0")
    with pytest.raises(ValueError):
        tree_diameter(g, components_of(g, range(3))[0])


def test_double_bfs_matches_all_pairs_on_random_trees():
    rng = random.Random(11)
    for _ in range(1000):
        n = rng.randint(1, 50)
        edges = [(rng.randrange(i), i) for i in range(1, n)]
        g = MultiGraph(n, edges)
        comp = components_of(g, range(g.m), [0])[0]
        assert not comp.is_cyclic and comp.edge_count == comp.vertex_count - 1
        assert tree_diameter(g, comp) == all_pairs_diameter(n, edges)


def test_class_kind_examples():
    tri = parse_graph("3 3\n0 1\n1 2\n2 0")
    assert class_kind(EdgeSubgraph(tri, frozenset(range(3)))) == ClassKind.PSEUDOFOREST
    chord = tri.add_edges([(0, 1)])
    assert edge_class_kind(chord, range(4)) == ClassKind.NEITHER
    matching = MultiGraph(6, [(0, 1), (2, 3), (4, 5)])
    assert edge_class_kind(matching, range(3)) == ClassKind.FOREST


def test_is_star():
    g = MultiGraph(5, [(0, 1), (0, 2), (0, 3), (3, 4)])
    assert is_star(g, components_of(g, [0, 1, 2])[0])
    assert not is_star(g, components_of(g, range(4))[0])
    assert is_star(g, Component(frozenset({4}), frozenset()))


graphs = st.integers(1, 8).flatmap(
    lambda n: st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=14).map(
        lambda es: MultiGraph(n, es)
    )
)


@settings(max_examples=200, deadline=None)
@given(graphs, st.data())
def test_components_partition_edges(g, data):
    members = data.draw(st.sets(st.integers(0, max(g.m - 1, 0)), max_size=g.m)) if g.m else set()
    comps = components(EdgeSubgraph(g, frozenset(members)))
    seen = [e for c in comps for e in c.edge_indices]
    assert sorted(seen) == sorted(members)
    for c in comps:
        if not c.is_cyclic:
            assert c.edge_count == c.vertex_count - 1
            assert tree_diameter(g, c) == eccentricity_diameter(g, c)


@settings(max_examples=200, deadline=None)
@given(graphs, st.data())
def test_deleting_an_edge_keeps_forests_forests(g, data):
    if g.m == 0:
        return
    drop = data.draw(st.integers(0, g.m - 1))
    before = edge_class_kind(g, range(g.m))
    after = edge_class_kind(g, [e for e in range(g.m) if e != drop])
    if before == ClassKind.FOREST:
        assert after == ClassKind.FOREST
    if before == ClassKind.PSEUDOFOREST:
        assert after != ClassKind.NEITHER

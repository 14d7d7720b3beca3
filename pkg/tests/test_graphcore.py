import random

import pytest
from hypothesis import given, settings, strategies as st

from triviso.bench import random_subcubic
from triviso.graphcore import (Graph, GraphError, build_x, format_edge_list, layer_sequence, layer_sequence_for,
                               parse_edge_list, validate)
from triviso.iso import verify_mapping

from conftest import graph1

TWIN_SQUARE = [(1, 2), (1, 3), (2, 3), (1, 4), (2, 4)]


def test_validate_reports():
    assert validate(graph1([(1, 2), (2, 3), (1, 3)]), 3).valid
    rep = validate(graph1([(1, 2), (3, 4)]), 3)
    assert not rep.connected and not rep.valid
    rep = validate(graph1([(1, 2), (1, 3), (1, 4), (1, 5)]), 3)
    assert rep.max_degree == 4 and not rep.degree_ok
    rep = validate(Graph.from_edges([(0, 1), (0, 1), (1, 1)]), 3)
    assert not rep.simple


def test_parse_edge_list():
    g = parse_edge_list("# comment\n1 2\n\n2 3  # trailing\n3 1\n")
    assert g.n == 3 and g.edges() == [(0, 1), (0, 2), (1, 2)]
    assert parse_edge_list(format_edge_list(g)) == g
    for bad in ("1\n", "a b\n", "0 1\n", "\n# nothing\n"):
        with pytest.raises(GraphError):
            parse_edge_list(bad)


def test_build_x_counts(example1):
    tri = graph1([(1, 2), (2, 3), (1, 3)])
    x = build_x(tri, (0, 1), tri, (0, 1))
    assert (x.graph.n, len(x.graph.edges())) == (8, 9)
    a, b = example1
    x = build_x(a, a.edges()[0], b, b.edges()[0])
    assert (x.graph.n, len(x.graph.edges())) == (22, 25)
    assert x.graph.degree(x.v1) == x.graph.degree(x.v2) == 3
    assert x.origin[x.v1] == ("bridge", 0) and x.origin[10] == ("right", 0)


def test_build_x_k2_merge():
    k2 = graph1([(1, 2)])
    x = build_x(k2, (0, 1), k2, (0, 1))
    assert x.graph.n == 6
    assert x.graph.edges() == [(0, 4), (1, 4), (2, 5), (3, 5), (4, 5)]
    assert x.e == (4, 5)


def test_build_x_missing_edge():
    tri = graph1([(1, 2), (2, 3), (1, 3)])
    with pytest.raises(GraphError):
        build_x(tri, (0, 1), tri, (0, 3))


def test_layers_twin_square():
    layers = layer_sequence_for(graph1(TWIN_SQUARE), (0, 1))
    assert layers.new_vertices(2) == (2, 3)
    assert layers.f(1) == {2: (0, 1), 3: (0, 1)}
    assert layers.twins(1) == ((2, 3),)
    assert layers.level(1).inner_edges == ()


def test_layers_star(star):
    layers = layer_sequence_for(star, (0, 1))
    assert layers.new_vertices(2) == (2, 3)
    assert layers.f(1) == {2: (0,), 3: (0,)}
    assert layers.twins(1) == ((2, 3),)


def test_layers_k2_merge():
    k2 = graph1([(1, 2)])
    layers = layer_sequence(build_x(k2, (0, 1), k2, (0, 1)))
    assert layers.m == 2
    assert layers.new_vertices(1) == (4, 5)
    assert layers.twins(1) == ((0, 1), (2, 3))
    assert layers.edges(layers.m) == set(layers.instance_graph.edges())


def test_trailing_level_holds_last_inner_edges():
    # 6-cycle seen from one edge ends with an edge inside the last layer
    g = graph1([(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 1)])
    layers = layer_sequence_for(g, (0, 1))
    assert layers.level(3).inner_edges == ((3, 4),)
    assert layers.new_vertices(layers.m) == ()
    assert layers.edges(layers.m) == set(g.edges())
    assert (3, 4) not in layers.edges(3)


def test_three_vertices_with_equal_neighbor_sets_rejected():
    g = graph1([(1, 2), (1, 3), (1, 4), (1, 5)])
    with pytest.raises(GraphError):
        layer_sequence_for(g, (0, 1))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_layer_invariants(seed):
    rng = random.Random(seed)
    g = random_subcubic(rng.randint(2, 30), rng)
    h = random_subcubic(rng.randint(2, 30), rng)
    x = build_x(g, rng.choice(g.edges()), h, rng.choice(h.edges()))
    assert len(x.graph.edges()) == len(g.edges()) + len(h.edges()) + 3
    assert validate(x.graph, 3).valid
    layers = layer_sequence(x)
    assert layers.vertices(1) == sorted(x.e)
    assert layers.edges(1) == {x.e}
    seen = set()
    prev_v, prev_e = set(), set()
    for r in range(1, layers.m + 1):
        vs, es = set(layers.vertices(r)), layers.edges(r)
        assert prev_v <= vs and prev_e <= es
        assert all(u in vs and v in vs for u, v in es)
        prev_v, prev_e = vs, es
        seen |= set(layers.new_vertices(r))
        if r < layers.m:
            for v, s in layers.f(r).items():
                assert 1 <= len(s) <= 3 and set(s) <= set(layers.new_vertices(r))
            twins = [v for pair in layers.twins(r) for v in pair]
            assert len(twins) == len(set(twins))
    assert seen == set(range(x.graph.n))
    assert prev_e == set(x.graph.edges())


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_build_x_undo_recovers_inputs(seed):
    rng = random.Random(seed)
    g = random_subcubic(rng.randint(2, 15), rng)
    h = random_subcubic(rng.randint(2, 15), rng)
    e1, e2 = rng.choice(g.edges()), rng.choice(h.edges())
    x = build_x(g, e1, h, e2)
    left = [(u, v) for u, v in x.graph.edges() if v < x.n1] + [e1]
    right = [(u - x.n1, v - x.n1) for u, v in x.graph.edges() if x.n1 <= u and v < x.n1 + x.n2] + [e2]
    assert verify_mapping(g, Graph.from_edges(left, g.n), list(range(g.n)))
    assert verify_mapping(h, Graph.from_edges(right, h.n), list(range(h.n)))

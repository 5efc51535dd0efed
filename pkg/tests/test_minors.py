import random

import pytest
from hypothesis import given, settings, strategies as st

from minorgrowth.graphs import (
    complete_graph,
    contract_edge,
    cycle_graph,
    delete_vertex,
    disjoint_union,
    graph_from_dsl,
    make_graph,
    path_graph,
    star_graph,
)
from minorgrowth.minors import (
    find_minor_model,
    has_at_most_one_edge,
    is_apex_path_forest,
    is_caterpillar_forest,
    is_matching_graph,
    is_minor,
    is_path_forest,
    is_star_forest,
    is_star_plus_isolated,
    minor_of_copies,
)
from minorgrowth.verify import MinorClosureOracle
from oracles import (
    all_graphs,
    random_graph,
    random_matching,
    random_path_forest,
    random_star_forest,
    random_star_plus_isolated,
)


def test_find_minor_model_examples():
    assert find_minor_model(complete_graph(3), path_graph(10)) is None
    model = find_minor_model(path_graph(4), complete_graph(4))
    assert model is not None and model.is_valid_for(path_graph(4), complete_graph(4))
    h, g = star_graph(3), graph_from_dsl("comb:3")
    model = find_minor_model(h, g)
    assert model is not None and model.is_valid_for(h, g)


def test_is_minor_examples():
    assert not is_minor(graph_from_dsl("matching:2"), complete_graph(3))
    assert is_minor(path_graph(3), complete_graph(3))
    assert is_minor(cycle_graph(4), complete_graph(4))
    assert is_minor(make_graph(0, []), make_graph(0, []))  # vacuous model
    assert is_minor(make_graph(0, []), complete_graph(3))
    assert not is_minor(complete_graph(4), cycle_graph(6))
    assert is_minor(star_graph(3), complete_graph(4))


def test_path_forest_predicate():
    assert is_path_forest(graph_from_dsl("matching:3"))
    assert not is_path_forest(star_graph(3))
    assert is_path_forest(graph_from_dsl("path:4+iso:2"))
    assert is_path_forest(make_graph(0, []))
    assert not is_path_forest(cycle_graph(4))


def test_star_forest_predicate():
    assert is_star_forest(path_graph(3))
    assert not is_star_forest(path_graph(4))
    assert is_star_forest(graph_from_dsl("star:3+edges(2;1-2)"))
    assert is_star_forest(make_graph(0, []))


def test_matching_predicate():
    assert is_matching_graph(graph_from_dsl("matching:2"))
    assert not is_matching_graph(path_graph(3))
    assert is_matching_graph(graph_from_dsl("iso:5"))


def test_star_plus_isolated_predicate():
    assert is_star_plus_isolated(graph_from_dsl("star:4+iso:2"))
    assert not is_star_plus_isolated(graph_from_dsl("matching:2"))
    assert is_star_plus_isolated(graph_from_dsl("iso:3"))


def test_at_most_one_edge():
    assert has_at_most_one_edge(graph_from_dsl("edges(2;1-2)+iso:3"))
    assert not has_at_most_one_edge(path_graph(3))
    assert has_at_most_one_edge(make_graph(0, []))


def test_caterpillar_forest_predicate():
    assert is_caterpillar_forest(graph_from_dsl("comb:4"))
    spider = make_graph(7, [(1, 2), (2, 3), (1, 4), (4, 5), (1, 6), (6, 7)])
    assert not is_caterpillar_forest(spider)
    assert is_caterpillar_forest(star_graph(5))
    assert not is_caterpillar_forest(cycle_graph(5))
    assert is_caterpillar_forest(graph_from_dsl("comb:3+path:4+iso:1"))


def test_apex_path_forest_predicate():
    assert is_apex_path_forest(graph_from_dsl("fan:5"))
    assert not is_apex_path_forest(complete_graph(4))
    assert is_apex_path_forest(path_graph(6))
    assert is_apex_path_forest(complete_graph(3))


def _hosts():
    path13 = path_graph(13)
    matching_host = graph_from_dsl("matching:6+iso:6")
    star_host = graph_from_dsl("star:6+iso:6")
    return path13, matching_host, star_host


@pytest.mark.parametrize("n", range(6))
def test_predicate_minor_coherence(n):
    """Family membership must agree with containment in a family host."""
    path13, matching_host, star_host = _hosts()
    star6 = star_graph(6)
    for h in all_graphs(n):
        assert is_path_forest(h) == is_minor(h, path13)
        assert is_star_forest(h) == minor_of_copies(h, star6, 6)
        assert is_matching_graph(h) == is_minor(h, matching_host)
        assert is_star_plus_isolated(h) == is_minor(h, star_host)


@settings(max_examples=120, deadline=None)
@given(st.data())
def test_families_closed_under_one_step(data):
    rng = random.Random(data.draw(st.integers(0, 10 ** 9)))
    n = data.draw(st.integers(2, 9))
    for build, pred in [(random_path_forest, is_path_forest),
                        (random_star_forest, is_star_forest),
                        (random_matching, is_matching_graph),
                        (random_star_plus_isolated, is_star_plus_isolated)]:
        g = build(rng, n)
        assert pred(g)
        shrunk = delete_vertex(g, rng.randint(1, n))
        assert pred(shrunk)
        if g.edge_count:
            shrunk = contract_edge(g, rng.choice(g.edges()))
            assert pred(shrunk)


@settings(max_examples=80, deadline=None)
@given(st.data())
def test_minor_transitivity_constructive(data):
    rng = random.Random(data.draw(st.integers(0, 10 ** 9)))
    f = random_graph(rng, rng.randint(2, 7))
    g = _random_minor(rng, f)
    h = _random_minor(rng, g)
    assert is_minor(g, f)
    assert is_minor(h, g)
    assert is_minor(h, f)


def _random_minor(rng, g):
    for _ in range(rng.randint(0, 3)):
        ops = []
        if g.n > 1:
            ops.append("dv")
        if g.edge_count:
            ops.extend(["de", "ce"])
        if not ops:
            break
        op = rng.choice(ops)
        if op == "dv":
            g = delete_vertex(g, rng.randint(1, g.n))
        elif op == "ce":
            g = contract_edge(g, rng.choice(g.edges()))
        else:
            edges = g.edges()
            edges.remove(rng.choice(edges))
            g = make_graph(g.n, edges)
    return g


@settings(max_examples=120, deadline=None)
@given(st.data())
def test_models_are_valid_witnesses(data):
    rng = random.Random(data.draw(st.integers(0, 10 ** 9)))
    g = random_graph(rng, rng.randint(1, 8))
    h = random_graph(rng, rng.randint(1, min(5, g.n)))
    model = find_minor_model(h, g)
    if model is not None:
        assert model.is_valid_for(h, g)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_agreement_with_closure_oracle(data):
    oracle = MinorClosureOracle()
    rng = random.Random(data.draw(st.integers(0, 10 ** 9)))
    g = random_graph(rng, rng.randint(1, 5))
    h = random_graph(rng, rng.randint(1, 5))
    assert is_minor(h, g) == oracle.is_minor(h, g)


def test_minor_of_copies_matches_explicit_union():
    rng = random.Random(3)
    for _ in range(60):
        c = random_graph(rng, rng.randint(1, 4))
        h = random_graph(rng, rng.randint(1, 5))
        copies = rng.randint(1, 3)
        host = c
        for _ in range(copies - 1):
            host = disjoint_union(host, c)
        assert minor_of_copies(h, c, copies) == is_minor(h, host)


def test_disconnected_host_dispatch():
    # components of the pattern must split across host components
    h = graph_from_dsl("path:3+path:3")
    host = graph_from_dsl("path:4+path:2")
    assert not is_minor(h, host)
    host2 = graph_from_dsl("path:4+path:3")
    assert is_minor(h, host2)
    big = graph_from_dsl("star:6+iso:6")
    assert is_minor(graph_from_dsl("star:4+iso:8"), big)
    assert not is_minor(graph_from_dsl("star:4+edges(2;1-2)"), big)

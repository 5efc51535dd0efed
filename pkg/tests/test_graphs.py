import random

import pytest
from hypothesis import given, settings, strategies as st

from minorgrowth.graphs import (
    DslError,
    GraphError,
    canonical_code,
    canonical_form,
    complete_graph,
    components,
    contract_edge,
    cycle_graph,
    delete_vertex,
    dfs_forest,
    disjoint_union,
    expr_to_dsl,
    generate,
    graph_from_dsl,
    graph_to_dsl,
    is_connected,
    is_two_connected,
    make_graph,
    parse_graph,
    parse_graph_list,
    path_graph,
    star_graph,
)
from oracles import all_graphs, is_isomorphic_brute, permuted, random_graph


def test_make_graph_basic():
    empty = make_graph(0, [])
    assert empty.n == 0 and empty.edge_count == 0
    k3 = make_graph(3, [(1, 2), (2, 3), (1, 3)])
    assert k3.edge_count == 3
    assert k3.degree_sequence() == (2, 2, 2)
    m2 = make_graph(4, [(1, 2), (3, 4)])
    assert m2.degree_sequence() == (1, 1, 1, 1)
    # duplicates collapse
    assert make_graph(2, [(1, 2), (2, 1), (1, 2)]).edge_count == 1


def test_make_graph_errors():
    with pytest.raises(GraphError):
        make_graph(3, [(1, 1)])
    with pytest.raises(GraphError):
        make_graph(3, [(1, 4)])
    with pytest.raises(GraphError):
        make_graph(65, [])
    with pytest.raises(GraphError):
        make_graph(-1, [])


def test_generators():
    s3 = graph_from_dsl("star:3")
    assert (s3.n, s3.edge_count) == (4, 3)
    comb3 = graph_from_dsl("comb:3")
    assert (comb3.n, comb3.edge_count) == (6, 5)
    # spine degrees (2, 3, 2) plus three leaves
    assert comb3.degree_sequence() == (1, 1, 1, 2, 2, 3)
    fan5 = graph_from_dsl("fan:5")
    assert (fan5.n, fan5.edge_count) == (6, 9)
    assert fan5.degree(6) == 5
    assert canonical_code(graph_from_dsl("path:2+path:2")) == \
        canonical_code(graph_from_dsl("matching:2"))
    assert graph_from_dsl("biclique:2,3").edge_count == 6
    assert graph_from_dsl("iso:4").edge_count == 0
    assert graph_from_dsl("cycle:3").degree_sequence() == (2, 2, 2)


def test_generator_errors():
    with pytest.raises(GraphError):
        graph_from_dsl("cycle:2")
    with pytest.raises(DslError):
        graph_from_dsl("banana:3")
    with pytest.raises(GraphError):
        graph_from_dsl("path:40+path:40")  # over the vertex cap


def test_dsl_roundtrip():
    for text in ["path:5", "matching:2,star:3", "edges(4;1-2,3-4)",
                 "comb:2+iso:1", "biclique:2,3", "path:3+edges(2;1-2)"]:
        exprs = parse_graph_list(text)
        printed = ",".join(expr_to_dsl(e) for e in exprs)
        assert [expr_to_dsl(e) for e in parse_graph_list(printed)] == \
            [expr_to_dsl(e) for e in exprs]
    # whitespace-insensitive; printing is the canonical form
    assert expr_to_dsl(parse_graph(" path : 3 +  iso:1 ")) == "path:3+iso:1"
    assert expr_to_dsl(parse_graph("edges( 4 ; 2-1 , 3-4 )")) == "edges(4;1-2,3-4)"
    expr = parse_graph("matching:2")
    assert parse_graph(expr_to_dsl(expr)) == expr


def test_dsl_equivalence():
    assert canonical_code(graph_from_dsl("edges(4;1-2,3-4)")) == \
        canonical_code(graph_from_dsl("matching:2"))


def test_dsl_errors_carry_position():
    with pytest.raises(DslError) as err:
        parse_graph("path:3++iso:1")
    assert err.value.position == 7
    with pytest.raises(DslError):
        parse_graph("star:2,3")  # star takes one parameter
    with pytest.raises(DslError):
        parse_graph("edges(3;1-2,)")


def test_delete_vertex():
    assert delete_vertex(complete_graph(3), 1).edge_count == 1
    s = star_graph(3)
    assert delete_vertex(s, 1).edge_count == 0  # center removal isolates leaves
    parts = components(delete_vertex(path_graph(5), 3))
    assert sorted(p.n for p in parts) == [2, 2]
    assert all(p.edge_count == 1 for p in parts)
    with pytest.raises(GraphError):
        delete_vertex(path_graph(3), 4)


def test_contract_edge():
    k1 = contract_edge(path_graph(2), (1, 2))
    assert (k1.n, k1.edge_count) == (1, 0)
    k2 = contract_edge(complete_graph(3), (1, 2))
    assert (k2.n, k2.edge_count) == (2, 1)  # parallel edges suppressed
    merged = contract_edge(graph_from_dsl("comb:2"), (1, 2))
    assert canonical_code(merged) == canonical_code(star_graph(2))
    with pytest.raises(GraphError):
        contract_edge(path_graph(3), (1, 3))


def test_components():
    assert [c.n for c in components(path_graph(3))] == [3]
    assert [c.edge_count for c in components(graph_from_dsl("matching:2"))] == [1, 1]
    assert components(make_graph(0, [])) == []


def test_two_connected():
    assert is_two_connected(complete_graph(3))
    assert not is_two_connected(path_graph(3))
    assert is_two_connected(cycle_graph(5))
    # convention: too small to qualify
    assert not is_two_connected(make_graph(1, []))
    assert not is_two_connected(path_graph(2))
    assert not is_two_connected(graph_from_dsl("matching:2"))


def test_two_connected_matches_cutvertex_scan():
    rng = random.Random(7)
    for _ in range(200):
        g = random_graph(rng, rng.randint(1, 8))
        expected = (g.n >= 3 and is_connected(g)
                    and all(is_connected(delete_vertex(g, v)) for v in g.vertices()))
        assert is_two_connected(g) == expected


def test_dfs_examples():
    f = dfs_forest(path_graph(5))
    assert f.height == 4 and len(f.root_set) == 1
    f = dfs_forest(graph_from_dsl("matching:3"))
    assert f.height == 1 and len(f.root_set) == 3
    # depth-first exploration of a complete graph digs a path
    assert dfs_forest(complete_graph(4)).height == 3
    with pytest.raises(GraphError):
        dfs_forest(path_graph(3), order=[1, 2])


def test_dfs_deterministic():
    g = graph_from_dsl("fan:4")
    order = [3, 1, 4, 2, 5]
    a = dfs_forest(g, order)
    b = dfs_forest(g, order)
    assert a.parent == b.parent and a.depth == b.depth


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_dfs_forest_invariants(data):
    n = data.draw(st.integers(1, 12))
    seed = data.draw(st.integers(0, 10 ** 9))
    rng = random.Random(seed)
    g = random_graph(rng, n)
    order = list(range(1, n + 1))
    rng.shuffle(order)
    forest = dfs_forest(g, order)
    assert forest.is_valid_for(g)
    assert set(forest.parent) == set(g.vertices())
    assert forest.height == max(forest.depth.values())
    assert len(forest.root_set) == len(components(g))


@settings(max_examples=150, deadline=None)
@given(st.data())
def test_minor_operations_shrink(data):
    n = data.draw(st.integers(1, 9))
    rng = random.Random(data.draw(st.integers(0, 10 ** 9)))
    g = random_graph(rng, n)
    h = delete_vertex(g, rng.randint(1, n))
    assert h.n == n - 1 and h.edge_count <= g.edge_count
    _assert_simple(h)
    if g.edge_count:
        e = rng.choice(g.edges())
        c = contract_edge(g, e)
        assert c.n == n - 1 and c.edge_count <= g.edge_count
        _assert_simple(c)


def _assert_simple(g):
    for i in range(g.n):
        assert not g.rows[i] >> i & 1
        for j in range(g.n):
            assert (g.rows[i] >> j & 1) == (g.rows[j] >> i & 1)


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_union_components_roundtrip(data):
    rng = random.Random(data.draw(st.integers(0, 10 ** 9)))
    a = random_graph(rng, rng.randint(1, 6))
    b = random_graph(rng, rng.randint(1, 6))
    u = disjoint_union(a, b)
    masks_total = sum(len(c.vertices()) for c in components(u))
    assert masks_total == u.n
    rebuilt = None
    for c in components(u):
        rebuilt = c if rebuilt is None else disjoint_union(rebuilt, c)
    assert canonical_code(rebuilt) == canonical_code(u)


def test_canonical_code_examples():
    a = make_graph(3, [(1, 2), (2, 3)])
    b = make_graph(3, [(2, 1), (1, 3)])  # relabelled path
    assert canonical_code(a) == canonical_code(b)
    assert canonical_code(complete_graph(3)) != canonical_code(path_graph(3))
    with pytest.raises(GraphError):
        canonical_code(make_graph(17, []))


def test_canonical_code_4_vertex_classes():
    codes = {canonical_code(g) for g in all_graphs(4)}
    assert len(codes) == 11
    # cross-check the partition against raw permutation isomorphism
    reps = {}
    for g in all_graphs(4):
        for rep in reps.values():
            if is_isomorphic_brute(g, rep):
                assert canonical_code(g) == canonical_code(rep)
                break
        else:
            reps[canonical_code(g)] = g
    assert len(reps) == 11


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_canonical_code_invariance(data):
    n = data.draw(st.integers(1, 10))
    rng = random.Random(data.draw(st.integers(0, 10 ** 9)))
    g = random_graph(rng, n)
    perm = list(range(1, n + 1))
    rng.shuffle(perm)
    assert canonical_code(g) == canonical_code(permuted(g, perm))


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_canonical_form_is_isomorphic_copy(data):
    n = data.draw(st.integers(0, 6))
    rng = random.Random(data.draw(st.integers(0, 10 ** 9)))
    g = random_graph(rng, n)
    cf = canonical_form(g)
    assert is_isomorphic_brute(g, cf)
    assert canonical_form(cf) == cf

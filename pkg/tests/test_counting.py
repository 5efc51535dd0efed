import random
from math import comb, factorial

import pytest

from minorgrowth.classify import ClassSpec
from minorgrowth.counting import (
    CountMismatchError,
    CountTable,
    EnumerationCapError,
    apex_count,
    bell,
    brute_count_table,
    count_members,
    count_prefix,
    double_factorial,
    enumerate_members,
    forest_count,
    is_member,
    matchings_count,
    path_forest_count,
    spec_identity,
    star_class_count,
    star_forest_count,
)
from minorgrowth.graphs import graph_from_dsl, make_graph
from minorgrowth.minors import is_minor


def spec(text):
    return ClassSpec.from_dsl(text)


# golden columns checked against an independent exhaustive enumerator
# with a deletion/contraction containment test (n <= 5)
GOLDEN_COUNTS = {
    "path:3": [1, 1, 2, 4, 10, 26],
    "complete:3": [1, 1, 2, 7, 38, 291],
    "complete:3,star:3": [1, 1, 2, 7, 34, 206],
    "path:4,complete:3": [1, 1, 2, 7, 26, 111],
    "matching:2,star:3": [1, 1, 2, 8, 23, 51],
    "matching:2,star:2": [1, 1, 2, 4, 7, 11],
    "matching:2": [1, 1, 2, 8, 27, 76],
    "edges(3;1-2)": [1, 1, 2, 1, 1, 1],
    "path:5": [1, 1, 2, 8, 64, 391],
    "complete:2": [1, 1, 1, 1, 1, 1],
    "iso:1": [1, 0, 0, 0, 0, 0],
}


@pytest.mark.parametrize("dsl,expected", GOLDEN_COUNTS.items())
def test_count_members_golden(dsl, expected):
    got = [count_members(spec(dsl), n) for n in range(len(expected))]
    assert got == expected


def test_count_members_spec_examples():
    assert count_members(spec("path:3"), 4) == 10
    assert count_members(spec("complete:3"), 4) == 38
    assert all(count_members(spec("complete:2"), n) == 1 for n in range(9))


def test_count_caps():
    with pytest.raises(EnumerationCapError):
        count_members(spec("complete:3"), 11)
    with pytest.raises(EnumerationCapError):
        apex_count(spec("complete:2"), 9)


def test_empty_graph_obstruction():
    empty_excluded = ClassSpec((make_graph(0, []),))
    assert [count_members(empty_excluded, n) for n in range(3)] == [0, 0, 0]


def test_split_determinism():
    for dsl in ("complete:3", "path:4,complete:3", "matching:2"):
        s = spec(dsl)
        base = count_members(s, 5)
        for splits in (1, 3, 6):
            assert count_members(s, 5, splits=splits) == base
            assert sum(count_prefix(s, 5, splits, bits)
                       for bits in range(1 << splits)) == base


def test_enumerate_members_consistency():
    s = spec("complete:3,star:3")
    members = enumerate_members(s, 4)
    assert len(members) == count_members(s, 4) == 34
    assert len({m.rows for m in members}) == len(members)
    for m in members:
        assert is_member(s, m)
    # non-members really are excluded
    outside = [g for g in _all_graphs(4) if g.rows not in {m.rows for m in members}]
    assert all(not is_member(s, g) for g in outside)


def _all_graphs(n):
    import itertools
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    return [make_graph(n, [p for i, p in enumerate(pairs) if bits >> i & 1])
            for bits in range(1 << len(pairs))]


def test_apex_counts():
    k2 = spec("complete:2")
    assert [apex_count(k2, n) for n in range(1, 7)] == [1, 2, 7, 23, 66, 172]
    assert apex_count(k2, 3) == 7
    assert apex_count(k2, 4) == 23
    # apex over the edgeless class is the one-star class
    for n in range(1, 7):
        assert apex_count(k2, n) == star_class_count(n)
    assert [apex_count(spec("path:3"), n) for n in range(1, 6)] == [1, 2, 8, 54, 476]


def test_apex_empty_convention():
    assert apex_count(spec("complete:2"), 0) == 1
    assert apex_count(ClassSpec((make_graph(0, []),)), 0) == 0


def test_bell_and_double_factorial():
    assert [bell(n) for n in range(8)] == [1, 1, 2, 5, 15, 52, 203, 877]
    assert double_factorial(5) == 15
    assert double_factorial(0) == 1
    assert double_factorial(-1) == 1
    assert double_factorial(6) == 48
    with pytest.raises(ValueError):
        bell(-1)


def test_matchings_count():
    assert [matchings_count(n) for n in range(7)] == [1, 1, 2, 4, 10, 26, 76]
    assert matchings_count(5) >= double_factorial(5)


def test_family_formula_values():
    assert [path_forest_count(n) for n in range(8)] == \
        [1, 1, 2, 7, 34, 206, 1486, 12412]
    assert [star_forest_count(n) for n in range(8)] == \
        [1, 1, 2, 7, 26, 111, 562, 3151]
    assert [forest_count(n) for n in range(8)] == \
        [1, 1, 2, 7, 38, 291, 2932, 36961]
    assert [star_class_count(n) for n in range(8)] == \
        [1, 1, 2, 7, 23, 66, 172, 421]
    assert path_forest_count(4) == 34 >= factorial(4)
    assert star_forest_count(4) == 26 >= bell(4)
    assert star_class_count(4) == 23 >= 2 ** 3


def test_formula_vs_brute_oracle():
    pairs = [("path:3", matchings_count), ("complete:3", forest_count),
             ("complete:3,star:3", path_forest_count),
             ("path:4,complete:3", star_forest_count)]
    for dsl, formula in pairs:
        s = spec(dsl)
        for n in range(7):
            assert count_members(s, n) == formula(n), (dsl, n)


def test_monotone_under_fewer_obstructions():
    wide = spec("complete:3")
    narrow = spec("complete:3,star:3")
    for n in range(7):
        assert count_members(narrow, n) <= count_members(wide, n)


def test_count_table():
    t = CountTable("x")
    t.record(3, 7, "brute")
    t.record(3, 7, "formula")
    assert t.provenance[3] == {"brute", "formula"}
    with pytest.raises(CountMismatchError):
        t.record(3, 8, "formula")
    assert t.sizes() == [3] and t[3] == 7


def test_brute_count_table():
    t = brute_count_table(spec("path:3"), 5)
    assert [t[n] for n in range(6)] == [1, 1, 2, 4, 10, 26]
    assert all(t.provenance[n] == {"brute"} for n in range(6))


def test_spec_identity_label_independent():
    a = spec("matching:2,star:3").identity
    b = spec("star:3,matching:2").identity
    c = spec("edges(4;1-2,3-4),edges(4;1-2,1-3,1-4)").identity
    assert a == b == c


def test_checker_agreement_with_full_search():
    """Random edge-insertion walks: the compiled per-edge checkers must
    flag exactly the insertions that create a containment."""
    from minorgrowth.counting import _compile_spec

    rng = random.Random(11)
    obstructions = ["path:4", "star:3", "complete:3", "matching:2",
                    "path:3+iso:1", "cycle:4", "comb:2", "edges(2;1-2)+iso:2"]
    for trial in range(150):
        dsl = rng.choice(obstructions)
        h = graph_from_dsl(dsl)
        n = rng.randint(max(1, h.n - 2), 7)
        s = ClassSpec((h,))
        _, checkers = _compile_spec(s.excluded, n)
        if h.edge_count == 0 or h.n > n:
            continue
        rows = [0] * n
        slots = [(i, j) for i in range(n) for j in range(i + 1, n)]
        rng.shuffle(slots)
        for u, v in slots:
            rows[u] |= 1 << v
            rows[v] |= 1 << u
            created = any(fn(rows, u, v) for fn in checkers)
            really = is_minor(h, make_graph(n, _edges_of(rows)))
            assert created == really, (dsl, n, _edges_of(rows), (u + 1, v + 1))
            if created:
                rows[u] &= ~(1 << v)
                rows[v] &= ~(1 << u)


def _edges_of(rows):
    out = []
    for i in range(len(rows)):
        for j in range(i + 1, len(rows)):
            if rows[i] >> j & 1:
                out.append((i + 1, j + 1))
    return out

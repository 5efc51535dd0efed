"""Exact counting of class members, apex counting, and closed-form counters.

Brute-force counts walk a binary decision tree over the candidate edges of
the n-vertex labelled graph in fixed lexicographic order. When including an
edge creates an excluded minor in the partial graph, the whole include
subtree is pruned: every supergraph of the partial graph contains the same
minor. Leaves of the surviving tree are exactly the class members, so the
count is exact and independent of how the tree is split across workers.

Each excluded minor is compiled to an obstruction checker keyed on its
shape. Along a surviving branch the partial graph is known to be clean, so
a checker only has to decide whether the freshly added edge completed a
containment; paths, stars, triangles and matchings get direct tests, and
anything else falls back to the full minor search.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb, factorial

from .graphs import (
    Graph,
    _bits,
    canonical_form,
    delete_vertex,
    graph_to_dsl,
    induced_subgraph,
)
from .minors import (
    _connected_subsets,
    _independent_edges,
    _star_leaf_count,
    _is_path_shape,
    is_matching_graph,
    is_minor,
)

HARD_CAP = 10
APEX_CAP = 8


class EnumerationCapError(ValueError):
    """Requested size is beyond the supported enumeration range."""


class CountMismatchError(ValueError):
    """Two provenances disagree about the same count."""


def spec_identity(excluded) -> str:
    """Canonical, label-independent rendering of an excluded-minor list."""
    parts = []
    for h in excluded:
        try:
            parts.append(graph_to_dsl(canonical_form(h)))
        except ValueError:
            parts.append(graph_to_dsl(h))
    return ",".join(sorted(set(parts), key=lambda s: (len(s), s)))


@dataclass
class CountTable:
    """Counts g_n per size with provenance, for one excluded-minor list."""

    spec: str
    entries: dict[int, int] = field(default_factory=dict)
    provenance: dict[int, frozenset[str]] = field(default_factory=dict)

    def record(self, n: int, count: int, source: str) -> None:
        if n in self.entries and self.entries[n] != count:
            raise CountMismatchError(
                f"n={n}: {source} says {count}, recorded {self.entries[n]}")
        self.entries[n] = count
        self.provenance[n] = self.provenance.get(n, frozenset()) | {source}

    def sizes(self) -> list[int]:
        return sorted(self.entries)

    def __getitem__(self, n: int) -> int:
        return self.entries[n]


# ---------------------------------------------------------------------------
# obstruction checkers
# ---------------------------------------------------------------------------

def _strip_isolated_parts(h: Graph):
    """(core graph without isolated vertices, isolated count)."""
    keep = [v for v in h.vertices() if h.degree(v) > 0]
    return induced_subgraph(h, keep), h.n - len(keep)


def _paths_ending_at(rows, start: int, avoid: int, max_len: int):
    """Vertex masks of simple paths ending at ``start``, grouped by length.

    ``avoid`` is a bitmask of forbidden vertices. Masks include the start.
    """
    by_len: dict[int, set[int]] = {1: {1 << start}}
    frontier = [(start, 1 << start)]
    for length in range(2, max_len + 1):
        nxt = []
        bucket = set()
        for end, mask in frontier:
            for u in _bits(rows[end] & ~mask & ~avoid):
                nxt.append((u, mask | (1 << u)))
                bucket.add(mask | (1 << u))
        if not nxt:
            break
        by_len[length] = bucket
        frontier = nxt
    return by_len, frontier


def _path_through_edge(rows, u: int, v: int, k: int) -> bool:
    """Does some simple path on >= k vertices use the edge (u, v)?

    Both sides are 0-based. Exact: any such path splits at the edge into a
    piece ending at u (avoiding v) and a disjoint piece ending at v.
    """
    if k <= 2:
        return True
    side_u, frontier_u = _paths_ending_at(rows, u, 1 << v, k - 1)
    side_v, _ = _paths_ending_at(rows, v, 1 << u, k - 1)
    for lu, masks_u in side_u.items():
        need = k - lu
        for lv, masks_v in side_v.items():
            if lv < need:
                continue
            for mu in masks_u:
                for mv in masks_v:
                    if not mu & mv:
                        return True
    return False


def _bfs_distance(rows, src: int, dst: int, skip_direct: bool) -> int | None:
    """Hops from src to dst; optionally ignore the direct edge src-dst."""
    dist = {src: 0}
    frontier = [src]
    while frontier:
        nxt = []
        for x in frontier:
            row = rows[x]
            if skip_direct and x == src:
                row &= ~(1 << dst)
            for y in _bits(row):
                if y not in dist:
                    dist[y] = dist[x] + 1
                    if y == dst:
                        return dist[y]
                    nxt.append(y)
        frontier = nxt
    return dist.get(dst)


def _compile_checker(h: Graph, n: int):
    """(cost_tier, created(rows, u, v)) for one excluded minor, or None.

    The returned predicate assumes the graph without the new edge (u, v)
    contained no copy of h, and decides whether the edge completed one.
    Inert obstructions (too large for n, or edgeless: handled at the root)
    compile to None.
    """
    if h.n > n:
        return None
    core, iso = _strip_isolated_parts(h)
    budget = n - iso
    if core.n == 0:
        return None  # contained in the edgeless root; walker never starts
    if core.n == 2:
        return 0, lambda rows, u, v: True
    if core.n == 3 and core.edge_count == 3:
        def created_triangle(rows, u, v):
            d = _bfs_distance(rows, u, v, skip_direct=True)
            return d is not None and d + 1 <= budget
        return 1, created_triangle
    if _is_path_shape(core):
        k = core.n

        def created_path(rows, u, v):
            return _path_through_edge(rows, u, v, k)
        return 3, created_path
    if is_matching_graph(core):
        want = core.edge_count - 1

        def created_matching(rows, u, v):
            drop = ~((1 << u) | (1 << v))
            masked = [rows[i] & drop if i not in (u, v) else 0 for i in range(n)]
            return _independent_edges(masked, want) is not None
        return 2, created_matching
    leaves = _star_leaf_count(core)
    if leaves is not None:
        max_center = budget - leaves

        def created_star(rows, u, v):
            if max_center < 1:
                return False
            for mask in _connected_subsets(rows, (1 << n) - 1, max_center):
                nbr = 0
                for i in _bits(mask):
                    nbr |= rows[i]
                if (nbr & ~mask).bit_count() >= leaves:
                    return True
            return False
        return 4, created_star

    def created_generic(rows, u, v):
        return is_minor(h, Graph(n, tuple(rows)))
    return 5, created_generic


def _compile_spec(excluded, n: int):
    """(root_blocked, ordered checker predicates) for an n-vertex run."""
    root_blocked = any(h.edge_count == 0 and h.n <= n for h in excluded)
    compiled = []
    for h in excluded:
        item = _compile_checker(h, n)
        if item is not None:
            compiled.append(item)
    compiled.sort(key=lambda pair: pair[0])
    return root_blocked, [fn for _, fn in compiled]


def _edge_slots(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


# ---------------------------------------------------------------------------
# the subset-tree walk
# ---------------------------------------------------------------------------

def _walk(rows, slots, depth, checkers, on_leaf):
    if depth == len(slots):
        on_leaf(rows)
        return
    _walk(rows, slots, depth + 1, checkers, on_leaf)
    u, v = slots[depth]
    rows[u] |= 1 << v
    rows[v] |= 1 << u
    if not any(created(rows, u, v) for created in checkers):
        _walk(rows, slots, depth + 1, checkers, on_leaf)
    rows[u] &= ~(1 << v)
    rows[v] &= ~(1 << u)


def count_prefix(spec, n: int, splits: int, prefix_bits: int) -> int:
    """Leaf count of one subtree: the first ``splits`` edge slots are forced
    to the bits of ``prefix_bits`` (bit d set = include slot d).

    Summing over all 2^splits prefixes reproduces count_members exactly,
    which is the contract that lets workers share a count deterministically.
    """
    if not 0 <= n <= HARD_CAP:
        raise EnumerationCapError(f"count_prefix supports 0..{HARD_CAP}, got {n}")
    root_blocked, checkers = _compile_spec(spec.excluded, n)
    if root_blocked:
        return 0
    slots = _edge_slots(n)
    splits = max(0, min(splits, len(slots)))
    rows = [0] * n
    for d in range(splits):
        if prefix_bits >> d & 1:
            u, v = slots[d]
            rows[u] |= 1 << v
            rows[v] |= 1 << u
            if any(created(rows, u, v) for created in checkers):
                return 0
    total = 0

    def bump(_rows):
        nonlocal total
        total += 1

    _walk(rows, slots, splits, checkers, bump)
    return total


def count_members(spec, n: int, *, splits: int = 0) -> int:
    """Exact number of n-vertex labelled graphs avoiding every excluded minor.

    ``splits`` forces the first edge decisions apart before walking, summing
    the subtree counts; the result is identical for every split depth.
    """
    if not 0 <= n <= HARD_CAP:
        raise EnumerationCapError(f"count_members supports 0..{HARD_CAP}, got {n}")
    if splits > 0:
        splits = min(splits, len(_edge_slots(n)))
        return sum(count_prefix(spec, n, splits, bits) for bits in range(1 << splits))
    root_blocked, checkers = _compile_spec(spec.excluded, n)
    if root_blocked:
        return 0
    total = 0

    def bump(_rows):
        nonlocal total
        total += 1

    _walk([0] * n, _edge_slots(n), 0, checkers, bump)
    return total


def enumerate_members(spec, n: int) -> list[Graph]:
    """All n-vertex labelled class members, in subset-tree order."""
    if not 0 <= n <= HARD_CAP:
        raise EnumerationCapError(f"enumerate_members supports 0..{HARD_CAP}, got {n}")
    root_blocked, checkers = _compile_spec(spec.excluded, n)
    if root_blocked:
        return []
    out: list[Graph] = []
    _walk([0] * n, _edge_slots(n), 0, checkers, lambda rows: out.append(Graph(n, tuple(rows))))
    return out


def is_member(spec, g: Graph) -> bool:
    """Membership test: no excluded minor is contained in g."""
    return not any(is_minor(h, g) for h in spec.excluded)


def apex_count(spec, n: int) -> int:
    """Labelled n-vertex graphs with a vertex whose deletion lands in the class.

    The apex class is minor-closed, so the same pruned walk applies with
    the membership test on single-vertex deletions.
    """
    if not 0 <= n <= APEX_CAP:
        raise EnumerationCapError(f"apex_count supports 0..{APEX_CAP}, got {n}")
    if n == 0:
        return count_members(spec, 0)
    member_cache: dict[tuple[int, ...], bool] = {}

    def deleted_is_member(g: Graph, v: int) -> bool:
        sub = delete_vertex(g, v)
        key = sub.rows
        hit = member_cache.get(key)
        if hit is None:
            hit = is_member(spec, sub)
            member_cache[key] = hit
        return hit

    def outside_apex(rows) -> bool:
        g = Graph(n, tuple(rows))
        return not any(deleted_is_member(g, v) for v in g.vertices())

    if outside_apex([0] * n):
        return 0
    slots = _edge_slots(n)
    total = 0

    def bump(_rows):
        nonlocal total
        total += 1

    checkers = [lambda rows, u, v: outside_apex(rows)]
    _walk([0] * n, slots, 0, checkers, bump)
    return total


# ---------------------------------------------------------------------------
# closed-form counters
# ---------------------------------------------------------------------------

def bell(n: int) -> int:
    """Bell number by the Bell-triangle recurrence."""
    if n < 0:
        raise ValueError("bell needs n >= 0")
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[0]


def double_factorial(n: int) -> int:
    """n!! = n(n-2)(n-4)... ending at 1 or 2; empty products are 1."""
    if n < -1:
        raise ValueError("double_factorial needs n >= -1")
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def matchings_count(n: int) -> int:
    """Graphs of maximum degree 1 on n labelled vertices (involutions)."""
    if n < 0:
        raise ValueError("matchings_count needs n >= 0")
    a, b = 1, 1
    for m in range(2, n + 1):
        a, b = b, b + (m - 1) * a
    return b if n >= 1 else 1


def _assemble(connected_count, n: int) -> int:
    """n-th coefficient (times n!) of exp of a connected-structure series.

    Classic component-assembly recurrence: condition on the component that
    contains the highest label.
    """
    table = [1]
    for m in range(1, n + 1):
        table.append(sum(comb(m - 1, k - 1) * connected_count(k) * table[m - k]
                         for k in range(1, m + 1)))
    return table[n]


def path_forest_count(n: int) -> int:
    """Labelled forests whose components are paths."""
    if n < 0:
        raise ValueError("path_forest_count needs n >= 0")
    return _assemble(lambda k: 1 if k == 1 else factorial(k) // 2, n)


def star_forest_count(n: int) -> int:
    """Labelled forests whose components are stars."""
    if n < 0:
        raise ValueError("star_forest_count needs n >= 0")
    return _assemble(lambda k: 1 if k <= 2 else k, n)


def forest_count(n: int) -> int:
    """Labelled forests (acyclic graphs); trees enter as k^(k-2)."""
    if n < 0:
        raise ValueError("forest_count needs n >= 0")
    return _assemble(lambda k: 1 if k == 1 else k ** (k - 2), n)


def star_class_count(n: int) -> int:
    """Graphs made of one star plus isolated vertices."""
    if n < 0:
        raise ValueError("star_class_count needs n >= 0")
    if n == 0:
        return 1
    return 1 + comb(n, 2) + n * 2 ** (n - 1) - n * n


def brute_count_table(spec, n_max: int, *, n_min: int = 0) -> CountTable:
    """CountTable filled by the exhaustive enumerator."""
    table = CountTable(spec_identity(spec.excluded))
    for n in range(n_min, n_max + 1):
        table.record(n, count_members(spec, n), "brute")
    return table

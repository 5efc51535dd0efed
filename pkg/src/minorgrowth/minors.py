"""Minor containment and the structural family predicates.

``find_minor_model`` decides H < G by exhibiting branch sets: pairwise
disjoint connected vertex sets of G, one per vertex of H, with an edge of G
between the sets of every pair adjacent in H. Common shapes of H (paths,
stars, triangles, matchings, edgeless graphs) are dispatched to direct
searches that build the same witness; everything else goes through a
backtracking assignment over connected subsets. The two routes return
identical answers and the test suite checks both against an independent
deletion/contraction closure oracle.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import (
    Graph,
    _bits,
    component_masks,
    components,
    delete_vertex,
    disjoint_union,
    is_connected,
)


@dataclass(frozen=True)
class MinorModel:
    """Branch sets witnessing H < G, keyed by the vertices of H."""

    branch_sets: dict[int, frozenset[int]]

    def is_valid_for(self, h: Graph, g: Graph) -> bool:
        """Disjointness, connectivity and edge coverage of the witness."""
        if set(self.branch_sets) != set(h.vertices()):
            return False
        masks = {}
        used = 0
        for v, bs in self.branch_sets.items():
            if not bs:
                return False
            mask = 0
            for u in bs:
                if not 1 <= u <= g.n:
                    return False
                mask |= 1 << (u - 1)
            if mask & used:
                return False
            used |= mask
            if not _mask_connected(g.rows, mask):
                return False
            masks[v] = mask
        for a, b in h.edges():
            if not _masks_adjacent(g.rows, masks[a], masks[b]):
                return False
        return True


def _mask_connected(rows, mask: int) -> bool:
    if mask == 0:
        return False
    start = mask & -mask
    reach = start
    frontier = start
    while frontier:
        grow = 0
        for i in _bits(frontier):
            grow |= rows[i]
        grow &= mask
        frontier = grow & ~reach
        reach |= grow
    return reach == mask


def _masks_adjacent(rows, a: int, b: int) -> bool:
    nbr = 0
    for i in _bits(a):
        nbr |= rows[i]
    return bool(nbr & b)


def _neighborhood(rows, mask: int) -> int:
    out = 0
    for i in _bits(mask):
        out |= rows[i]
    return out & ~mask


# ---------------------------------------------------------------------------
# family predicates
# ---------------------------------------------------------------------------

def _is_path_component(c: Graph) -> bool:
    if c.n == 1:
        return True
    degs = c.degree_sequence()
    return c.edge_count == c.n - 1 and degs[-1] <= 2


def _is_star_component(c: Graph) -> bool:
    if c.n <= 2:
        return True
    degs = c.degree_sequence()
    return c.edge_count == c.n - 1 and degs[-1] == c.n - 1


def is_path_forest(h: Graph) -> bool:
    """Every component is a path (isolated vertices and the empty graph count)."""
    return all(_is_path_component(c) for c in components(h))


def is_star_forest(h: Graph) -> bool:
    """Every component is a star K_{1,m}, m >= 0."""
    return all(_is_star_component(c) for c in components(h))


def is_matching_graph(h: Graph) -> bool:
    """Maximum degree at most 1."""
    return all(r.bit_count() <= 1 for r in h.rows)


def is_star_plus_isolated(h: Graph) -> bool:
    """At most one component has an edge, and that component is a star."""
    edged = [c for c in components(h) if c.edge_count > 0]
    if len(edged) > 1:
        return False
    return all(_is_star_component(c) for c in edged)


def has_at_most_one_edge(h: Graph) -> bool:
    return h.edge_count <= 1


def is_caterpillar_forest(h: Graph) -> bool:
    """Every component, once its leaves are removed, is a path or empty."""
    for c in components(h):
        core = [v for v in c.vertices() if c.degree(v) != 1]
        if not core:
            continue
        index = {v: i for i, v in enumerate(core)}
        sub_rows = [0] * len(core)
        for v in core:
            for u in c.neighbors(v):
                if u in index:
                    sub_rows[index[v]] |= 1 << index[u]
        sub = Graph(len(core), tuple(sub_rows))
        if not (is_connected(sub) and _is_path_component(sub)):
            return False
    return True


def is_apex_path_forest(h: Graph) -> bool:
    """A path forest, or one vertex away from being a path forest."""
    if is_path_forest(h):
        return True
    return any(is_path_forest(delete_vertex(h, v)) for v in h.vertices())


# ---------------------------------------------------------------------------
# the containment search
# ---------------------------------------------------------------------------

def is_minor(h: Graph, g: Graph) -> bool:
    """True exactly when find_minor_model returns a witness."""
    return find_minor_model(h, g) is not None


def _fast_reject(h: Graph, g: Graph) -> bool:
    """Sound impossibility checks cheaper than any search."""
    if h.n > g.n or h.edge_count > g.edge_count:
        return True
    # minors of forests are forests
    if _has_cycle(h) and not _has_cycle(g):
        return True
    # minors of graphs with maximum degree <= 2 keep maximum degree <= 2
    if h.n and max(r.bit_count() for r in h.rows) > 2 \
            and (not g.n or max(r.bit_count() for r in g.rows) <= 2):
        return True
    return False


def _has_cycle(g: Graph) -> bool:
    return g.edge_count > g.n - len(component_masks(g))


def find_minor_model(h: Graph, g: Graph) -> MinorModel | None:
    """Search for branch sets showing h < g; None when there are none."""
    if h.n == 0:
        return MinorModel({})
    if _fast_reject(h, g):
        return None
    g_comps = component_masks(g)
    if len(g_comps) == 1:
        return _model_in_connected(h, g)
    return _model_across_components(h, g, g_comps)


def _model_across_components(h: Graph, g: Graph, g_comps: list[int]) -> MinorModel | None:
    """Assign whole components of h to components of g, then solve each group."""
    h_comp_masks = component_masks(h)
    h_vertex_lists = [[i + 1 for i in _bits(m)] for m in h_comp_masks]
    g_vertex_lists = [[i + 1 for i in _bits(m)] for m in g_comps]
    g_subs = [_induced(g, vs) for vs in g_vertex_lists]
    order = sorted(range(len(h_comp_masks)),
                   key=lambda i: -h_comp_masks[i].bit_count())
    assignment: list[list[int]] = [[] for _ in g_comps]
    sizes = [len(vs) for vs in g_vertex_lists]
    free = sizes[:]

    def place(idx: int) -> dict[int, frozenset[int]] | None:
        if idx == len(order):
            merged: dict[int, frozenset[int]] = {}
            for ci, group in enumerate(assignment):
                if not group:
                    continue
                h_verts = sorted(v for hc in group for v in h_vertex_lists[hc])
                sub_h = _induced(h, h_verts)
                sub_model = _model_in_connected(sub_h, g_subs[ci])
                if sub_model is None:
                    return None
                for local_v, bs in sub_model.branch_sets.items():
                    orig_v = h_verts[local_v - 1]
                    merged[orig_v] = frozenset(g_vertex_lists[ci][u - 1] for u in bs)
            return merged
        hc = order[idx]
        need = h_comp_masks[hc].bit_count()
        tried = set()
        for ci in range(len(g_comps)):
            if free[ci] < need:
                continue
            # identically-labelled host components with the same partial load
            # are interchangeable
            key = (g_subs[ci], free[ci], tuple(sorted(assignment[ci])))
            if key in tried:
                continue
            tried.add(key)
            assignment[ci].append(hc)
            free[ci] -= need
            result = place(idx + 1)
            assignment[ci].pop()
            free[ci] += need
            if result is not None:
                return result
        return None

    merged = place(0)
    return MinorModel(merged) if merged is not None else None


def _induced(g: Graph, verts: list[int]) -> Graph:
    index = {v: i for i, v in enumerate(verts)}
    rows = [0] * len(verts)
    for v in verts:
        for u in _bits(g.rows[v - 1]):
            if u + 1 in index:
                rows[index[v]] |= 1 << index[u + 1]
    return Graph(len(verts), tuple(rows))


def _model_in_connected(h: Graph, g: Graph) -> MinorModel | None:
    """h arbitrary, g connected (or small); shape dispatch then backtracking."""
    if _fast_reject(h, g):
        return None
    isolated = [v for v in h.vertices() if h.degree(v) == 0]
    core_verts = [v for v in h.vertices() if h.degree(v) > 0]
    budget = g.n - len(isolated)
    if budget < len(core_verts):
        return None

    witness = None
    if not core_verts:
        witness = {}
    else:
        core = _induced(h, core_verts)
        sets = _core_model(core, g, budget)
        if sets is None:
            return None
        witness = {core_verts[i]: sets[i] for i in range(len(core_verts))}

    used = set()
    for bs in witness.values():
        used.update(bs)
    spare = [v for v in g.vertices() if v not in used]
    if len(spare) < len(isolated):
        return None
    model = {v: frozenset(bs) for v, bs in witness.items()}
    for v, u in zip(isolated, spare):
        model[v] = frozenset([u])
    return MinorModel(model)


def _path_sequence(p: Graph) -> list[int]:
    """Vertices of a path graph in traversal order."""
    if p.n == 1:
        return [1]
    start = next(v for v in p.vertices() if p.degree(v) == 1)
    seq = [start]
    prev = None
    while len(seq) < p.n:
        nxt = next(u for u in p.neighbors(seq[-1]) if u != prev)
        prev = seq[-1]
        seq.append(nxt)
    return seq


def _core_model(core: Graph, g: Graph, budget: int):
    """Branch sets for an isolated-vertex-free pattern inside g."""
    if _is_path_shape(core):
        path = _find_path(g.rows, core.n)
        if path is None:
            return None
        sets: list[frozenset[int] | None] = [None] * core.n
        for hv, gv in zip(_path_sequence(core), path):
            sets[hv - 1] = frozenset([gv])
        return sets
    if core.n == 3 and core.edge_count == 3:
        cycle = _shortest_cycle(g)
        if cycle is None or len(cycle) > budget:
            return None
        return [frozenset([cycle[0]]), frozenset([cycle[1]]), frozenset(cycle[2:])]
    star_m = _star_leaf_count(core)
    if star_m is not None:
        return _star_model(core, g, star_m, budget)
    if is_matching_graph(core):
        edges = _independent_edges(g.rows, core.edge_count)
        if edges is None:
            return None
        out: list[frozenset[int] | None] = [None] * core.n
        for (a, b), (u, v) in zip(core.edges(), edges):
            out[a - 1] = frozenset([u])
            out[b - 1] = frozenset([v])
        return out
    return _backtrack_model(core, g, budget)


def _is_path_shape(h: Graph) -> bool:
    return h.n >= 1 and is_connected(h) and _is_path_component(h)


def _star_leaf_count(h: Graph) -> int | None:
    """m when h = K_{1,m} with m >= 1, else None."""
    if h.n >= 2 and is_connected(h) and _is_star_component(h):
        return h.n - 1
    return None


def _find_path(rows, k: int) -> list[int] | None:
    """A simple path on k vertices (1-based labels), or None."""
    n = len(rows)
    if k <= 0:
        return []
    if k == 1:
        return [1] if n else None
    for start in range(n):
        found = _extend_path(rows, [start], 1 << start, k)
        if found is not None:
            return [v + 1 for v in found]
    return None


def _extend_path(rows, path, mask, k):
    if len(path) == k:
        return path
    for u in _bits(rows[path[-1]] & ~mask):
        found = _extend_path(rows, path + [u], mask | (1 << u), k)
        if found is not None:
            return found
    return None


def _shortest_cycle(g: Graph) -> list[int] | None:
    """A minimum-length cycle, via distances with one edge removed."""
    best = None
    for u, v in g.edges():
        dist, parent = _bfs_skip_edge(g, u, v)
        if dist.get(v) is None:
            continue
        cyc = [v]
        while cyc[-1] != u:
            cyc.append(parent[cyc[-1]])
        if best is None or len(cyc) < len(best):
            best = cyc
    return best


def _bfs_skip_edge(g: Graph, src: int, avoid_dst: int):
    dist = {src: 0}
    parent = {}
    frontier = [src]
    while frontier:
        nxt = []
        for x in frontier:
            for y in g.neighbors(x):
                if x == src and y == avoid_dst:
                    continue
                if y not in dist:
                    dist[y] = dist[x] + 1
                    parent[y] = x
                    nxt.append(y)
        frontier = nxt
    return dist, parent


def _star_model(core: Graph, g: Graph, m: int, budget: int):
    """Center branch set with m outside neighbours, smallest center first."""
    max_center = budget - m
    if max_center < 1:
        return None
    for mask in _connected_subsets(g.rows, (1 << g.n) - 1, max_center):
        nbr = _neighborhood(g.rows, mask)
        if nbr.bit_count() >= m:
            center = frozenset(i + 1 for i in _bits(mask))
            leaves = [i + 1 for i in _bits(nbr)][:m]
            center_vertex = next(v for v in core.vertices() if core.degree(v) == m)
            sets = [None] * core.n
            sets[center_vertex - 1] = center
            leaf_vertices = [v for v in core.vertices() if v != center_vertex]
            for v, u in zip(leaf_vertices, leaves):
                sets[v - 1] = frozenset([u])
            return sets
    return None


def _independent_edges(rows, k: int) -> list[tuple[int, int]] | None:
    """k pairwise disjoint edges (1-based), by backtracking."""
    edges = []
    n = len(rows)
    for i in range(n):
        for j in _bits(rows[i] >> (i + 1)):
            edges.append((i, i + 1 + j))

    def pick(start: int, used: int, chosen):
        if len(chosen) == k:
            return chosen
        for idx in range(start, len(edges)):
            a, b = edges[idx]
            bits = (1 << a) | (1 << b)
            if bits & used:
                continue
            result = pick(idx + 1, used | bits, chosen + [(a + 1, b + 1)])
            if result is not None:
                return result
        return None

    return pick(0, 0, [])


def _connected_subsets(rows, avail: int, max_size: int):
    """All connected vertex subsets of ``avail``, by increasing size."""
    if max_size <= 0 or avail == 0:
        return
    current = {1 << i for i in _bits(avail)}
    seen = set(current)
    size = 1
    while current and size <= max_size:
        yield from sorted(current)
        size += 1
        if size > max_size:
            break
        nxt = set()
        for mask in current:
            grow = _neighborhood(rows, mask) & avail
            for i in _bits(grow):
                new = mask | (1 << i)
                if new not in seen:
                    seen.add(new)
                    nxt.add(new)
        current = nxt


def _backtrack_model(core: Graph, g: Graph, budget: int):
    """Generic branch-set assignment, largest-degree pattern vertex first."""
    order = sorted(core.vertices(), key=lambda v: (-core.degree(v), v))
    position = {v: i for i, v in enumerate(order)}
    masks: list[int] = [0] * core.n
    all_mask = (1 << g.n) - 1

    def assign(idx: int, used: int, used_count: int):
        if idx == len(order):
            return list(masks)
        v = order[idx]
        remaining_after = len(order) - idx - 1
        max_size = budget - used_count - remaining_after
        if max_size < 1:
            return None
        earlier = [u for u in core.neighbors(v) if position[u] < idx]
        required = [masks[u - 1] for u in earlier]
        for mask in _connected_subsets(g.rows, all_mask & ~used, max_size):
            ok = True
            for req in required:
                if not _masks_adjacent(g.rows, mask, req):
                    ok = False
                    break
            if not ok:
                continue
            masks[v - 1] = mask
            result = assign(idx + 1, used | mask, used_count + mask.bit_count())
            if result is not None:
                return result
        masks[v - 1] = 0
        return None

    solution = assign(0, 0, 0)
    if solution is None:
        return None
    return [frozenset(i + 1 for i in _bits(m)) for m in solution]


def minor_of_copies(h: Graph, c: Graph, copies: int) -> bool:
    """Whether h is a minor of ``copies`` disjoint copies of c.

    With at least as many copies as h has components, sharing a copy is
    never forced, so the test reduces to per-component containment.
    """
    comps = components(h)
    if len(comps) <= copies:
        return all(is_minor(part, c) for part in comps)
    return _pack_components(comps, c, copies)


def _pack_components(comps: list[Graph], c: Graph, copies: int) -> bool:
    groups: list[list[Graph]] = [[] for _ in range(copies)]

    def place(i: int) -> bool:
        if i == len(comps):
            return True
        tried = set()
        for gi in range(copies):
            key = tuple(id(x) for x in groups[gi])
            if key in tried:
                continue
            tried.add(key)
            groups[gi].append(comps[i])
            union = groups[gi][0]
            for extra in groups[gi][1:]:
                union = disjoint_union(union, extra)
            if is_minor(union, c) and place(i + 1):
                return True
            groups[gi].pop()
        return False

    return place(0)

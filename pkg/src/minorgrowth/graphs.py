"""Labelled simple graphs on at most 64 vertices.

Vertices carry labels 1..n. Adjacency is stored as one bitmask row per
vertex (bit j set in rows[i] means vertices i+1 and j+1 are adjacent), which
keeps neighbourhood operations cheap for the exhaustive searches built on
top of this module. Graphs are immutable values; every operation returns a
new graph.

The module also provides the small text language used to name graphs on the
command line (``path:5``, ``star:3``, ``edges(4;1-2,3-4)``, disjoint union
with ``+``), depth-first-search spanning forests, and a canonical code for
isomorphism testing on small graphs.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

MAX_VERTICES = 64
CANONICAL_LIMIT = 16


class GraphError(ValueError):
    """Invalid graph construction or operation."""


class DslError(ValueError):
    """Malformed graph expression; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


@dataclass(frozen=True)
class Graph:
    """Immutable labelled simple graph with vertex set {1..n}."""

    n: int
    rows: tuple[int, ...]

    def vertices(self) -> range:
        return range(1, self.n + 1)

    def has_edge(self, u: int, v: int) -> bool:
        self._check_vertex(u)
        self._check_vertex(v)
        return bool(self.rows[u - 1] >> (v - 1) & 1)

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return self.rows[v - 1].bit_count()

    def neighbors(self, v: int) -> list[int]:
        self._check_vertex(v)
        return [u + 1 for u in _bits(self.rows[v - 1])]

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for i in range(self.n):
            row = self.rows[i] >> (i + 1)
            for j in _bits(row):
                out.append((i + 1, i + 2 + j))
        return out

    @property
    def edge_count(self) -> int:
        return sum(r.bit_count() for r in self.rows) // 2

    def degree_sequence(self) -> tuple[int, ...]:
        return tuple(sorted(r.bit_count() for r in self.rows))

    def _check_vertex(self, v: int) -> None:
        if not 1 <= v <= self.n:
            raise GraphError(f"vertex {v} out of range 1..{self.n}")

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"Graph({self.n}, {self.edges()!r})"


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def make_graph(n: int, edges) -> Graph:
    """Build a graph from an edge list; duplicate edges collapse."""
    if not 0 <= n <= MAX_VERTICES:
        raise GraphError(f"vertex count {n} outside 0..{MAX_VERTICES}")
    rows = [0] * n
    for u, v in edges:
        if u == v:
            raise GraphError(f"loop edge at vertex {u}")
        if not (1 <= u <= n and 1 <= v <= n):
            raise GraphError(f"edge ({u},{v}) has endpoint outside 1..{n}")
        rows[u - 1] |= 1 << (v - 1)
        rows[v - 1] |= 1 << (u - 1)
    return Graph(n, tuple(rows))


def from_rows(n: int, rows) -> Graph:
    """Internal constructor from prebuilt bitmask rows (no validation)."""
    return Graph(n, tuple(rows))


# ---------------------------------------------------------------------------
# named generators and the expression language
# ---------------------------------------------------------------------------

def path_graph(k: int) -> Graph:
    return make_graph(k, [(i, i + 1) for i in range(1, k)])


def cycle_graph(k: int) -> Graph:
    if k < 3:
        raise GraphError("cycle needs at least 3 vertices")
    return make_graph(k, [(i, i + 1) for i in range(1, k)] + [(k, 1)])


def complete_graph(k: int) -> Graph:
    return make_graph(k, [(i, j) for i in range(1, k + 1) for j in range(i + 1, k + 1)])


def star_graph(m: int) -> Graph:
    """K_{1,m}: one center (vertex 1) and m leaves."""
    return make_graph(m + 1, [(1, i) for i in range(2, m + 2)])


def biclique_graph(a: int, b: int) -> Graph:
    return make_graph(a + b, [(i, a + j) for i in range(1, a + 1) for j in range(1, b + 1)])


def matching_graph(m: int) -> Graph:
    """m pairwise disjoint edges."""
    return make_graph(2 * m, [(2 * i + 1, 2 * i + 2) for i in range(m)])


def isolated_graph(t: int) -> Graph:
    return make_graph(t, [])


def comb_graph(l: int) -> Graph:
    """Path v_1..v_l with one pendant leaf attached to every v_i."""
    edges = [(i, i + 1) for i in range(1, l)]
    edges += [(i, l + i) for i in range(1, l + 1)]
    return make_graph(2 * l, edges)


def fan_graph(l: int) -> Graph:
    """Path u_1..u_l plus one extra vertex adjacent to every u_i."""
    edges = [(i, i + 1) for i in range(1, l)]
    edges += [(l + 1, i) for i in range(1, l + 1)]
    return make_graph(l + 1, edges)


def disjoint_union(g: Graph, h: Graph) -> Graph:
    if g.n + h.n > MAX_VERTICES:
        raise GraphError("disjoint union exceeds the vertex cap")
    rows = list(g.rows) + [r << g.n for r in h.rows]
    return Graph(g.n + h.n, tuple(rows))


_GENERATORS = {
    "path": (1, path_graph),
    "cycle": (1, cycle_graph),
    "complete": (1, complete_graph),
    "star": (1, star_graph),
    "biclique": (2, biclique_graph),
    "matching": (1, matching_graph),
    "iso": (1, isolated_graph),
    "comb": (1, comb_graph),
    "fan": (1, fan_graph),
}


@dataclass(frozen=True)
class GenTerm:
    name: str
    args: tuple[int, ...]


@dataclass(frozen=True)
class EdgesTerm:
    n: int
    edges: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class GraphExpr:
    """A disjoint union of named-generator or explicit-edge terms."""

    terms: tuple


_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z_]+)|(?P<int>\d+)|(?P<sym>[:+,;()\-]))")


def _tokenize(text: str):
    tokens = []
    text = text.rstrip()
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == m.start():
            raise DslError(f"unexpected character {text[pos]!r}", pos)
        if m.lastgroup == "name":
            tokens.append(("name", m.group("name"), m.start("name")))
        elif m.lastgroup == "int":
            tokens.append(("int", int(m.group("int")), m.start("int")))
        else:
            tokens.append(("sym", m.group("sym"), m.start("sym")))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind, value=None):
        tok = self.tokens[self.i]
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value if value is not None else kind
            raise DslError(f"expected {want!r}, found {tok[1]!r}", tok[2])
        self.i += 1
        return tok

    def parse_int(self) -> int:
        return self.take("int")[1]

    def parse_term(self):
        tok = self.take("name")
        name = tok[1]
        if name == "edges":
            self.take("sym", "(")
            n = self.parse_int()
            self.take("sym", ";")
            edges = []
            while True:
                u = self.parse_int()
                self.take("sym", "-")
                v = self.parse_int()
                edges.append((min(u, v), max(u, v)))
                if self.peek()[:2] == ("sym", ",") and self.tokens[self.i + 1][0] == "int" \
                        and self.tokens[self.i + 2][:2] == ("sym", "-"):
                    self.take("sym", ",")
                    continue
                break
            self.take("sym", ")")
            return EdgesTerm(n, tuple(sorted(set(edges))))
        if name not in _GENERATORS:
            raise DslError(f"unknown generator {name!r}", tok[2])
        arity = _GENERATORS[name][0]
        self.take("sym", ":")
        args = [self.parse_int()]
        if arity == 2:
            self.take("sym", ",")
            args.append(self.parse_int())
        return GenTerm(name, tuple(args))

    def parse_expr(self) -> GraphExpr:
        terms = [self.parse_term()]
        while self.peek()[:2] == ("sym", "+"):
            self.take("sym", "+")
            terms.append(self.parse_term())
        return GraphExpr(tuple(terms))

    def parse_expr_list(self) -> list[GraphExpr]:
        exprs = [self.parse_expr()]
        while self.peek()[:2] == ("sym", ","):
            self.take("sym", ",")
            exprs.append(self.parse_expr())
        self.take("end")
        return exprs


def parse_graph(text: str) -> GraphExpr:
    """Parse a single graph expression."""
    parser = _Parser(text)
    expr = parser.parse_expr()
    parser.take("end")
    return expr


def parse_graph_list(text: str) -> list[GraphExpr]:
    """Parse a comma-separated list of graph expressions."""
    return _Parser(text).parse_expr_list()


def expr_to_dsl(expr: GraphExpr) -> str:
    parts = []
    for term in expr.terms:
        if isinstance(term, GenTerm):
            parts.append(f"{term.name}:" + ",".join(str(a) for a in term.args))
        else:
            inner = ",".join(f"{u}-{v}" for u, v in term.edges)
            parts.append(f"edges({term.n};{inner})")
    return "+".join(parts)


def generate(expr: GraphExpr) -> Graph:
    """Evaluate a graph expression to its graph."""
    result = make_graph(0, [])
    for term in expr.terms:
        if isinstance(term, GenTerm):
            arity, builder = _GENERATORS[term.name]
            for a in term.args:
                if a < 0:
                    raise GraphError(f"negative parameter in {term.name}")
            piece = builder(*term.args)
        else:
            piece = make_graph(term.n, term.edges)
        result = disjoint_union(result, piece)
    return result


def graph_from_dsl(text: str) -> Graph:
    return generate(parse_graph(text))


def graph_to_dsl(g: Graph) -> str:
    """Render a graph as a parseable expression (``iso:n`` when edgeless)."""
    edges = g.edges()
    if not edges:
        return f"iso:{g.n}"
    inner = ",".join(f"{u}-{v}" for u, v in edges)
    return f"edges({g.n};{inner})"


# ---------------------------------------------------------------------------
# vertex deletion, edge contraction, components
# ---------------------------------------------------------------------------

def _restrict(g: Graph, keep: list[int]) -> Graph:
    """Induced subgraph on the given vertices, relabelled in order."""
    index = {v: i for i, v in enumerate(keep)}
    rows = [0] * len(keep)
    for v in keep:
        for u in _bits(g.rows[v - 1]):
            if u + 1 in index:
                rows[index[v]] |= 1 << index[u + 1]
    return Graph(len(keep), tuple(rows))


def induced_subgraph(g: Graph, vertices) -> Graph:
    """Induced subgraph on the given vertices, relabelled preserving order."""
    keep = sorted(set(vertices))
    for v in keep:
        g._check_vertex(v)
    return _restrict(g, keep)


def delete_vertex(g: Graph, v: int) -> Graph:
    g._check_vertex(v)
    return _restrict(g, [u for u in g.vertices() if u != v])


def contract_edge(g: Graph, e: tuple[int, int]) -> Graph:
    u, v = e
    if not g.has_edge(u, v):
        raise GraphError(f"({u},{v}) is not an edge")
    a, b = min(u, v), max(u, v)
    # merge b into a, dropping the contracted edge and any parallels/loops
    merged = (g.rows[a - 1] | g.rows[b - 1]) & ~(1 << (a - 1)) & ~(1 << (b - 1))
    rows = list(g.rows)
    rows[a - 1] = merged
    for w in _bits(g.rows[b - 1]):
        rows[w] |= 1 << (a - 1)
        rows[w] &= ~(1 << (b - 1))
    rows[a - 1] = merged
    interim = Graph(g.n, tuple(rows))
    return _restrict(interim, [w for w in g.vertices() if w != b])


def component_masks(g: Graph) -> list[int]:
    """Vertex bitmasks of connected components, ordered by least vertex."""
    seen = 0
    comps = []
    for v in range(g.n):
        if seen >> v & 1:
            continue
        mask = 1 << v
        frontier = mask
        while frontier:
            grow = 0
            for i in _bits(frontier):
                grow |= g.rows[i]
            frontier = grow & ~mask
            mask |= grow
        comps.append(mask)
        seen |= mask
    return comps


def components(g: Graph) -> list[Graph]:
    """Connected components as graphs, each relabelled order-preservingly."""
    return [_restrict(g, [i + 1 for i in _bits(mask)]) for mask in component_masks(g)]


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(component_masks(g)) == 1


def is_two_connected(g: Graph) -> bool:
    """Connected, at least 3 vertices, and no cutvertex."""
    if g.n < 3 or not is_connected(g):
        return False
    return all(is_connected(delete_vertex(g, v)) for v in g.vertices())


# ---------------------------------------------------------------------------
# depth-first-search spanning forests
# ---------------------------------------------------------------------------

@dataclass
class DfsForest:
    """Rooted spanning forest from a depth-first search.

    Every edge of the source graph that is not a forest edge joins a vertex
    to one of its ancestors; this is the property the enumeration bounds
    lean on, and it is asserted wholesale by the test suite.
    """

    parent: dict[int, int | None]
    root_set: frozenset[int]
    depth: dict[int, int]
    height: int

    def ancestors(self, v: int) -> set[int]:
        out = set()
        p = self.parent[v]
        while p is not None:
            out.add(p)
            p = self.parent[p]
        return out

    def is_valid_for(self, g: Graph) -> bool:
        """Check the spanning and back-edge invariants against g."""
        if set(self.parent) != set(g.vertices()):
            return False
        for v, p in self.parent.items():
            if p is None:
                if v not in self.root_set or self.depth[v] != 0:
                    return False
            elif not g.has_edge(v, p) or self.depth[v] != self.depth[p] + 1:
                return False
        for u, v in g.edges():
            if self.parent.get(u) == v or self.parent.get(v) == u:
                continue
            if u not in self.ancestors(v) and v not in self.ancestors(u):
                return False
        return True


def dfs_forest(g: Graph, order=None) -> DfsForest:
    """Depth-first-search spanning forest, deterministic for a given order.

    ``order`` is a permutation of 1..n giving the priority for both root
    selection and neighbour exploration; the natural order is the default.
    """
    if order is None:
        order = list(g.vertices())
    else:
        order = list(order)
        if sorted(order) != list(g.vertices()):
            raise GraphError("order must be a permutation of the vertices")
    priority = {v: i for i, v in enumerate(order)}
    parent: dict[int, int | None] = {}
    depth: dict[int, int] = {}
    roots = []
    for root in order:
        if root in parent:
            continue
        parent[root] = None
        depth[root] = 0
        roots.append(root)
        stack = [root]
        while stack:
            v = stack[-1]
            nxt = None
            for u in sorted(g.neighbors(v), key=priority.__getitem__):
                if u not in parent:
                    nxt = u
                    break
            if nxt is None:
                stack.pop()
            else:
                parent[nxt] = v
                depth[nxt] = depth[v] + 1
                stack.append(nxt)
    height = max(depth.values(), default=0)
    return DfsForest(parent, frozenset(roots), depth, height)


# ---------------------------------------------------------------------------
# canonical codes
# ---------------------------------------------------------------------------

def _refine(rows: tuple[int, ...], colors: list[int]) -> list[int]:
    """Equitable refinement: split colors by multiset of neighbour colors."""
    n = len(colors)
    while True:
        keys = []
        for v in range(n):
            nbr = sorted(colors[u] for u in _bits(rows[v]))
            keys.append((colors[v], tuple(nbr)))
        ranking = {key: i for i, key in enumerate(sorted(set(keys)))}
        new = [ranking[k] for k in keys]
        if new == colors:
            return colors
        colors = new


def _cells(colors: list[int]) -> list[list[int]]:
    buckets: dict[int, list[int]] = {}
    for v, c in enumerate(colors):
        buckets.setdefault(c, []).append(v)
    return [buckets[c] for c in sorted(buckets)]


def _code_bits(rows: tuple[int, ...], perm: list[int]) -> int:
    # perm[i] = original vertex placed at position i
    n = len(perm)
    bits = 0
    k = 0
    for i in range(n):
        for j in range(i + 1, n):
            bits = (bits << 1) | (rows[perm[i]] >> perm[j] & 1)
            k += 1
    return bits


def _complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    return Graph(g.n, tuple((full & ~r & ~(1 << i)) for i, r in enumerate(g.rows)))


def canonical_code(g: Graph) -> bytes:
    """Byte string equal for two graphs exactly when they are isomorphic.

    Individualisation-refinement search over equitable colorings; the
    minimum adjacency encoding over all discrete leaves is the code. Dense
    graphs are encoded through their complement (density is preserved by
    isomorphism), which keeps the refinement effective near the complete
    graph; fully symmetric extremes short-circuit.
    """
    if g.n > CANONICAL_LIMIT:
        raise GraphError(f"canonical code supports at most {CANONICAL_LIMIT} vertices")
    n = g.n
    if n == 0:
        return b"\x00"
    max_edges = n * (n - 1) // 2
    if 2 * g.edge_count > max_edges:
        return b"\x01" + canonical_code(_complement(g))
    nbytes = (max_edges + 7) // 8
    if g.edge_count == 0:
        bits = 0  # every labelling of the edgeless graph encodes identically
    else:
        bits = _canonical_bits(g)
    if nbytes == 0:
        return b"\x00" + bytes([n])
    return b"\x00" + bytes([n]) + bits.to_bytes(nbytes, "big")


def _frozen_cell_order(rows, cell: list[int]) -> list[int] | None:
    """An ordering of the cell that any automorphism-respecting search may
    fix without branching, or None when the cell is not that symmetric.

    Covered shapes (all members must share the same outside neighbourhood):
    internally empty or complete cells, whose members are fully
    interchangeable, and cells inducing a perfect matching or its
    complement, interchangeable as pairs.
    """
    inside = 0
    for v in cell:
        inside |= 1 << v
    outside_nbr = rows[cell[0]] & ~inside
    if any(rows[v] & ~inside != outside_nbr for v in cell):
        return None
    internal = {v: rows[v] & inside for v in cell}
    if all(internal[v] == 0 for v in cell):
        return list(cell)
    if all(internal[v] == inside & ~(1 << v) for v in cell):
        return list(cell)
    for partner_mask in (internal,
                         {v: inside & ~internal[v] & ~(1 << v) for v in cell}):
        if all(partner_mask[v].bit_count() == 1 for v in cell):
            partner = {v: partner_mask[v].bit_length() - 1 for v in cell}
            if all(partner[partner[v]] == v for v in cell):
                pairs = sorted({(min(v, partner[v]), max(v, partner[v]))
                                for v in cell})
                return [v for pair in pairs for v in pair]
    return None


def _split_cell(colors: list[int], ordered_cell: list[int]) -> list[int]:
    position = {v: i for i, v in enumerate(ordered_cell)}
    keyed = [(colors[u], position.get(u, -1)) for u in range(len(colors))]
    ranking = {key: i for i, key in enumerate(sorted(set(keyed)))}
    return [ranking[k] for k in keyed]


def _canonical_bits(g: Graph) -> int:
    n = g.n
    best: list[int | None] = [None]

    def settle(colors: list[int]) -> list[int]:
        # refine, and order symmetric cells without branching
        colors = _refine(g.rows, colors)
        while True:
            ordered = None
            for c in _cells(colors):
                if len(c) > 1:
                    ordered = _frozen_cell_order(g.rows, c)
                    if ordered is not None:
                        break
            if ordered is None:
                return colors
            colors = _refine(g.rows, _split_cell(colors, ordered))

    def search(colors: list[int]) -> None:
        colors = settle(colors)
        cells = _cells(colors)
        target = next((c for c in cells if len(c) > 1), None)
        if target is None:
            perm = [c[0] for c in cells]
            bits = _code_bits(g.rows, perm)
            if best[0] is None or bits < best[0]:
                best[0] = bits
            return
        for v in target:
            branched = [(c, 0 if u == v else 1) for u, c in enumerate(colors)]
            ranking = {key: i for i, key in enumerate(sorted(set(branched)))}
            search([ranking[k] for k in branched])

    search([0] * n)
    return best[0]


def canonical_form(g: Graph) -> Graph:
    """An isomorphic copy of g with canonical labels (decoded from its code)."""
    return _decode_code(canonical_code(g))


def _decode_code(code: bytes) -> Graph:
    if code == b"\x00":
        return Graph(0, ())
    if code[0] == 1:
        return _complement(_decode_code(code[1:]))
    n = code[1]
    bits = int.from_bytes(code[2:], "big")
    nbits = n * (n - 1) // 2
    edges = []
    k = 0
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if bits >> (nbits - 1 - k) & 1:
                edges.append((i, j))
            k += 1
    return make_graph(n, edges)

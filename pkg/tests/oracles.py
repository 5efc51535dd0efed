"""Independent oracles for the test suite.

Nothing here may call into the containment search or canonical-code
machinery being tested: isomorphism is decided by raw permutation search,
and random structured graphs are built directly from their definitions.
"""

import itertools
import random

from minorgrowth.graphs import Graph, make_graph


def edge_set(g: Graph) -> frozenset:
    return frozenset(g.edges())


def is_isomorphic_brute(a: Graph, b: Graph) -> bool:
    if a.n != b.n or a.edge_count != b.edge_count:
        return False
    if a.degree_sequence() != b.degree_sequence():
        return False
    eb = edge_set(b)
    for perm in itertools.permutations(range(1, a.n + 1)):
        mapped = frozenset(
            (min(perm[u - 1], perm[v - 1]), max(perm[u - 1], perm[v - 1]))
            for u, v in a.edges())
        if mapped == eb:
            return True
    return False


def all_graphs(n: int):
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    for bits in range(1 << len(pairs)):
        yield make_graph(n, [p for i, p in enumerate(pairs) if bits >> i & 1])


def random_graph(rng: random.Random, n: int, p: float | None = None) -> Graph:
    if p is None:
        p = rng.random()
    return make_graph(n, [(u, v) for u in range(1, n + 1)
                          for v in range(u + 1, n + 1) if rng.random() < p])


def permuted(g: Graph, perm: list[int]) -> Graph:
    """Relabel g by vertex -> perm[vertex-1]."""
    return make_graph(g.n, [(perm[u - 1], perm[v - 1]) for u, v in g.edges()])


def _random_partition(rng: random.Random, n: int) -> list[list[int]]:
    labels = list(range(1, n + 1))
    rng.shuffle(labels)
    blocks = []
    i = 0
    while i < n:
        size = rng.randint(1, n - i)
        blocks.append(labels[i:i + size])
        i += size
    return blocks


def random_path_forest(rng: random.Random, n: int) -> Graph:
    edges = []
    for block in _random_partition(rng, n):
        edges += [(block[i], block[i + 1]) for i in range(len(block) - 1)]
    return make_graph(n, edges)


def random_star_forest(rng: random.Random, n: int) -> Graph:
    edges = []
    for block in _random_partition(rng, n):
        edges += [(block[0], v) for v in block[1:]]
    return make_graph(n, edges)


def random_matching(rng: random.Random, n: int) -> Graph:
    labels = list(range(1, n + 1))
    rng.shuffle(labels)
    edges = []
    while len(labels) >= 2 and rng.random() < 0.7:
        u, v = labels.pop(), labels.pop()
        edges.append((u, v))
    return make_graph(n, edges)


def random_star_plus_isolated(rng: random.Random, n: int) -> Graph:
    labels = list(range(1, n + 1))
    rng.shuffle(labels)
    m = rng.randint(0, max(0, n - 1))
    center = labels[0] if n else None
    return make_graph(n, [(center, v) for v in labels[1:m + 1]])

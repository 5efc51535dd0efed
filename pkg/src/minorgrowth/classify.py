"""Growth categories of a minor-closed class from its excluded minors.

The decision chain translates "the class contains all members of family F"
into a predicate on the excluded minors: the class Ex(H_1,...,H_k) contains
every member of a minor-closed family exactly when no H_i belongs to that
family. Six mutually exclusive outcomes result, ordered from fastest growth
to slowest: factorial, almost factorial, semi-factorial (with an exponent
parameter k), exponential, polynomial (with an explicit polynomial over the
binomial basis), and eventually constant.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import comb

from . import counting
from .graphs import (
    Graph,
    canonical_code,
    generate,
    induced_subgraph,
    is_connected,
    is_two_connected,
    parse_graph_list,
)
from .minors import (
    components,
    has_at_most_one_edge,
    is_apex_path_forest,
    is_caterpillar_forest,
    is_matching_graph,
    is_minor,
    is_path_forest,
    is_star_forest,
    is_star_plus_isolated,
)


class CategoryError(ValueError):
    """Operation called on a spec of the wrong growth category."""


@dataclass(frozen=True)
class ClassSpec:
    """A proper minor-closed class given by finitely many excluded minors."""

    excluded: tuple[Graph, ...]

    def __post_init__(self):
        if not self.excluded:
            raise ValueError("a proper class needs at least one excluded minor")

    @staticmethod
    def from_dsl(text: str) -> "ClassSpec":
        return ClassSpec(tuple(generate(e) for e in parse_graph_list(text)))

    @property
    def identity(self) -> str:
        return counting.spec_identity(self.excluded)


class Category(Enum):
    FACTORIAL = "Factorial"
    ALMOST_FACTORIAL = "AlmostFactorial"
    SEMI_FACTORIAL = "SemiFactorial"
    EXPONENTIAL = "Exponential"
    POLYNOMIAL = "Polynomial"
    CONSTANT = "Constant"


@dataclass(frozen=True)
class BinomialPolynomial:
    """Sum of coefficients[j] * C(n, j); counts members for n >= threshold."""

    coefficients: tuple[int, ...]
    threshold: int
    empirical_threshold: int | None = None

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def evaluate(self, n: int) -> int:
        return sum(c * comb(n, j) for j, c in enumerate(self.coefficients))


@dataclass(frozen=True)
class SemifactorialExponent:
    k: int
    lower_bound_only: bool = False


@dataclass(frozen=True)
class GrowthCategory:
    """Classification outcome with its per-category parameters."""

    tag: Category
    semifactorial: SemifactorialExponent | None = None
    polynomial: BinomialPolynomial | None = None
    constant_value: int | None = None
    constant_threshold: int | None = None

    def __post_init__(self):
        if self.semifactorial is not None and self.semifactorial.k < 2:
            raise ValueError("semi-factorial exponent must be at least 2")
        if self.polynomial is not None and self.polynomial.degree < 2:
            raise ValueError("polynomial category has degree at least 2")
        if self.constant_value is not None and self.constant_value not in (0, 1):
            raise ValueError("constant value is 0 or 1")


def _chain_tag(spec: ClassSpec) -> Category:
    ex = spec.excluded
    if not any(is_path_forest(h) for h in ex):
        return Category.FACTORIAL
    if not any(is_star_forest(h) for h in ex):
        return Category.ALMOST_FACTORIAL
    if not any(is_matching_graph(h) for h in ex):
        return Category.SEMI_FACTORIAL
    if not any(is_star_plus_isolated(h) for h in ex):
        return Category.EXPONENTIAL
    if all(h.edge_count >= 2 for h in ex):
        return Category.POLYNOMIAL
    return Category.CONSTANT


def classify(spec: ClassSpec, *, semifactorial_cap: int = 8,
             empirical_max: int = 7) -> GrowthCategory:
    """Run the decision chain and fill in per-category parameters."""
    tag = _chain_tag(spec)
    if tag is Category.SEMI_FACTORIAL:
        return GrowthCategory(tag, semifactorial=semifactorial_k(spec, size_cap=semifactorial_cap))
    if tag is Category.POLYNOMIAL:
        return GrowthCategory(tag, polynomial=polynomial_of(spec, empirical_max=empirical_max))
    if tag is Category.CONSTANT:
        witnesses = [h for h in spec.excluded if has_at_most_one_edge(h)]
        value = 0 if any(h.edge_count == 0 for h in witnesses) else 1
        return GrowthCategory(tag, constant_value=value,
                              constant_threshold=max(h.n for h in witnesses))
    return GrowthCategory(tag)


# ---------------------------------------------------------------------------
# semi-factorial exponent
# ---------------------------------------------------------------------------

def _unbounded_multiplicity(c: Graph, spec: ClassSpec) -> bool:
    """Arbitrarily many disjoint copies of c stay in the class.

    A connected excluded-minor component embeds inside a single copy, so
    r copies of c contain H exactly when every component of H is a minor
    of c; unboundedness is the negation for every excluded minor.
    """
    for h in spec.excluded:
        if all(is_minor(part, c) for part in components(h)):
            return False
    return True


def _connected_members(spec: ClassSpec, m: int) -> list[Graph]:
    """Connected m-vertex members, one per isomorphism class."""
    seen = set()
    out = []
    for g in counting.enumerate_members(spec, m):
        if not is_connected(g):
            continue
        code = canonical_code(g)
        if code not in seen:
            seen.add(code)
            out.append(g)
    return out


def semifactorial_k(spec: ClassSpec, *, size_cap: int = 8,
                    max_degree: int | None = None) -> SemifactorialExponent:
    """Largest size of a connected class member with unbounded multiplicity.

    Scans sizes upward. Without a degree restriction two early stops are
    sound: a size with no connected members at all ends the search (an edge
    contraction of a larger connected member would be one), and so does a
    size whose members all have bounded multiplicity (the same contraction
    applied to every copy preserves unboundedness). Hitting the cap returns
    the cap flagged as a lower bound only.
    """
    if _chain_tag(spec) is not Category.SEMI_FACTORIAL:
        raise CategoryError("semifactorial_k needs a semi-factorial spec")
    found: int | None = None
    for m in range(2, size_cap + 1):
        members = _connected_members(spec, m)
        if not members:
            if found is None:
                raise CategoryError("no connected members; spec is not semi-factorial")
            return SemifactorialExponent(found, lower_bound_only=False)
        candidates = members
        if max_degree is not None:
            candidates = [g for g in members if max(g.degree_sequence()) <= max_degree]
        if any(_unbounded_multiplicity(g, spec) for g in candidates):
            found = m
        elif max_degree is None:
            if found is None:
                raise CategoryError("no unbounded-multiplicity member found")
            return SemifactorialExponent(found, lower_bound_only=False)
    if found is None:
        raise CategoryError("no unbounded-multiplicity member up to the cap")
    exact = found < size_cap and max_degree is None
    return SemifactorialExponent(found, lower_bound_only=not exact)


# ---------------------------------------------------------------------------
# polynomial category
# ---------------------------------------------------------------------------

def _strip_isolated(h: Graph) -> Graph:
    return induced_subgraph(h, [v for v in h.vertices() if h.degree(v) > 0])


def polynomial_of(spec: ClassSpec, *, empirical_max: int = 7,
                  pattern_cap: int = counting.HARD_CAP) -> BinomialPolynomial:
    """Construct the eventual counting polynomial over the binomial basis.

    Members large enough have all but boundedly many vertices isolated, so
    counts are sums of C(n, |pattern|) over the finitely many labelled
    patterns (members without isolated vertices) of the class with the
    isolated vertices stripped from every excluded minor.
    """
    if _chain_tag(spec) is not Category.POLYNOMIAL:
        raise CategoryError("polynomial_of needs a polynomial-growth spec")
    minimized = minimize_obstructions(spec)
    matchings = [h for h in minimized.excluded if is_matching_graph(h)]
    stars = [h for h in minimized.excluded if is_star_plus_isolated(h)]
    m_wit = min(matchings, key=lambda h: (h.edge_count, h.n))
    s_wit = min(stars, key=lambda h: (max(c.n for c in components(h)), h.n))
    k = m_wit.edge_count
    l = m_wit.n - 2 * k
    s = max(c.n for c in components(s_wit))
    r = s_wit.n - s
    iso_max = max(sum(1 for v in h.vertices() if h.degree(v) == 0)
                  for h in minimized.excluded)
    threshold = max(s + r, 2 * k + l, 2 * k * s + iso_max)

    # patterns have at most 2(k-1)(s-1) vertices: a maximal matching of
    # size < k covers all edges, and degrees stay below s - 1
    scan_cap = 2 * (k - 1) * (s - 1)
    if scan_cap > pattern_cap:
        raise counting.EnumerationCapError(
            f"pattern size bound {scan_cap} exceeds enumeration cap {pattern_cap}")
    stripped = ClassSpec(tuple(dict.fromkeys(_strip_isolated(h)
                                             for h in minimized.excluded)))
    coeffs = [0] * (scan_cap + 1)
    for m in range(scan_cap + 1):
        for g in counting.enumerate_members(stripped, m):
            if all(g.degree(v) > 0 for v in g.vertices()):
                coeffs[m] += 1
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()

    poly = BinomialPolynomial(tuple(coeffs), threshold)
    empirical = _empirical_threshold(spec, poly, empirical_max)
    return BinomialPolynomial(tuple(coeffs), threshold, empirical)


def _empirical_threshold(spec: ClassSpec, poly: BinomialPolynomial,
                         n_max: int) -> int | None:
    """Smallest t with brute counts equal to the polynomial on t..n_max."""
    agree_from = 0
    for n in range(n_max + 1):
        if counting.count_members(spec, n) != poly.evaluate(n):
            agree_from = n + 1
    return agree_from if agree_from <= n_max else None


# ---------------------------------------------------------------------------
# side predicates
# ---------------------------------------------------------------------------

def exists_growth_constant(spec: ClassSpec) -> bool:
    """Sufficient test: every excluded minor is 2-connected."""
    return all(is_two_connected(h) for h in spec.excluded)


def gamma_one_test(spec: ClassSpec) -> bool:
    """Growth constant exactly 1: the class has all paths but neither all
    caterpillars nor all apex graphs over path forests."""
    ex = spec.excluded
    if any(is_path_forest(h) for h in ex):
        return False
    return (any(is_caterpillar_forest(h) for h in ex)
            and any(is_apex_path_forest(h) for h in ex))


def minimize_obstructions(spec: ClassSpec) -> ClassSpec:
    """Drop excluded minors that contain another one; the class is unchanged."""
    items = list(spec.excluded)
    keep = []
    for i, h in enumerate(items):
        redundant = False
        for j, other in enumerate(items):
            if i == j:
                continue
            if is_minor(other, h):
                if is_minor(h, other) and j > i:
                    continue  # duplicate pair: first occurrence wins
                redundant = True
                break
        if not redundant:
            keep.append(h)
    return ClassSpec(tuple(keep))

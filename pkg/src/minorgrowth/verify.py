"""Self-contained verification suite behind the ``verify`` command.

Each criterion runs independently and reports pass/fail with details. The
``fast`` level keeps brute-force enumeration at n <= 6; ``full`` raises it
to n <= 7. Counts computed along the way are cached inside the run context
so criteria share work.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from math import e as EULER_E, factorial

from .classify import Category, ClassSpec, classify, gamma_one_test
from .counting import (
    CountTable,
    bell,
    count_members,
    double_factorial,
    enumerate_members,
    forest_count,
    matchings_count,
    path_forest_count,
    star_class_count,
    star_forest_count,
)
from .graphs import (
    Graph,
    canonical_code,
    contract_edge,
    delete_vertex,
    dfs_forest,
    make_graph,
    path_graph,
)
from .growth import apex_sandwich_check, bound_audit, gamma_sequence, supermultiplicative_check
from .minors import is_minor
from .series import rho_sequence, xi_constant, nu_constant


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    details: list[str] = field(default_factory=list)
    elapsed: float = 0.0

    def fail(self, message: str) -> None:
        self.passed = False
        self.details.append(message)


class VerifyContext:
    """Shared caches for counts and member lists across criteria."""

    def __init__(self, level: str = "fast", seed: int = 20608):
        if level not in ("fast", "full"):
            raise ValueError("level is 'fast' or 'full'")
        self.level = level
        self.n_max = 7 if level == "full" else 6
        self.seed = seed
        self._counts: dict[tuple[str, int], int] = {}
        self._members: dict[tuple[str, int], list[Graph]] = {}
        self._specs: dict[str, ClassSpec] = {}

    def spec(self, dsl: str) -> ClassSpec:
        if dsl not in self._specs:
            self._specs[dsl] = ClassSpec.from_dsl(dsl)
        return self._specs[dsl]

    def count(self, dsl: str, n: int) -> int:
        key = (dsl, n)
        if key not in self._counts:
            self._counts[key] = count_members(self.spec(dsl), n)
        return self._counts[key]

    def members(self, dsl: str, n: int) -> list[Graph]:
        key = (dsl, n)
        if key not in self._members:
            self._members[key] = enumerate_members(self.spec(dsl), n)
        return self._members[key]

    def table(self, dsl: str, n_max: int | None = None) -> CountTable:
        n_max = self.n_max if n_max is None else n_max
        spec = self.spec(dsl)
        table = CountTable(spec.identity)
        for n in range(n_max + 1):
            table.record(n, self.count(dsl, n), "brute")
        return table


def _run(number: int, name: str, body) -> CriterionResult:
    result = CriterionResult(number, name, True)
    start = time.perf_counter()
    body(result)
    result.elapsed = time.perf_counter() - start
    return result


# ---------------------------------------------------------------------------
# criteria
# ---------------------------------------------------------------------------

def criterion_constants(ctx: VerifyContext) -> CriterionResult:
    def body(res: CriterionResult):
        start = time.perf_counter()
        xi = xi_constant(tol=1e-12)
        nu = nu_constant(tol=1e-12)
        elapsed = time.perf_counter() - start
        if not (0.5671 <= xi.root.lo and xi.root.hi <= 0.5672):
            res.fail(f"defining root off: [{xi.root.lo}, {xi.root.hi}]")
        if not (1.7632 <= xi.inverse.lo and xi.inverse.hi <= 1.7633):
            res.fail(f"xi off: [{xi.inverse.lo}, {xi.inverse.hi}]")
        if not (2.23 <= nu.inverse.lo and nu.inverse.hi <= 2.25):
            res.fail(f"nu off: [{nu.inverse.lo}, {nu.inverse.hi}]")
        if xi.root.width > 1e-9 or nu.root.width > 1e-9:
            res.fail("interval wider than 1e-9")
        if elapsed >= 1.0:
            res.fail(f"constants took {elapsed:.3f}s (budget 1s)")
        res.details.append(f"xi={xi.inverse.mid:.9f} nu={nu.inverse.mid:.9f}")
    return _run(1, "growth constants xi and nu", body)


def criterion_rho_sequence(ctx: VerifyContext) -> CriterionResult:
    def body(res: CriterionResult):
        start = time.perf_counter()
        rhos = rho_sequence(10, tol=1e-12)
        elapsed = time.perf_counter() - start
        if rhos[0].root.lo != 1.0 or rhos[0].root.hi != 1.0:
            res.fail("rho_0 is not exactly 1")
        xi = xi_constant(tol=1e-12)
        if abs(rhos[1].root.mid - xi.root.mid) > 1e-9:
            res.fail("rho_1 differs from the xi-defining root")
        for k in range(10):
            if not rhos[k].root.lo > rhos[k + 1].root.hi:
                res.fail(f"rho not strictly decreasing at k={k}")
            if not rhos[k + 1].inverse.lo > rhos[k].inverse.hi:
                res.fail(f"gamma not strictly increasing at k={k}")
        inv_e = 1.0 / EULER_E
        if not all(r.root.lo > inv_e for r in rhos):
            res.fail("some rho_k <= 1/e")
        if not all(r.inverse.hi < EULER_E for r in rhos):
            res.fail("some gamma_k >= e")
        if elapsed >= 5.0:
            res.fail(f"rho sequence took {elapsed:.3f}s (budget 5s)")
    return _run(2, "height-bounded root sequence", body)


FAMILY_FORMULAS = {
    "path:3": matchings_count,
    "complete:3": forest_count,
    "complete:3,star:3": path_forest_count,
    "path:4,complete:3": star_forest_count,
}


def criterion_oracle_counts(ctx: VerifyContext) -> CriterionResult:
    def body(res: CriterionResult):
        for dsl, formula in FAMILY_FORMULAS.items():
            start = time.perf_counter()
            for n in range(ctx.n_max + 1):
                brute = ctx.count(dsl, n)
                if brute != formula(n):
                    res.fail(f"{dsl} n={n}: brute {brute} != formula {formula(n)}")
            elapsed = time.perf_counter() - start
            if elapsed >= 60.0:
                res.fail(f"{dsl} brute column took {elapsed:.1f}s (budget 60s)")
        expected_matchings = [1, 2, 4, 10, 26, 76, 232]
        for n, want in enumerate(expected_matchings[:ctx.n_max], start=1):
            if ctx.count("path:3", n) != want:
                res.fail(f"matchings n={n}: {ctx.count('path:3', n)} != {want}")
        expected_forests = {2: 2, 3: 7, 4: 38, 5: 291, 6: 2932}
        for n, want in expected_forests.items():
            if ctx.count("complete:3", n) != want:
                res.fail(f"forests n={n}: {ctx.count('complete:3', n)} != {want}")
    return _run(3, "brute force equals closed forms", body)


def criterion_family_inequalities(ctx: VerifyContext) -> CriterionResult:
    def body(res: CriterionResult):
        for n in range(2, 13):
            if path_forest_count(n) < factorial(n):
                res.fail(f"path forests below n! at n={n}")
            if star_forest_count(n) < bell(n):
                res.fail(f"star forests below Bell at n={n}")
            if matchings_count(n) < double_factorial(n):
                res.fail(f"matchings below n!! at n={n}")
            if star_class_count(n) < 2 ** (n - 1):
                res.fail(f"star class below 2^(n-1) at n={n}")
    return _run(4, "family lower bounds for n <= 12", body)


GOLDEN_TABLE = [
    ("complete:3", Category.FACTORIAL),
    ("path:5", Category.ALMOST_FACTORIAL),
    ("path:3", Category.SEMI_FACTORIAL),
    ("path:4,star:3", Category.SEMI_FACTORIAL),
    ("matching:2", Category.EXPONENTIAL),
    ("matching:2,star:3", Category.POLYNOMIAL),
    ("matching:2,star:2", Category.POLYNOMIAL),
    ("edges(3;1-2)", Category.CONSTANT),
    ("iso:1", Category.CONSTANT),
]


def criterion_golden_classification(ctx: VerifyContext) -> CriterionResult:
    def body(res: CriterionResult):
        outcomes = {}
        for dsl, want in GOLDEN_TABLE:
            cat = classify(ctx.spec(dsl), empirical_max=ctx.n_max)
            outcomes[dsl] = cat
            if cat.tag is not want:
                res.fail(f"{dsl}: {cat.tag.value}, expected {want.value}")
        checks = [
            ("path:3", lambda c: c.semifactorial.k == 2),
            ("path:4,star:3", lambda c: c.semifactorial.k == 3),
            ("matching:2,star:3", lambda c: c.polynomial.coefficients == (1, 0, 1, 4)),
            ("matching:2,star:2", lambda c: c.polynomial.coefficients == (1, 0, 1)),
            ("edges(3;1-2)", lambda c: c.constant_value == 1),
            ("iso:1", lambda c: c.constant_value == 0),
        ]
        for dsl, check in checks:
            if dsl in outcomes and not check(outcomes[dsl]):
                res.fail(f"{dsl}: parameter mismatch ({outcomes[dsl]})")
        for dsl, _ in GOLDEN_TABLE:
            cat = outcomes[dsl]
            audit = bound_audit(ctx.spec(dsl), cat, ctx.table(dsl))
            if not audit.all_ok:
                bad = [r for r in audit.rows if not r.ok]
                res.fail(f"{dsl}: count cross-validation failed at {bad[:3]}")
    return _run(5, "classification golden table", body)


def criterion_apex_sandwich(ctx: VerifyContext) -> CriterionResult:
    def body(res: CriterionResult):
        for dsl in ("complete:2", "path:3"):
            report = apex_sandwich_check(ctx.spec(dsl), 6)
            for row in report.rows:
                if not row.ok:
                    res.fail(f"{dsl} n={row.n}: {row.lower} <= {row.apex} <= {row.upper} fails")
    return _run(6, "apex sandwich bounds", body)


def criterion_dfs_invariants(ctx: VerifyContext) -> CriterionResult:
    def body(res: CriterionResult):
        rng = random.Random(ctx.seed)
        for trial in range(1000):
            n = rng.randint(1, 12)
            p = rng.random()
            edges = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)
                     if rng.random() < p]
            g = make_graph(n, edges)
            order = list(range(1, n + 1))
            rng.shuffle(order)
            forest = dfs_forest(g, order)
            if not forest.is_valid_for(g):
                res.fail(f"trial {trial}: invalid forest on {g!r}")
                return
            if not is_minor(path_graph(forest.height + 1), g):
                res.fail(f"trial {trial}: height {forest.height} without matching path minor")
                return
        for k in (4, 5):
            dsl = f"path:{k}"
            for n in range(1, ctx.n_max + 1):
                for g in ctx.members(dsl, n):
                    if dfs_forest(g).height > k - 1:
                        res.fail(f"Ex({dsl}) member on {n} vertices with height > {k - 1}")
                        return
    return _run(7, "depth-first search invariants", body)


class MinorClosureOracle:
    """Independent containment test: the closure of a graph under single
    vertex deletions, edge deletions and edge contractions, with graphs
    identified up to isomorphism by their canonical codes."""

    def __init__(self):
        self._memo: dict[bytes, frozenset[bytes]] = {}

    def closure(self, g: Graph) -> frozenset[bytes]:
        code = canonical_code(g)
        hit = self._memo.get(code)
        if hit is not None:
            return hit
        # every single-step minor strictly shrinks (n, edges), so no cycles
        acc = {code}
        for v in g.vertices():
            acc |= self.closure(delete_vertex(g, v))
        for u, v in g.edges():
            remaining = [e for e in g.edges() if e != (u, v)]
            acc |= self.closure(make_graph(g.n, remaining))
            acc |= self.closure(contract_edge(g, (u, v)))
        out = frozenset(acc)
        self._memo[code] = out
        return out

    def is_minor(self, h: Graph, g: Graph) -> bool:
        return canonical_code(h) in self.closure(g)


def _iso_representatives(n: int) -> list[Graph]:
    reps = {}
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    for bits in range(1 << len(pairs)):
        g = make_graph(n, [p for i, p in enumerate(pairs) if bits >> i & 1])
        reps.setdefault(canonical_code(g), g)
    return list(reps.values())


def criterion_minor_oracle(ctx: VerifyContext) -> CriterionResult:
    def body(res: CriterionResult):
        oracle = MinorClosureOracle()
        reps = [g for n in range(6) for g in _iso_representatives(n)]
        for g in reps:
            for h in reps:
                want = oracle.is_minor(h, g)
                if is_minor(h, g) != want:
                    res.fail(f"disagreement: H={h!r} G={g!r} oracle={want}")
                    return
        rng = random.Random(ctx.seed + 1)
        for trial in range(500):
            gn = 6
            hn = rng.randint(1, 6)
            g = _random_graph(rng, gn)
            h = _random_graph(rng, hn)
            want = oracle.is_minor(h, g)
            if is_minor(h, g) != want:
                res.fail(f"random trial {trial}: H={h!r} G={g!r} oracle={want}")
                return
    return _run(8, "containment agrees with the closure oracle", body)


def _random_graph(rng: random.Random, n: int) -> Graph:
    p = rng.random()
    return make_graph(n, [(u, v) for u in range(1, n + 1)
                          for v in range(u + 1, n + 1) if rng.random() < p])


def criterion_supermultiplicative(ctx: VerifyContext) -> CriterionResult:
    def body(res: CriterionResult):
        for dsl in ("complete:3", "complete:3,star:3"):
            report = supermultiplicative_check(ctx.table(dsl))
            for row in report.rows:
                if row.status != "holds":
                    res.fail(f"{dsl} m={row.m} n={row.n}: {row.status}")
    return _run(9, "supermultiplicative count ratios", body)


def criterion_trend_diagnostics(ctx: VerifyContext) -> CriterionResult:
    def body(res: CriterionResult):
        forests = gamma_sequence(ctx.table("complete:3"))
        values = [p.value for p in forests.points if p.n >= 2]
        if any(a >= b for a, b in zip(values, values[1:])):
            res.fail("forest estimates not increasing")
        if values[-1] >= EULER_E:
            res.fail("forest estimate at or above its limit")
        witness = "complete:3,star:3"
        if not gamma_one_test(ctx.spec(witness)):
            res.fail("expected growth-constant-1 witness rejected")
        est = gamma_sequence(ctx.table(witness))
        if est.value(ctx.n_max) > 1.35:
            res.fail(f"gamma-1 witness estimate {est.value(ctx.n_max):.3f} above 1.35")
        expo = gamma_sequence(ctx.table("matching:2"))
        if not expo.value(ctx.n_max) < expo.value(4):
            res.fail("exponential-class estimates fail to decay")
    return _run(10, "trend and envelope diagnostics", body)


CRITERIA = [
    criterion_constants,
    criterion_rho_sequence,
    criterion_oracle_counts,
    criterion_family_inequalities,
    criterion_golden_classification,
    criterion_apex_sandwich,
    criterion_dfs_invariants,
    criterion_minor_oracle,
    criterion_supermultiplicative,
    criterion_trend_diagnostics,
]


def run_criteria(level: str = "fast", numbers: list[int] | None = None) -> list[CriterionResult]:
    ctx = VerifyContext(level)
    results = []
    for index, fn in enumerate(CRITERIA, start=1):
        if numbers is not None and index not in numbers:
            continue
        results.append(fn(ctx))
    return results

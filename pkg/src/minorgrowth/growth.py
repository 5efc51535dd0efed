"""Growth-constant diagnostics and checkable inequalities on count tables.

Everything here that asserts an inequality does so in exact integer or
rational arithmetic; floating-point numbers appear only in the reported
estimates. Desk-scale estimates of (g_n/n!)^(1/n) converge far too slowly
to compare against limiting constants, so reports carry trend markers
rather than limits.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .classify import Category, ClassSpec, GrowthCategory
from .counting import CountTable, apex_count, bell, count_members, double_factorial
from .series import e_squared_enclosure


@dataclass(frozen=True)
class GammaPoint:
    n: int
    value: float                 # (g_n / n!)^(1/n), 0.0 marks a zero count
    ratio: float | None          # g_n / (n * g_{n-1}) when defined
    direction: int | None        # sign vs the previous point


@dataclass(frozen=True)
class GammaEstimate:
    spec: str
    points: tuple[GammaPoint, ...]

    def value(self, n: int) -> float:
        for p in self.points:
            if p.n == n:
                return p.value
        raise KeyError(n)


def gamma_sequence(table: CountTable) -> GammaEstimate:
    """Per-n growth-constant estimates from exact counts; no extrapolation."""
    points = []
    prev_value = None
    prev_count: tuple[int, int] | None = None
    for n in table.sizes():
        if n == 0:
            prev_count = (0, table[0])
            continue
        g = table[n]
        value = 0.0 if g == 0 else float(Fraction(g, factorial(n))) ** (1.0 / n)
        ratio = None
        if prev_count is not None and prev_count[0] == n - 1 and prev_count[1] > 0:
            ratio = float(Fraction(g, n * prev_count[1]))
        direction = None
        if prev_value is not None:
            direction = (value > prev_value) - (value < prev_value)
        points.append(GammaPoint(n, value, ratio, direction))
        prev_value = value
        prev_count = (n, g)
    return GammaEstimate(table.spec, tuple(points))


@dataclass(frozen=True)
class SandwichRow:
    n: int
    lower: int          # 2^n * g_n
    apex: int           # members of the apex class on n+1 vertices
    upper: int          # (n+1) * 2^n * g_n
    ok: bool


@dataclass(frozen=True)
class SandwichReport:
    spec: str
    rows: tuple[SandwichRow, ...]

    @property
    def all_ok(self) -> bool:
        return all(r.ok for r in self.rows)


def apex_sandwich_check(spec: ClassSpec, n_max: int) -> SandwichReport:
    """Exact check of 2^n g_n <= |apex_{n+1}| <= (n+1) 2^n g_n for n < n_max."""
    if n_max > 7:
        raise ValueError("apex sandwich supported for n_max <= 7")
    rows = []
    for n in range(n_max):
        g = count_members(spec, n)
        a = apex_count(spec, n + 1)
        lower = 2 ** n * g
        upper = (n + 1) * lower
        rows.append(SandwichRow(n, lower, a, upper, lower <= a <= upper))
    return SandwichReport(spec.identity, tuple(rows))


@dataclass(frozen=True)
class SupermultRow:
    m: int
    n: int
    status: str          # "holds" | "fails" | "undecided"


@dataclass(frozen=True)
class SupermultReport:
    spec: str
    rows: tuple[SupermultRow, ...]

    @property
    def all_hold(self) -> bool:
        return all(r.status == "holds" for r in self.rows)


def supermultiplicative_check(table: CountTable, *, e2_terms: int = 40) -> SupermultReport:
    """Check f_{m+n} >= f_m f_n for f_n = g_n/(e^2 n!), m, n >= 1.

    Division by e^2 makes the inequality e^2 g_{m+n} m! n! >= g_m g_n (m+n)!.
    A certified rational lower bound for e^2 decides "holds" safely; the
    upper bound certifies a failure; anything between is "undecided".
    """
    e2_lo, e2_hi = e_squared_enclosure(e2_terms)
    sizes = [n for n in table.sizes() if n >= 1]
    n_max = max(sizes, default=0)
    rows = []
    for m in range(1, n_max + 1):
        for n in range(m, n_max + 1):
            if m + n > n_max:
                break
            if not {m, n, m + n} <= set(table.entries):
                continue
            lhs_core = table[m + n] * factorial(m) * factorial(n)
            rhs = table[m] * table[n] * factorial(m + n)
            if e2_lo * lhs_core >= rhs:
                status = "holds"
            elif e2_hi * lhs_core < rhs:
                status = "fails"
            else:
                status = "undecided"
            rows.append(SupermultRow(m, n, status))
    return SupermultReport(table.spec, tuple(rows))


@dataclass(frozen=True)
class AuditRow:
    n: int
    kind: str
    bound: int | None
    count: int
    ok: bool
    note: str = ""


@dataclass(frozen=True)
class AuditReport:
    spec: str
    category: str
    rows: tuple[AuditRow, ...]

    @property
    def all_ok(self) -> bool:
        return all(r.ok for r in self.rows)


def bound_audit(spec: ClassSpec, category: GrowthCategory,
                table: CountTable) -> AuditReport:
    """Verify the category's exact lower bounds at every tabulated size.

    Two-sided growth shapes only get report rows: for the semi-factorial
    case the implied per-n constants a_n = g_n / n^((1-1/k)n) are recorded
    and required to be positive and finite, nothing more.
    """
    rows: list[AuditRow] = []
    for n in table.sizes():
        g = table[n]
        if category.tag is Category.FACTORIAL and n >= 2:
            rows.append(AuditRow(n, "factorial", factorial(n), g, g >= factorial(n)))
        elif category.tag is Category.ALMOST_FACTORIAL:
            rows.append(AuditRow(n, "bell", bell(n), g, g >= bell(n)))
        elif category.tag is Category.SEMI_FACTORIAL:
            lower = double_factorial(n)
            ok = g >= lower
            note = ""
            if n >= 1 and category.semifactorial is not None:
                k = category.semifactorial.k
                a_n = g / float(n) ** ((1 - 1 / k) * n)
                ok = ok and a_n > 0
                note = f"a_n={a_n:.6g}"
            rows.append(AuditRow(n, "double-factorial", lower, g, ok, note))
        elif category.tag is Category.EXPONENTIAL and n >= 1:
            lower = 2 ** (n - 1)
            rows.append(AuditRow(n, "exponential", lower, g, g >= lower))
        elif category.tag is Category.POLYNOMIAL and category.polynomial is not None:
            poly = category.polynomial
            start = poly.empirical_threshold
            if start is None:
                start = poly.threshold
            if n >= start:
                want = poly.evaluate(n)
                rows.append(AuditRow(n, "polynomial", want, g, g == want))
        elif category.tag is Category.CONSTANT and category.constant_threshold is not None:
            if n >= category.constant_threshold:
                want = category.constant_value
                rows.append(AuditRow(n, "constant", want, g, g == want))
    return AuditReport(table.spec, category.tag.value, tuple(rows))

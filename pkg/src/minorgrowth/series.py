"""Truncated exponential generating functions and certified root-finding.

Series coefficients are exact rationals; any truncation order works and all
arithmetic is coefficientwise exact. Root-finding is plain bisection over a
sign-changing bracket, so every result is an interval that provably
contains the root. The height-bounded rooted-tree series F_0 = z,
F_{k+1} = z*exp(F_k) is available both as a truncated series and as a
pointwise-evaluable function (the latter has no truncation error, which is
what the root computations use).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


class SeriesError(ValueError):
    """Order mismatch or an argument with a forbidden constant term."""


@dataclass(frozen=True)
class Series:
    """EGF truncated at order ``truncation`` with exact rational coefficients."""

    truncation: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.truncation + 1:
            raise SeriesError("coefficient vector does not match the order")

    @staticmethod
    def from_values(values, truncation: int) -> "Series":
        coeffs = [Fraction(v) for v in values][: truncation + 1]
        coeffs += [Fraction(0)] * (truncation + 1 - len(coeffs))
        return Series(truncation, tuple(coeffs))

    @staticmethod
    def zero(truncation: int) -> "Series":
        return Series.from_values([], truncation)

    @staticmethod
    def one(truncation: int) -> "Series":
        return Series.from_values([1], truncation)

    @staticmethod
    def z(truncation: int) -> "Series":
        return Series.from_values([0, 1], truncation)

    def _match(self, other: "Series") -> None:
        if self.truncation != other.truncation:
            raise SeriesError("series orders differ")

    def __add__(self, other: "Series") -> "Series":
        self._match(other)
        return Series(self.truncation,
                      tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "Series") -> "Series":
        self._match(other)
        return Series(self.truncation,
                      tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, other: "Series") -> "Series":
        self._match(other)
        T = self.truncation
        out = [Fraction(0)] * (T + 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j in range(T + 1 - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] += a * b
        return Series(T, tuple(out))

    def scaled(self, factor) -> "Series":
        f = Fraction(factor)
        return Series(self.truncation, tuple(f * a for a in self.coeffs))

    def coefficient(self, n: int) -> Fraction:
        return self.coeffs[n]


def exp_series(f: Series) -> Series:
    """exp(f) for f with zero constant term, via (exp f)' = f' exp f."""
    if f.coeffs[0] != 0:
        raise SeriesError("exp needs zero constant term")
    T = f.truncation
    out = [Fraction(0)] * (T + 1)
    out[0] = Fraction(1)
    for n in range(T):
        # (n+1) * out[n+1] = sum_{j} (j+1) f_{j+1} out[n-j]
        acc = Fraction(0)
        for j in range(n + 1):
            c = f.coeffs[j + 1]
            if c:
                acc += (j + 1) * c * out[n - j]
        out[n + 1] = acc / (n + 1)
    return Series(T, tuple(out))


def compose(f: Series, g: Series) -> Series:
    """f(g(z)) for g with zero constant term (Horner evaluation)."""
    f._match(g)
    if g.coeffs[0] != 0:
        raise SeriesError("composition needs zero constant term")
    T = f.truncation
    result = Series.from_values([f.coeffs[T]], T)
    for i in range(T - 1, -1, -1):
        result = result * g + Series.from_values([f.coeffs[i]], T)
    return result


def quasi_inverse(f: Series) -> Series:
    """1/(1-f) for f with zero constant term."""
    if f.coeffs[0] != 0:
        raise SeriesError("quasi-inverse needs zero constant term")
    T = f.truncation
    out = [Fraction(0)] * (T + 1)
    out[0] = Fraction(1)
    for n in range(1, T + 1):
        out[n] = sum(f.coeffs[j] * out[n - j] for j in range(1, n + 1))
    return Series(T, tuple(out))


def egf_count(s: Series, n: int) -> int:
    """n! times the n-th coefficient; errors when that is not an integer."""
    value = s.coeffs[n] * math.factorial(n)
    if value.denominator != 1 or value < 0:
        raise SeriesError(f"coefficient {n} is not a count: {value}")
    return value.numerator


DEFAULT_TRUNCATION = 32


def bounded_height_series(k: int, truncation: int = DEFAULT_TRUNCATION) -> Series:
    """Rooted labelled trees of height at most k: F_0 = z, F_{k+1} = z e^{F_k}."""
    if k < 0:
        raise ValueError("height must be nonnegative")
    f = Series.z(truncation)
    for _ in range(k):
        f = Series.z(truncation) * exp_series(f)
    return f


def rooted_tree_series(truncation: int = DEFAULT_TRUNCATION) -> Series:
    """All rooted labelled trees; the height recursion stabilizes by k = T."""
    return bounded_height_series(truncation, truncation)


def bounded_height_value(k: int, x: float) -> float:
    """Pointwise F_k(x) with no truncation error; overflow saturates to inf."""
    value = x
    for _ in range(k):
        try:
            value = x * math.exp(value)
        except OverflowError:
            return math.inf if x > 0 else -math.inf
    return value


# ---------------------------------------------------------------------------
# bracketed root-finding
# ---------------------------------------------------------------------------

class BracketError(ValueError):
    """The bracket does not show a sign change."""


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    @property
    def mid(self) -> float:
        return (self.lo + self.hi) / 2

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi


@dataclass(frozen=True)
class RootResult:
    """A bracketing interval for a root, plus the interval of its inverse."""

    root: Interval
    inverse: Interval


def _inverse_interval(lo: float, hi: float) -> Interval:
    inv_hi = 1.0 / lo if lo > 0 else math.inf
    return Interval(1.0 / hi, inv_hi)


def smallest_positive_root(f, bracket: tuple[float, float],
                           tol: float = 1e-12) -> RootResult:
    """Bisect to a width-``tol`` interval; the sign change is maintained.

    The caller's bracket must isolate the wanted root: f(lo) and f(hi) have
    opposite signs and no earlier positive root lies inside.
    """
    lo, hi = float(bracket[0]), float(bracket[1])
    flo, fhi = f(lo), f(hi)
    if flo == 0:
        return RootResult(Interval(lo, lo), _inverse_interval(lo, lo))
    if fhi == 0:
        return RootResult(Interval(hi, hi), _inverse_interval(hi, hi))
    if (flo > 0) == (fhi > 0):
        raise BracketError(f"no sign change on [{lo}, {hi}]")
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if mid <= lo or mid >= hi:
            break  # at float resolution
        fmid = f(mid)
        if fmid == 0:
            lo = hi = mid
            break
        if (fmid > 0) == (flo > 0):
            lo, flo = mid, fmid
        else:
            hi, fhi = mid, fmid
    return RootResult(Interval(lo, hi), _inverse_interval(lo, hi))


def xi_constant(tol: float = 1e-12) -> RootResult:
    """Root of x*e^x = 1; the inverse is the caterpillar-forest growth constant."""
    return smallest_positive_root(lambda x: x * math.exp(x) - 1.0, (0.1, 1.0), tol)


def nu_constant(tol: float = 1e-12) -> RootResult:
    """Smallest positive root of z*e^{z/(1-z)} = 1; inverse is a limit growth rate."""
    return smallest_positive_root(
        lambda z: z * math.exp(z / (1.0 - z)) - 1.0, (0.05, 0.95), tol)


def rho_sequence(k_max: int, tol: float = 1e-12) -> list[RootResult]:
    """Roots rho_k of F_k(rho_k) = 1 for k = 0..k_max; rho_0 = 1 exactly.

    The common bracket works for every k >= 1: F_k(0.25) stays below the
    rooted-tree series value there (< 1), and F_k(1) >= e.
    """
    if k_max < 0:
        raise ValueError("k_max must be nonnegative")
    out = [RootResult(Interval(1.0, 1.0), Interval(1.0, 1.0))]
    for k in range(1, k_max + 1):
        out.append(smallest_positive_root(
            lambda x, k=k: bounded_height_value(k, x) - 1.0, (0.25, 1.0), tol))
    return out


def e_squared_enclosure(terms: int = 40) -> tuple[Fraction, Fraction]:
    """Certified rational bounds on e^2 from its exponential series.

    The partial sum is a lower bound; the tail after ``terms`` terms is
    dominated by a geometric series with ratio 2/(terms+1).
    """
    lo = Fraction(0)
    term = Fraction(1)
    for k in range(terms):
        lo += term
        term = term * 2 / (k + 1)
    # term is now 2^terms / terms!
    ratio = Fraction(2, terms + 1)
    tail = term / (1 - ratio)
    return lo, lo + tail

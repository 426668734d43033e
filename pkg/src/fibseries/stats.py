"""How often a(m) vanishes.

``alpha[n]`` counts the non-zero coefficients among a(0..F_n - 1).  The
interval construction adds ``2 * alpha[n-3] - 1`` non-zeros when going from
``F_n`` to ``F_{n+1}`` (nothing in the middle span, ``alpha[n-3]`` in the high
span and one fewer in the low span), so

    alpha[n+1] - alpha[n] = 2 * alpha[n-3] - 1,    n >= 5.

Its characteristic polynomial ``x^4 - x^3 - 2`` has dominant real root about
1.5437, smaller than the golden ratio, hence the fraction of non-zero
coefficients below ``F_n`` tends to 0.  The other roots are -1 and a complex
pair near ``0.23 +- 1.12i``; those are not computed here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Decimal
from fractions import Fraction

from .expander import expand
from .fib import DEFAULT_TABLE, FibTable

__all__ = [
    "ALPHA_BASE",
    "AlphaSeries",
    "CharRoots",
    "DensityReport",
    "GrowthRow",
    "LAMBDA",
    "alpha_direct",
    "alpha_recurrence",
    "char_poly",
    "char_roots",
    "density",
    "density_at",
    "growth_report",
    "render_decimal",
]

# alpha_2 .. alpha_5, by direct count of a(0..4) = 1, -1, -1, 0, 1
ALPHA_BASE = (1, 2, 3, 4)
LAMBDA = (1 + math.sqrt(5)) / 2


def render_decimal(q: Fraction, places: int = 6) -> str:
    d = Decimal(q.numerator) / Decimal(q.denominator)
    return str(d.quantize(Decimal(1).scaleb(-places), rounding=ROUND_HALF_EVEN))


@dataclass(frozen=True)
class AlphaSeries:
    """alpha[n] for n = 2 .. n_max; index with the interval number itself."""

    values: tuple[int, ...]

    @property
    def n_max(self) -> int:
        return len(self.values) + 1

    def __getitem__(self, n: int) -> int:
        if not 2 <= n <= self.n_max:
            raise IndexError(f"alpha_{n} not in series (2..{self.n_max})")
        return self.values[n - 2]

    def items(self):
        return zip(range(2, self.n_max + 1), self.values)


@dataclass(frozen=True)
class DensityReport:
    n: int
    alpha_n: int
    F_n: int
    p: Fraction

    @property
    def decimal(self) -> str:
        return render_decimal(self.p)


@dataclass(frozen=True)
class CharRoots:
    r1: float
    residual: float
    lambda_: float
    r2: int = -1
    iterations: int = 0


@dataclass(frozen=True)
class GrowthRow:
    n: int
    alpha_ratio: Fraction
    fib_ratio: Fraction
    alpha_over_fib: Fraction


def alpha_direct(n: int, table: FibTable = DEFAULT_TABLE, *, budget: int | None = None) -> int:
    """Non-zero count among a(0..F_n - 1), read from the dense expansion."""
    if n < 2:
        raise ValueError(f"alpha_n is defined for n >= 2, got {n}")
    return expand(table.fib(n) - 1, budget=budget, table=table).count_nonzero()


def alpha_recurrence(n_max: int) -> AlphaSeries:
    if n_max < 5:
        raise ValueError(f"n_max must be >= 5, got {n_max}")
    alpha = list(ALPHA_BASE)
    # alpha[i] holds alpha_{i+2}
    for n in range(5, n_max):
        alpha.append(alpha[n - 2] + 2 * alpha[n - 5] - 1)
    return AlphaSeries(tuple(alpha))


def density(n: int, table: FibTable = DEFAULT_TABLE) -> DensityReport:
    """Fraction of zero coefficients among a(0..F_n - 1), as 1 - alpha_n / F_n."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    alpha_n = alpha_recurrence(max(n, 5))[n]
    fn = table.fib(n)
    return DensityReport(n, alpha_n, fn, 1 - Fraction(alpha_n, fn))


def density_at(cutoff: int, *, budget: int | None = None) -> Fraction:
    """Exact fraction of zeros among a(0..cutoff)."""
    if cutoff < 0:
        raise ValueError(f"cutoff must be non-negative, got {cutoff}")
    arr = expand(cutoff, budget=budget)
    return Fraction(len(arr) - arr.count_nonzero(), len(arr))


def char_poly(x):
    return x**4 - x**3 - 2


def char_roots(tol: float = 1e-12) -> CharRoots:
    """Bisect for the real root of x^4 - x^3 - 2 in (1, 2)."""
    if not tol > 0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    if char_poly(-1) != 0:
        raise AssertionError("-1 is not a root of x^4 - x^3 - 2")
    lo, hi = 1.0, 2.0  # p(1) = -2 < 0 < 14 = p(2)
    it = 0
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if mid in (lo, hi):
            break
        if char_poly(mid) < 0:
            lo = mid
        else:
            hi = mid
        it += 1
    r1 = (lo + hi) / 2
    return CharRoots(r1, abs(char_poly(r1)), LAMBDA, iterations=it)


def growth_report(n_max: int, table: FibTable = DEFAULT_TABLE) -> list[GrowthRow]:
    """Rows n = 2 .. n_max with alpha_{n+1}/alpha_n, F_{n+1}/F_n and alpha_n/F_n."""
    if n_max < 10:
        raise ValueError(f"n_max must be >= 10, got {n_max}")
    alpha = alpha_recurrence(n_max + 1)
    f = table.fib
    return [
        GrowthRow(
            n,
            Fraction(alpha[n + 1], alpha[n]),
            Fraction(f(n + 1), f(n)),
            Fraction(alpha[n], f(n)),
        )
        for n in range(2, n_max + 1)
    ]

"""Point evaluation of a(m), the coefficient of x^m in prod_{k>=2} (1 - x^{F_k}).

Each position ``m >= 5`` lies in exactly one interval ``[F_n, F_{n+1})`` with
``n >= 5``, which splits into three spans::

    low   [F_n,                F_n + F_{n-3} - 2]   a(m) = (-1)^(n-1) a(F_n + F_{n-3} - 2 - m)
    mid   [F_n + F_{n-3} - 1,  F_n + F_{n-2} - 1]   a(m) = 0
    high  [F_n + F_{n-2},      F_{n+1} - 1]         a(m) = a(m - F_n - F_{n-2})

Both reductions land strictly below ``F_{n-3}``, so the interval index drops
by at least three per step and a point query costs O(log m) big-integer
operations.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .fib import DEFAULT_TABLE, FibTable

__all__ = [
    "BASE_COEFFS",
    "Case",
    "ReductionStep",
    "check_coeff",
    "classify",
    "coefficient",
    "trace",
    "subintervals",
]

# a(0..4), read off 1 - x - x^2 + x^4 + ...
BASE_COEFFS: tuple[int, ...] = (1, -1, -1, 0, 1)
BASE_LIMIT = 5  # F_5


class Case(enum.Enum):
    BASE = "base"
    LOW = "low"
    MID = "mid"
    HIGH = "high"


@dataclass(frozen=True)
class ReductionStep:
    case: Case
    m: int
    n: int | None = None
    next_m: int | None = None
    sign_factor: int | None = None

    def __str__(self) -> str:
        parts = [self.case.value, f"m={self.m}"]
        if self.n is not None:
            parts.append(f"n={self.n}")
        if self.next_m is not None:
            parts.append(f"next={self.next_m}")
        if self.sign_factor is not None:
            parts.append(f"sign={self.sign_factor:+d}")
        return " ".join(parts)


def check_coeff(value: int) -> int:
    if value not in (-1, 0, 1):
        raise ValueError(f"coefficient out of range {{-1, 0, 1}}: {value}")
    return value


def subintervals(n: int, table: FibTable = DEFAULT_TABLE) -> tuple[tuple[int, int], ...]:
    """Inclusive (low, mid, high) spans of ``[F_n, F_{n+1})`` for ``n >= 5``.

    The low span is empty (``hi < lo``) at ``n = 5``.
    """
    if n < 5:
        raise ValueError(f"interval split needs n >= 5, got {n}")
    f = table.fib
    fn, fn2, fn3 = f(n), f(n - 2), f(n - 3)
    return (
        (fn, fn + fn3 - 2),
        (fn + fn3 - 1, fn + fn2 - 1),
        (fn + fn2, f(n + 1) - 1),
    )


def classify(m: int, table: FibTable = DEFAULT_TABLE) -> ReductionStep:
    if m < 0:
        raise ValueError(f"position must be non-negative, got {m}")
    if m < BASE_LIMIT:
        return ReductionStep(Case.BASE, m)
    n = table.locate(m)
    f = table.fib
    fn = f(n)
    fn3 = f(n - 3)
    low_end = fn + fn3 - 2
    if m <= low_end:
        sign = 1 if n % 2 == 1 else -1
        return ReductionStep(Case.LOW, m, n, low_end - m, sign)
    high_start = fn + f(n - 2)
    if m < high_start:
        return ReductionStep(Case.MID, m, n)
    return ReductionStep(Case.HIGH, m, n, m - high_start, 1)


def coefficient(m: int, table: FibTable = DEFAULT_TABLE) -> int:
    """Return a(m) in {-1, 0, 1}; accepts integers of any size."""
    if m < 0:
        raise ValueError(f"position must be non-negative, got {m}")
    sign = 1
    while m >= BASE_LIMIT:
        step = classify(m, table)
        if step.case is Case.MID:
            return 0
        sign *= step.sign_factor
        m = step.next_m
    return sign * BASE_COEFFS[m]


def trace(m: int, table: FibTable = DEFAULT_TABLE) -> list[ReductionStep]:
    """The reduction path taken by :func:`coefficient`, ending in BASE or MID."""
    steps: list[ReductionStep] = []
    while True:
        step = classify(m, table)
        steps.append(step)
        if step.case in (Case.BASE, Case.MID):
            return steps
        m = step.next_m

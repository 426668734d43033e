"""Cross-checks between the engine, the expander and the oracles.

Each check returns a :class:`CheckResult`; a check never raises for a
mathematical disagreement, it records it.  Operational problems (limits,
budgets) propagate as exceptions.
"""

from __future__ import annotations

import random
from collections.abc import Callable
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import oracle
from .engine import coefficient, subintervals
from .expander import expand
from .fib import fib, locate

__all__ = ["CheckResult", "EXHAUSTIVE_ENGINE_LIMIT", "run_checks"]

# Above this many positions the engine is compared on a seeded sample.
EXHAUSTIVE_ENGINE_LIMIT = 200_000
SAMPLE_SIZE = 20_000


@dataclass
class CheckResult:
    name: str
    passed: int = 0
    failed: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def record(self, good: bool, what: Callable[[], str]) -> None:
        if good:
            self.passed += 1
        else:
            self.failed += 1
            if len(self.failures) < 5:
                self.failures.append(what())


def _check_expand_vs_product(N: int) -> CheckResult:
    res = CheckResult("expand_vs_product")
    got = expand(N).to_numpy()
    try:
        want = oracle.product_expand_oracle(N).to_numpy()
    except AssertionError as exc:
        res.record(False, lambda: str(exc))
        return res
    bad = np.flatnonzero(got != want)
    res.passed = len(got) - len(bad)
    res.failed = len(bad)
    res.failures = [f"a({i}): expand {got[i]} != product {want[i]}" for i in bad[:5].tolist()]
    return res


def _check_engine_vs_expand(N: int, seed: int) -> CheckResult:
    res = CheckResult("engine_vs_expand")
    arr = expand(N).to_numpy()
    if N < EXHAUSTIVE_ENGINE_LIMIT:
        positions = range(N + 1)
    else:
        rng = random.Random(seed)
        positions = sorted(set(range(EXHAUSTIVE_ENGINE_LIMIT)) | {rng.randrange(N + 1) for _ in range(SAMPLE_SIZE)})
    for m in positions:
        c = coefficient(m)
        res.record(c == arr[m], lambda: f"a({m}): engine {c} != expand {arr[m]}")
    return res


def _check_structure(N: int) -> CheckResult:
    """Zero band, reflection and shift on every complete interval below N."""
    res = CheckResult("interval_structure")
    arr = expand(N).to_numpy()
    n = 5
    while fib(n + 1) - 1 <= N:
        (llo, lhi), (mlo, mhi), (hlo, hhi) = subintervals(n)
        fn3 = fib(n - 3)
        sign = 1 if n % 2 == 1 else -1
        tiled = llo == fib(n) and mlo == lhi + 1 and hlo == mhi + 1 and hhi == fib(n + 1) - 1
        res.record(tiled, lambda: f"n={n}: spans do not tile the interval")
        res.record(not arr[mlo : mhi + 1].any(), lambda: f"n={n}: zero band has non-zeros")
        low_ok = np.array_equal(arr[llo : lhi + 1], sign * arr[: fn3 - 1][::-1])
        res.record(low_ok, lambda: f"n={n}: low span is not the signed reflection")
        res.record(np.array_equal(arr[hlo : hhi + 1], arr[:fn3]), lambda: f"n={n}: high span is not a shift")
        n += 1
    return res


def _check_tally(limit: int) -> CheckResult:
    res = CheckResult("partition_tally")
    for m in range(limit + 1):
        try:
            t = oracle.tally(m)
        except AssertionError as exc:
            res.record(False, lambda: str(exc))
            continue
        c = coefficient(m)
        res.record(t.difference == c, lambda: f"m={m}: r_E - r_O = {t.difference} != a(m) = {c}")
    return res


def _span_positions(kind: str, limit: int) -> list[int]:
    idx = {"low": 0, "mid": 1, "high": 2}[kind]
    out = []
    if limit < 5:
        return out
    for n in range(5, locate(limit) + 1):
        lo, hi = subintervals(n)[idx]
        out.extend(range(lo, min(hi, limit) + 1))
    return out


_VERIFIERS = {
    "mid_pairing": ("mid", oracle.verify_mid_pairing),
    "shift_bijection": ("high", oracle.verify_shift_bijection),
    "complement_bijection": ("low", oracle.verify_complement_bijection),
}


def _check_bijection(name: str, limit: int, enum_limit: int) -> CheckResult:
    kind, verifier = _VERIFIERS[name]
    res = CheckResult(name)
    for m in _span_positions(kind, limit):
        # the complement of m weighs F_(n+2) - 2 - m, which must be enumerable too
        if kind == "low" and fib(locate(m) + 2) - 2 - m > enum_limit:
            continue
        try:
            report = verifier(m, enum_limit)
        except oracle.BijectionError as exc:
            res.record(False, lambda: str(exc))
            continue
        c = coefficient(m)
        res.record(report.predicted == c, lambda: f"m={m}: argument predicts {report.predicted}, engine {c}")
    return res


def _run_one(job: tuple) -> CheckResult:
    name, args = job
    if name == "expand_vs_product":
        return _check_expand_vs_product(*args)
    if name == "engine_vs_expand":
        return _check_engine_vs_expand(*args)
    if name == "interval_structure":
        return _check_structure(*args)
    if name == "partition_tally":
        return _check_tally(*args)
    return _check_bijection(name, *args)


def run_checks(
    N: int, enumerate_limit: int = oracle.DEFAULT_ENUM_LIMIT, seed: int = 0, jobs: int = 1
) -> list[CheckResult]:
    """Run every check over positions up to N; enumeration checks stop at enumerate_limit.

    Results are ordered by check name.
    """
    if N < 0:
        raise ValueError(f"N must be non-negative, got {N}")
    enum_top = min(N, enumerate_limit)
    plan = [
        ("expand_vs_product", (N,)),
        ("engine_vs_expand", (N, seed)),
        ("interval_structure", (N,)),
        ("partition_tally", (enum_top,)),
        ("mid_pairing", (enum_top, enumerate_limit)),
        ("shift_bijection", (enum_top, enumerate_limit)),
        ("complement_bijection", (enum_top, enumerate_limit)),
    ]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_one, plan))
    else:
        results = [_run_one(job) for job in plan]
    return sorted(results, key=lambda r: r.name)

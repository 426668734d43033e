"""Ground truth for a(m) that does not use the interval recursion.

Two independent routes:

* :func:`product_expand_oracle` multiplies out the truncated product.
* :func:`enumerate_partitions` / :func:`tally` list the partitions of m into
  distinct Fibonacci parts and count them by parity, a(m) = r_E(m) - r_O(m).

The ``verify_*`` functions replay the three combinatorial arguments behind the
interval recursion on explicit partition lists and raise
:class:`BijectionError` on the first thing that does not line up.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .engine import subintervals
from .expander import CoeffArray
from .fib import DEFAULT_TABLE, FibTable

__all__ = [
    "DEFAULT_ENUM_LIMIT",
    "BijectionError",
    "BijectionReport",
    "EnumerationLimitError",
    "FibPartition",
    "PartitionTally",
    "enumerate_partitions",
    "product_expand_oracle",
    "tally",
    "verify_complement_bijection",
    "verify_mid_pairing",
    "verify_shift_bijection",
]

DEFAULT_ENUM_LIMIT = 5000


class EnumerationLimitError(ValueError):
    pass


class BijectionError(AssertionError):
    """A pairing or bijection failed on concrete partitions."""


@dataclass(frozen=True, order=True)
class FibPartition:
    """Distinct Fibonacci parts, stored as strictly decreasing indices >= 2."""

    indices: tuple[int, ...]

    def __post_init__(self) -> None:
        idx = self.indices
        if any(k < 2 for k in idx):
            raise ValueError(f"Fibonacci part indices must be >= 2: {idx}")
        if any(a <= b for a, b in zip(idx, idx[1:])):
            raise ValueError(f"indices must be strictly decreasing: {idx}")

    @property
    def parts(self) -> tuple[int, ...]:
        return tuple(DEFAULT_TABLE.fib(k) for k in self.indices)

    @property
    def weight(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.indices)

    @property
    def is_even(self) -> bool:
        return len(self.indices) % 2 == 0


@dataclass(frozen=True)
class PartitionTally:
    r_E: int
    r_O: int

    @property
    def difference(self) -> int:
        return self.r_E - self.r_O


def product_expand_oracle(N: int, table: FibTable = DEFAULT_TABLE) -> CoeffArray:
    """Coefficients of prod_{k>=2, F_k<=N} (1 - x^{F_k}) modulo x^{N+1}."""
    if N < 0:
        raise ValueError(f"N must be non-negative, got {N}")
    # Partial products are not bounded by 1; int64 holds 2**(number of factors).
    acc = np.zeros(N + 1, dtype=np.int64)
    acc[0] = 1
    k = 2
    while table.fib(k) <= N:
        step = table.fib(k)
        acc[step:] -= acc[: N + 1 - step].copy()
        k += 1
    if acc.min() < -1 or acc.max() > 1:
        bad = int(np.flatnonzero(np.abs(acc) > 1)[0])
        raise AssertionError(f"product coefficient a({bad}) = {acc[bad]} outside {{-1, 0, 1}}")
    return CoeffArray(acc.astype(np.int8))


def enumerate_partitions(
    m: int, limit: int = DEFAULT_ENUM_LIMIT, table: FibTable = DEFAULT_TABLE
) -> list[FibPartition]:
    """All partitions of m into distinct Fibonacci numbers F_k (k >= 2).

    Exhaustive depth-first subset search from the largest index down, pruned
    when the remaining smaller parts cannot reach the target.  Output order
    is descending lexicographic on the index tuples.
    """
    if m < 0:
        raise ValueError(f"m must be non-negative, got {m}")
    if m > limit:
        raise EnumerationLimitError(f"m = {m} exceeds enumeration limit {limit}")
    if m == 0:
        return [FibPartition(())]
    f = table.fib
    top = table.locate(m)
    # reach[k] = F_2 + ... + F_k
    reach = [0, 0]
    for k in range(2, top + 1):
        reach.append(reach[-1] + f(k))

    out: list[FibPartition] = []
    chosen: list[int] = []

    def search(k: int, remaining: int) -> None:
        if remaining == 0:
            out.append(FibPartition(tuple(chosen)))
            return
        if k < 2 or reach[k] < remaining:
            return
        fk = f(k)
        if fk <= remaining:
            chosen.append(k)
            search(k - 1, remaining - fk)
            chosen.pop()
        search(k - 1, remaining)

    search(top, m)
    return out


def tally(m: int, limit: int = DEFAULT_ENUM_LIMIT) -> PartitionTally:
    parts = enumerate_partitions(m, limit)
    even = sum(1 for p in parts if p.is_even)
    result = PartitionTally(even, len(parts) - even)
    if abs(result.difference) > 1:
        raise AssertionError(f"r_E({m}) - r_O({m}) = {result.difference} outside {{-1, 0, 1}}")
    return result


@dataclass
class BijectionReport:
    """Outcome of replaying one combinatorial argument at position m.

    Only successful replays produce a report; failures raise
    :class:`BijectionError`.
    """

    kind: str
    m: int
    n: int
    m_prime: int | None
    partitions: int
    pairs: int
    residual: int
    sign: int
    # a(m) as predicted by the argument: 0 for a perfect pairing, otherwise
    # sign * (r_E(m') - r_O(m')).
    predicted: int
    ok: bool = True


def _span_of(m: int, table: FibTable) -> tuple[int, str]:
    if m < 5:
        raise ValueError(f"m = {m} is below F_5; no interval split applies")
    n = table.locate(m)
    low, mid, high = subintervals(n, table)
    for name, (lo, hi) in zip(("low", "mid", "high"), (low, mid, high)):
        if lo <= m <= hi:
            return n, name
    raise AssertionError(f"m = {m} not covered by the split of [F_{n}, F_{n + 1})")


def _require_span(m: int, want: str, table: FibTable) -> int:
    n, got = _span_of(m, table)
    if got != want:
        raise ValueError(f"m = {m} lies in the {got} span of interval n = {n}, not {want}")
    return n


def _check_largest_parts(parts: list[FibPartition], n: int, m: int, *, allow_n_then_n2: bool) -> None:
    for p in parts:
        idx = p.indices
        if idx[0] == n:
            second = idx[1] if len(idx) > 1 else None
            if second == n - 1:
                raise BijectionError(f"{m}: partition {idx} has F_n followed by F_(n-1)")
            if second == n - 2 and not allow_n_then_n2:
                raise BijectionError(f"{m}: partition {idx} has F_n followed by F_(n-2)")
        elif idx[0] == n - 1:
            if len(idx) < 2 or idx[1] != n - 2:
                raise BijectionError(f"{m}: partition {idx} has largest F_(n-1) without F_(n-2)")
        else:
            raise BijectionError(f"{m}: partition {idx} has largest part index {idx[0]}, expected {n} or {n - 1}")


def _pair_off(parts: list[FibPartition], n: int, m: int) -> tuple[int, set[FibPartition]]:
    """Match F_n + rest with F_(n-1) + F_(n-2) + rest (rest below F_(n-2)).

    Returns the number of pairs and the set of partitions left unmatched.
    """
    pool = set(parts)
    pairs = 0
    for p in parts:
        idx = p.indices
        if idx[0] != n or (len(idx) > 1 and idx[1] >= n - 2):
            continue
        partner = FibPartition((n - 1, n - 2) + idx[1:])
        if partner not in pool:
            raise BijectionError(f"{m}: {idx} has no partner {partner.indices}")
        if len(partner) - len(p) != 1:
            raise BijectionError(f"{m}: pair {idx} / {partner.indices} does not differ by one part")
        if p.is_even == partner.is_even:
            raise BijectionError(f"{m}: pair {idx} / {partner.indices} has equal parity")
        pool.discard(p)
        pool.discard(partner)
        pairs += 1
    return pairs, pool


def verify_mid_pairing(
    m: int, limit: int = DEFAULT_ENUM_LIMIT, table: FibTable = DEFAULT_TABLE
) -> BijectionReport:
    """Every partition of a middle-span m pairs with one of opposite parity."""
    n = _require_span(m, "mid", table)
    parts = enumerate_partitions(m, limit, table)
    _check_largest_parts(parts, n, m, allow_n_then_n2=False)
    pairs, leftover = _pair_off(parts, n, m)
    if leftover:
        raise BijectionError(f"{m}: unmatched partitions {sorted(p.indices for p in leftover)}")
    return BijectionReport("mid", m, n, None, len(parts), pairs, 0, 1, 0)


def verify_shift_bijection(
    m: int, limit: int = DEFAULT_ENUM_LIMIT, table: FibTable = DEFAULT_TABLE
) -> BijectionReport:
    """High span: pair what can be paired, then strip F_n and F_(n-2) from the rest."""
    n = _require_span(m, "high", table)
    f = table.fib
    parts = enumerate_partitions(m, limit, table)
    _check_largest_parts(parts, n, m, allow_n_then_n2=True)
    pairs, leftover = _pair_off(parts, n, m)
    for p in leftover:
        if p.indices[:2] != (n, n - 2):
            raise BijectionError(f"{m}: residual partition {p.indices} does not start F_n + F_(n-2)")

    m_prime = m - f(n) - f(n - 2)
    if not 0 <= m_prime < f(n - 2):
        raise BijectionError(f"{m}: shifted position {m_prime} outside [0, F_(n-2))")
    image = {FibPartition(p.indices[2:]) for p in leftover}
    target = enumerate_partitions(m_prime, limit, table)
    for q in target:
        if q.indices and q.indices[0] > n - 3:
            raise BijectionError(f"{m}: partition {q.indices} of {m_prime} uses a part above F_(n-3)")
    if len(image) != len(leftover) or image != set(target):
        raise BijectionError(f"{m}: stripping F_n, F_(n-2) is not a bijection onto partitions of {m_prime}")
    # Removing two parts keeps parity.
    even_prime = sum(1 for q in target if q.is_even)
    predicted = even_prime - (len(target) - even_prime)
    return BijectionReport("high", m, n, m_prime, len(parts), pairs, len(leftover), 1, predicted)


def verify_complement_bijection(
    m: int, limit: int = DEFAULT_ENUM_LIMIT, table: FibTable = DEFAULT_TABLE
) -> BijectionReport:
    """Low span: complement inside {F_2, ..., F_n} maps partitions of m onto those of F_(n+2) - 2 - m."""
    n = _require_span(m, "low", table)
    f = table.fib
    universe = frozenset(range(2, n + 1))
    m_prime = f(n + 2) - 2 - m
    if not m_prime < f(n + 1):
        raise BijectionError(f"{m}: complement weight {m_prime} is not below F_(n+1)")
    parts = enumerate_partitions(m, limit, table)
    target = enumerate_partitions(m_prime, limit, table)

    image: set[FibPartition] = set()
    for p in parts:
        if p.indices[0] > n:
            raise BijectionError(f"{m}: partition {p.indices} has a part above F_n")
        comp = FibPartition(tuple(sorted(universe - set(p.indices), reverse=True)))
        if len(p) + len(comp) != n - 1:
            raise BijectionError(f"{m}: part counts {len(p)} + {len(comp)} != n - 1")
        if comp.weight != m_prime:
            raise BijectionError(f"{m}: complement {comp.indices} has weight {comp.weight} != {m_prime}")
        image.add(comp)
    for q in target:
        if q.indices and q.indices[0] > n:
            raise BijectionError(f"{m}: partition {q.indices} of {m_prime} has a part above F_n")
    if len(image) != len(parts) or image != set(target):
        raise BijectionError(f"{m}: complementation is not a bijection onto partitions of {m_prime}")

    sign = 1 if n % 2 == 1 else -1
    ev = sum(1 for p in parts if p.is_even)
    ev_prime = sum(1 for q in target if q.is_even)
    a_m = ev - (len(parts) - ev)
    a_prime = ev_prime - (len(target) - ev_prime)
    if a_m != sign * a_prime:
        raise BijectionError(f"{m}: a(m) = {a_m} but (-1)^(n-1) a(m') = {sign * a_prime}")
    return BijectionReport("low", m, n, m_prime, len(parts), 0, len(parts), sign, sign * a_prime)

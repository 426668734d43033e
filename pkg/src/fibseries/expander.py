"""Dense materialization of the coefficient prefix a(0..N).

Interval ``[F_n, F_{n+1})`` is filled from the already final prefix
``[0, F_{n-3})``: the low span is a signed reversed copy, the middle span is
zero and the high span is a forward copy.  This path deliberately never calls
:func:`fibseries.engine.coefficient` so the two can check each other.
"""

from __future__ import annotations

import os
from collections.abc import Iterator
from typing import Union

import numpy as np

from .engine import BASE_COEFFS
from .fib import DEFAULT_TABLE, FibTable

__all__ = [
    "BUDGET_ENV",
    "DEFAULT_BUDGET",
    "BudgetExceeded",
    "CoeffArray",
    "PackedCoeffArray",
    "expand",
    "memory_budget",
    "nonzero_positions",
]

BUDGET_ENV = "FIBSERIES_MAX_COEFFS"
DEFAULT_BUDGET = 2**27


class BudgetExceeded(MemoryError):
    """Requested expansion is larger than the configured coefficient budget."""


def memory_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{BUDGET_ENV} must be an integer, got {raw!r}") from None
    if value < 1:
        raise ValueError(f"{BUDGET_ENV} must be positive, got {value}")
    return value


class CoeffArray:
    """Immutable prefix a(0..N), one signed byte per coefficient."""

    __slots__ = ("values",)

    def __init__(self, values: np.ndarray) -> None:
        values = np.asarray(values, dtype=np.int8)
        if values.ndim != 1:
            raise ValueError("coefficient array must be one-dimensional")
        if values.size and (values.min() < -1 or values.max() > 1):
            raise ValueError("coefficients must lie in {-1, 0, 1}")
        if values.flags.writeable:
            values = values.copy()
            values.flags.writeable = False
        self.values = values

    @property
    def N(self) -> int:
        return len(self.values) - 1

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, idx):
        if isinstance(idx, slice):
            return CoeffArray(self.values[idx])
        return int(self.values[idx])

    def __iter__(self) -> Iterator[int]:
        return iter(self.values.tolist())

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (CoeffArray, PackedCoeffArray)):
            return np.array_equal(self.values, other.to_numpy())
        return NotImplemented

    def __repr__(self) -> str:
        head = self.values[:12].tolist()
        more = ", ..." if len(self) > 12 else ""
        return f"CoeffArray(N={self.N}, {head}{more})"

    def to_numpy(self) -> np.ndarray:
        return self.values

    def to_list(self) -> list[int]:
        return self.values.tolist()

    def count_nonzero(self) -> int:
        return int(np.count_nonzero(self.values))

    def pack(self) -> PackedCoeffArray:
        return PackedCoeffArray.from_values(self.values)


class PackedCoeffArray:
    """Same read interface as :class:`CoeffArray`, two bits per coefficient.

    Codes: 0 -> 0b00, 1 -> 0b01, -1 -> 0b11.
    """

    __slots__ = ("_bytes", "_length")

    _DECODE = np.array([0, 1, 0, -1], dtype=np.int8)

    def __init__(self, packed: np.ndarray, length: int) -> None:
        packed = np.asarray(packed, dtype=np.uint8).copy()
        packed.flags.writeable = False
        self._bytes = packed
        self._length = length

    @classmethod
    def from_values(cls, values: np.ndarray) -> PackedCoeffArray:
        values = np.asarray(values, dtype=np.int8)
        length = len(values)
        codes = (values.astype(np.uint8) & 3).astype(np.uint8)
        pad = (-length) % 4
        if pad:
            codes = np.concatenate([codes, np.zeros(pad, dtype=np.uint8)])
        codes = codes.reshape(-1, 4)
        packed = codes[:, 0] | (codes[:, 1] << 2) | (codes[:, 2] << 4) | (codes[:, 3] << 6)
        return cls(packed.astype(np.uint8), length)

    @property
    def N(self) -> int:
        return self._length - 1

    @property
    def nbytes(self) -> int:
        return self._bytes.nbytes

    def __len__(self) -> int:
        return self._length

    def __getitem__(self, idx):
        if isinstance(idx, slice):
            return PackedCoeffArray.from_values(self.to_numpy()[idx])
        if idx < 0:
            idx += self._length
        if not 0 <= idx < self._length:
            raise IndexError(idx)
        code = (int(self._bytes[idx >> 2]) >> (2 * (idx & 3))) & 3
        return int(self._DECODE[code])

    def __iter__(self) -> Iterator[int]:
        return iter(self.to_numpy().tolist())

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (CoeffArray, PackedCoeffArray)):
            return np.array_equal(self.to_numpy(), other.to_numpy())
        return NotImplemented

    def to_numpy(self) -> np.ndarray:
        shifts = np.array([0, 2, 4, 6], dtype=np.uint8)
        codes = (self._bytes[:, None] >> shifts) & 3
        return self._DECODE[codes.reshape(-1)[: self._length]]

    def to_list(self) -> list[int]:
        return self.to_numpy().tolist()

    def count_nonzero(self) -> int:
        return int(np.count_nonzero(self.to_numpy()))

    def unpack(self) -> CoeffArray:
        return CoeffArray(self.to_numpy())


AnyCoeffArray = Union[CoeffArray, PackedCoeffArray]


def _fill(buf: np.ndarray, N: int, table: FibTable) -> None:
    f = table.fib
    n = 5
    while f(n) <= N:
        fn, fn2, fn3 = f(n), f(n - 2), f(n - 3)
        stop = min(f(n + 1) - 1, N) + 1
        sign = 1 if n % 2 == 1 else -1

        # low: buf[fn + j] = sign * buf[fn3 - 2 - j], j = 0 .. fn3 - 2
        cnt = min(fn3 - 1, stop - fn)
        if cnt > 0:
            src = buf[fn3 - 1 - cnt : fn3 - 1][::-1]
            buf[fn : fn + cnt] = src if sign == 1 else -src

        mid_lo, mid_hi = fn + fn3 - 1, min(fn + fn2, stop)
        if mid_hi > mid_lo:
            buf[mid_lo:mid_hi] = 0

        high_lo = fn + fn2
        cnt = stop - high_lo
        if cnt > 0:
            buf[high_lo:stop] = buf[:cnt]
        n += 1


def expand(
    N: int,
    *,
    packed: bool = False,
    budget: int | None = None,
    table: FibTable = DEFAULT_TABLE,
) -> AnyCoeffArray:
    """Return a(0..N).

    Raises :class:`BudgetExceeded` when ``N + 1`` exceeds ``budget``
    (default: the ``FIBSERIES_MAX_COEFFS`` environment variable, else 2**27).
    """
    if N < 0:
        raise ValueError(f"N must be non-negative, got {N}")
    limit = memory_budget() if budget is None else budget
    if N + 1 > limit:
        raise BudgetExceeded(f"expansion of {N + 1} coefficients exceeds budget of {limit}")
    buf = np.zeros(N + 1, dtype=np.int8)
    seed = min(N + 1, len(BASE_COEFFS))
    buf[:seed] = BASE_COEFFS[:seed]
    _fill(buf, N, table)
    buf.flags.writeable = False
    arr = CoeffArray(buf)
    return arr.pack() if packed else arr


def nonzero_positions(arr: AnyCoeffArray) -> list[tuple[int, int]]:
    values = arr.to_numpy()
    idx = np.flatnonzero(values)
    return list(zip(idx.tolist(), values[idx].tolist()))

"""Fibonacci numbers and interval location.

Indices follow ``F_0 = 0, F_1 = 1``.  Every public helper that places a
position inside an interval ``[F_n, F_{n+1})`` works with ``n >= 2`` so the
duplicate value ``F_1 = F_2 = 1`` never causes ambiguity.
"""

from __future__ import annotations

import threading
from bisect import bisect_right

__all__ = ["FibTable", "fib", "locate", "prefix_sum", "DEFAULT_TABLE"]


class FibTable:
    """Append-only cache of Fibonacci numbers.

    ``values[k]`` is ``F_k``.  Readers never take the lock; the list only
    grows through :meth:`_extend`, which appends under a lock so concurrent
    extenders cannot interleave.  A reader that observes length ``L`` sees
    a consistent prefix ``F_0 .. F_{L-1}``.
    """

    def __init__(self) -> None:
        self.values: list[int] = [0, 1, 1, 2]
        self._lock = threading.Lock()

    def __len__(self) -> int:
        return len(self.values)

    def _extend(self, *, upto_index: int | None = None, beyond: int | None = None) -> None:
        with self._lock:
            vals = self.values
            if upto_index is not None:
                while len(vals) <= upto_index:
                    vals.append(vals[-1] + vals[-2])
            if beyond is not None:
                while vals[-1] <= beyond:
                    vals.append(vals[-1] + vals[-2])

    def fib(self, k: int) -> int:
        if k < 0:
            raise ValueError(f"Fibonacci index must be non-negative, got {k}")
        vals = self.values
        if k >= len(vals):
            self._extend(upto_index=k)
            vals = self.values
        return vals[k]

    def locate(self, m: int) -> int:
        """Return the ``n >= 2`` with ``F_n <= m < F_{n+1}``."""
        if m < 1:
            raise ValueError(f"locate requires m >= 1, got {m}")
        if self.values[-1] <= m:
            self._extend(beyond=m)
        # values[1] == values[2] == 1; bisect_right skips past both.
        return bisect_right(self.values, m) - 1

    def prefix_sum(self, n: int) -> int:
        """``F_2 + F_3 + ... + F_n``, which equals ``F_{n+2} - 2``."""
        if n < 2:
            raise ValueError(f"prefix_sum requires n >= 2, got {n}")
        return self.fib(n + 2) - 2


DEFAULT_TABLE = FibTable()


def fib(k: int) -> int:
    return DEFAULT_TABLE.fib(k)


def locate(m: int) -> int:
    return DEFAULT_TABLE.locate(m)


def prefix_sum(n: int) -> int:
    return DEFAULT_TABLE.prefix_sum(n)

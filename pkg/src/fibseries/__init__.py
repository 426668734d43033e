"""Coefficients of the Fibonacci product prod_{k>=2} (1 - x^{F_k}).

Every coefficient is -1, 0 or 1.  :func:`coefficient` answers a single
position of any size in O(log m) steps; :func:`expand` materializes a whole
prefix in linear time; :mod:`fibseries.oracle` holds the brute-force
ground truth both are checked against.
"""

from .stats import (
    alpha_direct,
    alpha_recurrence,
    char_roots,
    density,
    density_at,
    growth_report,
)
from .engine import Case, ReductionStep, classify, coefficient, trace
from .expander import BudgetExceeded, CoeffArray, PackedCoeffArray, expand, nonzero_positions
from .fib import FibTable, fib, locate, prefix_sum
from .oracle import (
    enumerate_partitions,
    product_expand_oracle,
    tally,
    verify_complement_bijection,
    verify_mid_pairing,
    verify_shift_bijection,
)

__all__ = [
    "BudgetExceeded",
    "Case",
    "CoeffArray",
    "FibTable",
    "PackedCoeffArray",
    "ReductionStep",
    "alpha_direct",
    "alpha_recurrence",
    "char_roots",
    "classify",
    "coefficient",
    "density",
    "density_at",
    "enumerate_partitions",
    "expand",
    "fib",
    "growth_report",
    "locate",
    "nonzero_positions",
    "prefix_sum",
    "product_expand_oracle",
    "tally",
    "trace",
    "verify_complement_bijection",
    "verify_mid_pairing",
    "verify_shift_bijection",
]

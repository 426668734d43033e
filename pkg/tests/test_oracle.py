from itertools import combinations

import numpy as np
import pytest

from fibseries.engine import coefficient, subintervals
from fibseries.fib import fib, locate
from fibseries.oracle import (
    BijectionError,
    EnumerationLimitError,
    FibPartition,
    PartitionTally,
    enumerate_partitions,
    product_expand_oracle,
    tally,
    verify_complement_bijection,
    verify_mid_pairing,
    verify_shift_bijection,
)

from conftest import naive_product


def brute_partitions(m):
    """Every subset of {F_2, ..., F_K <= m} summing to m, as decreasing index tuples."""
    idx = [k for k in range(2, 40) if fib(k) <= max(m, 1)]
    found = []
    for r in range(len(idx) + 1):
        for combo in combinations(idx, r):
            if sum(fib(k) for k in combo) == m:
                found.append(tuple(sorted(combo, reverse=True)))
    return found


def test_product_oracle_examples():
    assert product_expand_oracle(4).to_list() == [1, -1, -1, 0, 1]
    assert product_expand_oracle(0).to_list() == [1]
    assert product_expand_oracle(18)[18] == 1


def test_product_oracle_matches_naive():
    for N in (1, 2, 3, 10, 100, 2000):
        assert product_expand_oracle(N).to_list() == naive_product(N)


def test_enumerate_examples():
    assert enumerate_partitions(0) == [FibPartition(())]
    assert enumerate_partitions(4) == [FibPartition((4, 2))]
    assert enumerate_partitions(10) == [FibPartition((6, 3)), FibPartition((5, 4, 3))]
    assert [p.parts for p in enumerate_partitions(10)] == [(8, 2), (5, 3, 2)]


def test_enumerate_matches_subset_brute_force():
    for m in range(0, 300):
        got = [p.indices for p in enumerate_partitions(m)]
        assert sorted(got) == sorted(brute_partitions(m))


def test_enumerate_order_is_descending_lexicographic():
    for m in (100, 1000, 4000):
        got = [p.indices for p in enumerate_partitions(m)]
        assert got == sorted(got, reverse=True)
        assert all(p.weight == m for p in enumerate_partitions(m))


def test_enumeration_ceiling():
    with pytest.raises(EnumerationLimitError):
        enumerate_partitions(5001)
    assert enumerate_partitions(6000, limit=6000)


def test_partition_validation():
    with pytest.raises(ValueError):
        FibPartition((3, 3))
    with pytest.raises(ValueError):
        FibPartition((4, 1))


@pytest.mark.parametrize(
    "m, expected", [(0, PartitionTally(1, 0)), (4, PartitionTally(1, 0)), (10, PartitionTally(1, 1))]
)
def test_tally_examples(m, expected):
    assert tally(m) == expected


def test_tally_matches_engine():
    for m in range(3001):
        t = tally(m)
        assert abs(t.difference) <= 1
        assert t.difference == coefficient(m)


def _positions(n, which):
    lo, hi = subintervals(n)[which]
    return range(lo, hi + 1)


def test_largest_part_laws():
    for n in range(5, 18):
        for which in (1, 2):
            for m in _positions(n, which):
                for p in enumerate_partitions(m):
                    assert p.indices[0] in (n, n - 1)
                    if p.indices[0] == n - 1:
                        assert p.indices[1] == n - 2


@pytest.mark.parametrize("m", [15, 16, 42])
def test_mid_pairing_examples(m):
    report = verify_mid_pairing(m)
    assert report.ok and report.residual == 0
    assert report.partitions == 2 * report.pairs
    assert coefficient(m) == 0


def test_mid_pairing_42_interval():
    assert subintervals(9)[1] == (41, 46)


@pytest.mark.parametrize("m, m_prime", [(18, 0), (19, 1), (47, 0)])
def test_shift_examples(m, m_prime):
    report = verify_shift_bijection(m)
    assert report.m_prime == m_prime
    assert report.predicted == coefficient(m_prime) == coefficient(m)


@pytest.mark.parametrize("m, m_prime", [(13, 19), (14, 18), (34, 53)])
def test_complement_examples(m, m_prime):
    report = verify_complement_bijection(m)
    n = locate(m)
    assert report.m_prime == m_prime
    assert report.sign == (-1) ** (n - 1)
    assert coefficient(m) == report.sign * coefficient(m_prime)


def test_complement_part_counts():
    # n = 7, universe {1, 2, 3, 5, 8, 13}: 13 | 8+5 | 8+3+2 complement to
    # 8+5+3+2+1 | 13+3+2+1 | 13+5+1, all of weight 19
    assert [len(p) for p in enumerate_partitions(13)] == [1, 2, 3]
    assert sorted(len(p) for p in enumerate_partitions(19)) == [3, 4, 5]


def test_verifiers_reject_wrong_span():
    with pytest.raises(ValueError):
        verify_mid_pairing(18)
    with pytest.raises(ValueError):
        verify_shift_bijection(15)
    with pytest.raises(ValueError):
        verify_complement_bijection(16)
    with pytest.raises(ValueError):
        verify_mid_pairing(3)


def test_all_mid_and_high_up_to_3000():
    for n in range(5, locate(3000) + 1):
        for m in _positions(n, 1):
            if m <= 3000:
                assert verify_mid_pairing(m).predicted == 0
        for m in _positions(n, 2):
            if m <= 3000:
                assert verify_shift_bijection(m).predicted == coefficient(m)


def test_complement_for_n_up_to_14():
    for n in range(5, 15):
        for m in _positions(n, 0):
            report = verify_complement_bijection(m)
            assert report.sign == (-1) ** (n - 1)
            assert report.predicted == coefficient(m)


def test_pairing_detects_a_broken_partition_set(monkeypatch):
    import fibseries.oracle as oracle

    real = oracle.enumerate_partitions

    def drop_last(m, limit=oracle.DEFAULT_ENUM_LIMIT, table=oracle.DEFAULT_TABLE):
        return real(m, limit, table)[:-1]

    monkeypatch.setattr(oracle, "enumerate_partitions", drop_last)
    with pytest.raises(BijectionError):
        verify_mid_pairing(15)
    with pytest.raises(BijectionError):
        verify_shift_bijection(19)

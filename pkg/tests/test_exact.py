from collections import Counter

import pytest

from krank_lab.errors import BoundsError, BudgetError, ConfigError, DomainError
from krank_lab.exact import (
    PartitionObject,
    build_partition_table,
    enumerate_stats_oracle,
    krank_count,
    krank_row,
    partitions,
    qseries_row_oracle,
)


def test_small_partition_numbers(small_table):
    assert [small_table.p(n) for n in range(9)] == [1, 1, 2, 3, 5, 7, 11, 15, 22]
    assert small_table.p(-3) == 0


def test_partition_numbers_by_enumeration(small_table):
    for n in range(0, 21):
        assert small_table.p(n) == sum(1 for _ in partitions(n))


def test_known_large_values(table):
    assert table.p(100) == 190569292
    assert table.p(200) == 3972999029388
    assert table.p(1000) == 24061467864032622473692149727991


def test_table_bounds():
    t = build_partition_table(10)
    with pytest.raises(BoundsError):
        t.p(11)
    with pytest.raises(ConfigError):
        build_partition_table(-1)
    with pytest.raises(ConfigError):
        build_partition_table(10**7 + 1)


def test_crank_at_one(small_table):
    assert [krank_count(1, m, 1, small_table) for m in (-1, 0, 1)] == [1, -1, 1]


def test_rank_row_n4(small_table):
    row = krank_row(2, 4, small_table)
    assert {m: c for m, c in row.counts.items() if c} == {-3: 1, -1: 1, 0: 1, 1: 1, 3: 1}
    assert row[9999] == 0
    assert krank_count(2, 9999, 4, small_table) == 0


def test_empty_partition(small_table):
    assert krank_count(2, 0, 0, small_table) == 1
    assert krank_row(2, 0, small_table).total() == 1
    assert qseries_row_oracle(2, 0, 5).coeffs[0] == 1
    assert enumerate_stats_oracle(0, "rank") == {0: 1}


@pytest.mark.parametrize("k,stat", [(1, "crank"), (2, "rank")])
def test_three_routes_agree(small_table, k, stat):
    N = 18
    series = {m: qseries_row_oracle(k, m, N).coeffs for m in range(N + 2)}
    for n in range(N + 1):
        row = krank_row(k, n, small_table)
        hist = enumerate_stats_oracle(n, stat)
        for m in range(-n - 1, n + 2):
            assert row[m] == series[abs(m)][n] == hist.get(m, 0), (k, m, n)


def test_count_matches_row(small_table):
    for k in (1, 2, 3, 7):
        for n in (0, 5, 37, 120):
            row = krank_row(k, n, small_table)
            for m in range(-n - 2, n + 3):
                assert krank_count(k, m, n, small_table) == row[m]


def test_partition_statistics():
    lam = PartitionObject((4, 2, 1, 1))
    assert lam.rank() == 0
    # two ones; parts larger than 2: just the 4
    assert lam.crank() == 1 - 2
    assert PartitionObject((3, 2)).crank() == 3
    with pytest.raises(DomainError):
        PartitionObject((1, 2))


def test_rank_histogram_n5():
    assert enumerate_stats_oracle(5, "rank") == dict(Counter({4: 1, 2: 1, 1: 1, 0: 1, -1: 1, -2: 1, -4: 1}))


def test_enumeration_budget():
    with pytest.raises(BudgetError):
        enumerate_stats_oracle(41, "rank")
    with pytest.raises(DomainError):
        enumerate_stats_oracle(3, "spt")


def test_domain_errors(small_table):
    with pytest.raises(DomainError):
        krank_count(0, 0, 3, small_table)
    with pytest.raises(BoundsError):
        krank_row(1, 301, small_table)

"""Exact k-rank counts N_k(m, n) and the partition numbers behind them.

Three independent routes are provided:

* ``krank_count`` / ``krank_row`` -- the finite alternating sum over
  differences of p(n), driven by a :class:`PartitionTable`;
* ``qseries_row_oracle`` -- truncated power-series multiplication of the
  theta-type numerator by 1/(q;q)_inf, the latter built by repeated
  division by (1 - q^j) rather than by the pentagonal recurrence;
* ``enumerate_stats_oracle`` -- brute-force rank/crank histograms over all
  partitions of n (small n only).

All arithmetic is on Python integers, so results are exact at any size.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Mapping, Sequence

from .errors import BoundsError, BudgetError, ConfigError, DomainError

MAX_TABLE_SIZE = 10**7
ENUMERATION_LIMIT = 40

# The generating function for k = 2 has no q^0 term, but the empty partition
# has rank 0; every route reports N_2(0, 0) = 1 so that sum_m N_2(m, n) = p(n)
# also holds at n = 0.
EMPTY_RANK_OVERRIDE = {(2, 0, 0): 1}

# Crank convention at n = 1 (the generating function produces it natively).
CRANK_N1_OVERRIDE = {-1: 1, 0: -1, 1: 1}


@dataclass(frozen=True)
class PartitionTable:
    """Immutable table of p(0), ..., p(max_n)."""

    max_n: int
    values: tuple[int, ...] = field(repr=False)

    def p(self, n: int) -> int:
        """p(n), with p(n) = 0 for negative n."""
        if n < 0:
            return 0
        if n > self.max_n:
            raise BoundsError(f"p({n}) requested but table stops at {self.max_n}")
        return self.values[n]

    def __getitem__(self, n: int) -> int:
        return self.p(n)

    def __len__(self) -> int:
        return self.max_n + 1

    def require(self, n: int) -> None:
        if n > self.max_n:
            raise BoundsError(f"table holds p(0..{self.max_n}), need n = {n}")


def build_partition_table(N: int) -> PartitionTable:
    """Tabulate p(0..N) with Euler's pentagonal-number recurrence."""
    if N < 0:
        raise ConfigError(f"table size must be nonnegative, got {N}")
    if N > MAX_TABLE_SIZE:
        raise ConfigError(f"table size {N} exceeds the limit {MAX_TABLE_SIZE}")
    p = [0] * (N + 1)
    p[0] = 1
    # generalized pentagonal numbers with their signs
    pent: list[tuple[int, int]] = []
    j = 1
    while True:
        g1 = j * (3 * j - 1) // 2
        if g1 > N:
            break
        sign = 1 if j % 2 else -1
        pent.append((g1, sign))
        g2 = j * (3 * j + 1) // 2
        if g2 <= N:
            pent.append((g2, sign))
        j += 1
    for n in range(1, N + 1):
        total = 0
        for g, sign in pent:
            if g > n:
                break
            if sign > 0:
                total += p[n - g]
            else:
                total -= p[n - g]
        p[n] = total
    return PartitionTable(N, tuple(p))


def _g(k: int, ell: int) -> int:
    return ((2 * k - 1) * ell * ell - ell) // 2


def krank_count(k: int, m: int, n: int, table: PartitionTable) -> int:
    """Exact N_k(m, n) from the finite sum over differences of p."""
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    table.require(n)
    override = EMPTY_RANK_OVERRIDE.get((k, m, n))
    if override is not None:
        return override
    a = abs(m)
    p = table.values
    total = 0
    ell = 1
    while True:
        base = n - _g(k, ell) - a * ell
        if base < 0:
            break
        term = p[base]
        if base - ell >= 0:
            term -= p[base - ell]
        total += term if ell % 2 else -term
        ell += 1
    return total


def _row_nonnegative(k: int, n: int, p: Sequence[int]) -> list[int]:
    """N_k(m, n) for m = 0..n, looping over ell outermost."""
    row = [0] * (n + 1)
    ell = 1
    while True:
        g = _g(k, ell)
        if g > n:
            break
        odd = ell % 2 == 1
        m = 0
        base = n - g
        while base >= 0 and m <= n:
            term = p[base]
            if base >= ell:
                term -= p[base - ell]
            if odd:
                row[m] += term
            else:
                row[m] -= term
            m += 1
            base -= ell
        ell += 1
    if k == 2 and n == 0:
        row[0] = EMPTY_RANK_OVERRIDE[(2, 0, 0)]
    return row


@dataclass(frozen=True)
class KRankRow:
    """All values N_k(m, n) for fixed (k, n); ``counts`` has keys -n..n."""

    k: int
    n: int
    counts: Mapping[int, int]

    def __getitem__(self, m: int) -> int:
        return self.counts.get(m, 0)

    def nonnegative(self) -> list[int]:
        """Values for m = 0..n as a list."""
        return [self.counts[m] for m in range(self.n + 1)]

    def total(self) -> int:
        return sum(self.counts.values())


def krank_row(k: int, n: int, table: PartitionTable) -> KRankRow:
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    table.require(n)
    half = _row_nonnegative(k, n, table.values)
    counts = {m: half[abs(m)] for m in range(-n, n + 1)}
    return KRankRow(k, n, counts)


@lru_cache(maxsize=16)
def _inverse_euler_series(N: int) -> tuple[int, ...]:
    # coefficients of prod_{j>=1} 1/(1-q^j) up to q^N, one factor at a time
    c = [0] * (N + 1)
    c[0] = 1
    for part in range(1, N + 1):
        for i in range(part, N + 1):
            c[i] += c[i - part]
    return tuple(c)


@dataclass(frozen=True)
class SeriesRow:
    """First N+1 coefficients of the generating function of N_k(m, .)."""

    k: int
    m: int
    coeffs: tuple[int, ...]


def qseries_row_oracle(k: int, m: int, N: int) -> SeriesRow:
    """Coefficients of q^0..q^N by direct power-series multiplication."""
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    if N < 0:
        raise DomainError(f"N must be >= 0, got {N}")
    a = abs(m)
    numer = [0] * (N + 1)
    ell = 1
    while True:
        e = ell * ((2 * k - 1) * ell - 1) // 2 + a * ell
        if e > N:
            break
        sign = 1 if ell % 2 else -1
        numer[e] += sign
        if e + ell <= N:
            numer[e + ell] -= sign
        ell += 1
    inv = _inverse_euler_series(N)
    out = [0] * (N + 1)
    for e, c in enumerate(numer):
        if c:
            for i in range(N + 1 - e):
                out[e + i] += c * inv[i]
    if k == 2 and m == 0:
        out[0] += EMPTY_RANK_OVERRIDE[(2, 0, 0)]
    return SeriesRow(k, m, tuple(out))


@dataclass(frozen=True)
class PartitionObject:
    parts: tuple[int, ...]

    def __post_init__(self):
        if any(p <= 0 for p in self.parts):
            raise DomainError("parts must be positive")
        if any(a < b for a, b in zip(self.parts, self.parts[1:])):
            raise DomainError("parts must be weakly decreasing")

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def largest(self) -> int:
        return self.parts[0] if self.parts else 0

    @property
    def length(self) -> int:
        return len(self.parts)

    @property
    def ones(self) -> int:
        return self.parts.count(1)

    @property
    def above_ones(self) -> int:
        """Number of parts larger than the number of ones."""
        w = self.ones
        return sum(1 for p in self.parts if p > w)

    def rank(self) -> int:
        return self.largest - self.length

    def crank(self) -> int:
        w = self.ones
        if w == 0:
            return self.largest
        return self.above_ones - w


def partitions(n: int) -> Iterator[tuple[int, ...]]:
    """All partitions of n as weakly decreasing tuples."""
    if n == 0:
        yield ()
        return

    def rec(remaining: int, cap: int, prefix: list[int]):
        if remaining == 0:
            yield tuple(prefix)
            return
        for part in range(min(remaining, cap), 0, -1):
            prefix.append(part)
            yield from rec(remaining - part, part, prefix)
            prefix.pop()

    yield from rec(n, n, [])


def enumerate_stats_oracle(n: int, statistic: str) -> dict[int, int]:
    """Histogram m -> #partitions of n with the given statistic equal to m."""
    if statistic not in ("rank", "crank"):
        raise DomainError(f"unknown statistic {statistic!r}")
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    if n > ENUMERATION_LIMIT:
        raise BudgetError(f"enumeration limited to n <= {ENUMERATION_LIMIT}, got {n}")
    if statistic == "crank" and n == 1:
        return dict(CRANK_N1_OVERRIDE)
    hist: Counter[int] = Counter()
    for parts in partitions(n):
        lam = PartitionObject(parts)
        hist[lam.rank() if statistic == "rank" else lam.crank()] += 1
    return dict(hist)

"""Exact-integer checks of log-concavity, unimodality and higher-order Turan
inequalities for k-rank rows, plus exact-vs-asymptotic comparison tables.

Every sign decision is made on Python integers; floats only appear in the
ratios reported next to them.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .asym.closed_forms import disc_rhs, lc_rhs, mono_rhs
from .asym.expansion import DEFAULT_ORDER, TruncationOrder, krank_asym
from .asym.numbers import asym_context
from .errors import BoundsError, DomainError
from .exact import PartitionTable, _row_nonnegative, build_partition_table, krank_count

LOGCONCAVE_OFFSET = 71
EDGE_MIN_OFFSET = 142


def unimodal_threshold(k: int) -> int:
    """First n from which the row of N_k is expected to be unimodal."""
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    if k == 1:
        return 44
    return k + 1 + 36 * (k == 2) + 6 * (k == 3)


def default_ht_halfwidth(n: int) -> int:
    """Default symmetric m-window for HT sign-change counts: ceil(8 / beta_n)."""
    b = math.pi / math.sqrt(6.0 * (n - 1.0 / 24.0))
    return min(n, math.ceil(8.0 / b))


def _half_row(k: int, n: int, table: PartitionTable) -> list[int]:
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    table.require(n)
    return _row_nonnegative(k, n, table.values)


def _at(half: Sequence[int], m: int) -> int:
    a = abs(m)
    return half[a] if a < len(half) else 0


# ---------------------------------------------------------------- records


@dataclass(frozen=True)
class DiscriminantRecord:
    k: int
    m: int
    n: int
    D: int

    @property
    def sign(self) -> int:
        return (self.D > 0) - (self.D < 0)


@dataclass(frozen=True)
class HTRecord:
    """Exact sign data for HT_k(m, n).

    ``numerator`` is HT_k(m, n) * N(m)^4 N(m+1)^4, an integer with the sign
    of HT whenever both counts are nonzero.  ``value`` is the float HT.
    """

    k: int
    m: int
    n: int
    numerator: int
    core: int
    defined: bool
    value: float | None = None

    @property
    def sign(self) -> int | None:
        if not self.defined:
            return None
        return (self.core > 0) - (self.core < 0)


@dataclass(frozen=True)
class Violation:
    k: int
    m: int
    n: int
    witness: int
    kind: str = "sign"

    def as_dict(self) -> dict:
        return {"k": self.k, "m": self.m, "n": self.n, "witness": str(self.witness), "kind": self.kind}


@dataclass
class ScanReport:
    statistic: str
    k_range: tuple[int, int]
    n_range: tuple[int, int]
    window: str
    violations: list[Violation] = field(default_factory=list)
    checked: int = 0
    summary: dict = field(default_factory=dict)
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.violations

    def merge(self, other: "ScanReport") -> None:
        self.violations.extend(other.violations)
        self.checked += other.checked
        for key, val in other.summary.items():
            if isinstance(val, int) and isinstance(self.summary.get(key), int):
                self.summary[key] += val
            else:
                self.summary.setdefault(key, val)

    def to_dict(self, include_timing: bool = False) -> dict:
        out = {
            "statistic": self.statistic,
            "k_range": list(self.k_range),
            "n_range": list(self.n_range),
            "window": self.window,
            "checked": self.checked,
            "violation_count": len(self.violations),
            "violations": [v.as_dict() for v in self.violations],
            "summary": dict(sorted(self.summary.items())),
        }
        if include_timing:
            out["elapsed"] = self.elapsed
        return out


# ---------------------------------------------------------------- parallel plumbing

_WORKER_TABLE: PartitionTable | None = None


def _init_worker(size: int) -> None:
    global _WORKER_TABLE
    _WORKER_TABLE = build_partition_table(size)


def _run_task(args):
    fn, k, n = args
    return fn(k, n, _WORKER_TABLE)


def _map_rows(fn: Callable, k: int, ns: Sequence[int], table: PartitionTable, workers: int) -> list:
    """fn(k, n, table) for each n, in order; results merge deterministically."""
    if workers <= 1 or len(ns) < 2 * workers:
        return [fn(k, n, table) for n in ns]
    chunk = max(1, len(ns) // (4 * workers))
    with ProcessPoolExecutor(workers, initializer=_init_worker, initargs=(table.max_n,)) as pool:
        return list(pool.map(_run_task, [(fn, k, n) for n in ns], chunksize=chunk))


# ---------------------------------------------------------------- discriminants


def discriminant_exact(k: int, m: int, n: int, table: PartitionTable) -> DiscriminantRecord:
    """D = N_k(m,n)^2 - N_k(m-1,n) N_k(m+1,n)."""
    table.require(n)
    a = krank_count(k, m - 1, n, table)
    b = krank_count(k, m, n, table)
    c = krank_count(k, m + 1, n, table)
    return DiscriminantRecord(k, m, n, b * b - a * c)


def _logconcave_row(k: int, n: int, table: PartitionTable) -> ScanReport:
    half = _half_row(k, n, table)
    rep = ScanReport("logconcave", (k, k), (n, n), "")
    for m in range(0, n - k - LOGCONCAVE_OFFSET + 1):
        d = half[m] ** 2 - _at(half, m - 1) * _at(half, m + 1)
        rep.checked += 1
        if d <= 0:
            rep.violations.append(Violation(k, m, n, d))
    return rep


def logconcavity_scan(
    k: int, n_lo: int, n_hi: int, table: PartitionTable, workers: int = 1
) -> ScanReport:
    """Strict log-concavity of m -> N_k(m,n) on |m| <= n-k-71, for n >= k+71.

    Only m >= 0 is visited; D(k,-m,n) = D(k,m,n).
    """
    if n_hi > table.max_n:
        raise BoundsError(f"n_hi={n_hi} exceeds table size {table.max_n}")
    start = time.perf_counter()
    lo = max(n_lo, k + LOGCONCAVE_OFFSET)
    rep = ScanReport("logconcave", (k, k), (lo, n_hi), f"|m| <= n-{k}-{LOGCONCAVE_OFFSET}")
    for part in _map_rows(_logconcave_row, k, range(lo, n_hi + 1), table, workers):
        rep.merge(part)
    rep.elapsed = time.perf_counter() - start
    return rep


def _unimodal_row(k: int, n: int, table: PartitionTable) -> ScanReport:
    half = _half_row(k, n, table)
    rep = ScanReport("unimodal", (k, k), (n, n), "")
    for m in range(0, n - k):
        rep.checked += 1
        diff = half[m] - half[m + 1]
        if diff < 0:
            rep.violations.append(Violation(k, m, n, diff))
    return rep


def unimodality_scan(
    k: int, n_lo: int, n_hi: int, table: PartitionTable, workers: int = 1
) -> ScanReport:
    """N_k(m,n) >= N_k(m+1,n) for 0 <= m < n-k and n >= n_u(k).

    With row symmetry this is unimodality with the peak at m = 0.
    """
    if n_hi > table.max_n:
        raise BoundsError(f"n_hi={n_hi} exceeds table size {table.max_n}")
    start = time.perf_counter()
    lo = max(n_lo, unimodal_threshold(k))
    rep = ScanReport("unimodal", (k, k), (lo, n_hi), f"0 <= m < n-{k}, n >= {unimodal_threshold(k)}")
    for part in _map_rows(_unimodal_row, k, range(lo, n_hi + 1), table, workers):
        rep.merge(part)
    rep.elapsed = time.perf_counter() - start
    return rep


def pdiff_logconcave(l_lo: int, l_hi: int, table: PartitionTable) -> ScanReport:
    """Sign of a_l^2 - a_{l-1} a_{l+1} for a_l = p(l+1) - p(l).

    A violation is a nonpositive value (log-concavity fails there).  The
    summary records how many of each sign occurred and, for l >= 71, whether
    the sign was uniform.
    """
    if l_lo < 1:
        raise DomainError(f"l_lo must be >= 1, got {l_lo}")
    if l_hi + 2 > table.max_n:
        raise BoundsError(f"need p up to {l_hi + 2}, table stops at {table.max_n}")
    start = time.perf_counter()
    p = table.values
    rep = ScanReport("pdiff", (0, 0), (l_lo, l_hi), "a_l = p(l+1) - p(l)")
    counts = {"positive": 0, "zero": 0, "negative": 0}
    tail_signs = set()
    for ell in range(l_lo, l_hi + 1):
        a0 = p[ell] - p[ell - 1]
        a1 = p[ell + 1] - p[ell]
        a2 = p[ell + 2] - p[ell + 1]
        d = a1 * a1 - a0 * a2
        rep.checked += 1
        s = (d > 0) - (d < 0)
        counts[("zero", "positive", "negative")[s]] += 1
        if ell >= LOGCONCAVE_OFFSET:
            tail_signs.add(s)
        if d <= 0:
            rep.violations.append(Violation(0, ell, ell, d))
    rep.summary.update(counts)
    if tail_signs:
        rep.summary["uniform_sign_from_71"] = tail_signs.pop() if len(tail_signs) == 1 else "mixed"
    rep.elapsed = time.perf_counter() - start
    return rep


def edge_logconcavity(k: int, n: int, table: PartitionTable) -> ScanReport:
    """Strict log-concavity on n/2 - 2k + 2 <= |m| <= n-k-71 for n >= 142 + 2k.

    In that window N_k(m,n) = p(n-|m|-k+1) - p(n-|m|-k); the identity is
    checked on every m from the window start up to n-k-1, and failures are
    listed with kind "identity".
    """
    if n < EDGE_MIN_OFFSET + 2 * k:
        raise DomainError(f"need n >= {EDGE_MIN_OFFSET + 2 * k}, got n={n}")
    start = time.perf_counter()
    half = _half_row(k, n, table)
    p = table.values
    lo = math.ceil(Fraction(n, 2) - 2 * k + 2)
    hi = n - k - LOGCONCAVE_OFFSET
    rep = ScanReport("edge", (k, k), (n, n), f"{lo} <= |m| <= {hi}")
    signs = set()
    for m in range(lo, hi + 1):
        d = half[m] ** 2 - half[m - 1] * half[m + 1]
        rep.checked += 1
        signs.add((d > 0) - (d < 0))
        if d <= 0:
            rep.violations.append(Violation(k, m, n, d))
    identity_fail = 0
    for m in range(lo, n - k):
        ell = n - m - k
        if half[m] != p[ell + 1] - p[ell]:
            identity_fail += 1
            rep.violations.append(Violation(k, m, n, half[m] - (p[ell + 1] - p[ell]), "identity"))
    rep.summary["identity_checked"] = max(0, n - k - lo)
    rep.summary["identity_failures"] = identity_fail
    if signs:
        rep.summary["uniform_sign"] = signs.pop() if len(signs) == 1 else "mixed"
    rep.elapsed = time.perf_counter() - start
    return rep


def normalized_discriminant(k: int, m: int, n: int, table: PartitionTable) -> float:
    """L_k(m,n) = D / (3 beta_n^6 e^{4 Lambda_n} / (2 pi^2)^2), formed in log space."""
    d = discriminant_exact(k, m, n, table).D
    if d == 0:
        return 0.0
    ctx = asym_context(n)
    log_scale = math.log(3.0) + 6.0 * math.log(ctx.beta_n) + 4.0 * ctx.lambda_n - 2.0 * math.log(2.0 * math.pi**2)
    mag = math.exp(math.log(abs(d)) - log_scale)
    return mag if d > 0 else -mag


# ---------------------------------------------------------------- higher-order Turan


def _ht_from(k: int, m: int, n: int, a: int, b: int, c: int, d: int, with_value: bool) -> HTRecord:
    core = 4 * (b * b - a * c) * (c * c - b * d) - (b * c - a * d) ** 2
    defined = b != 0 and c != 0
    value = float(Fraction(core, b * b * c * c)) if (defined and with_value) else None
    return HTRecord(k, m, n, b * b * c * c * core, core, defined, value)


def ht_exact(k: int, m: int, n: int, table: PartitionTable, with_value: bool = True) -> HTRecord:
    """HT_k(m,n) = 4(1 - T(m))(1 - T(m+1)) - (1 - T(m) T(m+1))^2,
    T(m) = N(m-1) N(m+1) / N(m)^2, decided exactly after clearing denominators."""
    vals = [krank_count(k, m + i, n, table) for i in (-1, 0, 1, 2)]
    return _ht_from(k, m, n, *vals, with_value)


def ht_sign_changes(
    k: int, n: int, m_lo: int, m_hi: int, table: PartitionTable
) -> tuple[int, list[tuple[int, int]]]:
    """Strict sign alternations of exact HT_k(m,n) along the window.

    Zeros and undefined points are skipped.  The window may be given in
    either direction; locations are reported as (m, m') with m < m'.
    """
    lo, hi = min(m_lo, m_hi), max(m_lo, m_hi)
    if lo < -n or hi > n:
        raise BoundsError(f"window [{lo}, {hi}] is outside [-{n}, {n}]")
    half = _half_row(k, n, table)
    count = 0
    changes: list[tuple[int, int]] = []
    last: tuple[int, int] | None = None
    for m in range(lo, hi + 1):
        rec = _ht_from(k, m, n, *(_at(half, m + i) for i in (-1, 0, 1, 2)), False)
        s = rec.sign
        if not s:
            continue
        if last is not None and s != last[1]:
            count += 1
            changes.append((last[0], m))
        last = (m, s)
    return count, changes


# ---------------------------------------------------------------- comparison tables


def _delta2_from(a: int, b: int, c: int) -> float:
    if a <= 0 or b <= 0 or c <= 0:
        raise DomainError("log second difference needs three positive counts")
    # -log(a c / b^2) = -log1p((a c - b^2) / b^2), ratio formed exactly
    return -math.log1p(float(Fraction(a * c - b * b, b * b)))


def delta2_log_exact(k: int, m: int, n: int, table: PartitionTable) -> float:
    """-[log N(m+1) - 2 log N(m) + log N(m-1)] for N = N_k(., n)."""
    a, b, c = (krank_count(k, m + i, n, table) for i in (-1, 0, 1))
    return _delta2_from(a, b, c)


@dataclass(frozen=True)
class LCRow:
    m: int
    LN: float | None
    aLN: float | None
    relative_gap: float | None
    note: str = ""


def compare_lc_table(k: int, n: int, m_lo: int, m_hi: int, table: PartitionTable) -> list[LCRow]:
    """Exact -Delta^2 log N_k(m, n) against the combined asymptotic form."""
    half = _half_row(k, n, table)
    rows = []
    for m in range(m_lo, m_hi + 1):
        try:
            ln = _delta2_from(*(_at(half, m + i) for i in (-1, 0, 1)))
        except DomainError:
            rows.append(LCRow(m, None, None, None, "nonpositive count"))
            continue
        try:
            aln = lc_rhs(m, n, "combined")
        except DomainError:
            rows.append(LCRow(m, ln, None, None, "outside asymptotic domain"))
            continue
        rows.append(LCRow(m, ln, aln, abs(ln / aln - 1.0)))
    return rows


@dataclass(frozen=True)
class MonoRow:
    m: int
    exact_ratio: float
    mono_rhs: float
    relative_gap: float | None


def monotonicity_table(k: int, n: int, m_lo: int, m_hi: int, table: PartitionTable) -> list[MonoRow]:
    """[N_k(m, n+|m|) - N_k(m+1, n+|m|)] / (pi^2 p(n) / (6n)) against mono_rhs."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    table.require(n + max(abs(m_lo), abs(m_hi)) + 1)
    pn = table.p(n)
    rows = []
    for m in range(m_lo, m_hi + 1):
        big_n = n + abs(m)
        diff = krank_count(k, m, big_n, table) - krank_count(k, m + 1, big_n, table)
        ratio = float(Fraction(6 * n * diff, pn)) / math.pi**2
        rhs = mono_rhs(m, n)
        gap = abs(ratio / rhs - 1.0) if rhs else None
        rows.append(MonoRow(m, ratio, rhs, gap))
    return rows


@dataclass(frozen=True)
class AsymRow:
    m: int
    j: int
    exact: int
    asymptotic: float
    relative_error: float


def compare_asym_table(
    k: int,
    n: int,
    ms: Iterable[int],
    table: PartitionTable,
    order: TruncationOrder = DEFAULT_ORDER,
    j: int = 0,
) -> list[AsymRow]:
    """krank_asym against exact N_k(m+j, n)."""
    rows = []
    for m in ms:
        exact = krank_count(k, m + j, n, table)
        approx = krank_asym(k, abs(m), n, j=j if m >= 0 else -j, order=order)
        # relative error in log space so that huge counts never overflow
        if exact > 0 and approx.sign > 0:
            log_ratio = approx.log_magnitude - math.log(exact)
            rel = abs(math.expm1(log_ratio))
        else:
            rel = math.inf
        rows.append(AsymRow(m, j, exact, float(approx), rel))
    return rows


@dataclass(frozen=True)
class DiscRow:
    m: int
    exact_sign: int
    L_exact: float
    L_asym: float
    relative_gap: float


def compare_disc_table(k: int, n: int, m_lo: int, m_hi: int, table: PartitionTable) -> list[DiscRow]:
    """Exact normalized discriminant L_k(m,n) against its leading asymptotic form."""
    rows = []
    for m in range(m_lo, m_hi + 1):
        rec = discriminant_exact(k, m, n, table)
        lk = normalized_discriminant(k, m, n, table)
        rhs = disc_rhs(k, m, n)
        rows.append(DiscRow(m, rec.sign, lk, rhs, abs(lk / rhs - 1.0)))
    return rows

"""The acceptance gate: every check the library must pass, runnable from the
CLI (``krank-lab verify``) and from the test suite.

Each criterion returns (passed, detail).  A criterion also fails when it
overruns its runtime budget.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Callable, Iterable

from . import inequality as ineq
from .asym import bessel, coeffs, comparators
from .asym.closed_forms import sech_ratio
from .asym.numbers import HalfInt
from .exact import (
    PartitionTable,
    build_partition_table,
    enumerate_stats_oracle,
    krank_count,
    krank_row,
    qseries_row_oracle,
)

TABLE_SIZE = 10_000
HT_WINDOW = (-300, 300)
HT_NARROW_WINDOW = (-250, 250)
LN_TOLERANCE = 0.15
SECH_REGIME_C = 10.0
ASYM_TOLERANCE = 0.01
HHAT_FACTOR = 2.0
FALSE_THETA_FACTOR = 10.0
ETA_TOLERANCE = 1e-10
MONO_TOLERANCE = 0.10


@dataclass
class Context:
    table: PartitionTable
    workers: int = 1


@dataclass(frozen=True)
class Criterion:
    key: str
    title: str
    suites: tuple[str, ...]
    budget: float
    check: Callable[[Context], tuple[bool, str]]


@dataclass(frozen=True)
class Outcome:
    key: str
    title: str
    passed: bool
    detail: str
    elapsed: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} [{self.key}] {self.title}: {self.detail} ({self.elapsed:.2f}s)"


# ---------------------------------------------------------------- checks


def _triple_agreement(ctx: Context):
    N = 30
    for k, stat in ((1, "crank"), (2, "rank")):
        series = {m: qseries_row_oracle(k, m, N).coeffs for m in range(0, N + 2)}
        for n in range(N + 1):
            row = krank_row(k, n, ctx.table)
            hist = enumerate_stats_oracle(n, stat)
            for m in range(-n - 1, n + 2):
                a, b, c = row[m], series[abs(m)][n], hist.get(m, 0)
                if not a == b == c:
                    return False, f"k={k} m={m} n={n}: {a}, {b}, {c}"
    return True, "k in {1,2}, n <= 30, all m"


def _two_route(ctx: Context):
    N = 60
    for k in range(3, 7):
        series = {m: qseries_row_oracle(k, m, N).coeffs for m in range(0, N + 2)}
        for n in range(N + 1):
            row = krank_row(k, n, ctx.table)
            for m in range(-n - 1, n + 2):
                if row[m] != series[abs(m)][n]:
                    return False, f"k={k} m={m} n={n}: {row[m]} != {series[abs(m)][n]}"
    return True, "k in 3..6, n <= 60, all m"


def _sum_identity(ctx: Context):
    for k in (1, 2):
        for n in range(0, 501):
            total = krank_row(k, n, ctx.table).total()
            if total != ctx.table.p(n):
                return False, f"k={k} n={n}: sum {total} != p(n)"
    return True, "k in {1,2}, 0 <= n <= 500"


def _special_values(ctx: Context):
    got = tuple(krank_count(1, m, 1, ctx.table) for m in (-1, 0, 1))
    return got == (1, -1, 1), f"N_1(-1..1, 1) = {got}"


def _scan(ctx: Context, kind: str, ks: Iterable[int], n_hi: int):
    fn = ineq.logconcavity_scan if kind == "logconcave" else ineq.unimodality_scan
    checked = 0
    for k in ks:
        rep = fn(k, 0, n_hi, ctx.table, workers=ctx.workers)
        checked += rep.checked
        if not rep.ok:
            v = rep.violations[0]
            return False, f"{len(rep.violations)} violations, first k={v.k} m={v.m} n={v.n}"
    return True, f"{checked} inequalities, zero violations"


def _ht_changes(ctx: Context):
    count, where = ineq.ht_sign_changes(1, 2500, *HT_WINDOW, ctx.table)
    narrow, _ = ineq.ht_sign_changes(1, 2500, *HT_NARROW_WINDOW, ctx.table)
    detail = f"{count} changes on {list(HT_WINDOW)} at {where}; {narrow} on {list(HT_NARROW_WINDOW)}"
    return count == 4, detail


def _lc_gap(ctx: Context):
    rows = ineq.compare_lc_table(2, 2500, -200, 200, ctx.table)
    gaps = [r.relative_gap for r in rows]
    if any(g is None for g in gaps):
        return False, "undefined rows in window"
    worst = max(gaps)
    return worst <= LN_TOLERANCE, f"max |LN/aLN - 1| = {worst:.4f}"


def _sech_regime(ctx: Context):
    n = 10_000
    pn = ctx.table.p(n)
    worst = 0.0
    for k in (1, 2, 3):
        row = krank_row(k, n, ctx.table)
        for m in range(-100, 101):
            ratio = float(Fraction(row[m], pn)) / sech_ratio(m, n)
            worst = max(worst, abs(ratio - 1.0) / ((n + m * m) / n**1.5))
    return worst <= SECH_REGIME_C, f"smallest admissible C = {worst:.4f}"


def _asym_expansion(ctx: Context):
    rows = ineq.compare_asym_table(2, 2500, (0, 10, 50), ctx.table)
    worst = max(r.relative_error for r in rows)
    return worst <= ASYM_TOLERANCE, f"max relative error = {worst:.3e}"


def _pdiff(ctx: Context):
    p = ctx.table.values

    def disc(ell):
        a0, a1, a2 = p[ell] - p[ell - 1], p[ell + 1] - p[ell], p[ell + 2] - p[ell + 1]
        return a1 * a1 - a0 * a2

    rep = ineq.pdiff_logconcave(71, 2000, ctx.table)
    tail = rep.summary.get("uniform_sign_from_71")
    six = disc(6)
    ok = six == -12 and tail in (1, -1) and tail == -((six > 0) - (six < 0))
    shown = f"{tail:+d}" if isinstance(tail, int) else str(tail)
    return ok, f"l=6 gives {six}; sign on 71..2000 is {shown}"


def _hhat(ctx: Context):
    worst = 0.0
    for mu in ("-5/2", "-7/2", "-9/2"):
        for nu in (0, 1, 2):
            for u in (30, 50, 100):
                for L in (2, 3):
                    exact, series, first = bessel.h_hat(mu, nu, u, L)
                    worst = max(worst, abs(exact - series) / first)
    return worst <= HHAT_FACTOR, f"max |exact - series| / first_omitted = {worst:.3f}"


def _false_theta(ctx: Context):
    worst = 0.0
    for ell in (0, 1, 2):
        for b in (0, 1, 10, 100):
            for z in (0.01, 0.02 + 0.002j):
                lhs, rhs, scale = comparators.false_theta_compare(ell, b, z, 4)
                worst = max(worst, abs(lhs - rhs) / scale)
    return worst <= FALSE_THETA_FACTOR, f"max |lhs - rhs| / scale = {worst:.4f}"


def _eta(ctx: Context):
    exact, main, _ = comparators.eta_inv_compare(0.01)
    err = float(abs(exact / main - 1))
    return err <= ETA_TOLERANCE, f"relative error = {err:.3e}"


def _monotonicity(ctx: Context):
    rows = ineq.monotonicity_table(2, 2500, 0, 100, ctx.table)
    worst = max(r.relative_gap for r in rows)
    return worst <= MONO_TOLERANCE, f"max relative gap = {worst:.4f}"


def _gamma_from_bessel_polynomials(ell: int, mu: HalfInt, nu: int) -> Fraction:
    # large-u coefficients of sqrt(2 pi u) e^{-u} I_{+-(n+1/2)}: (n+l)!/(l!(n-l)!) / 2^l
    total = Fraction(0)
    for h in range(nu + 1):
        n = (abs((mu + (nu - h)).twice_value) - 1) // 2
        c = factorial(n + ell) // (factorial(ell) * factorial(n - ell)) if ell <= n else 0
        total += (-1) ** h * math.comb(nu, h) * Fraction(c, 2**ell)
    return total


def _gamma_consistency(ctx: Context):
    for twice_mu in range(-19, 20, 2):
        mu = HalfInt(twice_mu)
        for nu in range(0, 5):
            for ell in range(0, 6):
                got = coeffs.gamma_coeff(ell, mu, nu)
                want = _gamma_from_bessel_polynomials(ell, mu, nu)
                if got != want:
                    return False, f"gamma_{ell}({mu}, {nu}) = {got}, expected {want}"
    return True, "gamma table matches the half-integer Bessel polynomials"


CRITERIA: tuple[Criterion, ...] = (
    Criterion("1", "oracle triple agreement", ("fast", "full"), 10, _triple_agreement),
    Criterion("2", "two-route agreement k=3..6", ("fast", "full"), 30, _two_route),
    Criterion("3", "sum identity", ("fast", "full"), 60, _sum_identity),
    Criterion("4", "special values at n=1", ("fast", "full"), 1, _special_values),
    Criterion(
        "5s", "log-concavity scan, n <= 200", ("fast",), 60,
        lambda ctx: _scan(ctx, "logconcave", range(1, 11), 200),
    ),
    Criterion(
        "6s", "unimodality scan, n <= 200", ("fast",), 60,
        lambda ctx: _scan(ctx, "unimodal", range(2, 11), 200),
    ),
    Criterion(
        "5", "log-concavity scan k<=10, n<=1000", ("full",), 1800,
        lambda ctx: _scan(ctx, "logconcave", range(1, 11), 1000),
    ),
    Criterion(
        "6", "unimodality scan k=2..10, n<=1000", ("full",), 1800,
        lambda ctx: _scan(ctx, "unimodal", range(2, 11), 1000),
    ),
    Criterion("7", "HT_1 sign changes at n=2500", ("full",), 120, _ht_changes),
    Criterion("8", "LN_2 vs aLN_2 at n=2500", ("full",), 120, _lc_gap),
    Criterion("9", "sech^2 regime at n=10^4", ("full",), 300, _sech_regime),
    Criterion("10", "uniform expansion at n=2500", ("fast", "full"), 60, _asym_expansion),
    Criterion("11", "p-difference sign law", ("fast", "full"), 60, _pdiff),
    Criterion("12", "H-hat truncation", ("fast", "full"), 10, _hhat),
    Criterion("13", "false theta truncation", ("fast", "full"), 10, _false_theta),
    Criterion("14", "eta main term", ("fast", "full"), 1, _eta),
    Criterion("15", "monotonicity ratio at n=2500", ("full",), 120, _monotonicity),
    Criterion("gamma", "gamma consistency check", ("fast", "full"), 10, _gamma_consistency),
)

SUITES = ("fast", "full")


def select(suite: str = "fast", only: Iterable[str] | None = None) -> list[Criterion]:
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    chosen = [c for c in CRITERIA if suite in c.suites]
    if only:
        wanted = set(only)
        unknown = wanted - {c.key for c in CRITERIA}
        if unknown:
            raise ValueError(f"unknown criteria: {sorted(unknown)}")
        chosen = [c for c in CRITERIA if c.key in wanted]
    return chosen


def run_one(criterion: Criterion, ctx: Context) -> Outcome:
    start = time.perf_counter()
    try:
        passed, detail = criterion.check(ctx)
    except Exception as exc:  # a crash is a failed criterion, reported by name
        passed, detail = False, f"{type(exc).__name__}: {exc}"
    elapsed = time.perf_counter() - start
    if passed and elapsed > criterion.budget:
        passed, detail = False, f"{detail}; over the {criterion.budget:g}s budget"
    return Outcome(criterion.key, criterion.title, passed, detail, elapsed)


def make_context(workers: int = 1, table: PartitionTable | None = None) -> Context:
    if table is None or table.max_n < TABLE_SIZE:
        table = build_partition_table(TABLE_SIZE)
    return Context(table, workers)


def run_suite(
    suite: str = "fast",
    only: Iterable[str] | None = None,
    ctx: Context | None = None,
    report: Callable[[Outcome], None] | None = None,
) -> list[Outcome]:
    ctx = ctx or make_context()
    out = []
    for criterion in select(suite, only):
        res = run_one(criterion, ctx)
        if report:
            report(res)
        out.append(res)
    return out

import math

import pytest

from krank_lab import inequality as ineq
from krank_lab.asym import lc_rhs, mono_rhs
from krank_lab.errors import BoundsError, DomainError
from krank_lab.exact import krank_count


def test_discriminant_symmetry_and_sign(table):
    assert ineq.discriminant_exact(2, 5, 100, table).D == ineq.discriminant_exact(2, -5, 100, table).D
    assert ineq.discriminant_exact(2, 0, 100, table).sign == 1
    assert ineq.discriminant_exact(1, 0, 71, table).sign == 1


@pytest.mark.parametrize("k,lo,hi", [(1, 71, 1000), (10, 81, 1000), (2, 72, 200)])
def test_logconcavity_scan(table, k, lo, hi):
    rep = ineq.logconcavity_scan(k, lo, hi, table)
    assert rep.ok and rep.checked > 0


@pytest.mark.parametrize("k,lo", [(2, 39), (3, 10), (5, 6)])
def test_unimodality_scan(table, k, lo):
    assert lo == ineq.unimodal_threshold(k)
    assert ineq.unimodality_scan(k, lo, 1000, table).ok


def test_unimodality_fails_below_threshold(table):
    # the rank row is not yet unimodal just below n_u(2) = 39
    rep = ineq.unimodality_scan(2, 0, 38, table)
    assert rep.n_range[0] == 39
    bad = [n for n in range(3, 39) if not ineq._unimodal_row(2, n, table).ok]
    assert 38 in bad


def test_scan_bounds(small_table):
    with pytest.raises(BoundsError):
        ineq.logconcavity_scan(1, 71, 400, small_table)


def test_scan_report_is_deterministic_across_workers(small_table):
    a = ineq.logconcavity_scan(2, 72, 160, small_table, workers=1).to_dict()
    b = ineq.logconcavity_scan(2, 72, 160, small_table, workers=2).to_dict()
    assert a == b


def test_ht_reflection(table):
    for m in (0, 3, 40, 120):
        assert ineq.ht_exact(1, -m - 1, 2500, table).numerator == ineq.ht_exact(1, m, 2500, table).numerator


def test_ht_pinned_values(table):
    rec = ineq.ht_exact(1, 0, 2500, table)
    assert rec.sign == 1 and rec.value > 0
    count, where = ineq.ht_sign_changes(2, 2500, -250, 250, table)
    assert (count, where) == (2, [(-93, -92), (91, 92)])


def test_ht_sign_changes_window(table):
    count, where = ineq.ht_sign_changes(1, 2500, -300, 300, table)
    assert count == 4
    assert where == [(-258, -257), (-97, -96), (95, 96), (256, 257)]
    assert ineq.ht_sign_changes(1, 2500, 300, -300, table)[0] == 4
    assert ineq.ht_sign_changes(1, 2500, -250, 250, table)[0] == 2
    assert ineq.default_ht_halfwidth(2500) == 312


def test_ht_undefined_when_count_vanishes(small_table):
    # N_2(2, 4) = 0
    rec = ineq.ht_exact(2, 2, 4, small_table)
    assert not rec.defined and rec.sign is None and rec.value is None


def test_delta2_identity(table):
    a, b, c = (krank_count(2, m, 300, table) for m in (6, 7, 8))
    assert ineq.delta2_log_exact(2, 7, 300, table) == pytest.approx(-math.log(a * c / (b * b)), rel=1e-12)


@pytest.mark.parametrize("m", [0, 150])
def test_delta2_near_asymptotic(table, m):
    assert ineq.delta2_log_exact(2, m, 2500, table) / lc_rhs(m, 2500) == pytest.approx(1, abs=0.15)


def test_delta2_domain(small_table):
    with pytest.raises(DomainError):
        ineq.delta2_log_exact(2, 2, 4, small_table)


def test_pdiff_small_values(small_table):
    rep = ineq.pdiff_logconcave(5, 6, small_table)
    assert [(v.m, v.witness) for v in rep.violations] == [(6, -12)]
    assert rep.summary["positive"] == 1


def test_pdiff_uniform_tail(table):
    rep = ineq.pdiff_logconcave(71, 2000, table)
    assert rep.ok and rep.summary["uniform_sign_from_71"] == 1


def test_pdiff_exceptions_are_even_below_71(small_table):
    rep = ineq.pdiff_logconcave(1, 100, small_table)
    assert [v.m for v in rep.violations] == list(range(2, 71, 2))


@pytest.mark.parametrize("k,n", [(1, 200), (3, 148), (2, 500)])
def test_edge_window(table, k, n):
    rep = ineq.edge_logconcavity(k, n, table)
    assert rep.ok and rep.summary["uniform_sign"] == 1
    assert rep.summary["identity_failures"] == 0


def test_edge_preconditions(table):
    with pytest.raises(DomainError):
        ineq.edge_logconcavity(3, 147, table)


def test_monotonicity_table(table):
    rows = ineq.monotonicity_table(2, 2500, 0, 100, table)
    assert max(r.relative_gap for r in rows) <= 0.10
    assert rows[0].mono_rhs == mono_rhs(0, 2500)
    for m in (0, 5, 30):
        pos = ineq.monotonicity_table(2, 400, m, m, table)[0].exact_ratio
        neg = ineq.monotonicity_table(2, 400, -m - 1, -m - 1, table)[0].exact_ratio
        assert pos > 0 > neg


def test_lc_tables(table):
    rows = ineq.compare_lc_table(2, 2500, -200, 200, table)
    assert max(r.relative_gap for r in rows) <= 0.15
    zero = next(r for r in rows if r.m == 0)
    assert zero.aLN == lc_rhs(0, 2500, "small_m")
    assert zero.relative_gap <= 0.15
    k1 = ineq.compare_lc_table(1, 2500, -200, 200, table)
    assert max(r.relative_gap for r in k1) == pytest.approx(0.0505, abs=5e-4)


def test_lc_table_flags_undefined(small_table):
    rows = ineq.compare_lc_table(2, 10, 6, 12, small_table)
    assert any(r.LN is None and r.note for r in rows)


def test_discriminant_matches_asymptotic(table):
    rows = ineq.compare_disc_table(2, 2500, -100, 100, table)
    assert all(r.exact_sign == 1 for r in rows)
    at100 = next(r for r in rows if r.m == 100)
    assert at100.relative_gap <= 0.25


def test_asym_table(table):
    rows = ineq.compare_asym_table(2, 2500, (0, 10, 50), table)
    assert max(r.relative_error for r in rows) <= 0.01
    neg = ineq.compare_asym_table(2, 2500, (-10,), table)[0]
    assert neg.exact == rows[1].exact and neg.relative_error == rows[1].relative_error

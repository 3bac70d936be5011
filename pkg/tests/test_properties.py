"""Property tests for the structural invariants."""

import math
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from krank_lab import inequality as ineq
from krank_lab.asym import HalfInt, LogReal, a_coeff, gamma_coeff, logistic_deriv
from krank_lab.cli import parse_range
from krank_lab.config import RunConfig
from krank_lab.exact import build_partition_table, krank_count, krank_row
from krank_lab.report import ResultTable

TABLE = build_partition_table(400)

ks = st.integers(1, 8)
ns = st.integers(0, 400)


@given(ks, ns)
def test_row_symmetry_and_sum(k, n):
    row = krank_row(k, n, TABLE)
    assert all(row[m] == row[-m] for m in range(n + 1))
    expected = TABLE.p(n) if k <= 2 else row.total()
    assert row.total() == expected


@given(st.integers(1, 2), ns)
def test_sum_identity(k, n):
    assert krank_row(k, n, TABLE).total() == TABLE.p(n)


@given(ks, ns, st.integers(-450, 450))
def test_count_matches_row(k, n, m):
    assert krank_count(k, m, n, TABLE) == krank_row(k, n, TABLE)[m]


@given(ks, st.integers(0, 400))
def test_support(k, n):
    row = krank_row(k, n, TABLE)
    assert row[n + 1] == 0 and row[-n - 1] == 0


@given(ks, st.integers(1, 400), st.integers(0, 400))
def test_discriminant_symmetry(k, n, m):
    assert ineq.discriminant_exact(k, m, n, TABLE).D == ineq.discriminant_exact(k, -m, n, TABLE).D


@settings(max_examples=30)
@given(st.integers(1, 4), st.integers(20, 400), st.integers(0, 60))
def test_ht_reflection(k, n, m):
    assert ineq.ht_exact(k, -m - 1, n, TABLE).numerator == ineq.ht_exact(k, m, n, TABLE).numerator


@given(st.integers(-41, 41).filter(lambda t: t % 2), st.integers(0, 6))
def test_hankel_even(t, j):
    assert a_coeff(j, HalfInt(t)) == a_coeff(j, HalfInt(-t))


@given(st.integers(-21, 21).filter(lambda t: t % 2), st.integers(0, 6), st.integers(1, 6))
def test_gamma_difference_recurrence(t, ell, nu):
    # gamma(mu, nu) = gamma(mu + 1, nu - 1) - gamma(mu, nu - 1)
    mu = HalfInt(t)
    assert gamma_coeff(ell, mu, nu) == gamma_coeff(ell, mu + 1, nu - 1) - gamma_coeff(ell, mu, nu - 1)


@given(st.integers(0, 12), st.floats(-40, 40))
def test_logistic_mirror(r, w):
    lhs = logistic_deriv(r, w)
    rhs = logistic_deriv(r, -w)
    if r == 0:
        assert math.isclose(lhs + rhs, 1.0, rel_tol=1e-12)
    else:
        sign = 1 if r % 2 else -1
        assert math.isclose(lhs, sign * rhs, rel_tol=1e-9, abs_tol=1e-300)


@given(st.floats(-1e6, 1e6), st.floats(-1e6, 1e6))
def test_logreal_addition(x, y):
    got = float(LogReal.from_float(x) + LogReal.from_float(y))
    assert math.isclose(got, x + y, rel_tol=1e-9, abs_tol=1e-6)


@given(
    st.lists(
        st.tuples(st.integers(-10**6, 10**6), st.integers(-10**80, 10**80), st.floats(allow_nan=False), st.text(st.characters(blacklist_characters="\x00"))),
        max_size=8,
    )
)
def test_table_round_trip(rows):
    t = ResultTable([("i", "int"), ("e", "exact"), ("f", "float"), ("s", "text")], provenance={"command": "x"})
    for r in rows:
        t.add(*r)
    assert ResultTable.from_csv(t.to_csv()).canonical() == t.canonical()
    assert ResultTable.from_json(t.to_json()).canonical() == t.canonical()


@given(st.integers(-500, 500), st.integers(0, 500))
def test_parse_range(a, width):
    b = a + width
    assert parse_range(f"{a}..{b}", 0, 0) == list(range(a, b + 1))
    assert parse_range(f"..{b}", a, 0) == list(range(a, b + 1))


@given(st.integers(1, 6), st.integers(1, 6), st.integers(1, 16))
def test_config_hash_ignores_workers(p, h, w):
    assert RunConfig(p=p, h_max=h, workers=w).hash() == RunConfig(p=p, h_max=h).hash()

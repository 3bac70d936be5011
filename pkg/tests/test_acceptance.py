"""Every acceptance criterion at its stated tolerance, one PASS/FAIL line each."""

import pytest

from krank_lab import acceptance


@pytest.fixture(scope="module")
def ctx(table):
    return acceptance.make_context(workers=1, table=table)


@pytest.mark.parametrize("criterion", acceptance.CRITERIA, ids=lambda c: f"criterion_{c.key}")
def test_criterion(criterion, ctx, capsys):
    outcome = acceptance.run_one(criterion, ctx)
    with capsys.disabled():
        print("\n" + outcome.line())
    assert outcome.passed, outcome.detail


def test_suites_cover_every_criterion():
    keys = {c.key for c in acceptance.select("full")} | {c.key for c in acceptance.select("fast")}
    assert keys == {c.key for c in acceptance.CRITERIA}
    assert {str(i) for i in range(1, 16)} <= keys

import json
import subprocess
import sys

import pytest

from krank_lab import cli
from krank_lab.asym import coeffs
from krank_lab.report import ResultTable


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_krank_single_value(capsys):
    code, out, _ = run(capsys, "krank", "--k", "1", "--m", "0", "--n", "1")
    assert code == 0
    assert ResultTable.from_csv(out).rows == [(1, 0, 1, -1)]


def test_krank_row(capsys):
    code, out, _ = run(capsys, "--format", "json", "krank", "--k", "2", "--n", "4")
    assert code == 0
    rows = {r["m"]: r["count"] for r in json.loads(out)["rows"]}
    assert {m: c for m, c in rows.items() if c != "0"} == {-3: "1", -1: "1", 0: "1", 1: "1", 3: "1"}


def test_krank_support_bound(capsys):
    code, out, _ = run(capsys, "krank", "--k", "2", "--m", "9999", "--n", "4")
    assert code == 0 and ResultTable.from_csv(out).rows[0][3] == 0


@pytest.mark.parametrize(
    "argv",
    [
        ["krank", "--k", "0", "--n", "4"],
        ["krank", "--n", "4"],
        ["krank", "--k", "x", "--n", "4"],
        ["scan", "nothing"],
        ["scan", "logconcave", "--n", "5..1"],
        ["--ptable", "10", "krank", "--k", "1", "--n", "20"],
        ["verify", "--only", "99"],
        ["export", "ptable"],
        ["--config", "/nonexistent.json", "krank", "--k", "1", "--n", "2"],
    ],
)
def test_usage_errors_exit_1(capsys, argv):
    assert run(capsys, *argv)[0] == 1


def test_scan_pdiff_lists_exceptions(capsys):
    code, out, _ = run(capsys, "scan", "pdiff", "--l", "1..100")
    assert code == 2
    table = ResultTable.from_csv(out)
    assert (0, 6, 6, -12, "sign") in table.rows


def test_scan_exit_zero(capsys):
    assert run(capsys, "scan", "unimodal", "--k", "2", "--n", "39..100")[0] == 0
    assert run(capsys, "scan", "logconcave", "--k", "1..3", "--n", "..200")[0] == 0
    assert run(capsys, "scan", "edge", "--k", "1", "--n", "200")[0] == 0


def test_negative_ranges_parse(capsys, tmp_path):
    code, out, _ = run(capsys, "--out", str(tmp_path), "compare", "lc", "--k", "2", "--n", "2500", "--m", "-200..200", "--svg")
    assert code == 0
    table = ResultTable.from_csv(out)
    assert table.column("m")[0] == -200
    assert max(table.column("relative_gap")) <= 0.15
    assert (tmp_path / "fig1b.svg").exists()
    assert (tmp_path / "compare_lc_k2_n2500.csv").read_bytes() == out.encode()


def test_compare_ht(capsys, tmp_path):
    code, out, err = run(capsys, "--out", str(tmp_path), "--svg", "compare", "ht", "--k", "1", "--n", "2500")
    assert code == 0
    assert ResultTable.from_csv(out).provenance["sign_changes"] == "4"
    assert (tmp_path / "fig1a.svg").exists()


def test_compare_asym_and_mono(capsys):
    code, out, _ = run(capsys, "compare", "asym", "--k", "2", "--n", "2500", "--m", "0,10,50")
    assert code == 0 and max(ResultTable.from_csv(out).column("relative_error")) <= 0.01
    code, out, _ = run(capsys, "compare", "mono", "--k", "2", "--n", "2500", "--m", "0..100")
    assert code == 0 and max(ResultTable.from_csv(out).column("relative_gap")) <= 0.10


def test_export(capsys):
    code, out, _ = run(capsys, "export", "ptable", "--n", "10")
    assert code == 0 and ResultTable.from_csv(out).column("p")[-1] == 42
    code, out, _ = run(capsys, "export", "coeffs", "--kind", "gamma", "--ell", "2")
    assert code == 0 and ("1", "5/2", 1, "3") in [(str(r[0]), r[1], r[2], r[3]) for r in ResultTable.from_csv(out).rows]
    assert run(capsys, "export", "row", "--k", "1", "--n", "5")[0] == 0


def test_provenance_reproducible(capsys):
    _, a, _ = run(capsys, "krank", "--k", "3", "--n", "12")
    _, b, _ = run(capsys, "krank", "--k", "3", "--n", "12")
    assert a == b and "# config_hash:" in a


def test_verify_fast_subset(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "fast", "--only", "4,12,gamma")
    assert code == 0 and out.count("PASS") == 3


def test_gamma_tamper_is_caught(capsys, monkeypatch):
    original = coeffs.gamma_coeff

    def tampered(ell, mu, nu):
        value = original(ell, mu, nu)
        return -value if (ell, nu) == (1, 1) else value

    monkeypatch.setattr(coeffs, "gamma_coeff", tampered)
    code, out, err = run(capsys, "verify", "--suite", "fast", "--only", "gamma")
    assert code == 2
    assert "FAIL [gamma] gamma consistency check" in out
    assert "gamma consistency" in err


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "krank_lab", "krank", "--k", "1", "--m", "1", "--n", "1"],
        capture_output=True, text=True,
    )
    assert res.returncode == 0 and res.stdout.strip().endswith("1,1,1,1")

"""Command-line front end: ``krank-lab {krank,scan,compare,verify,export}``.

Exit status: 0 success, 1 usage or configuration error, 2 a mathematical
check failed (scan violations, failed acceptance criteria).
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path
from typing import Sequence

from . import acceptance
from . import inequality as ineq
from .asym import coeffs
from .asym.expansion import TruncationOrder
from .asym.numbers import HalfInt
from .config import RunConfig, load_config
from .errors import KRankError
from .exact import build_partition_table, krank_count, krank_row
from .report import ResultTable, Series, svg_plot

EXIT_OK, EXIT_USAGE, EXIT_FAILED = 0, 1, 2


class UsageError(Exception):
    pass


class Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------- ranges


_RANGE = re.compile(r"^(-?\d+)?\.\.(-?\d+)?$")


def parse_range(text: str | None, lo: int, hi: int) -> list[int]:
    """'a..b', '..b', 'a..', 'a,b,c' or 'a'; missing ends take lo / hi."""
    if text is None:
        return list(range(lo, hi + 1))
    text = text.strip()
    m = _RANGE.match(text)
    if m:
        a = int(m.group(1)) if m.group(1) is not None else lo
        b = int(m.group(2)) if m.group(2) is not None else hi
        if a > b:
            raise UsageError(f"empty range {text!r}")
        return list(range(a, b + 1))
    try:
        return [int(part) for part in text.split(",")]
    except ValueError:
        raise UsageError(f"cannot parse range {text!r}") from None


def normalize_argv(argv: Sequence[str]) -> list[str]:
    """Glue option values that look like negative numbers or ranges
    ('--m -200..200') onto their flag so argparse does not read them as flags."""
    out: list[str] = []
    i = 0
    argv = list(argv)
    while i < len(argv):
        tok = argv[i]
        nxt = argv[i + 1] if i + 1 < len(argv) else None
        if tok.startswith("--") and "=" not in tok and nxt is not None and re.match(r"^-\d", nxt):
            out.append(f"{tok}={nxt}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


# ---------------------------------------------------------------- parser


def _add_globals(p: argparse.ArgumentParser, suppress: bool) -> None:
    d = argparse.SUPPRESS if suppress else None
    p.add_argument("--config", default=d, help="JSON run configuration")
    p.add_argument("--out", default=d, help="directory for output files")
    p.add_argument("--format", choices=("csv", "json"), default=d, help="table format (default csv)")
    p.add_argument("--svg", action="store_true", default=argparse.SUPPRESS if suppress else False,
                   help="also write an SVG plot")
    p.add_argument("--workers", type=int, default=d, help="worker processes for scans")
    p.add_argument("--ptable", type=int, default=d, help="size of the partition-number table")


def build_parser() -> Parser:
    parser = Parser(prog="krank-lab", description="Exact and asymptotic k-rank statistics.")
    _add_globals(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text):
        p = sub.add_parser(name, help=help_text)
        _add_globals(p, suppress=True)
        return p

    p = add("krank", "N_k(m, n), or the whole row when --m is omitted")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int, required=True)

    p = add("scan", "exhaustive inequality scans")
    p.add_argument("statistic", choices=("logconcave", "unimodal", "pdiff", "edge"))
    p.add_argument("--k", help="k range, e.g. 1..10")
    p.add_argument("--n", help="n range, e.g. ..1000")
    p.add_argument("--l", help="l range for pdiff, e.g. 71..2000")

    p = add("compare", "exact values against asymptotic forms")
    p.add_argument("target", choices=("lc", "mono", "asym", "ht", "disc"))
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", help="m range or list")
    p.add_argument("--j", type=int, default=0, help="shift j for asym")

    p = add("verify", "run the acceptance suite")
    p.add_argument("--suite", choices=acceptance.SUITES, default="fast")
    p.add_argument("--only", help="comma-separated criterion keys")

    p = add("export", "dump tables")
    p.add_argument("what", choices=("ptable", "row", "coeffs"))
    p.add_argument("--k", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--kind", choices=("a", "gamma", "c"), default="a")
    p.add_argument("--ell", type=int, default=4, help="largest coefficient index")
    return parser


# ---------------------------------------------------------------- helpers


class Session:
    """Holds the validated config and is the single writer of output files."""

    def __init__(self, args, argv: Sequence[str]):
        cfg = load_config(getattr(args, "config", None))
        self.cfg: RunConfig = cfg.replace(workers=getattr(args, "workers", None), ptable=getattr(args, "ptable", None))
        self.fmt = getattr(args, "format", None) or ("json" if "json" in self.cfg.formats else "csv")
        self.svg = bool(getattr(args, "svg", False)) or "svg" in self.cfg.formats
        self.out = getattr(args, "out", None) or self.cfg.out_dir
        self.command = "krank-lab " + " ".join(argv)

    def table(self, need: int):
        size = need if self.cfg.ptable is None else self.cfg.ptable
        if size < need:
            raise UsageError(f"--ptable {size} is too small; this command needs p up to {need}")
        return build_partition_table(size)

    def new_table(self, columns) -> ResultTable:
        return ResultTable(columns, provenance=self.cfg.provenance(self.command))

    def emit(self, table: ResultTable, name: str) -> None:
        text = table.render(self.fmt)
        sys.stdout.write(text)
        if self.out:
            self._write(f"{name}.{self.fmt}", text)

    def emit_svg(self, name: str, svg: str) -> None:
        if self.svg:
            self._write(f"{name}.svg", svg)

    def _write(self, filename: str, text: str) -> None:
        directory = Path(self.out or ".")
        directory.mkdir(parents=True, exist_ok=True)
        (directory / filename).write_text(text, encoding="utf-8")


def _note(msg: str) -> None:
    print(msg, file=sys.stderr)


# ---------------------------------------------------------------- commands


def cmd_krank(args, s: Session) -> int:
    if args.n < 0 or args.k < 1:
        raise UsageError("need k >= 1 and n >= 0")
    tab = s.table(args.n)
    if args.m is not None:
        out = s.new_table([("k", "int"), ("m", "int"), ("n", "int"), ("count", "exact")])
        out.add(args.k, args.m, args.n, krank_count(args.k, args.m, args.n, tab))
        s.emit(out, f"krank_k{args.k}_m{args.m}_n{args.n}")
    else:
        row = krank_row(args.k, args.n, tab)
        out = s.new_table([("m", "int"), ("count", "exact")])
        for m in range(-args.n, args.n + 1):
            out.add(m, row[m])
        s.emit(out, f"krank_k{args.k}_n{args.n}")
    return EXIT_OK


def cmd_scan(args, s: Session) -> int:
    cfg = s.cfg
    stat = args.statistic
    out = s.new_table([("k", "int"), ("m", "int"), ("n", "int"), ("witness", "exact"), ("kind", "text")])
    reports = []
    if stat == "pdiff":
        ls = parse_range(args.l, 71, 2000)
        tab = s.table(max(ls) + 2)
        reports.append(ineq.pdiff_logconcave(min(ls), max(ls), tab))
    else:
        k_lo = max(cfg.k_lo, 2) if stat == "unimodal" else cfg.k_lo
        ks = parse_range(args.k, k_lo, cfg.k_hi)
        if min(ks) < 1:
            raise UsageError("k must be >= 1")
        ns = parse_range(args.n, 0, cfg.n_hi)
        tab = s.table(max(ns))
        for k in ks:
            if stat == "logconcave":
                reports.append(ineq.logconcavity_scan(k, min(ns), max(ns), tab, cfg.workers))
            elif stat == "unimodal":
                reports.append(ineq.unimodality_scan(k, min(ns), max(ns), tab, cfg.workers))
            else:
                for n in ns:
                    if n >= ineq.EDGE_MIN_OFFSET + 2 * k:
                        reports.append(ineq.edge_logconcavity(k, n, tab))
    checked = sum(r.checked for r in reports)
    violations = [v for r in reports for v in r.violations]
    for v in violations:
        out.add(v.k, v.m, v.n, v.witness, v.kind)
    out.provenance["checked"] = str(checked)
    out.provenance["violations"] = str(len(violations))
    if stat == "pdiff" and reports:
        out.provenance["summary"] = json.dumps(reports[0].to_dict()["summary"], sort_keys=True)
    s.emit(out, f"scan_{stat}")
    _note(f"{stat}: {checked} checked, {len(violations)} violations")
    return EXIT_FAILED if violations else EXIT_OK


def cmd_compare(args, s: Session) -> int:
    k, n, target = args.k, args.n, args.target
    if k < 1 or n < 1:
        raise UsageError("need k >= 1 and n >= 1")
    if target == "lc":
        ms = parse_range(args.m, -200, 200)
        rows = ineq.compare_lc_table(k, n, min(ms), max(ms), s.table(n))
        out = s.new_table([("m", "int"), ("LN", "float"), ("aLN", "float"), ("relative_gap", "float"), ("note", "text")])
        for r in rows:
            out.add(r.m, r.LN, r.aLN, r.relative_gap, r.note)
        s.emit(out, f"compare_lc_k{k}_n{n}")
        xs = [r.m for r in rows]
        s.emit_svg("fig1b", svg_plot(
            [Series(f"LN{k}", xs, [r.LN for r in rows], "red"), Series(f"aLN{k}", xs, [r.aLN for r in rows], "blue")],
            title=f"-D2 log N_{k}(m, {n})", provenance=out.provenance,
        ))
    elif target == "mono":
        ms = parse_range(args.m, 0, 100)
        tab = s.table(n + max(abs(min(ms)), abs(max(ms))) + 1)
        rows = ineq.monotonicity_table(k, n, min(ms), max(ms), tab)
        out = s.new_table([("m", "int"), ("exact_ratio", "float"), ("mono_rhs", "float"), ("relative_gap", "float")])
        for r in rows:
            out.add(r.m, r.exact_ratio, r.mono_rhs, r.relative_gap)
        s.emit(out, f"compare_mono_k{k}_n{n}")
        xs = [r.m for r in rows]
        s.emit_svg("mono", svg_plot(
            [Series("exact", xs, [r.exact_ratio for r in rows], "red"), Series("asymptotic", xs, [r.mono_rhs for r in rows], "blue")],
            title=f"monotonicity ratio, k={k}, n={n}", provenance=out.provenance,
        ))
    elif target == "asym":
        ms = parse_range(args.m or "0,10,50", 0, 0)
        order = TruncationOrder(s.cfg.p, s.cfg.h_max, s.cfg.mantissa_bits)
        rows = ineq.compare_asym_table(k, n, ms, s.table(n), order=order, j=args.j)
        out = s.new_table([("m", "int"), ("j", "int"), ("exact", "exact"), ("asymptotic", "float"), ("relative_error", "float")])
        for r in rows:
            out.add(r.m, r.j, r.exact, r.asymptotic, r.relative_error)
        s.emit(out, f"compare_asym_k{k}_n{n}")
    elif target == "ht":
        half = ineq.default_ht_halfwidth(n)
        ms = parse_range(args.m, -half, half)
        lo, hi = min(ms), max(ms)
        tab = s.table(n)
        count, where = ineq.ht_sign_changes(k, n, lo, hi, tab)
        out = s.new_table([("m", "int"), ("sign", "int"), ("HT", "float"), ("numerator", "exact")])
        recs = [ineq.ht_exact(k, m, n, tab) for m in range(lo, hi + 1)]
        for r in recs:
            out.add(r.m, r.sign, r.value, r.numerator)
        out.provenance["window"] = f"{lo}..{hi}"
        out.provenance["sign_changes"] = str(count)
        s.emit(out, f"compare_ht_k{k}_n{n}")
        _note(f"HT_{k} sign changes on [{lo}, {hi}]: {count} at {where}")
        xs = [r.m for r in recs]
        s.emit_svg("fig1a", svg_plot(
            [Series(f"HT{k}", xs, [r.value for r in recs], "red")],
            title=f"HT_{k}(m, {n})", ticks=[b for _, b in where], provenance=out.provenance,
        ))
    else:
        ms = parse_range(args.m, -100, 100)
        rows = ineq.compare_disc_table(k, n, min(ms), max(ms), s.table(n))
        out = s.new_table([("m", "int"), ("sign", "int"), ("L_exact", "float"), ("L_asym", "float"), ("relative_gap", "float")])
        for r in rows:
            out.add(r.m, r.exact_sign, r.L_exact, r.L_asym, r.relative_gap)
        s.emit(out, f"compare_disc_k{k}_n{n}")
    return EXIT_OK


def cmd_verify(args, s: Session) -> int:
    only = [x.strip() for x in args.only.split(",")] if args.only else None
    try:
        chosen = acceptance.select(args.suite, only)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    ctx = acceptance.make_context(workers=s.cfg.workers)
    results = acceptance.run_suite(args.suite, [c.key for c in chosen], ctx, report=lambda o: print(o.line(), flush=True))
    failed = [r for r in results if not r.passed]
    if failed:
        names = ", ".join(f"[{r.key}] {r.title}" for r in failed)
        _note(f"FAILED: {names}")
        return EXIT_FAILED
    _note(f"all {len(results)} criteria passed")
    return EXIT_OK


def cmd_export(args, s: Session) -> int:
    if args.what == "ptable":
        if args.n is None or args.n < 0:
            raise UsageError("export ptable needs --n >= 0")
        tab = s.table(args.n)
        out = s.new_table([("n", "int"), ("p", "exact")])
        for n in range(args.n + 1):
            out.add(n, tab.p(n))
        s.emit(out, f"ptable_{args.n}")
    elif args.what == "row":
        if args.k is None or args.n is None:
            raise UsageError("export row needs --k and --n")
        args.m = None
        return cmd_krank(args, s)
    else:
        L = args.ell
        if L < 0:
            raise UsageError("--ell must be >= 0")
        mus = [HalfInt(t) for t in range(-9, 10, 2)]
        if args.kind == "a":
            out = s.new_table([("j", "int"), ("mu", "text"), ("value", "text")])
            for j in range(L + 1):
                for mu in mus:
                    out.add(j, str(mu), str(coeffs.a_coeff(j, mu)))
        elif args.kind == "gamma":
            out = s.new_table([("ell", "int"), ("mu", "text"), ("nu", "int"), ("value", "text")])
            for ell in range(L + 1):
                for mu in mus:
                    for nu in range(0, 2 * ell + 1):
                        out.add(ell, str(mu), nu, str(coeffs.gamma_coeff(ell, mu, nu)))
        else:
            out = s.new_table([("ell", "int"), ("j", "int"), ("value", "text")])
            for ell in range(1, L + 1):
                for j in range(-2, 3):
                    out.add(ell, j, str(coeffs.c_coeff(ell, j)))
        s.emit(out, f"coeffs_{args.kind}")
    return EXIT_OK


COMMANDS = {"krank": cmd_krank, "scan": cmd_scan, "compare": cmd_compare, "verify": cmd_verify, "export": cmd_export}


def main(argv: Sequence[str] | None = None) -> int:
    argv = normalize_argv(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        session = Session(args, argv)
        return COMMANDS[args.command](args, session)
    except (UsageError, KRankError, ValueError) as exc:
        print(f"krank-lab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

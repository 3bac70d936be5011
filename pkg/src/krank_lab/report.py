"""Result tables with CSV/JSON round-tripping and a minimal SVG line plot.

Exact integers are always written as decimal strings; floats use 17
significant digits so that they read back bit-for-bit.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable, Sequence
from xml.sax.saxutils import escape

from .errors import ConfigError

SCHEMA_VERSION = "krank-lab/table/1"
KINDS = ("int", "exact", "float", "text")


def _encode(value: Any, kind: str) -> str | int | None:
    # text cells have no null; None and "" are the same empty cell
    if kind == "text":
        return "" if value is None else str(value)
    if value is None:
        return None
    if kind == "exact":
        return str(int(value))
    if kind == "int":
        return int(value)
    if kind == "float":
        x = float(value)
        if math.isnan(x) or math.isinf(x):
            return repr(x)
        return format(x, ".17g")


def _decode(value: Any, kind: str) -> Any:
    if kind == "text":
        return "" if value is None else str(value)
    if value is None or value == "":
        return None
    if kind in ("exact", "int"):
        return int(value)
    if kind == "float":
        return float(value)


@dataclass
class ResultTable:
    columns: list[tuple[str, str]]
    rows: list[tuple] = field(default_factory=list)
    provenance: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        for name, kind in self.columns:
            if kind not in KINDS:
                raise ConfigError(f"column {name!r} has unknown kind {kind!r}")

    @property
    def names(self) -> list[str]:
        return [name for name, _ in self.columns]

    def add(self, *values) -> None:
        if len(values) != len(self.columns):
            raise ConfigError(f"row has {len(values)} values, table has {len(self.columns)} columns")
        self.rows.append(tuple(values))

    def column(self, name: str) -> list:
        i = self.names.index(name)
        return [row[i] for row in self.rows]

    def encoded_rows(self) -> list[list]:
        return [[_encode(v, kind) for v, (_, kind) in zip(row, self.columns)] for row in self.rows]

    def canonical(self) -> tuple:
        """Hashable content used to compare tables after a round trip."""
        return (
            tuple(self.columns),
            tuple(tuple(r) for r in self.encoded_rows()),
            tuple(sorted(self.provenance.items())),
        )

    # -- CSV

    def to_csv(self) -> str:
        buf = io.StringIO()
        for key, val in sorted(self.provenance.items()):
            buf.write(f"# {key}: {val}\n")
        buf.write("# schema: " + ",".join(f"{n}:{k}" for n, k in self.columns) + "\n")
        writer = csv.writer(buf, lineterminator="\r\n")
        writer.writerow(self.names)
        for row in self.encoded_rows():
            writer.writerow(["" if v is None else v for v in row])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "ResultTable":
        provenance: dict[str, str] = {}
        columns: list[tuple[str, str]] | None = None
        lines = text.split("\n")
        i = 0
        # comment lines only precede the header row
        while i < len(lines) and lines[i].startswith("# "):
            key, _, val = lines[i][2:].rstrip("\r").partition(": ")
            if key == "schema":
                columns = [tuple(c.rsplit(":", 1)) for c in val.split(",")]
            else:
                provenance[key] = val
            i += 1
        body = ["\n".join(lines[i:])]
        if columns is None:
            raise ConfigError("CSV input has no schema line")
        reader = csv.reader(io.StringIO("".join(body)))
        header = next(reader)
        if header != [n for n, _ in columns]:
            raise ConfigError("CSV header does not match its schema line")
        rows = [tuple(_decode(v, k) for v, (_, k) in zip(r, columns)) for r in reader if r]
        return cls(columns, rows, provenance)

    # -- JSON

    def to_json(self) -> str:
        doc = {
            "schema": {"version": SCHEMA_VERSION, "columns": [{"name": n, "kind": k} for n, k in self.columns]},
            "provenance": dict(sorted(self.provenance.items())),
            "rows": [dict(zip(self.names, r)) for r in self.encoded_rows()],
        }
        return json.dumps(doc, indent=1) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "ResultTable":
        doc = json.loads(text)
        columns = [(c["name"], c["kind"]) for c in doc["schema"]["columns"]]
        rows = [tuple(_decode(r.get(n), k) for n, k in columns) for r in doc["rows"]]
        return cls(columns, rows, dict(doc["provenance"]))

    def render(self, fmt: str) -> str:
        if fmt == "csv":
            return self.to_csv()
        if fmt == "json":
            return self.to_json()
        raise ConfigError(f"unknown format {fmt!r}")


def read_table(path: str | Path) -> ResultTable:
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if path.suffix == ".json":
        return ResultTable.from_json(text)
    return ResultTable.from_csv(text)


# ---------------------------------------------------------------- SVG


@dataclass
class Series:
    label: str
    xs: Sequence[float]
    ys: Sequence[float | None]
    color: str = "black"


def svg_plot(
    series: Iterable[Series],
    title: str = "",
    ticks: Sequence[float] = (),
    provenance: dict[str, str] | None = None,
    width: int = 640,
    height: int = 400,
) -> str:
    """A standalone SVG 1.1 document: axes, one polyline per series, and
    optional vertical tick marks (used for sign changes)."""
    series = list(series)
    pts = [(x, y) for s in series for x, y in zip(s.xs, s.ys) if y is not None and math.isfinite(y)]
    if not pts:
        raise ConfigError("nothing to plot")
    x0, x1 = min(p[0] for p in pts), max(p[0] for p in pts)
    y0, y1 = min(p[1] for p in pts), max(p[1] for p in pts)
    y0, y1 = min(y0, 0.0), max(y1, 0.0)
    if x1 == x0:
        x1 = x0 + 1
    if y1 == y0:
        y1 = y0 + 1
    ml, mr, mt, mb = 60, 20, 30, 40

    def sx(x):
        return ml + (x - x0) / (x1 - x0) * (width - ml - mr)

    def sy(y):
        return height - mb - (y - y0) / (y1 - y0) * (height - mt - mb)

    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
    ]
    if provenance:
        meta = "; ".join(f"{k}: {v}" for k, v in sorted(provenance.items()))
        out.append(f"<desc>{escape(meta)}</desc>")
    if title:
        out.append(f'<text x="{width / 2:.1f}" y="18" text-anchor="middle" font-size="14">{escape(title)}</text>')
    # axes: x axis at y = 0, y axis at the left edge
    out.append(f'<line x1="{ml}" y1="{sy(0):.2f}" x2="{width - mr}" y2="{sy(0):.2f}" stroke="gray"/>')
    out.append(f'<line x1="{ml}" y1="{mt}" x2="{ml}" y2="{height - mb}" stroke="gray"/>')
    for val in (x0, x1):
        out.append(f'<text x="{sx(val):.2f}" y="{height - mb + 15}" text-anchor="middle" font-size="10">{val:g}</text>')
    for val in (y0, y1):
        out.append(f'<text x="{ml - 4}" y="{sy(val):.2f}" text-anchor="end" font-size="10">{val:.3g}</text>')
    for t in ticks:
        out.append(f'<line x1="{sx(t):.2f}" y1="{mt}" x2="{sx(t):.2f}" y2="{height - mb}" stroke="red" stroke-dasharray="3,3"/>')
    for i, s in enumerate(series):
        coords = " ".join(
            f"{sx(x):.2f},{sy(y):.2f}" for x, y in zip(s.xs, s.ys) if y is not None and math.isfinite(y)
        )
        out.append(f'<polyline fill="none" stroke="{s.color}" stroke-width="1.5" points="{coords}"/>')
        out.append(
            f'<text x="{width - mr - 4}" y="{mt + 14 * (i + 1)}" text-anchor="end" font-size="11" '
            f'fill="{s.color}">{escape(s.label)}</text>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"

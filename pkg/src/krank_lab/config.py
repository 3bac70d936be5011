"""Run configuration: validated once, hashed for provenance."""

from __future__ import annotations

import dataclasses
import hashlib
import json
import os
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .errors import ConfigError
from .exact import MAX_TABLE_SIZE

FORMATS = ("csv", "json", "svg")
# fields that change output content; workers and out_dir do not
_HASHED = ("p", "h_max", "mantissa_bits", "ptable", "k_lo", "k_hi", "n_hi", "formats")


@dataclass(frozen=True)
class RunConfig:
    p: int = 3
    h_max: int = 5
    mantissa_bits: int = 128
    ptable: int | None = None
    k_lo: int = 1
    k_hi: int = 10
    n_hi: int = 1000
    workers: int = 1
    out_dir: str | None = None
    formats: tuple[str, ...] = ("csv",)

    def __post_init__(self):
        ints = {f.name: getattr(self, f.name) for f in dataclasses.fields(self) if f.type in ("int", "int | None")}
        for name, val in ints.items():
            if val is not None and (not isinstance(val, int) or isinstance(val, bool)):
                raise ConfigError(f"{name} must be an integer, got {val!r}")
        if self.p < 1 or self.h_max < 1:
            raise ConfigError("p and h_max must be >= 1")
        if self.mantissa_bits < 53:
            raise ConfigError("mantissa_bits must be >= 53")
        if self.ptable is not None and not 0 <= self.ptable <= MAX_TABLE_SIZE:
            raise ConfigError(f"ptable must lie in [0, {MAX_TABLE_SIZE}]")
        if not 1 <= self.k_lo <= self.k_hi:
            raise ConfigError(f"need 1 <= k_lo <= k_hi, got {self.k_lo}..{self.k_hi}")
        if self.n_hi < 0:
            raise ConfigError("n_hi must be >= 0")
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")
        bad = [f for f in self.formats if f not in FORMATS]
        if bad or not self.formats:
            raise ConfigError(f"formats must be a nonempty subset of {FORMATS}, got {self.formats}")

    def replace(self, **changes) -> "RunConfig":
        changes = {k: v for k, v in changes.items() if v is not None}
        return dataclasses.replace(self, **changes)

    def content_dict(self) -> dict:
        d = {name: getattr(self, name) for name in _HASHED}
        d["formats"] = list(d["formats"])
        return d

    def hash(self) -> str:
        blob = json.dumps(self.content_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()[:16]

    def provenance(self, command: str) -> dict[str, str]:
        return {"command": command, "config_hash": self.hash(), "version": __version__}


def default_workers() -> int:
    return len(os.sched_getaffinity(0)) if hasattr(os, "sched_getaffinity") else (os.cpu_count() or 1)


def load_config(path: str | Path | None = None, env: dict | None = None) -> RunConfig:
    """Defaults, then the JSON file (if any), then the WORKERS variable."""
    env = os.environ if env is None else env
    values: dict = {"workers": default_workers()}
    if path is not None:
        try:
            raw = json.loads(Path(path).read_text(encoding="utf-8"))
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
        if not isinstance(raw, dict):
            raise ConfigError("config file must hold a JSON object")
        known = {f.name for f in dataclasses.fields(RunConfig)}
        unknown = set(raw) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        if "formats" in raw:
            raw["formats"] = tuple(raw["formats"])
        values.update(raw)
    if env.get("WORKERS"):
        try:
            values["workers"] = int(env["WORKERS"])
        except ValueError as exc:
            raise ConfigError(f"WORKERS={env['WORKERS']!r} is not an integer") from exc
    return RunConfig(**values)

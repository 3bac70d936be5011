import json
import xml.etree.ElementTree as ET

import pytest

from krank_lab.config import RunConfig, load_config
from krank_lab.errors import ConfigError
from krank_lab.report import ResultTable, Series, read_table, svg_plot


def _sample():
    t = ResultTable(
        [("m", "int"), ("count", "exact"), ("ratio", "float"), ("note", "text")],
        provenance={"command": "krank-lab test", "config_hash": "abc", "version": "0"},
    )
    t.add(-3, 24061467864032622473692149727991, 0.1 + 0.2, "a, \"quoted\" note")
    t.add(0, -7, None, "")
    return t


def test_csv_round_trip():
    t = _sample()
    back = ResultTable.from_csv(t.to_csv())
    assert back.canonical() == t.canonical()
    assert back.rows[0][1] == 24061467864032622473692149727991
    assert back.rows[0][2] == 0.1 + 0.2


def test_json_round_trip_and_string_integers():
    t = _sample()
    text = t.to_json()
    doc = json.loads(text)
    assert set(doc) == {"schema", "provenance", "rows"}
    assert doc["rows"][0]["count"] == "24061467864032622473692149727991"
    back = ResultTable.from_json(text)
    assert back.canonical() == t.canonical()
    assert ResultTable.from_csv(t.to_csv()).canonical() == back.canonical()


def test_read_table_by_suffix(tmp_path):
    t = _sample()
    (tmp_path / "x.json").write_text(t.to_json())
    (tmp_path / "x.csv").write_text(t.to_csv())
    assert read_table(tmp_path / "x.json").canonical() == read_table(tmp_path / "x.csv").canonical()


def test_floats_use_17_digits():
    t = ResultTable([("x", "float")])
    t.add(1 / 3)
    assert "0.33333333333333331" in t.to_csv()


def test_bad_kind_and_width():
    with pytest.raises(ConfigError):
        ResultTable([("x", "complex")])
    t = ResultTable([("x", "int")])
    with pytest.raises(ConfigError):
        t.add(1, 2)


def test_svg_is_well_formed():
    svg = svg_plot([Series("a", [0, 1, 2], [1.0, None, -2.0])], title="t <1>", ticks=[1], provenance={"k": "v"})
    root = ET.fromstring(svg.encode())
    assert root.tag.endswith("svg") and root.get("version") == "1.1"
    assert any(el.tag.endswith("polyline") for el in root)


def test_config_defaults_and_validation():
    cfg = RunConfig()
    assert (cfg.p, cfg.h_max, cfg.k_lo, cfg.k_hi, cfg.n_hi) == (3, 5, 1, 10, 1000)
    with pytest.raises(ConfigError):
        RunConfig(p=0)
    with pytest.raises(ConfigError):
        RunConfig(formats=("pdf",))
    with pytest.raises(ConfigError):
        RunConfig(k_lo=3, k_hi=2)
    with pytest.raises(ConfigError):
        RunConfig(workers=0)


def test_config_hash_ignores_workers_and_out_dir():
    a = RunConfig(workers=1, out_dir="x")
    b = RunConfig(workers=4, out_dir="y")
    assert a.hash() == b.hash()
    assert RunConfig(p=4).hash() != a.hash()


def test_load_config_file_and_env(tmp_path):
    path = tmp_path / "c.json"
    path.write_text(json.dumps({"p": 4, "formats": ["json", "svg"]}))
    cfg = load_config(path, env={"WORKERS": "3"})
    assert cfg.p == 4 and cfg.formats == ("json", "svg") and cfg.workers == 3
    path.write_text(json.dumps({"bogus": 1}))
    with pytest.raises(ConfigError):
        load_config(path, env={})
    with pytest.raises(ConfigError):
        load_config(None, env={"WORKERS": "many"})
    path.write_text("{not json")
    with pytest.raises(ConfigError):
        load_config(path, env={})

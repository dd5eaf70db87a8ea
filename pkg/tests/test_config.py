import json
import math

import numpy as np
import pytest

from src.common.config import get_config_value, load_config, save_config
from src.common.utils import chunk_ranges, sha256_file
from src.system.json import load_json, read_json, safe_dumps, safe_loads, write_json
from src.system.manifest import MANIFEST_NAME, RunManifest
from src.system.startup import REQUIRED_DIRS, ensure_workspace_dirs, new_result_run_dir


def test_shipped_defaults():
    cfg = load_config()
    assert get_config_value(cfg, "geometry.tolerance", 0.0) == pytest.approx(1e-9)
    assert get_config_value(cfg, "domination.exact_cap", 0) == 24
    assert get_config_value(cfg, "simulation.locate_chunk", 0) == 4096


def test_get_config_value_coercion_and_bounds():
    cfg = {"a": {"b": "12", "c": "x", "d": -3}}
    assert get_config_value(cfg, "a.b", 1) == 12
    assert get_config_value(cfg, "a.c", 5) == 5
    assert get_config_value(cfg, "a.d", 1, minimum=0) == 1
    assert get_config_value(cfg, "a.b", 1, maximum=10) == 1
    assert get_config_value(cfg, "a.missing", 7) == 7
    assert get_config_value(cfg, "a.b.c", None) is None


def test_save_and_reload(tmp_path):
    p = tmp_path / "cfg.json"
    save_config({"domination": {"exact_cap": 10}}, p)
    assert load_config(p)["domination"]["exact_cap"] == 10
    save_config({"domination": {"exact_cap": 12}}, p)
    assert load_config(p)["domination"]["exact_cap"] == 12
    assert load_config(tmp_path / "absent.json") == {}


def test_non_finite_values_are_written_as_null_and_inf():
    text = safe_dumps({"b": float("nan"), "a": [float("inf"), -math.inf], "c": np.float64(1.5), "d": np.int64(3)})
    assert json.loads(text) == {"a": ["inf", "-inf"], "b": None, "c": 1.5, "d": 3}
    assert text.index('"a"') < text.index('"b"')
    assert "NaN" not in text


def test_write_json_is_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "sub" / "b.json"
    write_json(a, {"z": 1, "y": (1, 2), "x": np.array([0.5, 1.0])})
    write_json(b, {"x": [0.5, 1.0], "y": [1, 2], "z": 1})
    assert a.read_bytes() == b.read_bytes()


def test_read_json_defaults(tmp_path):
    assert read_json(tmp_path / "missing.json", default={"k": 1}) == {"k": 1}
    bad = tmp_path / "bad.json"
    bad.write_text("{oops")
    assert read_json(bad, default=None) is None
    with pytest.raises(json.JSONDecodeError):
        load_json(bad)
    assert safe_loads("[1, 2]") == [1, 2]
    assert safe_loads("nope", default=0) == 0


def test_manifest(tmp_path):
    src = tmp_path / "sites.csv"
    src.write_text("x,y\n0,0\n")
    m = RunManifest(command="triangulate", config={"sites": "sites.csv"}, seed=3)
    m.add_input(src)
    m.add_output(tmp_path / "out.csv")
    m.add_output(tmp_path / "out.csv")
    path = m.write(tmp_path)
    assert path.name == MANIFEST_NAME
    data = json.loads(path.read_text())
    assert data["inputs"] == {"sites.csv": sha256_file(src)}
    assert data["outputs"] == ["out.csv"]
    assert data["seed"] == 3
    assert {"version", "python", "wall_seconds"} <= set(data)


def test_result_run_dirs_do_not_collide(tmp_path):
    first = new_result_run_dir(tmp_path)
    second = new_result_run_dir(tmp_path)
    assert first != second
    assert first.parent == second.parent == tmp_path / "result"


def test_workspace_dirs(tmp_path):
    ensure_workspace_dirs(tmp_path, extra_dirs=["plots"])
    for name in list(REQUIRED_DIRS) + ["plots"]:
        assert (tmp_path / name).is_dir()


def test_chunk_ranges():
    assert list(chunk_ranges(10, 4)) == [(0, 4), (4, 8), (8, 10)]
    assert list(chunk_ranges(0, 4)) == []
    assert list(chunk_ranges(3, 0)) == [(0, 1), (1, 2), (2, 3)]

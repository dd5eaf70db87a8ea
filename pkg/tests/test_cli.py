import json

import pandas as pd
import pytest

from src.asymptotics.exceptions import InvalidParam
from src.delaunay.exceptions import AllCollinear
from src.pcd.exceptions import EmptyX, InstanceTooLarge
from src.system import CLI
from src.system.CLI import (
    EXIT_INTERNAL,
    EXIT_LIMIT,
    EXIT_OK,
    EXIT_USER,
    exit_code_for,
    limits_table,
    parse_grid,
    run_command,
)
from src.system.startup import project_root

DATA = project_root() / "data"


def test_parse_grid():
    assert parse_grid("1,1.5,2") == [1.0, 1.5, 2.0]
    assert parse_grid("1:2:0.25") == [1.0, 1.25, 1.5, 1.75, 2.0]
    assert parse_grid("0:1:0.3") == [0.0, 0.3, 0.6, 0.9]
    for bad in ("", "a,b", "2:1:0.5", "0:1:0", "0:1"):
        with pytest.raises(InvalidParam):
            parse_grid(bad)


def test_limits_table_columns():
    pe = limits_table("pe", [1.0, 2.0])
    assert list(pe.columns) == ["r", "mu", "nu", "p_r"]
    assert pe["mu"].iloc[0] == pytest.approx(37 / 216)
    assert pe["p_r"].iloc[0] == 1.0
    assert pd.isna(pe["p_r"].iloc[1])
    cs = limits_table("cs", [1.0])
    assert list(cs.columns) == ["tau", "mu", "nu"]


def test_exit_codes():
    assert exit_code_for(InstanceTooLarge("big")) == EXIT_LIMIT
    assert exit_code_for(EmptyX("none")) == EXIT_USER
    assert exit_code_for(AllCollinear("line")) == EXIT_USER
    assert exit_code_for(FileNotFoundError("x")) == EXIT_USER
    assert exit_code_for(RuntimeError("bug")) == EXIT_INTERNAL


def test_usage_errors(capsys):
    assert run_command([]) == EXIT_USER
    assert run_command(["pcd", "--x", "a.csv"]) == EXIT_USER
    assert run_command(["limits", "--family", "as", "--param-grid", "1"]) == EXIT_USER
    assert "usage:" in capsys.readouterr().out


def test_triangulate(tmp_path):
    out = tmp_path / "tri" / "triangles.csv"
    assert run_command(["triangulate", "--sites", str(DATA / "example_y.csv"), "--out", str(out)]) == EXIT_OK
    tri = pd.read_csv(out)
    assert list(tri.columns) == ["triangle", "i", "j", "k", "nb_i", "nb_j", "nb_k", "area"]
    summary = json.loads((out.parent / "triangles_summary.json").read_text())
    assert summary["n_sites"] == 8
    assert summary["triangle_area_sum"] == pytest.approx(summary["hull_area"])
    assert summary["n_triangles"] == 2 * 8 - 2 - summary["hull_size"]
    hull = pd.read_csv(out.parent / "triangles_hull.csv")
    assert len(hull) == summary["hull_size"]
    manifest = json.loads((out.parent / "manifest.json").read_text())
    assert manifest["command"] == "triangulate"
    assert "example_y.csv" in manifest["inputs"]


def test_triangulate_collinear_sites_is_a_user_error(tmp_path, capsys):
    sites = tmp_path / "line.csv"
    sites.write_text("x,y\n0,0\n1,1\n2,2\n")
    assert run_command(["tri", "--sites", str(sites), "--out", str(tmp_path / "t.csv")]) == EXIT_USER
    assert "AllCollinear" in capsys.readouterr().out


def test_missing_input_file(tmp_path):
    code = run_command(["triangulate", "--sites", str(tmp_path / "nope.csv"), "--out", str(tmp_path / "t.csv")])
    assert code == EXIT_USER


def test_pcd_both_gammas(tmp_path):
    out = tmp_path / "pcd"
    code = run_command([
        "pcd", "--x", str(DATA / "example_x.csv"), "--y", str(DATA / "example_y.csv"),
        "--map", "pe:r=1.5", "--gamma", "both", "--out", str(out),
    ])
    assert code == EXIT_OK
    summary = json.loads((out / "summary.json").read_text())
    assert summary["map"] == "pe:r=1.5,M=CM,method=lines"
    assert summary["n"] + summary["excluded"] == summary["n_x"]
    assert 1 <= summary["gamma_exact"] <= summary["gamma_greedy"]
    assert len(summary["dominating_set"]) == summary["gamma_exact"]
    arcs = pd.read_csv(out / "arcs.csv")
    assert len(arcs) == summary["n_arcs"]
    excluded = pd.read_csv(out / "excluded.csv")
    assert len(excluded) == summary["excluded"]
    manifest = json.loads((out / "manifest.json").read_text())
    assert set(manifest["outputs"]) == {"arcs.csv", "excluded.csv", "summary.json"}


def test_pcd_bad_map_is_a_user_error(tmp_path):
    code = run_command([
        "pcd", "--x", str(DATA / "example_x.csv"), "--y", str(DATA / "example_y.csv"),
        "--map", "pe:r=0.5", "--out", str(tmp_path),
    ])
    assert code == EXIT_USER


def test_pcd_exact_over_the_limit(tmp_path, monkeypatch):
    import src.pcd.domination as domination

    def too_large(g, **kw):
        raise InstanceTooLarge("node budget exhausted")

    monkeypatch.setattr(domination, "minimum_dominating_set", too_large)
    args = ["pcd", "--x", str(DATA / "example_x.csv"), "--y", str(DATA / "example_y.csv"), "--map", "pe:r=2"]
    assert run_command(args + ["--out", str(tmp_path / "a")]) == EXIT_LIMIT
    # "both" falls back to the greedy answer
    assert run_command(args + ["--gamma", "both", "--out", str(tmp_path / "b")]) == EXIT_OK
    summary = json.loads((tmp_path / "b" / "summary.json").read_text())
    assert summary["gamma_exact"] is None
    assert summary["gamma_greedy"] >= 1


def test_limits(tmp_path, capsys):
    out = tmp_path / "limits.csv"
    assert run_command(["limits", "--family", "pe", "--param-grid", "1,1.5,2", "--out", str(out)]) == EXIT_OK
    df = pd.read_csv(out)
    assert df["mu"].tolist() == pytest.approx([37 / 216, 0.385417, 0.625], rel=1e-5)
    assert "0.625000" in capsys.readouterr().out
    assert run_command(["limits", "--family", "cs", "--param-grid", "0.5:2:0.5", "--out", str(out)]) == EXIT_USER


def test_pr(capsys):
    assert run_command(["pr", "--r", "1.25", "--closed-form"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "p_r(1.25) = 0.651" in out
    assert "closed form" in out
    assert run_command(["pr", "--r", "1.6"]) == EXIT_USER


def test_simulate(tmp_path, capsys):
    task = tmp_path / "tiny.json"
    task.write_text(json.dumps({
        "experiment": "arc_probability", "seed": 2, "replicates": 2, "n_x": 300, "map": "cs:tau=1",
    }))
    out = tmp_path / "run"
    assert run_command(["sim", "--config", str(task), "--seed", "5", "--out", str(out)]) == EXIT_OK
    result = json.loads((out / "result.json").read_text())
    assert json.loads((out / "manifest.json").read_text())["seed"] == 5
    assert result["limits"]["mu"] == pytest.approx(1 / 6)
    assert "arc_probability" in capsys.readouterr().out


def test_simulate_bad_task_is_a_user_error(tmp_path):
    task = tmp_path / "bad.json"
    task.write_text(json.dumps({"experiment": "arc_probability"}))
    assert run_command(["simulate", "--config", str(task), "--out", str(tmp_path / "run")]) == EXIT_USER


def test_config_prints_defaults(capsys):
    assert run_command(["config"]) == EXIT_OK
    cfg = json.loads(capsys.readouterr().out)
    assert cfg["domination"]["exact_cap"] == 24


def test_interactive_loop(monkeypatch, capsys):
    lines = iter(["", "help", "pr --r 1", "bogus", "pcd", "quit"])
    monkeypatch.setattr("builtins.input", lambda prompt="": next(lines))
    calls = []

    def fake_run(argv):
        calls.append(argv)
        return EXIT_OK if argv[0] == "pr" else EXIT_USER

    assert CLI.interactive_loop(run=fake_run) == EXIT_OK
    assert calls == [["pr", "--r", "1"], ["pcd"]]
    out = capsys.readouterr().out
    assert "Unknown command: bogus" in out
    assert "(exit code 2)" in out
    assert "Bye." in out


def test_interactive_loop_stops_on_eof(monkeypatch):
    def eof(prompt=""):
        raise EOFError

    monkeypatch.setattr("builtins.input", eof)
    assert CLI.interactive_loop(run=lambda argv: EXIT_OK) == EXIT_OK


def test_pcd_tau_zero_has_no_arcs(tmp_path):
    out = tmp_path / "cs0"
    code = run_command([
        "pcd", "--x", str(DATA / "example_x.csv"), "--y", str(DATA / "example_y.csv"),
        "--map", "cs:tau=0", "--gamma", "greedy", "--out", str(out),
    ])
    assert code == EXIT_OK
    summary = json.loads((out / "summary.json").read_text())
    assert summary["density"] == 0.0
    assert summary["gamma_greedy"] == summary["n"]


def test_pcd_unknown_family(tmp_path):
    code = run_command([
        "pcd", "--x", str(DATA / "example_x.csv"), "--y", str(DATA / "example_y.csv"),
        "--map", "xx:r=2", "--out", str(tmp_path),
    ])
    assert code == EXIT_USER

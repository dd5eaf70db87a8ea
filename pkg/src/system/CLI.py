from __future__ import annotations

import argparse
import logging
import math
import shlex
import sys
from pathlib import Path
from typing import Any, Callable

import pandas as pd

from .json import safe_dumps, write_json
from .log import get_logger, set_log_level
from .manifest import RunManifest
from .startup import ensure_workspace_dirs, new_result_run_dir

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_USER = 2
EXIT_LIMIT = 3
EXIT_INTERNAL = 4

HELP_TEXT = """pcdlab interactive CLI
Commands:
    help, h, ?        Show this help
    config, cfg       Show the library defaults (src/config.json)
    triangulate, tri  Delaunay-triangulate a site file
    pcd               Build a proximity catch digraph, report density and domination number
    limits            Tabulate mu / nu (and p_r) over a parameter grid
    pr                Evaluate p_r at one r
    simulate, sim     Run a Monte Carlo task from tasks/
    exit, quit, q     Exit the CLI

For detailed command usage, see docs/COMMANDS.md

If you just want to see something quick, try:
    limits --family pe --param-grid 1,1.5,2
"""


def print_help() -> None:
    """Print help text to stdout."""
    print(HELP_TEXT)


class _UsageError(Exception):
    """Bad flags; argparse has already printed the usage line."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # type: ignore[override]
        self.print_usage(sys.stdout)
        print(f"{self.prog}: error: {message}")
        raise _UsageError(message)


def exit_code_for(exc: BaseException) -> int:
    """2 for bad input, 3 for search limits, 4 for everything else."""
    from src.asymptotics.exceptions import AsymptoticsError
    from src.delaunay.exceptions import TriangulationError
    from src.geometry.exceptions import GeometryError
    from src.montecarlo.exceptions import SimulationError
    from src.pcd.exceptions import EmptyX, InstanceTooLarge, TooFewVertices

    if isinstance(exc, InstanceTooLarge):
        return EXIT_LIMIT
    user = (
        _UsageError, GeometryError, TriangulationError, AsymptoticsError, SimulationError,
        EmptyX, TooFewVertices, FileNotFoundError,
    )
    if isinstance(exc, user):
        return EXIT_USER
    return EXIT_INTERNAL


def _fmt(v: float) -> str:
    return "nan" if v is None or (isinstance(v, float) and math.isnan(v)) else f"{v:.6f}"


def _out_dir(out: str | None) -> Path:
    if out:
        p = Path(out)
        p.mkdir(parents=True, exist_ok=True)
        return p
    return new_result_run_dir()


def cmd_triangulate(args: argparse.Namespace) -> int:
    from src.delaunay.io import read_sites, triangles_frame
    from src.delaunay.triangulation import triangulate

    sites = read_sites(args.sites)
    t = triangulate(sites)
    if args.out:
        tri_path = Path(args.out)
        tri_path.parent.mkdir(parents=True, exist_ok=True)
    else:
        tri_path = new_result_run_dir() / "triangles.csv"
    run_dir = tri_path.parent
    manifest = RunManifest(command="triangulate", config={"sites": Path(args.sites).name})
    manifest.add_input(args.sites)

    triangles_frame(t).to_csv(tri_path, index=False, float_format="%.17g")
    manifest.add_output(tri_path)
    hull_path = tri_path.with_name(f"{tri_path.stem}_hull.csv")
    hull = pd.DataFrame({
        "order": range(len(t.hull)),
        "site": list(t.hull),
        "x": t.sites[list(t.hull), 0],
        "y": t.sites[list(t.hull), 1],
    })
    hull.to_csv(hull_path, index=False, float_format="%.17g")
    manifest.add_output(hull_path)
    summary_path = tri_path.with_name(f"{tri_path.stem}_summary.json")
    summary = {
        "n_sites": t.n_sites,
        "n_triangles": t.n_triangles,
        "hull_size": len(t.hull),
        "hull_area": t.hull_area(),
        "triangle_area_sum": float(t.areas.sum()),
    }
    write_json(summary_path, summary)
    manifest.add_output(summary_path)
    if args.plot:
        from src.ploter.ploter import plot_triangulation
        manifest.add_output(plot_triangulation(t, run_dir / f"{tri_path.stem}.png"))
    manifest.write(run_dir)

    print(f"Triangulated {t.n_sites} sites: {t.n_triangles} triangles, hull of {len(t.hull)} -> {tri_path}")
    return EXIT_OK


def cmd_pcd(args: argparse.Namespace) -> int:
    from src.delaunay.io import read_sites
    from src.delaunay.triangulation import triangulate
    from src.geometry.mapspec import parse_spec
    from src.pcd.digraph import arcs_table, build, relative_density
    from src.pcd.domination import greedy_dominating_set, minimum_dominating_set
    from src.pcd.exceptions import InstanceTooLarge

    spec = parse_spec(args.map)
    xs = read_sites(args.x)
    ys = read_sites(args.y)
    t = triangulate(ys)
    g = build(xs, ys, spec, triangulation=t)

    run_dir = _out_dir(args.out)
    manifest = RunManifest(command="pcd", config={"map": spec.label(), "gamma": args.gamma})
    manifest.add_input(args.x)
    manifest.add_input(args.y)

    summary: dict[str, Any] = {
        "map": spec.label(),
        "n_x": int(len(xs)),
        "n": g.n,
        "n_arcs": g.n_arcs,
        "density": relative_density(g) if g.n >= 2 else None,
        "excluded": len(g.excluded),
        "components": len(g.components()),
    }
    dominating: list[int] | None = None
    if args.gamma in ("greedy", "both"):
        greedy = greedy_dominating_set(g)
        summary["gamma_greedy"] = len(greedy)
        summary["greedy_set"] = [g.x_index[v] for v in greedy]
        dominating = greedy
    if args.gamma in ("exact", "both"):
        try:
            exact = minimum_dominating_set(g)
            summary["gamma_exact"] = len(exact)
            summary["dominating_set"] = [g.x_index[v] for v in exact]
            dominating = exact
        except InstanceTooLarge as e:
            if args.gamma == "exact":
                raise
            logger.warning("Exact domination skipped: %s", e)
            summary["gamma_exact"] = None
            summary["gamma_exact_error"] = f"InstanceTooLarge: {e}"

    arcs_path = run_dir / "arcs.csv"
    arcs_table(g).to_csv(arcs_path, index=False)
    manifest.add_output(arcs_path)
    excluded_path = run_dir / "excluded.csv"
    pd.DataFrame({
        "x_index": list(g.excluded),
        "x": xs[list(g.excluded), 0] if g.excluded else [],
        "y": xs[list(g.excluded), 1] if g.excluded else [],
    }).to_csv(excluded_path, index=False, float_format="%.17g")
    manifest.add_output(excluded_path)
    summary_path = run_dir / "summary.json"
    write_json(summary_path, summary)
    manifest.add_output(summary_path)
    if args.plot:
        from src.ploter.ploter import plot_pcd
        manifest.add_output(plot_pcd(t, xs, g, run_dir / "pcd.png", dominating=dominating))
    manifest.write(run_dir)

    print(f"PCD {spec.label()}: n={g.n} arcs={g.n_arcs} excluded={len(g.excluded)}")
    print(f"  density: {_fmt(summary['density'])}")
    for key in ("gamma_exact", "gamma_greedy"):
        if key in summary:
            print(f"  {key}: {summary[key] if summary[key] is not None else 'n/a (search limit)'}")
    print(f"  outputs: {run_dir}")
    return EXIT_OK


def parse_grid(text: str) -> list[float]:
    """'1,1.5,2' or 'start:stop:step' (stop included when it lands on the grid)."""
    from src.asymptotics.exceptions import InvalidParam

    t = text.strip()
    try:
        if ":" in t:
            parts = [float(v) for v in t.split(":")]
            if len(parts) != 3 or parts[2] <= 0 or parts[1] < parts[0]:
                raise InvalidParam(f"grid must be start:stop:step with step > 0 and stop >= start, got {text!r}")
            start, stop, step = parts
            count = int(math.floor((stop - start) / step + 1e-9)) + 1
            return [round(start + i * step, 12) for i in range(count)]
        values = [float(v) for v in t.split(",") if v.strip()]
    except ValueError as e:
        raise InvalidParam(f"bad parameter grid {text!r}: {e}") from e
    if not values:
        raise InvalidParam("empty parameter grid")
    return values


def limits_table(family: str, grid: list[float]) -> pd.DataFrame:
    from src.asymptotics.limits import mu_cs, mu_pe, nu_cs, nu_pe, p_r

    rows = []
    for v in grid:
        if family == "pe":
            rows.append({"r": v, "mu": mu_pe(v), "nu": nu_pe(v), "p_r": p_r(v) if v < 1.5 else float("nan")})
        else:
            rows.append({"tau": v, "mu": mu_cs(v), "nu": nu_cs(v)})
    return pd.DataFrame(rows)


def cmd_limits(args: argparse.Namespace) -> int:
    grid = parse_grid(args.param_grid)
    df = limits_table(args.family, grid)
    if args.out:
        out_path = Path(args.out)
        out_path.parent.mkdir(parents=True, exist_ok=True)
    else:
        out_path = new_result_run_dir() / f"limits_{args.family}.csv"
    df.to_csv(out_path, index=False, float_format="%.10g")
    manifest = RunManifest(command="limits", config={"family": args.family, "grid": grid})
    manifest.add_output(out_path)
    if args.plot:
        from src.ploter.ploter import plot_limit_curves
        manifest.add_output(plot_limit_curves(df, out_path.with_suffix(".png")))
    manifest.write(out_path.parent)

    print(df.to_string(index=False, float_format=lambda v: f"{v:.6f}"))
    print(f"Saved {len(df)} rows to {out_path}")
    return EXIT_OK


def cmd_pr(args: argparse.Namespace) -> int:
    from src.asymptotics.limits import p_r, p_r_closed_form

    value = p_r(args.r)
    print(f"p_r({args.r:g}) = {value:.6f}")
    if args.closed_form:
        print(f"closed form     = {p_r_closed_form(args.r):.6f}")
    return EXIT_OK


def cmd_simulate(args: argparse.Namespace) -> int:
    from src.montecarlo.tasks import run_task

    result, run_dir = run_task(args.config, seed=args.seed, workers=args.workers, out_dir=args.out)
    print(f"Simulation {result.experiment} done ({result.replicates} replicates).")
    for k, v in result.estimates.items():
        se = result.std_errors.get(k)
        print(f"  {k}: {_fmt(v)}" + (f" +- {_fmt(se)}" if se is not None else ""))
    for k, v in result.limits.items():
        print(f"  limit {k}: {_fmt(v)}")
    if result.frequencies:
        print("  frequencies: " + ", ".join(f"{k}:{v}" for k, v in sorted(result.frequencies.items())))
    print(f"  outputs: {run_dir}")
    return EXIT_OK


def cmd_config(args: argparse.Namespace) -> int:
    from src.common.config import load_config

    print(safe_dumps(dict(load_config())))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pcdlab", description="Proximity catch digraphs in the plane.")
    parser.add_argument("-v", "--verbose", action="store_true", help="DEBUG-level log file")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("triangulate", aliases=["tri"], help="Delaunay-triangulate a site file")
    p.add_argument("--sites", required=True)
    p.add_argument("--out", help="triangle CSV path; hull and summary are written next to it")
    p.add_argument("--plot", action="store_true")
    p.set_defaults(func=cmd_triangulate)

    p = sub.add_parser("pcd", help="build a PCD and report density and domination number")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--map", required=True, help='e.g. "pe:r=2,M=CM,method=lines"')
    p.add_argument("--gamma", choices=("exact", "greedy", "both"), default="exact")
    p.add_argument("--out")
    p.add_argument("--plot", action="store_true")
    p.set_defaults(func=cmd_pcd)

    p = sub.add_parser("limits", help="mu / nu over a parameter grid")
    p.add_argument("--family", choices=("pe", "cs"), required=True)
    p.add_argument("--param-grid", required=True, help="'1,1.5,2' or 'start:stop:step'")
    p.add_argument("--out")
    p.add_argument("--plot", action="store_true")
    p.set_defaults(func=cmd_limits)

    p = sub.add_parser("pr", help="p_r for 1 <= r < 3/2")
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--closed-form", action="store_true")
    p.set_defaults(func=cmd_pr)

    p = sub.add_parser("simulate", aliases=["sim"], help="run a Monte Carlo task")
    p.add_argument("--config", required=True, help="task name under tasks/ or a JSON path")
    p.add_argument("--seed", type=int)
    p.add_argument("--workers", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("config", aliases=["cfg"], help="show library defaults")
    p.set_defaults(func=cmd_config)
    return parser


def run_command(argv: list[str]) -> int:
    """Run one command and map failures to exit codes with a one-line diagnostic."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "func", None):
            print_help()
            return EXIT_USER
        if args.verbose:
            set_log_level(logging.DEBUG)
        logger.info("Command %s: %s", args.command, argv)
        return args.func(args)
    except _UsageError:
        return EXIT_USER
    except SystemExit as e:
        # --help exits through argparse
        return int(e.code or 0)
    except Exception as e:
        code = exit_code_for(e)
        if code == EXIT_INTERNAL:
            logger.exception("Command failed: %s", e)
        else:
            logger.error("Command failed (%s): %s", type(e).__name__, e)
        print(f"{type(e).__name__}: {e}")
        return code


def interactive_loop(run: Callable[[list[str]], int] = run_command) -> int:
    """Simple REPL: help/exit handled here, everything else goes to run_command."""
    print("pcdlab CLI. Type 'help' for commands, 'exit' to quit.")
    while True:
        try:
            line = input("pcd > ")
        except (KeyboardInterrupt, EOFError):
            print()  # newline on ^C / EOF
            return EXIT_OK

        cmd_line = line.strip()
        if not cmd_line:
            continue
        try:
            parts = shlex.split(cmd_line)
        except ValueError as e:
            print(f"Cannot parse line: {e}")
            continue
        cmd = parts[0].lower()

        # strict/exact matching on the command token
        if cmd in ("help", "h", "?"):
            logger.info("User requested help")
            print_help()
            continue

        if cmd in ("exit", "quit", "q"):
            logger.info("User requested exit")
            print("Bye.")
            return EXIT_OK

        if cmd in ("triangulate", "tri", "pcd", "limits", "pr", "simulate", "sim", "config", "cfg"):
            code = run([cmd] + parts[1:])
            if code != EXIT_OK:
                print(f"(exit code {code})")
            continue

        print(f"Unknown command: {cmd_line}. Type 'help' for available commands.")


def main(argv: list[str] | None = None) -> int:
    """One-shot command when argv is given, otherwise the interactive loop."""
    if argv is None:
        argv = sys.argv[1:]
    try:
        ensure_workspace_dirs()
        if argv:
            return run_command(list(argv))
        return interactive_loop()
    except Exception as e:
        logger.exception("CLI failed: %s", e)
        return EXIT_INTERNAL


__all__ = [
    "EXIT_OK",
    "EXIT_USER",
    "EXIT_LIMIT",
    "EXIT_INTERNAL",
    "build_parser",
    "run_command",
    "exit_code_for",
    "parse_grid",
    "limits_table",
    "interactive_loop",
    "main",
]


if __name__ == "__main__":
    raise SystemExit(main())

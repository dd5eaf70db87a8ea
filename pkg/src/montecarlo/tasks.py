"""Simulation task files: JSON under tasks/, loaded by name or path, run into a result folder."""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any, Mapping

from src.delaunay.io import read_sites
from src.geometry.exceptions import InvalidSpec
from src.geometry.mapspec import ProximityMapSpec, parse_spec
from src.montecarlo.estimators import EXPERIMENTS, SimConfig, SimResult, Support, run_simulation
from src.montecarlo.exceptions import ConfigError
from src.system.json import load_json, write_json
from src.system.log import get_logger
from src.system.manifest import RunManifest
from src.system.startup import new_result_run_dir

logger = get_logger(__name__)

TASKS_DIR = Path(__file__).resolve().parents[2] / 'tasks'

_KEYS = {
	"experiment", "name", "seed", "replicates", "n_x", "map", "support", "workers",
	"center_case", "lambda", "window", "margin",
}


def task_path(name_or_path: str | Path) -> Path:
	"""`tasks/<name>.json` for a bare name, else the path as given."""
	p = Path(name_or_path)
	if p.suffix == ".json" or p.parent != Path("."):
		return p
	return TASKS_DIR / f"{name_or_path}.json"


def load_task(name_or_path: str | Path) -> dict[str, Any]:
	path = task_path(name_or_path)
	if not path.exists():
		raise ConfigError(f"Task file not found: {path}")
	try:
		task = load_json(path)
	except json.JSONDecodeError as e:
		raise ConfigError(f"{path}: invalid JSON: {e}") from e
	if not isinstance(task, dict):
		raise ConfigError(f"{path}: top level must be an object")
	task.setdefault("name", path.stem)
	task["_path"] = str(path)
	return task


def _need(task: Mapping[str, Any], key: str, kind: type | tuple[type, ...]) -> Any:
	if key not in task:
		raise ConfigError(f"task is missing required key {key!r}")
	v = task[key]
	if isinstance(v, bool) or not isinstance(v, kind):
		raise ConfigError(f"task key {key!r} has the wrong type: {v!r}")
	return v


def _points(raw: Any, key: str, base: Path) -> tuple[tuple[float, float], ...]:
	if isinstance(raw, str):
		p = Path(raw)
		pts = read_sites(p if p.is_absolute() else base / p)
		return tuple((float(x), float(y)) for x, y in pts)
	try:
		pts = tuple((float(x), float(y)) for x, y in raw)
	except (TypeError, ValueError) as e:
		raise ConfigError(f"support.{key} must be a list of [x, y] pairs or a CSV path") from e
	if not all(math.isfinite(c) for p in pts for c in p):
		raise ConfigError(f"support.{key} has non-finite coordinates")
	return pts


def config_from_task(task: Mapping[str, Any], *, seed: int | None = None, workers: int | None = None) -> SimConfig:
	"""Validate a task mapping and build its SimConfig; CLI overrides win over the file."""
	unknown = sorted(k for k in task if k not in _KEYS and not k.startswith("_"))
	if unknown:
		raise ConfigError(f"unknown task keys: {', '.join(unknown)}")
	experiment = _need(task, "experiment", str)
	if experiment not in EXPERIMENTS:
		raise ConfigError(f"unknown experiment {experiment!r}; expected one of {', '.join(EXPERIMENTS)}")
	file_seed = _need(task, "seed", int)
	replicates = _need(task, "replicates", int)

	spec: ProximityMapSpec | None = None
	if "map" in task:
		try:
			spec = parse_spec(_need(task, "map", str))
		except InvalidSpec as e:
			raise ConfigError(f"bad map: {e}") from e

	base = Path(task.get("_path", TASKS_DIR / "x.json")).parent
	support = None
	if "support" in task:
		raw = task["support"]
		if not isinstance(raw, dict) or len(raw) != 1 or next(iter(raw)) not in ("triangle", "hull"):
			raise ConfigError('support must be {"triangle": [...]} or {"hull": [...] | "file.csv"}')
		kind, pts = next(iter(raw.items()))
		support = Support(kind, _points(pts, kind, base))

	kwargs: dict[str, Any] = {}
	if support is not None:
		kwargs["support"] = support
	if "window" in task:
		w = task["window"]
		if not isinstance(w, list) or len(w) != 4:
			raise ConfigError("window must be [x0, y0, x1, y1]")
		kwargs["window"] = tuple(float(v) for v in w)
	if "lambda" in task:
		kwargs["lam"] = float(_need(task, "lambda", (int, float)))
	if task.get("margin") is not None:
		kwargs["margin"] = float(_need(task, "margin", (int, float)))

	return SimConfig(
		experiment=experiment,
		seed=int(seed if seed is not None else file_seed),
		replicates=replicates,
		n_x=int(task.get("n_x", 0)),
		map=spec,
		workers=int(workers if workers is not None else task.get("workers", 1)),
		center_case=task.get("center_case"),
		name=str(task.get("name", "")),
		**kwargs,
	)


def resolved_config(cfg: SimConfig) -> dict[str, Any]:
	"""The SimConfig as the manifest records it (workers left out: it never changes results)."""
	out: dict[str, Any] = {
		"experiment": cfg.experiment,
		"name": cfg.name,
		"replicates": cfg.replicates,
		"seed": cfg.seed,
	}
	if cfg.experiment == "poisson_delaunay":
		out.update({"lambda": cfg.lam, "window": list(cfg.window), "margin": cfg.margin})
	else:
		out.update({
			"n_x": cfg.n_x,
			"map": cfg.map.label() if cfg.map else None,
			"support": {cfg.support.kind: [list(p) for p in cfg.support.points]},
			"center_case": cfg.center_case,
		})
	return out


def run_task(
	name_or_path: str | Path,
	*,
	seed: int | None = None,
	workers: int | None = None,
	out_dir: str | Path | None = None,
) -> tuple[SimResult, Path]:
	"""Run one task and write result.json, replicates.csv and manifest.json."""
	task = load_task(name_or_path)
	cfg = config_from_task(task, seed=seed, workers=workers)
	logger.info("Loaded task %s: %s seed=%d replicates=%d workers=%d", cfg.name, cfg.experiment, cfg.seed, cfg.replicates, cfg.workers)

	result = run_simulation(cfg)

	run_dir = Path(out_dir) if out_dir is not None else new_result_run_dir()
	run_dir.mkdir(parents=True, exist_ok=True)
	manifest = RunManifest(command="simulate", config=resolved_config(cfg), seed=cfg.seed)
	manifest.add_input(task["_path"])

	result_path = run_dir / "result.json"
	write_json(result_path, result.to_dict())
	manifest.add_output(result_path)
	csv_path = run_dir / "replicates.csv"
	result.table.to_csv(csv_path, index=False, float_format="%.17g")
	manifest.add_output(csv_path)
	logger.info("Saved replicate table to %s", csv_path)

	manifest.wall_seconds = result.wall_seconds
	manifest.write(run_dir)
	return result, run_dir


__all__ = ["TASKS_DIR", "task_path", "load_task", "config_from_task", "resolved_config", "run_task"]

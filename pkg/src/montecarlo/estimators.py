"""Monte Carlo estimators for arc probability, relative density, domination
number frequencies and Poisson-Delaunay triangle statistics.

A run is a list of replicates, each seeded by its own child SeedSequence and
evaluated by a module-level function (so it can cross process boundaries).
Replicate outputs are merged in replicate order; standard errors come from
the spread of replicate-level estimates.
"""

from __future__ import annotations

import math
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Callable, Literal

import numpy as np
import pandas as pd

from src.asymptotics.exceptions import InvalidParam
from src.asymptotics.limits import classify_center, gamma_limit, mu_cs, mu_pe, nu_cs, nu_pe
from src.delaunay.triangulation import OUTSIDE, Triangulation, locate_many, triangulate
from src.geometry.core import TriangleFrame, normalize_to_basic
from src.geometry.mapspec import ProximityMapSpec
from src.geometry.partitions import CenterSpec
from src.geometry.proximity import catches_pairs, t_r_corners
from src.montecarlo.exceptions import ConfigError
from src.montecarlo.sampling import (
	Window,
	replicate_seeds,
	sample_poisson_delaunay,
	sample_uniform_hull,
	sample_uniform_triangle,
)
from src.pcd.digraph import build, relative_density
from src.pcd.domination import domination_exact
from src.system.log import get_logger

logger = get_logger(__name__)

Experiment = Literal["arc_probability", "relative_density", "gamma_distribution", "poisson_delaunay"]
EXPERIMENTS: tuple[str, ...] = ("arc_probability", "relative_density", "gamma_distribution", "poisson_delaunay")


@dataclass(frozen=True)
class Support:
	kind: Literal["triangle", "hull"]
	points: tuple[tuple[float, float], ...]

	def __post_init__(self) -> None:
		if self.kind not in ("triangle", "hull"):
			raise ConfigError(f"support kind must be 'triangle' or 'hull', got {self.kind!r}")
		if self.kind == "triangle" and len(self.points) != 3:
			raise ConfigError(f"triangle support needs 3 vertices, got {len(self.points)}")
		if self.kind == "hull" and len(self.points) < 3:
			raise ConfigError(f"hull support needs at least 3 points, got {len(self.points)}")


EQUILATERAL = Support("triangle", ((0.0, 0.0), (1.0, 0.0), (0.5, math.sqrt(3.0) / 2.0)))


@dataclass(frozen=True)
class SimConfig:
	experiment: Experiment
	seed: int
	replicates: int
	n_x: int = 0
	map: ProximityMapSpec | None = None
	support: Support = EQUILATERAL
	workers: int = 1
	# gamma_distribution
	center_case: str | None = None
	# poisson_delaunay
	lam: float = 1.0
	window: Window = (0.0, 0.0, 20.0, 20.0)
	margin: float | None = None
	name: str = ""

	def __post_init__(self) -> None:
		if self.experiment not in EXPERIMENTS:
			raise ConfigError(f"unknown experiment {self.experiment!r}; expected one of {', '.join(EXPERIMENTS)}")
		if self.replicates < 1:
			raise ConfigError(f"replicates must be >= 1, got {self.replicates}")
		if self.workers < 1:
			raise ConfigError(f"workers must be >= 1, got {self.workers}")
		if not 0 <= self.seed < 2**64:
			raise ConfigError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
		if self.experiment != "poisson_delaunay":
			if self.map is None:
				raise ConfigError(f"{self.experiment} needs a proximity map")
			if self.n_x < 2:
				raise ConfigError(f"{self.experiment} needs n_x >= 2, got {self.n_x}")
		if self.experiment == "gamma_distribution":
			if self.map.family != "pe":
				raise ConfigError("gamma_distribution runs proportional-edge maps only")
			if self.support.kind != "triangle":
				raise ConfigError("gamma_distribution samples a single triangle")
		if self.center_case not in (None, "t_vertex", "interior", "other_in_Tr", "centroid"):
			raise ConfigError(f"unknown center_case {self.center_case!r}")
		if self.experiment == "poisson_delaunay" and not self.lam > 0:
			raise ConfigError(f"lambda must be > 0, got {self.lam}")


@dataclass
class SimResult:
	experiment: str
	estimates: dict[str, float]
	std_errors: dict[str, float]
	replicates: int
	table: pd.DataFrame = field(repr=False)
	frequencies: dict[int, int] | None = None
	limits: dict[str, float] = field(default_factory=dict)
	# reported in the run manifest, never in to_dict
	wall_seconds: float = 0.0

	def to_dict(self) -> dict[str, Any]:
		out: dict[str, Any] = {
			"experiment": self.experiment,
			"replicates": self.replicates,
			"estimates": _clean(self.estimates),
			"std_errors": _clean(self.std_errors),
		}
		if self.limits:
			out["limits"] = _clean(self.limits)
		if self.frequencies is not None:
			out["frequencies"] = {str(k): int(v) for k, v in sorted(self.frequencies.items())}
		return out


def _clean(d: dict[str, float]) -> dict[str, float | None]:
	return {k: (float(v) if v is not None and math.isfinite(v) else None) for k, v in d.items()}


def _std_error(values: np.ndarray) -> float:
	if len(values) < 2:
		return float("nan")
	return float(np.std(values, ddof=1) / math.sqrt(len(values)))


def _run(cfg: SimConfig, fn: Callable[[SimConfig, np.random.SeedSequence], Any]) -> list[Any]:
	seeds = replicate_seeds(cfg.seed, cfg.replicates)
	if cfg.workers > 1 and cfg.replicates > 1:
		with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
			return list(pool.map(fn, [cfg] * len(seeds), seeds))
	return [fn(cfg, s) for s in seeds]


@lru_cache(maxsize=8)
def _hull(points: tuple[tuple[float, float], ...]) -> Triangulation:
	return triangulate(np.asarray(points, dtype=float))


def _frame(cfg: SimConfig) -> TriangleFrame:
	return normalize_to_basic(cfg.support.points)


def _sample(cfg: SimConfig, n: int, rng: np.random.Generator) -> np.ndarray:
	if cfg.support.kind == "triangle":
		return sample_uniform_triangle(np.asarray(cfg.support.points), n, rng)
	return sample_uniform_hull(_hull(cfg.support.points), n, rng)


def _hull_pairs(t: Triangulation, x1: np.ndarray, x2: np.ndarray, spec: ProximityMapSpec) -> np.ndarray:
	if spec.family == "sph":
		radius = np.min(np.hypot(x1[:, None, 0] - t.sites[None, :, 0], x1[:, None, 1] - t.sites[None, :, 1]), axis=1)
		return np.hypot(*(x2 - x1).T) < radius
	c1 = locate_many(t, x1)
	c2 = locate_many(t, x2)
	hit = np.zeros(len(x1), dtype=bool)
	same = (c1 == c2) & (c1 != OUTSIDE)
	for k in np.unique(c1[same]):
		sel = np.flatnonzero(same & (c1 == k))
		frame = t.frame(int(k))
		b1 = frame.to_basic.apply_array(x1[sel])
		b2 = frame.to_basic.apply_array(x2[sel])
		hit[sel] = catches_pairs(b1, b2, frame, spec)
	return hit


def _arc_replicate(cfg: SimConfig, seed: np.random.SeedSequence) -> tuple[int, int]:
	rng = np.random.default_rng(seed)
	x1 = _sample(cfg, cfg.n_x, rng)
	x2 = _sample(cfg, cfg.n_x, rng)
	if cfg.support.kind == "triangle":
		frame = _frame(cfg)
		hit = catches_pairs(frame.to_basic.apply_array(x1), frame.to_basic.apply_array(x2), frame, cfg.map)
	else:
		hit = _hull_pairs(_hull(cfg.support.points), x1, x2, cfg.map)
	return int(hit.sum()), cfg.n_x


def _limits_for(cfg: SimConfig) -> dict[str, float]:
	spec = cfg.map
	if spec is None or cfg.support.kind != "triangle" or spec.center is None or spec.center.kind != "CM":
		return {}
	if spec.family == "pe" and not spec.is_infinite:
		return {"mu": mu_pe(spec.r), "nu": nu_pe(spec.r)}
	if spec.family == "cs":
		return {"mu": mu_cs(spec.tau), "nu": nu_cs(spec.tau)}
	return {}


def estimate_arc_probability(cfg: SimConfig) -> SimResult:
	"""Fraction of iid uniform pairs (X1, X2) with X2 in N(X1)."""
	rows = _run(cfg, _arc_replicate)
	hits = np.array([h for h, _ in rows], dtype=float)
	pairs = np.array([n for _, n in rows], dtype=float)
	per = hits / pairs
	est = float(hits.sum() / pairs.sum())
	se = _std_error(per)
	if not math.isfinite(se):
		se = math.sqrt(est * (1.0 - est) / pairs.sum())
	table = pd.DataFrame({"replicate": np.arange(len(rows)), "pairs": pairs.astype(int), "arcs": hits.astype(int), "estimate": per})
	logger.info("estimate_arc_probability %s: %.6f +- %.6f over %d pairs", cfg.map.label(), est, se, int(pairs.sum()))
	return SimResult("arc_probability", {"arc_probability": est}, {"arc_probability": se}, cfg.replicates, table, limits=_limits_for(cfg))


def _density_replicate(cfg: SimConfig, seed: np.random.SeedSequence) -> float:
	rng = np.random.default_rng(seed)
	xs = _sample(cfg, cfg.n_x, rng)
	y = np.asarray(cfg.support.points)
	t = _hull(cfg.support.points)
	return relative_density(build(xs, y, cfg.map, workers=1, triangulation=t))


def estimate_relative_density(cfg: SimConfig) -> SimResult:
	"""Replicate relative densities; their mean tracks mu and n times their variance tracks nu."""
	rho = np.array(_run(cfg, _density_replicate), dtype=float)
	mean = float(rho.mean())
	n_var = float(cfg.n_x * np.var(rho, ddof=1)) if len(rho) > 1 else float("nan")
	# standard error of a sample variance, normal approximation
	n_var_se = n_var * math.sqrt(2.0 / (len(rho) - 1)) if len(rho) > 1 else float("nan")
	table = pd.DataFrame({"replicate": np.arange(len(rho)), "rho": rho})
	logger.info("estimate_relative_density %s: mean=%.6f n*var=%.6f", cfg.map.label(), mean, n_var)
	return SimResult(
		"relative_density",
		{"rho_mean": mean, "n_var": n_var},
		{"rho_mean": _std_error(rho), "n_var": n_var_se},
		cfg.replicates,
		table,
		limits=_limits_for(cfg),
	)


def gamma_spec(cfg: SimConfig) -> ProximityMapSpec:
	"""The map used for domination runs; center_case=t_vertex puts M at the corner t1(r) of T_r."""
	spec = cfg.map
	if cfg.center_case == "t_vertex":
		t1 = t_r_corners(_frame(cfg), spec.r)[0]
		return ProximityMapSpec("pe", r=spec.r, center=CenterSpec.custom(t1.x, t1.y), method=spec.method)
	return spec


def _gamma_replicate(cfg: SimConfig, seed: np.random.SeedSequence) -> int:
	rng = np.random.default_rng(seed)
	xs = _sample(cfg, cfg.n_x, rng)
	g = build(xs, np.asarray(cfg.support.points), gamma_spec(cfg), workers=1, triangulation=_hull(cfg.support.points))
	return domination_exact(g)


def estimate_gamma_distribution(cfg: SimConfig) -> SimResult:
	"""Frequency table of the exact domination number over replicates."""
	spec = gamma_spec(cfg)
	gammas = np.array(_run(cfg, _gamma_replicate), dtype=int)
	freq = Counter(int(v) for v in gammas)
	share2 = float(np.mean(gammas == 2))
	table = pd.DataFrame({"replicate": np.arange(len(gammas)), "gamma": gammas})
	limits: dict[str, float] = {}
	frame = _frame(cfg)
	try:
		case = cfg.center_case or classify_center(frame, spec.center.resolve(frame), spec.r)
		if case is not None:
			law = gamma_limit(spec.r, case)  # type: ignore[arg-type]
			limits = {"mean": law.mean, "variance": law.variance, **{f"p_{k}": v for k, v in law.pmf().items()}}
	except InvalidParam:
		logger.info("no limit law for %s with center case %s", spec.label(), cfg.center_case)
	logger.info("estimate_gamma_distribution %s: %s", spec.label(), dict(sorted(freq.items())))
	return SimResult(
		"gamma_distribution",
		{"gamma_mean": float(gammas.mean()), "p_gamma_2": share2},
		{"gamma_mean": _std_error(gammas.astype(float)), "p_gamma_2": _std_error((gammas == 2).astype(float))},
		cfg.replicates,
		table,
		frequencies=dict(freq),
		limits=limits,
	)


_PD_COLUMNS = ("triangles", "obtuse", "area_sum", "angle_sum", "min_angle_sum", "max_angle_sum")


def _pd_replicate(cfg: SimConfig, seed: np.random.SeedSequence) -> tuple[float, ...]:
	rng = np.random.default_rng(seed)
	f = sample_poisson_delaunay(cfg.lam, cfg.window, rng, margin=cfg.margin)
	return (
		float(len(f)),
		float(f["obtuse"].sum()),
		float(f["area"].sum()),
		float(f[["angle_1", "angle_2", "angle_3"]].to_numpy().sum()),
		float(f["min_angle"].sum()),
		float(f["max_angle"].sum()),
	)


def estimate_poisson_delaunay(cfg: SimConfig) -> SimResult:
	"""Obtuse fraction, mean area and mean angles of kept Poisson-Delaunay triangles.

	Pooled ratios over all kept triangles; standard errors from the spread of
	the per-replicate ratios.
	"""
	table = pd.DataFrame(_run(cfg, _pd_replicate), columns=list(_PD_COLUMNS))
	table.insert(0, "replicate", np.arange(len(table)))
	n = table["triangles"]
	per = pd.DataFrame({
		"obtuse_fraction": table["obtuse"] / n,
		"mean_area": table["area_sum"] / n,
		"mean_angle": table["angle_sum"] / (3.0 * n),
		"mean_min_angle": table["min_angle_sum"] / n,
		"mean_max_angle": table["max_angle_sum"] / n,
	})
	total = float(n.sum())
	estimates = {
		"obtuse_fraction": float(table["obtuse"].sum()) / total,
		"mean_area": float(table["area_sum"].sum()) / total,
		"mean_angle": float(table["angle_sum"].sum()) / (3.0 * total),
		"mean_min_angle": float(table["min_angle_sum"].sum()) / total,
		"mean_max_angle": float(table["max_angle_sum"].sum()) / total,
		"triangles": total,
	}
	errors = {k: _std_error(per[k].to_numpy()) for k in per.columns}
	table = pd.concat([table[["replicate", "triangles"]], per], axis=1)
	logger.info("estimate_poisson_delaunay: %d triangles, obtuse %.4f", int(total), estimates["obtuse_fraction"])
	return SimResult("poisson_delaunay", estimates, errors, cfg.replicates, table)


RUNNERS: dict[str, Callable[[SimConfig], SimResult]] = {
	"arc_probability": estimate_arc_probability,
	"relative_density": estimate_relative_density,
	"gamma_distribution": estimate_gamma_distribution,
	"poisson_delaunay": estimate_poisson_delaunay,
}


def run_simulation(cfg: SimConfig) -> SimResult:
	start = time.perf_counter()
	result = RUNNERS[cfg.experiment](cfg)
	result.wall_seconds = time.perf_counter() - start
	return result


__all__ = [
	"EXPERIMENTS",
	"EQUILATERAL",
	"Support",
	"SimConfig",
	"SimResult",
	"estimate_arc_probability",
	"estimate_relative_density",
	"estimate_gamma_distribution",
	"estimate_poisson_delaunay",
	"gamma_spec",
	"run_simulation",
]

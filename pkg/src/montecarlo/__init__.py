"""Seeded Monte Carlo experiments over uniform samples and Poisson-Delaunay tessellations."""

from src.montecarlo.estimators import (
	EQUILATERAL,
	EXPERIMENTS,
	SimConfig,
	SimResult,
	Support,
	estimate_arc_probability,
	estimate_gamma_distribution,
	estimate_poisson_delaunay,
	estimate_relative_density,
	run_simulation,
)
from src.montecarlo.exceptions import ConfigError, DegenerateSample, SimulationError
from src.montecarlo.sampling import (
	replicate_seeds,
	sample_poisson_delaunay,
	sample_uniform_hull,
	sample_uniform_triangle,
)

__all__ = [
	"EQUILATERAL",
	"EXPERIMENTS",
	"SimConfig",
	"SimResult",
	"Support",
	"estimate_arc_probability",
	"estimate_relative_density",
	"estimate_gamma_distribution",
	"estimate_poisson_delaunay",
	"run_simulation",
	"replicate_seeds",
	"sample_uniform_triangle",
	"sample_uniform_hull",
	"sample_poisson_delaunay",
	"SimulationError",
	"ConfigError",
	"DegenerateSample",
]

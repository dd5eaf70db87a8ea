class SimulationError(Exception):
	"""Base exception for Monte Carlo experiments."""


class ConfigError(SimulationError, ValueError):
	"""Raised when a task file is missing, unreadable or violates the task schema."""


class DegenerateSample(SimulationError):
	"""Raised when a sampled configuration is too small to triangulate or measure."""

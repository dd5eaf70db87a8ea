class DigraphError(Exception):
	"""Base exception for proximity catch digraph construction and statistics."""


class EmptyX(DigraphError, ValueError):
	"""Raised when no X point is available (none given, or all outside the hull)."""


class TooFewVertices(DigraphError, ValueError):
	"""Raised when a statistic needs more vertices than the digraph has."""


class InstanceTooLarge(DigraphError):
	"""Raised when the exact domination search exceeds its size cap or node budget."""


class InvariantViolation(DigraphError):
	"""Raised when a built digraph breaks a structural guarantee (e.g. an arc across cells)."""

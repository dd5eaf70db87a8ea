class AsymptoticsError(Exception):
	"""Base exception for limit-law and Poisson-Delaunay evaluators."""


class InvalidParam(AsymptoticsError, ValueError):
	"""Raised when r, tau or a center case lies outside the branch a formula covers."""


class OutOfSupport(AsymptoticsError, ValueError):
	"""Raised for non-finite arguments or an invalid intensity or moment order."""

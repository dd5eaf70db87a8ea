class TriangulationError(Exception):
	"""Base exception for Delaunay construction and site-file errors."""


class AllCollinear(TriangulationError):
	"""Raised when every site lies on one line, so no triangle exists."""


class DuplicateSites(TriangulationError):
	"""Raised when two sites have identical coordinates."""


class TooFewSites(TriangulationError):
	"""Raised when fewer than three sites are given."""


class SiteFileError(TriangulationError):
	"""Raised when a site CSV cannot be read or has malformed rows."""

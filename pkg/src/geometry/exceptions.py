class GeometryError(Exception):
	"""Base exception for planar geometry errors."""


class NonFiniteCoordinate(GeometryError, ValueError):
	"""Raised when a point is built from NaN or infinite coordinates."""


class DegenerateTriangle(GeometryError):
	"""Raised when three points are collinear (or coincide) within tolerance."""


class UnboundedRegion(GeometryError):
	"""Raised when a half-plane system does not bound a finite region."""


class CenterOutsideTriangle(GeometryError, ValueError):
	"""Raised when a scheme needs the center M in the open interior but it is not."""


class ProjectionOffEdge(GeometryError, ValueError):
	"""Raised when a foot of perpendicular from M falls outside its edge."""


class InvalidSpec(GeometryError, ValueError):
	"""Raised for invalid proximity-map parameters or an unparsable map SPEC."""


class OutsideTriangle(GeometryError, ValueError):
	"""Raised when a point handed to a triangle-bound map lies outside the triangle."""

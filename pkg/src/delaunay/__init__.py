"""Delaunay triangulation of the Y sites, point location and the Voronoi dual."""

from src.delaunay.exceptions import (
	AllCollinear,
	DuplicateSites,
	SiteFileError,
	TooFewSites,
	TriangulationError,
)
from src.delaunay.triangulation import (
	OUTSIDE,
	Triangulation,
	VoronoiDual,
	locate,
	locate_many,
	triangulate,
	voronoi_dual,
)

__all__ = [
	"OUTSIDE",
	"Triangulation",
	"VoronoiDual",
	"triangulate",
	"locate",
	"locate_many",
	"voronoi_dual",
	"TriangulationError",
	"AllCollinear",
	"DuplicateSites",
	"TooFewSites",
	"SiteFileError",
]

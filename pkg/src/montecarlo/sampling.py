"""Random point generation: uniform in a triangle or a triangulated hull, and
Poisson-Delaunay triangle samples in a rectangular window.

Every replicate draws from its own numpy Generator spawned from one
SeedSequence, so results do not depend on how replicates are scheduled.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np
import pandas as pd

from src.delaunay.exceptions import TriangulationError
from src.delaunay.triangulation import Triangulation, triangulate
from src.geometry.core import TriangleFrame
from src.montecarlo.exceptions import DegenerateSample
from src.system.log import get_logger

logger = get_logger(__name__)

Window = tuple[float, float, float, float]


def replicate_seeds(seed: int, replicates: int) -> list[np.random.SeedSequence]:
	"""One independent child SeedSequence per replicate."""
	return np.random.SeedSequence(int(seed)).spawn(int(replicates))


def _triangle_array(tri: TriangleFrame | Sequence[Sequence[float]] | np.ndarray) -> np.ndarray:
	if isinstance(tri, TriangleFrame):
		return np.array([[v.x, v.y] for v in tri.vertices], dtype=float)
	return np.asarray(tri, dtype=float).reshape(3, 2)


def sample_uniform_triangle(
	tri: TriangleFrame | Sequence[Sequence[float]] | np.ndarray, n: int, rng: np.random.Generator
) -> np.ndarray:
	"""n iid uniform points in the triangle, as an (n, 2) array.

	Uses p = (1 - sqrt(u)) a + sqrt(u) (1 - v) b + sqrt(u) v c.
	"""
	a, b, c = _triangle_array(tri)
	u = rng.random(n)
	v = rng.random(n)
	s = np.sqrt(u)
	return (1.0 - s)[:, None] * a + (s * (1.0 - v))[:, None] * b + (s * v)[:, None] * c


def sample_uniform_hull(t: Triangulation, n: int, rng: np.random.Generator) -> np.ndarray:
	"""n iid uniform points in the convex hull: a triangle by area, then a point in it."""
	areas = t.areas
	k = rng.choice(t.n_triangles, size=n, p=areas / areas.sum())
	tri = np.asarray(t.triangles, dtype=int)[k]
	a, b, c = t.sites[tri[:, 0]], t.sites[tri[:, 1]], t.sites[tri[:, 2]]
	u = rng.random(n)
	v = rng.random(n)
	s = np.sqrt(u)
	return (1.0 - s)[:, None] * a + (s * (1.0 - v))[:, None] * b + (s * v)[:, None] * c


def _angles(p: np.ndarray) -> np.ndarray:
	"""Interior angles at the three vertices of each (m, 3, 2) triangle."""
	out = np.empty((len(p), 3))
	for i in range(3):
		u = p[:, (i + 1) % 3] - p[:, i]
		w = p[:, (i + 2) % 3] - p[:, i]
		cross = u[:, 0] * w[:, 1] - u[:, 1] * w[:, 0]
		out[:, i] = np.arctan2(np.abs(cross), np.einsum("ij,ij->i", u, w))
	return out


def _circumcircles(p: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
	a = p[:, 0]
	b = p[:, 1] - a
	c = p[:, 2] - a
	d = 2.0 * (b[:, 0] * c[:, 1] - b[:, 1] * c[:, 0])
	b2 = np.einsum("ij,ij->i", b, b)
	c2 = np.einsum("ij,ij->i", c, c)
	ux = (c[:, 1] * b2 - b[:, 1] * c2) / d
	uy = (b[:, 0] * c2 - c[:, 0] * b2) / d
	return a + np.column_stack([ux, uy]), np.hypot(ux, uy)


def sample_poisson_delaunay(
	lam: float, window: Window, rng: np.random.Generator, *, margin: float | None = None
) -> pd.DataFrame:
	"""Triangle statistics of one Poisson-Delaunay sample in `window` = (x0, y0, x1, y1).

	A Poisson(lam * area) number of uniform points is triangulated. A triangle
	is kept when its circumcenter lies at least `margin` inside the window and
	its circumdisk lies inside the window, so every kept triangle is also a
	Delaunay triangle of the unbounded process. The default margin is
	2 / sqrt(lam).
	"""
	if not lam > 0:
		raise DegenerateSample(f"intensity must be > 0, got {lam}")
	x0, y0, x1, y1 = (float(v) for v in window)
	if not (x1 > x0 and y1 > y0):
		raise DegenerateSample(f"window must have positive width and height, got {window}")
	if margin is None:
		margin = 2.0 / math.sqrt(lam)
	count = int(rng.poisson(lam * (x1 - x0) * (y1 - y0)))
	if count < 3:
		raise DegenerateSample(f"only {count} Poisson points in the window")
	pts = np.column_stack([rng.uniform(x0, x1, count), rng.uniform(y0, y1, count)])
	try:
		t = triangulate(pts)
	except TriangulationError as e:
		raise DegenerateSample(f"sample cannot be triangulated: {e}") from e

	tri = np.asarray(t.triangles, dtype=int)
	p = t.sites[tri]
	center, radius = _circumcircles(p)
	cx, cy = center[:, 0], center[:, 1]
	keep = (
		(cx >= x0 + margin) & (cx <= x1 - margin) & (cy >= y0 + margin) & (cy <= y1 - margin)
		& (cx - radius >= x0) & (cx + radius <= x1) & (cy - radius >= y0) & (cy + radius <= y1)
	)
	if not keep.any():
		raise DegenerateSample(f"no triangle of {len(tri)} lies inside the inner window (margin {margin:g})")
	p = p[keep]
	ang = _angles(p)
	edges = np.column_stack([np.hypot(*(p[:, (i + 2) % 3] - p[:, (i + 1) % 3]).T) for i in range(3)])
	area = 0.5 * np.abs(
		(p[:, 1, 0] - p[:, 0, 0]) * (p[:, 2, 1] - p[:, 0, 1]) - (p[:, 1, 1] - p[:, 0, 1]) * (p[:, 2, 0] - p[:, 0, 0])
	)
	srt = np.sort(ang, axis=1)
	df = pd.DataFrame({
		"angle_1": ang[:, 0], "angle_2": ang[:, 1], "angle_3": ang[:, 2],
		"min_angle": srt[:, 0], "max_angle": srt[:, 2],
		"edge_1": edges[:, 0], "edge_2": edges[:, 1], "edge_3": edges[:, 2],
		"area": area,
		"obtuse": srt[:, 2] > math.pi / 2.0,
	})
	logger.debug("sample_poisson_delaunay: %d points, %d triangles, %d kept", count, len(tri), len(df))
	return df


__all__ = [
	"Window",
	"replicate_seeds",
	"sample_uniform_triangle",
	"sample_uniform_hull",
	"sample_poisson_delaunay",
]

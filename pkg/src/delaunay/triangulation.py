"""Delaunay triangulation by sorted sweep insertion and Lawson flips.

Sites are inserted in lexicographic (x, y) order, so each new site lies
outside the current hull and is joined to every hull edge it strictly sees.
The result is then legalized by flipping edges whose opposite site falls
inside the circumcircle. Incircle ties are broken by symbolic perturbation
(site i lifted by eps_i, eps_0 >> eps_1 >> ...), which makes the output
unique even when four or more sites are cocircular.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from src.common.config import get_config_value, load_config
from src.common.utils import chunk_ranges
from src.delaunay.exceptions import AllCollinear, DuplicateSites, TooFewSites
from src.geometry.core import TriangleFrame, normalize_to_basic
from src.geometry.exceptions import NonFiniteCoordinate
from src.geometry.predicates import incircle_perturbed, orient2d
from src.system.log import get_logger

logger = get_logger(__name__)

OUTSIDE = -1

Tri = tuple[int, int, int]


@dataclass(frozen=True, eq=False)
class Triangulation:
	sites: np.ndarray
	# counterclockwise index triples, smallest index first, sorted
	triangles: tuple[Tri, ...]
	# neighbor across the edge opposite each vertex, OUTSIDE on the hull
	adjacency: tuple[Tri, ...]
	# counterclockwise hull cycle starting at its smallest index
	hull: tuple[int, ...]
	_frames: dict[int, TriangleFrame] = field(default_factory=dict, repr=False, compare=False)

	@property
	def n_sites(self) -> int:
		return len(self.sites)

	@property
	def n_triangles(self) -> int:
		return len(self.triangles)

	def triangle_points(self, k: int) -> np.ndarray:
		return self.sites[list(self.triangles[k])]

	def area(self, k: int) -> float:
		a, b, c = self.triangle_points(k)
		return 0.5 * abs(float((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])))

	@cached_property
	def areas(self) -> np.ndarray:
		return np.array([self.area(k) for k in range(self.n_triangles)])

	def hull_area(self) -> float:
		h = self.sites[list(self.hull)]
		x, y = h[:, 0], h[:, 1]
		return 0.5 * abs(float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1))))

	def frame(self, k: int) -> TriangleFrame:
		"""Basic-triangle frame of triangle k (cached)."""
		if k not in self._frames:
			self._frames[k] = normalize_to_basic(self.triangle_points(k))
		return self._frames[k]

	def locate(self, p: Sequence[float]) -> int:
		return locate(self, p)


def _validate(points: Sequence[Sequence[float]] | np.ndarray) -> np.ndarray:
	arr = np.asarray(points, dtype=float)
	if arr.ndim != 2 or arr.shape[1] != 2:
		raise TooFewSites(f"expected an (m, 2) array of sites, got shape {arr.shape}")
	if len(arr) < 3:
		raise TooFewSites(f"need at least 3 sites, got {len(arr)}")
	if not np.all(np.isfinite(arr)):
		bad = int(np.argmax(~np.all(np.isfinite(arr), axis=1)))
		raise NonFiniteCoordinate(f"site {bad} has a non-finite coordinate: {arr[bad].tolist()}")
	uniq, counts = np.unique(arr, axis=0, return_counts=True)
	if len(uniq) != len(arr):
		dup = uniq[int(np.argmax(counts > 1))]
		idx = np.flatnonzero(np.all(arr == dup, axis=1)).tolist()
		raise DuplicateSites(f"sites {idx} coincide at ({dup[0]!r}, {dup[1]!r})")
	return arr


def _initial_fan(pts: np.ndarray, order: list[int]) -> tuple[list[list[int]], list[int], int]:
	"""Triangles over the leading collinear run plus the first off-line site."""
	p0, p1 = pts[order[0]], pts[order[1]]
	k = 2
	while k < len(order) and orient2d(p0, p1, pts[order[k]]) == 0:
		k += 1
	if k == len(order):
		raise AllCollinear(f"all {len(order)} sites are collinear")
	chain = order[:k]
	apex = order[k]
	tris: list[list[int]] = []
	if orient2d(pts[chain[0]], pts[chain[-1]], pts[apex]) > 0:
		for a, b in zip(chain, chain[1:]):
			tris.append([a, b, apex])
		hull = list(chain) + [apex]
	else:
		for a, b in zip(chain, chain[1:]):
			tris.append([b, a, apex])
		hull = list(reversed(chain)) + [apex]
	return tris, hull, k + 1


def _insert_outside(pts: np.ndarray, tris: list[list[int]], hull: list[int], p: int) -> list[int]:
	h = len(hull)
	pp = pts[p]
	visible = [orient2d(pts[hull[i]], pts[hull[(i + 1) % h]], pp) < 0 for i in range(h)]
	start = next(i for i in range(h) if visible[i] and not visible[i - 1])
	rot = hull[start:] + hull[:start]
	c = 0
	while visible[(start + c) % h]:
		a, b = rot[c], rot[(c + 1) % h]
		tris.append([b, a, p])
		c += 1
	return [rot[0], p] + rot[c:]


def _third(tri: list[int], a: int, b: int) -> int:
	for v in tri:
		if v != a and v != b:
			return v
	raise AssertionError("triangle has no third vertex")


def _legalize(pts: np.ndarray, tris: list[list[int]]) -> int:
	edge_of: dict[tuple[int, int], int] = {}
	for t, (a, b, c) in enumerate(tris):
		edge_of[(a, b)] = t
		edge_of[(b, c)] = t
		edge_of[(c, a)] = t
	stack = list(edge_of.keys())
	flips = 0
	while stack:
		a, b = stack.pop()
		t = edge_of.get((a, b))
		u = edge_of.get((b, a))
		if t is None or u is None:
			continue
		p = _third(tris[t], a, b)
		s = _third(tris[u], a, b)
		if incircle_perturbed(pts[a], pts[b], pts[p], pts[s], a, b, p, s) <= 0:
			continue
		# quad a, s, b, p is convex; swap diagonal ab for ps
		tris[t] = [p, a, s]
		tris[u] = [s, b, p]
		del edge_of[(a, b)], edge_of[(b, a)]
		edge_of[(p, a)] = t
		edge_of[(a, s)] = t
		edge_of[(s, p)] = t
		edge_of[(s, b)] = u
		edge_of[(b, p)] = u
		edge_of[(p, s)] = u
		stack.extend([(p, a), (a, s), (s, b), (b, p)])
		flips += 1
	return flips


def _canonical(tri: Sequence[int]) -> Tri:
	i = int(np.argmin(tri))
	return (tri[i], tri[(i + 1) % 3], tri[(i + 2) % 3])


def triangulate(sites: Sequence[Sequence[float]] | np.ndarray) -> Triangulation:
	"""Delaunay triangulation of >= 3 distinct, not all collinear sites."""
	pts = _validate(sites)
	order = sorted(range(len(pts)), key=lambda i: (pts[i, 0], pts[i, 1]))
	tris, hull, nxt = _initial_fan(pts, order)
	for p in order[nxt:]:
		hull = _insert_outside(pts, tris, hull, p)
	flips = _legalize(pts, tris)

	triangles = tuple(sorted(_canonical(t) for t in tris))
	owner: dict[tuple[int, int], int] = {}
	for k, (a, b, c) in enumerate(triangles):
		owner[(a, b)] = k
		owner[(b, c)] = k
		owner[(c, a)] = k
	adjacency = tuple(
		(owner.get((c, b), OUTSIDE), owner.get((a, c), OUTSIDE), owner.get((b, a), OUTSIDE))
		for a, b, c in triangles
	)
	lo = hull.index(min(hull))
	hull_c = tuple(hull[lo:] + hull[:lo])

	frozen = pts.copy()
	frozen.setflags(write=False)
	t = Triangulation(frozen, triangles, adjacency, hull_c)
	logger.info(
		"triangulate: %d sites -> %d triangles, hull %d, %d flips",
		len(pts), len(triangles), len(hull_c), flips,
	)
	return t


def _locate_chunk(t: Triangulation, pts: np.ndarray, tri_idx: np.ndarray) -> np.ndarray:
	a = t.sites[tri_idx[:, 0]]
	b = t.sites[tri_idx[:, 1]]
	c = t.sites[tri_idx[:, 2]]

	def orient(u: np.ndarray, v: np.ndarray) -> np.ndarray:
		return (v[None, :, 0] - u[None, :, 0]) * (pts[:, None, 1] - u[None, :, 1]) - (
			v[None, :, 1] - u[None, :, 1]
		) * (pts[:, None, 0] - u[None, :, 0])

	o = np.minimum(np.minimum(orient(a, b), orient(b, c)), orient(c, a))
	scale = float(np.max(np.abs(t.sites))) + float(np.max(np.abs(pts)))
	slack = 1e-12 * max(scale, 1.0) ** 2
	cand = o >= -slack
	out = np.full(len(pts), OUTSIDE, dtype=int)
	for i in range(len(pts)):
		ks = np.flatnonzero(cand[i])
		for k in ks:
			ia, ib, ic = tri_idx[k]
			p = pts[i]
			if (
				orient2d(t.sites[ia], t.sites[ib], p) >= 0
				and orient2d(t.sites[ib], t.sites[ic], p) >= 0
				and orient2d(t.sites[ic], t.sites[ia], p) >= 0
			):
				out[i] = int(k)
				break
	return out


def locate_many(t: Triangulation, points: Sequence[Sequence[float]] | np.ndarray) -> np.ndarray:
	"""Triangle index per point (OUTSIDE off the hull); boundary points take the lowest index."""
	pts = np.asarray(points, dtype=float).reshape(-1, 2)
	if not np.all(np.isfinite(pts)):
		raise NonFiniteCoordinate("cannot locate points with non-finite coordinates")
	tri_idx = np.asarray(t.triangles, dtype=int)
	budget = get_config_value(load_config(), "simulation.locate_chunk", 4096, minimum=1)
	rows = max(1, int(budget * 64 // max(len(tri_idx), 1)))
	out = np.empty(len(pts), dtype=int)
	for lo, hi in chunk_ranges(len(pts), rows):
		out[lo:hi] = _locate_chunk(t, pts[lo:hi], tri_idx)
	return out


def locate(t: Triangulation, p: Sequence[float]) -> int:
	"""Index of the triangle containing p, or OUTSIDE."""
	return int(locate_many(t, np.asarray([p[0], p[1]], dtype=float))[0])


@dataclass(frozen=True, eq=False)
class VoronoiDual:
	"""Voronoi diagram read off the triangulation.

	vertices[k] is the circumcenter of triangle k. Each finite edge joins the
	circumcenters of two adjacent triangles and separates the cells of the
	two sites on their shared edge; each hull edge contributes a ray from its
	triangle's circumcenter along the outward edge normal.
	"""

	vertices: np.ndarray
	# (triangle k, triangle l, site i, site j) with k < l
	edges: tuple[tuple[int, int, int, int], ...]
	# (triangle k, site i, site j, (dx, dy))
	rays: tuple[tuple[int, int, int, tuple[float, float]], ...]
	# triangles incident to each site
	cells: tuple[tuple[int, ...], ...]


def _circumcenter(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> np.ndarray:
	bx, by = b - a
	cx, cy = c - a
	d = 2.0 * (bx * cy - by * cx)
	b2, c2 = bx * bx + by * by, cx * cx + cy * cy
	return a + np.array([(cy * b2 - by * c2) / d, (bx * c2 - cx * b2) / d])


def voronoi_dual(t: Triangulation) -> VoronoiDual:
	verts = np.array([_circumcenter(*t.triangle_points(k)) for k in range(t.n_triangles)])
	edges: list[tuple[int, int, int, int]] = []
	rays: list[tuple[int, int, int, tuple[float, float]]] = []
	cells: list[list[int]] = [[] for _ in range(t.n_sites)]
	for k, tri in enumerate(t.triangles):
		for v in tri:
			cells[v].append(k)
		for pos in range(3):
			i, j = tri[(pos + 1) % 3], tri[(pos + 2) % 3]
			nb = t.adjacency[k][pos]
			if nb == OUTSIDE:
				# hull edge i -> j is counterclockwise, so the outward normal is (dy, -dx)
				dx, dy = t.sites[j] - t.sites[i]
				n = math.hypot(dx, dy)
				rays.append((k, i, j, (float(dy / n), float(-dx / n))))
			elif k < nb:
				edges.append((k, nb, min(i, j), max(i, j)))
	return VoronoiDual(verts, tuple(edges), tuple(rays), tuple(tuple(c) for c in cells))


__all__ = [
	"OUTSIDE",
	"Triangulation",
	"VoronoiDual",
	"triangulate",
	"locate",
	"locate_many",
	"voronoi_dual",
]

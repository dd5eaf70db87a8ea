"""Proximity maps N(x) on a triangle in basic coordinates.

Every family reduces to T_b cut by at most three extra half-planes, or to a
disk clipped by T_b (spherical maps are not clipped). `_batch` computes these
parameters for many x at once; arc tests evaluate them directly and
`region` materializes them as a ProximityRegion.

Distances below are signed edge distances dist_i(p) (positive inside T_b),
h_i is the height of y_i over e_i.

  pe  (r)    T & {dist_v(p) >= h_v - r (h_v - dist_v(x))},   v = vertex region of x
  cs  (tau)  {dist_j(p) >= dist_j(x) - k dist_j(M), j=1..3},  k = tau dist_e(x) / dist_e(M)
  dd         T & {dist_e(p) <= 2 dist_e(x)},                  e = edge region of x
  dx         T & {p.x <= 2 x0} if x0 <= 1/2 else T & {1 - p.x <= 2 (1 - x0)}
  as         T & disk(x, |x - y_v|)
  sph        open disk(x, min_y |x - y|), not clipped

All regions are closed (with tolerance TOL) except the spherical ball.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np

from src.geometry.core import TOL, Point2, TriangleFrame
from src.geometry.exceptions import InvalidSpec, OutsideTriangle
from src.geometry.mapspec import ProximityMapSpec
from src.geometry.partitions import (
	PartitionScheme,
	check_center,
	edge_regions_of,
	region_polygon,
	vertex_regions_of,
)
from src.geometry.region import Disk, ProximityRegion, RegionUnion, halfplane
from src.system.log import get_logger

logger = get_logger(__name__)

# rows of xs evaluated together in catches_matrix
_ROW_CHUNK = 512


@dataclass(frozen=True)
class _Batch:
	xs: np.ndarray
	# per-x extra constraints a.p <= b, shapes (n, m, 2) and (n, m)
	a: np.ndarray
	b: np.ndarray
	radius: np.ndarray | None
	clip: bool
	point: np.ndarray
	# edge index 1..3 of a segment-degenerate region, 0 otherwise
	segment: np.ndarray
	# spherical balls are open
	open_disk: bool = False


def _as_array(pts: Sequence[float] | np.ndarray) -> np.ndarray:
	arr = np.asarray(pts, dtype=float)
	if arr.ndim == 1:
		arr = arr.reshape(1, 2)
	return arr.reshape(-1, 2)


def validate_for_frame(frame: TriangleFrame, spec: ProximityMapSpec) -> Point2 | None:
	"""Check the center constraints of `spec` on this triangle; returns M (basic) or None."""
	scheme = spec.scheme
	if scheme is None or spec.center is None:
		return None
	return check_center(frame, spec.center, scheme)


def _batch(
	xs: np.ndarray,
	frame: TriangleFrame,
	spec: ProximityMapSpec,
	sites: np.ndarray | None = None,
) -> _Batch:
	n = len(xs)
	fam = spec.family
	empty_a = np.zeros((n, 0, 2))
	empty_b = np.zeros((n, 0))
	point = np.zeros(n, dtype=bool)
	segment = np.zeros(n, dtype=int)
	V = frame.basic_vertices

	if fam == "sph":
		ys = V if sites is None else _as_array(sites)
		radius = np.min(np.hypot(xs[:, None, 0] - ys[None, :, 0], xs[:, None, 1] - ys[None, :, 1]), axis=1)
		return _Batch(xs, empty_a, empty_b, radius, False, radius <= TOL, segment, open_disk=True)

	d = frame.edge_distances(xs)
	outside = d.min(axis=1) < -TOL
	if outside.any():
		first = xs[int(np.argmax(outside))]
		raise OutsideTriangle(
			f"{int(outside.sum())} point(s) outside the triangle, first at ({first[0]:.6g}, {first[1]:.6g})"
		)
	N, O, H = frame.edge_normals, frame.edge_offsets, frame.heights
	at_vertex = np.min(np.hypot(xs[:, None, 0] - V[None, :, 0], xs[:, None, 1] - V[None, :, 1]), axis=1) <= TOL
	rows = np.arange(n)

	if fam == "pe":
		if spec.is_infinite:
			return _Batch(xs, empty_a, empty_b, None, True, at_vertex, segment)
		v = vertex_regions_of(xs, frame, spec.center, spec.method) - 1
		theta = H[v] - spec.r * (H[v] - d[rows, v])
		return _Batch(xs, -N[v][:, None, :], (-(O[v] + theta))[:, None], None, True, at_vertex, segment)

	if fam == "as":
		v = vertex_regions_of(xs, frame, spec.center, spec.method) - 1
		radius = np.hypot(xs[:, 0] - V[v, 0], xs[:, 1] - V[v, 1])
		return _Batch(xs, empty_a, empty_b, radius, True, radius <= TOL, segment)

	if fam == "cs":
		if spec.tau == 0.0:
			return _Batch(xs, empty_a, empty_b, None, True, np.ones(n, dtype=bool), segment)
		e = edge_regions_of(xs, frame, spec.center) - 1
		M = spec.center.resolve(frame)
		dM = frame.edge_distances(np.array([M.x, M.y]))[0]
		k = spec.tau * d[rows, e] / dM[e]
		theta = d - k[:, None] * dM[None, :]
		a = np.broadcast_to(-N, (n, 3, 2)).copy()
		return _Batch(xs, a, -(O[None, :] + theta), None, True, d.min(axis=1) <= TOL, segment)

	if fam == "dd":
		e = edge_regions_of(xs, frame, spec.center) - 1
		de = d[rows, e]
		segment = np.where(de <= TOL, e + 1, 0)
		return _Batch(xs, N[e][:, None, :], (O[e] + 2.0 * de)[:, None], None, True, point, segment)

	if fam == "dx":
		x0 = xs[:, 0]
		left = x0 <= 0.5
		a = np.where(left[:, None], np.array([1.0, 0.0]), np.array([-1.0, 0.0]))[:, None, :]
		b = np.where(left, 2.0 * x0, 1.0 - 2.0 * x0)[:, None]
		near = np.hypot(*(xs[:, None, :] - V[None, :2, :]).transpose(2, 0, 1))
		return _Batch(xs, a, b, None, True, near.min(axis=1) <= TOL, segment)

	raise InvalidSpec(f"unknown proximity family {fam!r}")


def _in_triangle(frame: TriangleFrame, ys: np.ndarray) -> np.ndarray:
	return frame.edge_distances(ys).min(axis=1) >= -TOL


def _matrix_rows(batch: _Batch, frame: TriangleFrame, ys: np.ndarray) -> np.ndarray:
	xs = batch.xs
	out = np.ones((len(xs), len(ys)), dtype=bool)
	in_t = _in_triangle(frame, ys)
	if batch.clip:
		out &= in_t[None, :]
	if batch.a.shape[1]:
		s = batch.b[:, None, :] - np.einsum("imk,jk->ijm", batch.a, ys)
		out &= s.min(axis=2) >= -TOL
	dist = np.hypot(xs[:, None, 0] - ys[None, :, 0], xs[:, None, 1] - ys[None, :, 1])
	if batch.radius is not None:
		r = batch.radius[:, None]
		out &= (dist < r) if batch.open_disk else (dist <= r + TOL)
	if batch.point.any():
		out[batch.point] = dist[batch.point] <= TOL
	if batch.segment.any():
		dy = frame.edge_distances(ys)
		for e in (1, 2, 3):
			sel = batch.segment == e
			if sel.any():
				out[sel] = (np.abs(dy[:, e - 1]) <= TOL) & in_t
	return out


def catches_matrix(
	xs: np.ndarray,
	frame: TriangleFrame,
	spec: ProximityMapSpec,
	ys: np.ndarray | None = None,
	*,
	sites: np.ndarray | None = None,
) -> np.ndarray:
	"""Boolean (n_x, n_y) matrix with [i, j] = ys[j] in N(xs[i]); ys defaults to xs.

	All points are in basic coordinates of `frame`.
	"""
	xarr = _as_array(xs)
	yarr = xarr if ys is None else _as_array(ys)
	out = np.zeros((len(xarr), len(yarr)), dtype=bool)
	for lo in range(0, len(xarr), _ROW_CHUNK):
		hi = min(lo + _ROW_CHUNK, len(xarr))
		out[lo:hi] = _matrix_rows(_batch(xarr[lo:hi], frame, spec, sites), frame, yarr)
	return out


def catches_pairs(
	xs: np.ndarray,
	ys: np.ndarray,
	frame: TriangleFrame,
	spec: ProximityMapSpec,
	*,
	sites: np.ndarray | None = None,
) -> np.ndarray:
	"""Elementwise arc test: out[k] = ys[k] in N(xs[k])."""
	xarr, yarr = _as_array(xs), _as_array(ys)
	if len(xarr) != len(yarr):
		raise ValueError(f"xs and ys differ in length: {len(xarr)} vs {len(yarr)}")
	batch = _batch(xarr, frame, spec, sites)
	in_t = _in_triangle(frame, yarr)
	out = in_t.copy() if batch.clip else np.ones(len(xarr), dtype=bool)
	if batch.a.shape[1]:
		s = batch.b - np.einsum("imk,ik->im", batch.a, yarr)
		out &= s.min(axis=1) >= -TOL
	dist = np.hypot(xarr[:, 0] - yarr[:, 0], xarr[:, 1] - yarr[:, 1])
	if batch.radius is not None:
		out &= (dist < batch.radius) if batch.open_disk else (dist <= batch.radius + TOL)
	out = np.where(batch.point, dist <= TOL, out)
	if batch.segment.any():
		sel = batch.segment > 0
		dy = frame.edge_distances(yarr[sel])
		on_edge = np.abs(dy[np.arange(int(sel.sum())), batch.segment[sel] - 1]) <= TOL
		out[sel] = on_edge & in_t[sel]
	return out


def catches(
	x: Sequence[float],
	y: Sequence[float],
	frame: TriangleFrame,
	spec: ProximityMapSpec,
	*,
	sites: np.ndarray | None = None,
) -> bool:
	"""Arc x -> y: y in N(x), decided without building the region."""
	return bool(catches_pairs(_as_array(x), _as_array(y), frame, spec, sites=sites)[0])


def region(
	x: Sequence[float],
	frame: TriangleFrame,
	spec: ProximityMapSpec,
	*,
	sites: np.ndarray | None = None,
) -> ProximityRegion:
	"""N(x) as half-planes (plus a disk for as/sph) in basic coordinates."""
	xs = _as_array(x)
	batch = _batch(xs, frame, spec, sites)
	px, py = float(xs[0, 0]), float(xs[0, 1])
	if batch.point[0]:
		return ProximityRegion.of_point((px, py))
	if batch.segment[0]:
		e = int(batch.segment[0])
		V = frame.basic_vertices
		j, k = e % 3, (e + 1) % 3
		return ProximityRegion.of_segment(V[j], V[k])
	hps = frame.halfplanes() if batch.clip else ()
	extra = tuple(
		halfplane(batch.a[0, m], float(batch.b[0, m]))
		for m in range(batch.a.shape[1])
		if math.isfinite(batch.b[0, m])
	)
	disk = None if batch.radius is None else Disk(Point2(px, py), float(batch.radius[0]))
	return ProximityRegion(hps + extra, disk)


def _triangle_region(frame: TriangleFrame) -> ProximityRegion:
	return ProximityRegion(frame.halfplanes())


def superset_region(frame: TriangleFrame, spec: ProximityMapSpec) -> RegionUnion:
	"""{x in T : N(x) = T} as a union of convex pieces (possibly empty or degenerate)."""
	validate_for_frame(frame, spec)
	fam = spec.family
	N, O, H = frame.edge_normals, frame.edge_offsets, frame.heights

	if fam == "sph":
		# an open ball around x never reaches the nearest vertex
		return RegionUnion()
	if fam == "cs":
		if spec.tau < 1.0:
			return RegionUnion()
		return RegionUnion.single(ProximityRegion.of_point(spec.center.resolve(frame)))
	if fam == "dx":
		cut = (halfplane((1.0, 0.0), 0.5), halfplane((-1.0, 0.0), -0.5))
		return RegionUnion.single(_triangle_region(frame).with_halfplanes(*cut))
	if fam == "pe" and spec.is_infinite:
		return RegionUnion.single(_triangle_region(frame))

	V = frame.basic_vertices
	pieces: list[ProximityRegion] = []
	for i in (1, 2, 3):
		if fam == "pe":
			scheme = spec.scheme
			cuts = (halfplane(N[i - 1], float(O[i - 1] + H[i - 1] * (1.0 - 1.0 / spec.r))),)
		elif fam == "dd":
			scheme = PartitionScheme("edge", "lines")
			cuts = (halfplane(-N[i - 1], float(-(O[i - 1] + H[i - 1] / 2.0))),)
		else:
			# as: y_i must be the farthest vertex from x
			scheme = spec.scheme
			cuts = tuple(
				halfplane(-(V[j] - V[i - 1]), float(-(V[j] @ V[j] - V[i - 1] @ V[i - 1]) / 2.0))
				for j in range(3)
				if j != i - 1
			)
		piece = region_polygon(frame, spec.center, scheme, i).with_halfplanes(*cuts)
		if len(piece.polygon()):
			pieces.append(piece)
	logger.debug("superset_region %s: %d non-empty piece(s)", spec.label(), len(pieces))
	return RegionUnion(tuple(pieces))


def t_r_corners(frame: TriangleFrame, r: float) -> tuple[Point2, Point2, Point2]:
	"""Corners t1, t2, t3 of the T_r triangle, nearest y1, y2, y3 respectively."""
	if not 1.0 <= r < 1.5:
		raise InvalidSpec(f"the T^r triangle exists for 1 <= r < 3/2, got r={r}")
	c1, c2 = frame.c1, frame.c2
	return (
		Point2((r - 1.0) * (1.0 + c1) / r, c2 * (r - 1.0) / r),
		Point2((2.0 - r + c1 * (r - 1.0)) / r, c2 * (r - 1.0) / r),
		Point2((c1 * (2.0 - r) + r - 1.0) / r, c2 * (2.0 - r) / r),
	)


def t_r_triangle(frame: TriangleFrame, r: float) -> ProximityRegion:
	"""Points whose r-factor proportional-edge region never reaches the opposite edge.

	T_r = {p : dist_i(p) >= h_i (1 - 1/r), i = 1..3}, a triangle similar to
	T_b for 1 <= r < 3/2 that shrinks to the centroid as r -> 3/2.
	"""
	if not 1.0 <= r < 1.5:
		raise InvalidSpec(f"the T^r triangle exists for 1 <= r < 3/2, got r={r}")
	N, O, H = frame.edge_normals, frame.edge_offsets, frame.heights
	cuts = tuple(halfplane(-N[i], float(-(O[i] + H[i] * (1.0 - 1.0 / r)))) for i in range(3))
	return ProximityRegion(cuts)


Lambda0Kind = Literal["points", "boundary", "triangle"]


@dataclass(frozen=True)
class Lambda0Region:
	"""Locus of x whose region has zero area."""

	kind: Lambda0Kind
	points: tuple[Point2, ...] = ()

	def contains_many(self, pts: np.ndarray, frame: TriangleFrame, tol: float = TOL) -> np.ndarray:
		arr = _as_array(pts)
		d = frame.edge_distances(arr)
		inside = d.min(axis=1) >= -tol
		if self.kind == "triangle":
			return inside
		if self.kind == "boundary":
			return inside & (np.abs(d).min(axis=1) <= tol)
		if not self.points:
			return np.zeros(len(arr), dtype=bool)
		ps = np.array([[p.x, p.y] for p in self.points])
		dist = np.hypot(arr[:, None, 0] - ps[None, :, 0], arr[:, None, 1] - ps[None, :, 1])
		return dist.min(axis=1) <= tol


def lambda0_region(frame: TriangleFrame, spec: ProximityMapSpec) -> Lambda0Region:
	fam = spec.family
	if fam == "cs":
		return Lambda0Region("triangle") if spec.tau == 0.0 else Lambda0Region("boundary")
	if fam == "dd":
		return Lambda0Region("boundary")
	if fam == "dx":
		return Lambda0Region("points", (frame.basic_vertex(1), frame.basic_vertex(2)))
	return Lambda0Region("points", tuple(frame.basic_vertex(i) for i in (1, 2, 3)))


__all__ = [
	"Lambda0Region",
	"catches",
	"catches_matrix",
	"catches_pairs",
	"lambda0_region",
	"region",
	"superset_region",
	"t_r_corners",
	"t_r_triangle",
	"validate_for_frame",
]

"""Convex regions given by half-plane constraints, optionally clipped by one disk.

The constraints are the source of truth; vertex cycles are derived on demand
by pairwise line intersection. Areas use the shoelace rule, and for a disk
clip the polygon-disk overlap is summed edge by edge over the triangles
(center, p_i, p_i+1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal, Sequence

import numpy as np

from src.geometry.core import TOL, Point2
from src.geometry.exceptions import UnboundedRegion

HalfPlane = tuple[tuple[float, float], float]
DegenerateKind = Literal["point", "segment", "empty"]


@dataclass(frozen=True)
class Degenerate:
	kind: DegenerateKind
	points: tuple[Point2, ...] = ()

	@classmethod
	def point(cls, p: Sequence[float]) -> "Degenerate":
		return cls("point", (Point2.of(p),))

	@classmethod
	def segment(cls, p: Sequence[float], q: Sequence[float]) -> "Degenerate":
		return cls("segment", (Point2.of(p), Point2.of(q)))

	@classmethod
	def empty(cls) -> "Degenerate":
		return cls("empty")


@dataclass(frozen=True)
class Disk:
	center: Point2
	radius: float

	def __post_init__(self) -> None:
		if not self.radius >= 0:
			raise ValueError(f"disk radius must be >= 0, got {self.radius}")


def halfplane(normal: Sequence[float], offset: float, *, unit: bool = True) -> HalfPlane:
	"""a.p <= b, rescaled so |a| = 1 when `unit`."""
	ax, ay = float(normal[0]), float(normal[1])
	b = float(offset)
	if unit:
		n = math.hypot(ax, ay)
		if n == 0.0:
			raise ValueError("half-plane normal must be nonzero")
		ax, ay, b = ax / n, ay / n, b / n
	return ((ax, ay), b)


def side_of_line(p: Sequence[float], q: Sequence[float], keep: Sequence[float]) -> HalfPlane:
	"""Closed half-plane bounded by line pq that contains `keep`."""
	dx, dy = q[0] - p[0], q[1] - p[1]
	ax, ay = dy, -dx
	b = ax * p[0] + ay * p[1]
	if ax * keep[0] + ay * keep[1] > b:
		ax, ay, b = -ax, -ay, -b
	return halfplane((ax, ay), b)


@dataclass(frozen=True)
class ProximityRegion:
	halfplanes: tuple[HalfPlane, ...] = ()
	disk: Disk | None = None
	degenerate: Degenerate | None = None

	@classmethod
	def of_point(cls, p: Sequence[float]) -> "ProximityRegion":
		return cls(degenerate=Degenerate.point(p))

	@classmethod
	def of_segment(cls, p: Sequence[float], q: Sequence[float]) -> "ProximityRegion":
		return cls(degenerate=Degenerate.segment(p, q))

	@classmethod
	def empty(cls) -> "ProximityRegion":
		return cls(degenerate=Degenerate.empty())

	def with_halfplanes(self, *extra: HalfPlane) -> "ProximityRegion":
		return ProximityRegion(self.halfplanes + tuple(extra), self.disk, self.degenerate)

	@property
	def is_degenerate(self) -> bool:
		return self.degenerate is not None

	def slack(self, pts: np.ndarray) -> np.ndarray:
		"""Smallest constraint slack per point (>= 0 inside); degenerate regions excluded."""
		arr = np.asarray(pts, dtype=float).reshape(-1, 2)
		out = np.full(len(arr), np.inf)
		if self.halfplanes:
			a = np.array([h[0] for h in self.halfplanes])
			b = np.array([h[1] for h in self.halfplanes])
			out = np.min(b - arr @ a.T, axis=1)
		if self.disk is not None:
			c = self.disk.center
			d = self.disk.radius - np.hypot(arr[:, 0] - c.x, arr[:, 1] - c.y)
			out = np.minimum(out, d)
		return out

	def contains_many(self, pts: np.ndarray, tol: float = TOL) -> np.ndarray:
		arr = np.asarray(pts, dtype=float).reshape(-1, 2)
		if self.degenerate is not None:
			kind, dp = self.degenerate.kind, self.degenerate.points
			if kind == "empty":
				return np.zeros(len(arr), dtype=bool)
			if kind == "point":
				return np.hypot(arr[:, 0] - dp[0].x, arr[:, 1] - dp[0].y) <= tol
			return _segment_distance(arr, dp[0], dp[1]) <= tol
		return self.slack(arr) >= -tol

	def contains(self, p: Sequence[float], tol: float = TOL) -> bool:
		return bool(self.contains_many(np.asarray([p[0], p[1]], dtype=float), tol)[0])

	def polygon(self) -> np.ndarray:
		"""Counterclockwise vertex cycle of the half-plane intersection.

		With a disk the cycle is additionally bounded by the square whose edges lie
		at distance 2r from the center, so no bounding edge meets the circle.
		"""
		if self.degenerate is not None:
			return np.array([[p.x, p.y] for p in self.degenerate.points]).reshape(-1, 2)
		hps = list(self.halfplanes)
		if self.disk is not None:
			c, r = self.disk.center, 2.0 * self.disk.radius
			hps += [
				((1.0, 0.0), c.x + r), ((-1.0, 0.0), -(c.x - r)),
				((0.0, 1.0), c.y + r), ((0.0, -1.0), -(c.y - r)),
			]
		if not _bounded(hps):
			raise UnboundedRegion("half-planes do not bound a finite region; clip by the triangle first")
		return _vertex_cycle(hps)

	def vertices(self) -> list[Point2]:
		return [Point2(x, y) for x, y in self.polygon()]

	def area(self) -> float:
		if self.degenerate is not None:
			return 0.0
		if self.disk is not None and not self.halfplanes:
			return math.pi * self.disk.radius ** 2
		poly = self.polygon()
		if len(poly) < 3:
			return 0.0
		if self.disk is None:
			return polygon_area(poly)
		return polygon_disk_area(poly, self.disk.center, self.disk.radius)


def polygon_area(poly: np.ndarray) -> float:
	x, y = poly[:, 0], poly[:, 1]
	return 0.5 * abs(float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1))))


def polygon_disk_area(poly: np.ndarray, center: Point2, radius: float) -> float:
	if radius <= 0.0:
		return 0.0
	rel = poly - np.array([center.x, center.y])
	total = 0.0
	n = len(rel)
	for i in range(n):
		total += _wedge_disk_area(rel[i], rel[(i + 1) % n], radius)
	return abs(total)


def _wedge_disk_area(a: np.ndarray, b: np.ndarray, r: float) -> float:
	"""Signed area of triangle (0, a, b) intersected with the disk |p| <= r."""
	d = b - a
	qa = float(np.dot(d, d))
	if qa == 0.0:
		return 0.0
	qb = 2.0 * float(np.dot(a, d))
	qc = float(np.dot(a, a)) - r * r
	ts = [0.0]
	disc = qb * qb - 4.0 * qa * qc
	# the line meets the open disk only on (lo, hi); a tangent line never does
	lo = hi = math.nan
	if disc > 0.0:
		sq = math.sqrt(disc)
		lo, hi = (-qb - sq) / (2.0 * qa), (-qb + sq) / (2.0 * qa)
		for t in (lo, hi):
			if 0.0 < t < 1.0:
				ts.append(t)
	ts.append(1.0)
	area = 0.0
	for t0, t1 in zip(ts[:-1], ts[1:]):
		p = a + t0 * d
		q = a + t1 * d
		cross = p[0] * q[1] - p[1] * q[0]
		if lo <= 0.5 * (t0 + t1) <= hi:
			area += 0.5 * cross
		else:
			area += 0.5 * r * r * math.atan2(cross, float(np.dot(p, q)))
	return area


def _bounded(hps: Sequence[HalfPlane]) -> bool:
	# bounded iff the constraint normals leave no angular gap of pi or more
	if len(hps) < 3:
		return False
	ang = sorted(math.atan2(a[1], a[0]) for a, _ in hps)
	gaps = [b - a for a, b in zip(ang, ang[1:])] + [ang[0] + 2.0 * math.pi - ang[-1]]
	return max(gaps) < math.pi - 1e-12


def _vertex_cycle(hps: Sequence[HalfPlane], tol: float = 1e-12) -> np.ndarray:
	a = np.array([h[0] for h in hps], dtype=float)
	b = np.array([h[1] for h in hps], dtype=float)
	scale = max(1.0, float(np.max(np.abs(b))))
	pts: list[np.ndarray] = []
	m = len(hps)
	for i in range(m):
		for j in range(i + 1, m):
			det = a[i, 0] * a[j, 1] - a[i, 1] * a[j, 0]
			if abs(det) < 1e-14:
				continue
			x = (b[i] * a[j, 1] - a[i, 1] * b[j]) / det
			y = (a[i, 0] * b[j] - b[i] * a[j, 0]) / det
			p = np.array([x, y])
			if np.all(a @ p - b <= 1e-10 * scale):
				pts.append(p)
	if not pts:
		return np.empty((0, 2))
	uniq: list[np.ndarray] = []
	for p in pts:
		if all(np.hypot(*(p - q)) > 1e-11 * scale for q in uniq):
			uniq.append(p)
	arr = np.array(uniq)
	if len(arr) < 3:
		return arr
	c = arr.mean(axis=0)
	order = np.argsort(np.arctan2(arr[:, 1] - c[1], arr[:, 0] - c[0]))
	return arr[order]


def _segment_distance(pts: np.ndarray, p: Point2, q: Point2) -> np.ndarray:
	d = np.array([q.x - p.x, q.y - p.y])
	rel = pts - np.array([p.x, p.y])
	dd = float(np.dot(d, d))
	t = np.zeros(len(pts)) if dd == 0.0 else np.clip(rel @ d / dd, 0.0, 1.0)
	proj = np.outer(t, d)
	return np.hypot(*(rel - proj).T)


@dataclass(frozen=True)
class RegionUnion:
	"""Union of convex pieces with pairwise disjoint interiors."""

	pieces: tuple[ProximityRegion, ...] = field(default_factory=tuple)

	@classmethod
	def single(cls, region: ProximityRegion) -> "RegionUnion":
		return cls((region,))

	def area(self) -> float:
		return float(sum(p.area() for p in self.pieces))

	def contains_many(self, pts: np.ndarray, tol: float = TOL) -> np.ndarray:
		arr = np.asarray(pts, dtype=float).reshape(-1, 2)
		out = np.zeros(len(arr), dtype=bool)
		for piece in self.pieces:
			out |= piece.contains_many(arr, tol)
		return out

	def contains(self, p: Sequence[float], tol: float = TOL) -> bool:
		return bool(self.contains_many(np.asarray([p[0], p[1]], dtype=float), tol)[0])

	@property
	def is_empty(self) -> bool:
		return len(self.vertex_set()) == 0

	def vertex_set(self) -> list[Point2]:
		"""Distinct vertices over all pieces."""
		seen: list[Point2] = []
		for piece in self.pieces:
			for v in piece.vertices():
				if all(v.dist(s) > 1e-9 for s in seen):
					seen.append(v)
		return seen

	def hull_vertices(self) -> list[Point2]:
		"""Counterclockwise convex hull of all piece vertices."""
		pts = sorted({(round(v.x, 12), round(v.y, 12)) for v in self.vertex_set()})
		if len(pts) < 3:
			return [Point2(x, y) for x, y in pts]

		def cross(o, a, b):
			return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

		lower: list[tuple[float, float]] = []
		for p in pts:
			while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 1e-15:
				lower.pop()
			lower.append(p)
		upper: list[tuple[float, float]] = []
		for p in reversed(pts):
			while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 1e-15:
				upper.pop()
			upper.append(p)
		return [Point2(x, y) for x, y in lower[:-1] + upper[:-1]]


def region_area(region: ProximityRegion | RegionUnion) -> float:
	"""Area of a region; degenerate regions have area 0."""
	return region.area()


__all__ = [
	"HalfPlane",
	"Degenerate",
	"Disk",
	"ProximityRegion",
	"RegionUnion",
	"halfplane",
	"side_of_line",
	"polygon_area",
	"polygon_disk_area",
	"region_area",
]

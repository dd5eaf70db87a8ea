"""Planar primitives and triangle normalization.

Every triangle is handled through a TriangleFrame: a similarity map sends the
original vertices to the basic triangle T_b = ((0,0), (1,0), (c1,c2)) with the
longest edge on the unit segment and 0 < c1 <= 1/2. All region geometry in the
package is written in these basic coordinates; edge e_i is opposite vertex y_i.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Literal, Sequence

import numpy as np

from src.common.config import get_config_value, load_config
from src.geometry.exceptions import DegenerateTriangle, NonFiniteCoordinate
from src.geometry.predicates import orient2d
from src.system.log import get_logger

logger = get_logger(__name__)

TOL: float = get_config_value(load_config(), "geometry.tolerance", 1e-9, minimum=0.0)
SQRT3 = math.sqrt(3.0)

MapKind = Literal["rigid", "rigid+scale", "shear"]
ShapeClass = Literal["acute", "right", "obtuse", "degenerate-interval"]
CenterName = Literal["CC", "IC", "CM", "OC"]


@dataclass(frozen=True)
class Point2:
	x: float
	y: float

	def __post_init__(self) -> None:
		x, y = float(self.x), float(self.y)
		if not (math.isfinite(x) and math.isfinite(y)):
			raise NonFiniteCoordinate(f"non-finite point ({self.x}, {self.y})")
		object.__setattr__(self, "x", x)
		object.__setattr__(self, "y", y)

	@classmethod
	def of(cls, p: "Point2 | Sequence[float]") -> "Point2":
		if isinstance(p, Point2):
			return p
		return cls(p[0], p[1])

	def __iter__(self) -> Iterator[float]:
		yield self.x
		yield self.y

	def __getitem__(self, i: int) -> float:
		return (self.x, self.y)[i]

	def __len__(self) -> int:
		return 2

	def __add__(self, other: "Point2") -> "Point2":
		return Point2(self.x + other[0], self.y + other[1])

	def __sub__(self, other: "Point2") -> "Point2":
		return Point2(self.x - other[0], self.y - other[1])

	def scale(self, k: float) -> "Point2":
		return Point2(self.x * k, self.y * k)

	def dot(self, other: Sequence[float]) -> float:
		return self.x * other[0] + self.y * other[1]

	def dist(self, other: Sequence[float]) -> float:
		return math.hypot(self.x - other[0], self.y - other[1])

	def as_array(self) -> np.ndarray:
		return np.array([self.x, self.y], dtype=float)


def as_points(pts: Iterable[Sequence[float]]) -> list[Point2]:
	return [Point2.of(p) for p in pts]


@dataclass(frozen=True)
class AffineMap:
	"""p -> linear @ p + offset."""

	linear: tuple[tuple[float, float], tuple[float, float]]
	offset: tuple[float, float]
	kind: MapKind

	def __post_init__(self) -> None:
		if self.kind not in ("rigid", "rigid+scale", "shear"):
			raise ValueError(f"unknown affine map kind: {self.kind}")
		m = self.matrix
		det = float(np.linalg.det(m))
		if not math.isfinite(det) or abs(det) < 1e-300:
			raise ValueError("affine map must be invertible")
		if self.kind in ("rigid", "rigid+scale"):
			gram = m.T @ m
			k2 = gram[0, 0]
			if abs(gram[0, 1]) > 1e-9 * k2 or abs(gram[1, 1] - k2) > 1e-9 * k2:
				raise ValueError(f"linear part is not a scaled orthogonal matrix ({self.kind})")
			if self.kind == "rigid" and abs(k2 - 1.0) > 1e-9:
				raise ValueError("rigid map must have an orthogonal linear part")

	@cached_property
	def matrix(self) -> np.ndarray:
		return np.array(self.linear, dtype=float)

	@property
	def det(self) -> float:
		return float(np.linalg.det(self.matrix))

	@property
	def scale_factor(self) -> float:
		"""Length scale for similarity maps (sqrt|det| otherwise)."""
		return math.sqrt(abs(self.det))

	def apply(self, p: Point2 | Sequence[float]) -> Point2:
		(a, b), (c, d) = self.linear
		x, y = p[0], p[1]
		return Point2(a * x + b * y + self.offset[0], c * x + d * y + self.offset[1])

	def apply_array(self, pts: np.ndarray) -> np.ndarray:
		arr = np.asarray(pts, dtype=float).reshape(-1, 2)
		return arr @ self.matrix.T + np.asarray(self.offset, dtype=float)

	def inverse(self) -> "AffineMap":
		inv = np.linalg.inv(self.matrix)
		off = -inv @ np.asarray(self.offset, dtype=float)
		return AffineMap(_as_pairs(inv), (float(off[0]), float(off[1])), self.kind)

	def compose(self, inner: "AffineMap") -> "AffineMap":
		"""self after inner."""
		m = self.matrix @ inner.matrix
		off = self.matrix @ np.asarray(inner.offset, dtype=float) + np.asarray(self.offset, dtype=float)
		kind: MapKind = "shear" if "shear" in (self.kind, inner.kind) else (
			"rigid" if self.kind == inner.kind == "rigid" else "rigid+scale"
		)
		return AffineMap(_as_pairs(m), (float(off[0]), float(off[1])), kind)


def _as_pairs(m: np.ndarray) -> tuple[tuple[float, float], tuple[float, float]]:
	return ((float(m[0, 0]), float(m[0, 1])), (float(m[1, 0]), float(m[1, 1])))


IDENTITY = AffineMap(((1.0, 0.0), (0.0, 1.0)), (0.0, 0.0), "rigid+scale")


def classify_shape(c1: float, c2: float, tol: float = TOL) -> ShapeClass:
	# the apex angle is the largest; its cosine has the sign of c2^2 - (c1 - c1^2)
	if c2 <= tol:
		return "degenerate-interval"
	s = c2 * c2 - (c1 - c1 * c1)
	if s > tol:
		return "acute"
	if s < -tol:
		return "obtuse"
	return "right"


@dataclass(frozen=True)
class TriangleFrame:
	vertices: tuple[Point2, Point2, Point2]
	c1: float
	c2: float
	to_basic: AffineMap
	shape_class: ShapeClass
	# input index of the basic vertices y1, y2, y3
	order: tuple[int, int, int] = (0, 1, 2)

	def __post_init__(self) -> None:
		if not (0.0 < self.c1 <= 0.5 + TOL) or self.c2 <= 0.0:
			raise DegenerateTriangle(f"(c1, c2) = ({self.c1}, {self.c2}) outside the basic-triangle domain")
		if (1.0 - self.c1) ** 2 + self.c2 ** 2 > 1.0 + 1e-7:
			raise DegenerateTriangle(f"(c1, c2) = ({self.c1}, {self.c2}): base is not the longest edge")

	@classmethod
	def basic(cls, c1: float, c2: float) -> "TriangleFrame":
		"""Frame of T_b itself, with the identity map."""
		verts = (Point2(0.0, 0.0), Point2(1.0, 0.0), Point2(c1, c2))
		return cls(verts, float(c1), float(c2), IDENTITY, classify_shape(c1, c2))

	@classmethod
	def equilateral(cls) -> "TriangleFrame":
		return cls.basic(0.5, SQRT3 / 2.0)

	@cached_property
	def to_original(self) -> AffineMap:
		return self.to_basic.inverse()

	@cached_property
	def basic_vertices(self) -> np.ndarray:
		return np.array([[0.0, 0.0], [1.0, 0.0], [self.c1, self.c2]], dtype=float)

	def basic_vertex(self, i: int) -> Point2:
		"""Vertex y_i, i in {1,2,3}, in basic coordinates."""
		v = self.basic_vertices[i - 1]
		return Point2(v[0], v[1])

	def original_vertex(self, i: int) -> Point2:
		return self.vertices[self.order[i - 1]]

	@cached_property
	def edge_normals(self) -> np.ndarray:
		"""Row i-1: inward unit normal of edge e_i."""
		v = self.basic_vertices
		out = np.empty((3, 2))
		for i in range(3):
			p, q = v[(i + 1) % 3], v[(i + 2) % 3]
			d = q - p
			n = np.array([-d[1], d[0]]) / math.hypot(d[0], d[1])
			if np.dot(n, v[i] - p) < 0:
				n = -n
			out[i] = n
		return out

	@cached_property
	def edge_offsets(self) -> np.ndarray:
		v = self.basic_vertices
		n = self.edge_normals
		return np.array([np.dot(n[i], v[(i + 1) % 3]) for i in range(3)])

	@cached_property
	def heights(self) -> np.ndarray:
		"""Distance from y_i to edge e_i."""
		return np.einsum("ij,ij->i", self.edge_normals, self.basic_vertices) - self.edge_offsets

	@property
	def area(self) -> float:
		"""Area of T_b."""
		return 0.5 * self.c2

	@property
	def original_area(self) -> float:
		return self.area / abs(self.to_basic.det)

	def edge_distances(self, pts: np.ndarray) -> np.ndarray:
		"""Signed distances (n, 3) of basic-coordinate points to e_1, e_2, e_3; positive inside."""
		arr = np.asarray(pts, dtype=float).reshape(-1, 2)
		return arr @ self.edge_normals.T - self.edge_offsets

	def halfplanes(self) -> tuple[tuple[tuple[float, float], float], ...]:
		"""T_b as a.p <= b constraints, one per edge."""
		return tuple(
			((float(-n[0]), float(-n[1])), float(-o))
			for n, o in zip(self.edge_normals, self.edge_offsets)
		)

	def contains(self, p: Sequence[float], tol: float = TOL) -> bool:
		return bool(np.all(self.edge_distances(np.asarray(p, dtype=float)) >= -tol))

	def on_boundary(self, p: Sequence[float], tol: float = TOL) -> bool:
		d = self.edge_distances(np.asarray(p, dtype=float))[0]
		return bool(np.all(d >= -tol) and np.min(d) <= tol)

	def vertex_index_at(self, p: Sequence[float], tol: float = TOL) -> int | None:
		"""i if p coincides with y_i within tol, else None."""
		d = np.hypot(*(self.basic_vertices - np.asarray(p, dtype=float)).T)
		i = int(np.argmin(d))
		return i + 1 if d[i] <= tol else None


def normalize_to_basic(points: Sequence[Point2 | Sequence[float]]) -> TriangleFrame:
	"""Rigid motion plus scaling sending the triangle to its basic form.

	The longest edge goes to [0,1] on the x-axis and the apex to (c1, c2) with
	c1 <= 1/2. Longest-edge ties go to the smallest opposite-vertex index;
	an apex exactly above the midpoint keeps the lower input index as y1.
	"""
	pts = as_points(points)
	if len(pts) != 3:
		raise DegenerateTriangle(f"expected 3 vertices, got {len(pts)}")
	if orient2d(pts[0], pts[1], pts[2]) == 0:
		raise DegenerateTriangle(f"collinear vertices {pts}")

	sq = [
		(pts[(i + 1) % 3].x - pts[(i + 2) % 3].x) ** 2 + (pts[(i + 1) % 3].y - pts[(i + 2) % 3].y) ** 2
		for i in range(3)
	]
	longest = max(sq)
	apex = min(i for i in range(3) if sq[i] >= longest * (1.0 - 1e-12))
	j, k = sorted(i for i in range(3) if i != apex)

	a, b, p = pts[j], pts[k], pts[apex]
	ex, ey = b.x - a.x, b.y - a.y
	length2 = ex * ex + ey * ey
	t = ((p.x - a.x) * ex + (p.y - a.y) * ey) / length2
	if t > 0.5 + TOL:
		j, k = k, j
		a, b = b, a
		ex, ey = -ex, -ey

	length = math.sqrt(length2)
	ux, uy = ex / length, ey / length
	side = 1.0 if (-uy) * (p.x - a.x) + ux * (p.y - a.y) >= 0 else -1.0
	s = 1.0 / length
	linear = ((s * ux, s * uy), (s * side * -uy, s * side * ux))
	offset = (
		-(linear[0][0] * a.x + linear[0][1] * a.y),
		-(linear[1][0] * a.x + linear[1][1] * a.y),
	)
	to_basic = AffineMap(linear, offset, "rigid+scale")
	apex_b = to_basic.apply(p)
	c1 = min(max(apex_b.x, 0.0), 0.5)
	c2 = apex_b.y
	if c2 <= TOL:
		raise DegenerateTriangle(f"collinear within tolerance: c2={c2:.3e}")

	frame = TriangleFrame(
		vertices=(pts[0], pts[1], pts[2]),
		c1=c1,
		c2=c2,
		to_basic=to_basic,
		shape_class=classify_shape(c1, c2),
		order=(j, k, apex),
	)
	logger.debug("normalize_to_basic: c1=%.6f c2=%.6f shape=%s order=%s", c1, c2, frame.shape_class, frame.order)
	return frame


def phi_e_map(frame: TriangleFrame) -> AffineMap:
	"""Shear/scale sending T_b onto T_e = ((0,0), (1,0), (1/2, sqrt3/2))."""
	c1, c2 = frame.c1, frame.c2
	return AffineMap(((1.0, (1.0 - 2.0 * c1) / (2.0 * c2)), (0.0, SQRT3 / (2.0 * c2))), (0.0, 0.0), "shear")


def phi_e(p: Point2 | Sequence[float], frame: TriangleFrame) -> Point2:
	"""Basic coordinates -> equilateral coordinates."""
	c1, c2 = frame.c1, frame.c2
	x, y = p[0], p[1]
	return Point2(x + (1.0 - 2.0 * c1) / (2.0 * c2) * y, SQRT3 / (2.0 * c2) * y)


def phi_e_inverse(q: Point2 | Sequence[float], frame: TriangleFrame) -> Point2:
	c1, c2 = frame.c1, frame.c2
	u, v = q[0], q[1]
	return Point2(u - (1.0 - 2.0 * c1) / SQRT3 * v, 2.0 * c2 / SQRT3 * v)


def phi_e_array(pts: np.ndarray, frame: TriangleFrame) -> np.ndarray:
	return phi_e_map(frame).apply_array(pts)


def triangle_center(frame: TriangleFrame, which: CenterName) -> Point2:
	"""Center of T_b in basic coordinates."""
	c1, c2 = frame.c1, frame.c2
	if which == "CC":
		return Point2(0.5, (c1 * c1 - c1 + c2 * c2) / (2.0 * c2))
	if which == "IC":
		# vertex average weighted by opposite edge lengths
		a1 = math.hypot(1.0 - c1, c2)
		a2 = math.hypot(c1, c2)
		perimeter = a1 + a2 + 1.0
		return Point2((a2 + c1) / perimeter, c2 / perimeter)
	if which == "CM":
		return Point2((1.0 + c1) / 3.0, c2 / 3.0)
	if which == "OC":
		return Point2(c1, c1 * (1.0 - c1) / c2)
	raise ValueError(f"unknown triangle center: {which}")


__all__ = [
	"Point2",
	"AffineMap",
	"TriangleFrame",
	"IDENTITY",
	"TOL",
	"as_points",
	"classify_shape",
	"normalize_to_basic",
	"phi_e",
	"phi_e_inverse",
	"phi_e_map",
	"phi_e_array",
	"triangle_center",
]

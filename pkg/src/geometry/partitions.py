"""M-vertex and M-edge regions of a triangle.

Regions are indexed 1..3: vertex region i holds y_i, edge region i holds e_i
(the edge opposite y_i). Each region is T_b cut by two closed half-planes
through M:

  vertex, lines       R(y_i) = T & {side of line(y_j, M) with y_i} & {side of line(y_k, M) with y_i}
  vertex, orthogonal  R(y_i) = T & {(p - M).(y_j - y_i) <= 0} & {(p - M).(y_k - y_i) <= 0}
  edge,   lines       R(e_i) = triangle(M, y_j, y_k)

Points on shared boundaries go to the smallest index.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np

from src.geometry.core import TOL, Point2, TriangleFrame, triangle_center
from src.geometry.exceptions import CenterOutsideTriangle, InvalidSpec, ProjectionOffEdge
from src.geometry.region import HalfPlane, ProximityRegion, halfplane, side_of_line

CenterKind = Literal["CC", "IC", "CM", "OC", "custom"]
Target = Literal["vertex", "edge"]
Method = Literal["lines", "orthogonal"]

_NAMED = ("CC", "IC", "CM", "OC")


@dataclass(frozen=True)
class CenterSpec:
	kind: CenterKind = "CM"
	# basic coordinates, only for kind="custom"
	point: Point2 | None = None

	def __post_init__(self) -> None:
		if self.kind not in _NAMED + ("custom",):
			raise InvalidSpec(f"unknown center kind: {self.kind}")
		if self.kind == "custom" and self.point is None:
			raise InvalidSpec("custom center needs a point")
		if self.kind != "custom" and self.point is not None:
			raise InvalidSpec(f"named center {self.kind} takes no point")

	@classmethod
	def custom(cls, x: float, y: float) -> "CenterSpec":
		return cls("custom", Point2(x, y))

	@classmethod
	def parse(cls, text: str) -> "CenterSpec":
		t = text.strip()
		if t.upper() in _NAMED:
			return cls(t.upper())  # type: ignore[arg-type]
		parts = t.split(";")
		if len(parts) != 2:
			raise InvalidSpec(f"center must be one of {_NAMED} or 'x;y', got {text!r}")
		try:
			return cls.custom(float(parts[0]), float(parts[1]))
		except ValueError as e:
			raise InvalidSpec(f"bad custom center {text!r}: {e}") from e

	def label(self) -> str:
		if self.kind == "custom":
			assert self.point is not None
			return f"{self.point.x!r};{self.point.y!r}"
		return self.kind

	def resolve(self, frame: TriangleFrame) -> Point2:
		if self.kind == "custom":
			assert self.point is not None
			return self.point
		return triangle_center(frame, self.kind)  # type: ignore[arg-type]


@dataclass(frozen=True)
class PartitionScheme:
	target: Target = "vertex"
	method: Method = "lines"

	def __post_init__(self) -> None:
		if self.target not in ("vertex", "edge"):
			raise InvalidSpec(f"unknown partition target: {self.target}")
		if self.method not in ("lines", "orthogonal"):
			raise InvalidSpec(f"unknown partition method: {self.method}")
		if self.target == "edge" and self.method == "orthogonal":
			raise InvalidSpec("edge regions are only defined by lines through M")


def _others(i: int) -> tuple[int, int]:
	return (i % 3) + 1, ((i + 1) % 3) + 1


def check_center(frame: TriangleFrame, m: CenterSpec, scheme: PartitionScheme) -> Point2:
	"""Resolve M and validate it for the scheme; returns M in basic coordinates."""
	if m.kind == "OC" and frame.shape_class != "acute":
		raise CenterOutsideTriangle(f"OC-based regions need an acute triangle, got {frame.shape_class}")
	M = m.resolve(frame)
	if scheme.method == "lines":
		if float(np.min(frame.edge_distances(np.array([M.x, M.y])))) <= TOL:
			raise CenterOutsideTriangle(
				f"center {m.label()} at ({M.x:.6g}, {M.y:.6g}) is not interior "
				f"(c1={frame.c1:.6g}, c2={frame.c2:.6g})"
			)
		return M
	v = frame.basic_vertices
	mv = np.array([M.x, M.y])
	for i in range(3):
		for j in range(i + 1, 3):
			d = v[j] - v[i]
			t = float(np.dot(mv - v[i], d) / np.dot(d, d))
			if t < -TOL or t > 1.0 + TOL:
				raise ProjectionOffEdge(
					f"foot of perpendicular from {m.label()} onto edge y{i + 1}y{j + 1} "
					f"is off the edge (t={t:.6g})"
				)
	return M


def region_constraints(
	frame: TriangleFrame, M: Sequence[float], scheme: PartitionScheme, index: int
) -> tuple[HalfPlane, HalfPlane]:
	"""The two half-planes through M that cut region `index` out of T_b."""
	v = frame.basic_vertices
	yi = v[index - 1]
	j, k = _others(index)
	yj, yk = v[j - 1], v[k - 1]
	if scheme.target == "edge":
		return side_of_line(yj, M, keep=yk), side_of_line(yk, M, keep=yj)
	if scheme.method == "lines":
		return side_of_line(yj, M, keep=yi), side_of_line(yk, M, keep=yi)
	dj, dk = yj - yi, yk - yi
	return (
		halfplane(dj, float(np.dot(dj, M))),
		halfplane(dk, float(np.dot(dk, M))),
	)


def _classify(frame: TriangleFrame, M: Sequence[float], scheme: PartitionScheme, pts: np.ndarray) -> np.ndarray:
	arr = np.asarray(pts, dtype=float).reshape(-1, 2)
	slack = np.empty((len(arr), 3))
	for idx in (1, 2, 3):
		(a1, b1), (a2, b2) = region_constraints(frame, M, scheme, idx)
		s1 = b1 - arr @ np.asarray(a1)
		s2 = b2 - arr @ np.asarray(a2)
		slack[:, idx - 1] = np.minimum(s1, s2)
	member = slack >= -TOL
	first = np.argmax(member, axis=1)
	none = ~member.any(axis=1)
	if none.any():
		first[none] = np.argmax(slack[none], axis=1)
	return first + 1


def vertex_regions_of(
	pts: np.ndarray, frame: TriangleFrame, m: CenterSpec, method: Method = "lines"
) -> np.ndarray:
	"""Vectorized vertex_region_of for an (n, 2) array of basic coordinates."""
	scheme = PartitionScheme("vertex", method)
	M = check_center(frame, m, scheme)
	return _classify(frame, (M.x, M.y), scheme, pts)


def vertex_region_of(x: Sequence[float], frame: TriangleFrame, m: CenterSpec, method: Method = "lines") -> int:
	return int(vertex_regions_of(np.asarray([x[0], x[1]], dtype=float), frame, m, method)[0])


def edge_regions_of(pts: np.ndarray, frame: TriangleFrame, m: CenterSpec) -> np.ndarray:
	scheme = PartitionScheme("edge", "lines")
	M = check_center(frame, m, scheme)
	return _classify(frame, (M.x, M.y), scheme, pts)


def edge_region_of(x: Sequence[float], frame: TriangleFrame, m: CenterSpec) -> int:
	return int(edge_regions_of(np.asarray([x[0], x[1]], dtype=float), frame, m)[0])


def region_polygon(frame: TriangleFrame, m: CenterSpec, scheme: PartitionScheme, index: int) -> ProximityRegion:
	"""Closed region `index` as T_b's half-planes plus its two cuts."""
	if index not in (1, 2, 3):
		raise InvalidSpec(f"region index must be 1, 2 or 3, got {index}")
	M = check_center(frame, m, scheme)
	cuts = region_constraints(frame, (M.x, M.y), scheme, index)
	return ProximityRegion(frame.halfplanes() + cuts)


__all__ = [
	"CenterSpec",
	"PartitionScheme",
	"check_center",
	"region_constraints",
	"vertex_region_of",
	"vertex_regions_of",
	"edge_region_of",
	"edge_regions_of",
	"region_polygon",
]

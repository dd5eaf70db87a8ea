"""Class cover catch digraphs on the real line.

With Y sorted, each x gets the open interval N_S(x) = (x - r, x + r) with
r = min_y |x - y|, and arc i -> j iff |x_j - x_i| < r_i. Points left of
y_(1) or right of y_(m) are kept; their cell is OUTSIDE.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from src.delaunay.triangulation import OUTSIDE
from src.pcd.digraph import PcDigraph
from src.pcd.exceptions import EmptyX
from src.system.log import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class IntervalFixture:
	y_points: tuple[float, ...]
	x_points: tuple[float, ...]

	def __post_init__(self) -> None:
		ys = np.asarray(self.y_points, dtype=float)
		xs = np.asarray(self.x_points, dtype=float)
		if len(ys) < 1:
			raise ValueError("interval fixture needs at least one y point")
		if not (np.all(np.isfinite(ys)) and np.all(np.isfinite(xs))):
			raise ValueError("interval fixture coordinates must be finite")
		if np.any(np.diff(ys) <= 0):
			raise ValueError("y points must be strictly increasing")
		object.__setattr__(self, "y_points", tuple(float(v) for v in ys))
		object.__setattr__(self, "x_points", tuple(float(v) for v in xs))

	@classmethod
	def of(cls, y_points: Sequence[float], x_points: Sequence[float]) -> "IntervalFixture":
		return cls(tuple(sorted(y_points)), tuple(x_points))

	def radii(self) -> np.ndarray:
		ys = np.asarray(self.y_points)
		xs = np.asarray(self.x_points)
		pos = np.searchsorted(ys, xs)
		left = np.abs(xs - ys[np.clip(pos - 1, 0, len(ys) - 1)])
		right = np.abs(ys[np.clip(pos, 0, len(ys) - 1)] - xs)
		return np.minimum(left, right)

	def cells(self) -> np.ndarray:
		"""Index i of the interval (y_(i), y_(i+1)) holding each x, OUTSIDE off [y_(1), y_(m)].

		x = y_(m) falls in the last interval. With a single y point every x that is
		not OUTSIDE sits on it and gets cell 0.
		"""
		ys = np.asarray(self.y_points)
		xs = np.asarray(self.x_points)
		pos = np.searchsorted(ys, xs, side="right") - 1
		pos = np.clip(pos, 0, max(len(ys) - 2, 0))
		return np.where((xs < ys[0]) | (xs > ys[-1]), OUTSIDE, pos)


def build_interval_cccd(f: IntervalFixture) -> PcDigraph:
	xs = np.asarray(f.x_points)
	n = len(xs)
	if n == 0:
		raise EmptyX("no X points given")
	radius = f.radii()
	order = np.argsort(xs, kind="stable")
	sx = xs[order]
	succ = [0] * n
	for i in range(n):
		lo = np.searchsorted(sx, xs[i] - radius[i], side="right")
		hi = np.searchsorted(sx, xs[i] + radius[i], side="left")
		bits = 0
		for j in order[lo:hi]:
			if j != i and abs(xs[j] - xs[i]) < radius[i]:
				bits |= 1 << int(j)
		succ[i] = bits
	g = PcDigraph(n=n, succ=tuple(succ), cell_of=tuple(int(c) for c in f.cells()), spec_label="sph-1d")
	logger.info("build_interval_cccd: n=%d arcs=%d", n, g.n_arcs)
	return g


__all__ = ["IntervalFixture", "build_interval_cccd"]

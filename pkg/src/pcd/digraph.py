"""Proximity catch digraphs over X given the Delaunay cells of Y.

Vertices are the X points inside the convex hull of Y, numbered in input
order. Arc i -> j means X_j lies in N(X_i); self-loops are never stored.
Successor sets are Python ints used as bitsets (bit j set for arc i -> j).
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
import pandas as pd
from scipy.spatial import cKDTree

from src.common.config import get_config_value, load_config
from src.delaunay.triangulation import OUTSIDE, Triangulation, locate_many, triangulate
from src.geometry.mapspec import ProximityMapSpec
from src.geometry.proximity import catches_matrix, validate_for_frame
from src.pcd.exceptions import EmptyX, InvariantViolation, TooFewVertices
from src.system.log import get_logger

logger = get_logger(__name__)


def _bits(indices: Iterable[int]) -> int:
	out = 0
	for j in indices:
		out |= 1 << int(j)
	return out


def bit_members(bits: int) -> list[int]:
	out = []
	while bits:
		low = bits & -bits
		out.append(low.bit_length() - 1)
		bits ^= low
	return out


@dataclass(frozen=True, eq=False)
class PcDigraph:
	n: int
	succ: tuple[int, ...]
	cell_of: tuple[int, ...]
	# original X indices: excluded points, and the point behind each vertex
	excluded: tuple[int, ...] = ()
	x_index: tuple[int, ...] = ()
	spec_label: str = ""

	def __post_init__(self) -> None:
		if len(self.succ) != self.n or len(self.cell_of) != self.n:
			raise ValueError(f"succ/cell_of must have length n={self.n}")
		if not self.x_index:
			object.__setattr__(self, "x_index", tuple(range(self.n)))
		for i, s in enumerate(self.succ):
			if s >> i & 1:
				raise InvariantViolation(f"self-loop stored at vertex {i}")
			if s >> self.n:
				raise InvariantViolation(f"vertex {i} has a successor index >= n={self.n}")

	@classmethod
	def from_arcs(
		cls, n: int, arcs: Iterable[tuple[int, int]], cell_of: Sequence[int] | None = None
	) -> "PcDigraph":
		succ = [0] * n
		for i, j in arcs:
			if i != j:
				succ[i] |= 1 << j
		cells = tuple(cell_of) if cell_of is not None else (0,) * n
		return cls(n, tuple(succ), cells)

	def with_arcs(self, arcs: Iterable[tuple[int, int]]) -> "PcDigraph":
		succ = list(self.succ)
		for i, j in arcs:
			if i != j:
				succ[i] |= 1 << j
		return PcDigraph(self.n, tuple(succ), self.cell_of, self.excluded, self.x_index, self.spec_label)

	@property
	def n_arcs(self) -> int:
		return sum(s.bit_count() for s in self.succ)

	def has_arc(self, i: int, j: int) -> bool:
		return bool(self.succ[i] >> j & 1)

	def successors(self, i: int) -> list[int]:
		return bit_members(self.succ[i])

	def arcs(self) -> list[tuple[int, int]]:
		return [(i, j) for i in range(self.n) for j in bit_members(self.succ[i])]

	def adjacency_matrix(self) -> np.ndarray:
		a = np.zeros((self.n, self.n), dtype=bool)
		for i, j in self.arcs():
			a[i, j] = True
		return a

	def components(self) -> list[list[int]]:
		"""Weakly connected components, each sorted, ordered by smallest member."""
		pred = [0] * self.n
		for i, j in self.arcs():
			pred[j] |= 1 << i
		seen = 0
		out: list[list[int]] = []
		for v in range(self.n):
			if seen >> v & 1:
				continue
			comp = frontier = 1 << v
			while frontier:
				nxt = 0
				for u in bit_members(frontier):
					nxt |= self.succ[u] | pred[u]
				frontier = nxt & ~comp
				comp |= frontier
			seen |= comp
			out.append(bit_members(comp))
		return out


def _cell_arcs(
	t: Triangulation, k: int, members: np.ndarray, xs: np.ndarray, spec: ProximityMapSpec
) -> list[int]:
	frame = t.frame(k)
	basic = frame.to_basic.apply_array(xs[members])
	mat = catches_matrix(basic, frame, spec)
	np.fill_diagonal(mat, False)
	logger.debug("cell %d: %d points, %d arcs", k, len(members), int(mat.sum()))
	return [_bits(members[np.flatnonzero(row)]) for row in mat]


def _spherical_succ(xs: np.ndarray, ys: np.ndarray) -> list[int]:
	# open balls B(x, d(x, Y)); arcs may leave the cell
	radius, _ = cKDTree(ys).query(xs)
	tree = cKDTree(xs)
	succ = []
	for i, (p, r) in enumerate(zip(xs, radius)):
		near = tree.query_ball_point(p, r)
		hits = [j for j in near if j != i and np.hypot(*(xs[j] - p)) < r]
		succ.append(_bits(hits))
	return succ


def build(
	x_points: Sequence[Sequence[float]] | np.ndarray,
	y_points: Sequence[Sequence[float]] | np.ndarray,
	spec: ProximityMapSpec,
	*,
	workers: int | None = None,
	triangulation: Triangulation | None = None,
) -> PcDigraph:
	"""Digraph on the X points inside the hull of Y with arcs X_i -> X_j iff X_j in N(X_i)."""
	xs_all = np.asarray(x_points, dtype=float).reshape(-1, 2)
	if len(xs_all) == 0:
		raise EmptyX("no X points given")
	t = triangulation if triangulation is not None else triangulate(y_points)
	for k in range(t.n_triangles):
		validate_for_frame(t.frame(k), spec)

	cells_all = locate_many(t, xs_all)
	keep = np.flatnonzero(cells_all != OUTSIDE)
	excluded = tuple(int(i) for i in np.flatnonzero(cells_all == OUTSIDE))
	if excluded:
		logger.info("build: %d of %d X points outside the hull excluded", len(excluded), len(xs_all))
	if len(keep) == 0:
		raise EmptyX(f"all {len(xs_all)} X points lie outside the convex hull of Y")
	xs = xs_all[keep]
	cells = cells_all[keep]
	n = len(xs)

	if spec.family == "sph":
		succ = _spherical_succ(xs, t.sites)
	else:
		if workers is None:
			workers = get_config_value(load_config(), "simulation.workers", 1, minimum=1)
		groups = [(int(k), np.flatnonzero(cells == k)) for k in np.unique(cells)]
		if workers > 1 and len(groups) > 1:
			with ThreadPoolExecutor(max_workers=workers) as pool:
				results = list(pool.map(lambda g: _cell_arcs(t, g[0], g[1], xs, spec), groups))
		else:
			results = [_cell_arcs(t, k, members, xs, spec) for k, members in groups]
		succ = [0] * n
		for (k, members), rows in zip(groups, results):
			for v, bits in zip(members, rows):
				succ[int(v)] = bits
		cell_mask = {k: _bits(members) for k, members in groups}
		for v in range(n):
			if succ[v] & ~cell_mask[int(cells[v])]:
				raise InvariantViolation(f"vertex {v} has an arc leaving cell {int(cells[v])}")

	g = PcDigraph(
		n=n,
		succ=tuple(succ),
		cell_of=tuple(int(c) for c in cells),
		excluded=excluded,
		x_index=tuple(int(i) for i in keep),
		spec_label=spec.label(),
	)
	logger.info("build %s: n=%d arcs=%d cells=%d", g.spec_label, n, g.n_arcs, len(set(g.cell_of)))
	return g


def relative_density(g: PcDigraph) -> float:
	"""|A| / (n (n - 1))."""
	if g.n < 2:
		raise TooFewVertices(f"relative density needs n >= 2, got n={g.n}")
	return g.n_arcs / (g.n * (g.n - 1))


def arcs_table(g: PcDigraph) -> pd.DataFrame:
	"""Arc list with vertex indices and the original X row of each endpoint."""
	rows = [(i, j, g.x_index[i], g.x_index[j], g.cell_of[i]) for i, j in g.arcs()]
	return pd.DataFrame(rows, columns=["i", "j", "x_i", "x_j", "cell"])


@dataclass(frozen=True)
class UStatMoments:
	rho: float
	var_h: float
	cov_h: float


def u_statistic_moments(g: PcDigraph) -> UStatMoments:
	"""Empirical moments of the symmetric kernel h_ij = I(i->j) + I(j->i).

	var_h = mean over i != j of h_ij^2 minus (2 rho)^2, and cov_h is the
	mean of h_ij h_ik over distinct i, j, k minus (2 rho)^2 (nan for n < 3).
	"""
	n = g.n
	rho = relative_density(g)
	a = g.adjacency_matrix().astype(float)
	h = a + a.T
	mean_h = 2.0 * rho
	var_h = float((h * h).sum()) / (n * (n - 1)) - mean_h * mean_h
	if n < 3:
		return UStatMoments(rho, var_h, float("nan"))
	row = h.sum(axis=1)
	pairs = float((row * row).sum() - (h * h).sum())
	cov_h = pairs / (n * (n - 1) * (n - 2)) - mean_h * mean_h
	return UStatMoments(rho, var_h, cov_h)


def finite_sample_variance(n: int, var_h: float, cov_h: float) -> float:
	"""Var[rho_n] = Var[h12] / (2n(n-1)) + (n-2) Cov[h12, h13] / (n(n-1))."""
	if n < 2:
		raise TooFewVertices(f"variance of the relative density needs n >= 2, got n={n}")
	return var_h / (2.0 * n * (n - 1)) + (n - 2) * cov_h / (n * (n - 1))


__all__ = [
	"PcDigraph",
	"bit_members",
	"UStatMoments",
	"build",
	"relative_density",
	"arcs_table",
	"u_statistic_moments",
	"finite_sample_variance",
]

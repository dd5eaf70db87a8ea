"""Domination numbers of a PcDigraph.

A set S dominates when every vertex is in S or is a successor of a member
of S. The exact search works per weakly connected component on closed
out-neighborhoods held as bitsets: it branches on the dominators of the
uncovered vertex with the fewest of them, deepening the allowed set size
from 1 up to one less than the greedy answer. A component larger than the
configured cap is still searched, but under a node budget.
"""

from __future__ import annotations

from src.common.config import get_config_value, load_config
from src.pcd.digraph import PcDigraph, bit_members
from src.pcd.exceptions import InstanceTooLarge
from src.system.log import get_logger

logger = get_logger(__name__)


class _BudgetExceeded(Exception):
	pass


def _closed_covers(g: PcDigraph, comp: list[int]) -> list[int]:
	"""Closed out-neighborhoods of `comp`, re-indexed to 0..len(comp)-1."""
	local = {v: i for i, v in enumerate(comp)}
	covers = []
	for v in comp:
		bits = 1 << local[v]
		for w in bit_members(g.succ[v]):
			bits |= 1 << local[w]
		covers.append(bits)
	return covers


def _greedy(covers: list[int], full: int) -> list[int]:
	chosen: list[int] = []
	covered = 0
	while covered != full:
		uncovered = full & ~covered
		best, gain = -1, -1
		for u, c in enumerate(covers):
			k = (c & uncovered).bit_count()
			if k > gain:
				best, gain = u, k
		chosen.append(best)
		covered |= covers[best]
	return chosen


class _Search:
	def __init__(self, covers: list[int], full: int, budget: int | None) -> None:
		self.covers = covers
		self.full = full
		self.budget = budget
		self.nodes = 0
		n = len(covers)
		self.dominators = [0] * n
		for u, c in enumerate(covers):
			for v in bit_members(c):
				self.dominators[v] |= 1 << u

	def run(self, size: int) -> list[int] | None:
		return self._dfs(0, size, [])

	def _dfs(self, covered: int, left: int, chosen: list[int]) -> list[int] | None:
		self.nodes += 1
		if self.budget is not None and self.nodes > self.budget:
			raise _BudgetExceeded
		if covered == self.full:
			return list(chosen)
		if left == 0:
			return None
		uncovered = self.full & ~covered
		need = uncovered.bit_count()
		gains = [(c & uncovered).bit_count() for c in self.covers]
		if max(gains) * left < need:
			return None
		pivot = min(bit_members(uncovered), key=lambda v: (self.dominators[v].bit_count(), v))
		for u in bit_members(self.dominators[pivot]):
			chosen.append(u)
			found = self._dfs(covered | self.covers[u], left - 1, chosen)
			chosen.pop()
			if found is not None:
				return found
		return None


def _component_minimum(covers: list[int], budget: int | None) -> list[int]:
	full = (1 << len(covers)) - 1
	best = _greedy(covers, full)
	search = _Search(covers, full, budget)
	for size in range(1, len(best)):
		found = search.run(size)
		if found is not None:
			return sorted(found)
	return sorted(best)


def minimum_dominating_set(
	g: PcDigraph, *, exact_cap: int | None = None, node_budget: int | None = None
) -> list[int]:
	"""A minimum dominating set (vertex indices, sorted), solved component by component."""
	cfg = load_config()
	cap = exact_cap if exact_cap is not None else get_config_value(cfg, "domination.exact_cap", 24, minimum=1)
	budget = node_budget if node_budget is not None else get_config_value(
		cfg, "domination.node_budget", 2_000_000, minimum=1
	)
	out: list[int] = []
	comps = g.components()
	for comp in comps:
		covers = _closed_covers(g, comp)
		limit = None if len(comp) <= cap else budget
		try:
			local = _component_minimum(covers, limit)
		except _BudgetExceeded:
			raise InstanceTooLarge(
				f"exact domination: component of {len(comp)} vertices exceeds cap {cap} "
				f"and the search passed {budget} nodes"
			) from None
		out.extend(comp[i] for i in local)
	logger.debug("minimum_dominating_set: n=%d components=%d gamma=%d", g.n, len(comps), len(out))
	return sorted(out)


def domination_exact(g: PcDigraph, **kwargs: int | None) -> int:
	"""gamma(D): size of a minimum dominating set. Raises InstanceTooLarge past the search limits."""
	if g.n == 0:
		return 0
	return len(minimum_dominating_set(g, **kwargs))


def greedy_dominating_set(g: PcDigraph) -> list[int]:
	"""Repeatedly take the vertex covering the most uncovered vertices, ties to the smallest index."""
	covers = [g.succ[v] | (1 << v) for v in range(g.n)]
	return _greedy(covers, (1 << g.n) - 1)


def domination_greedy(g: PcDigraph) -> int:
	return len(greedy_dominating_set(g))


def is_dominating(g: PcDigraph, members: list[int]) -> bool:
	covered = 0
	for v in members:
		covered |= g.succ[v] | (1 << v)
	return covered == (1 << g.n) - 1


__all__ = [
	"domination_exact",
	"domination_greedy",
	"minimum_dominating_set",
	"greedy_dominating_set",
	"is_dominating",
]

from itertools import combinations

import numpy as np
import pytest

from src.geometry.core import SQRT3
from src.geometry.mapspec import parse_spec
from src.pcd import (
    InstanceTooLarge,
    PcDigraph,
    build,
    domination_exact,
    domination_greedy,
    greedy_dominating_set,
    is_dominating,
    minimum_dominating_set,
)


def _cycle(n):
    return PcDigraph.from_arcs(n, [(i, (i + 1) % n) for i in range(n)])


def _brute_force(g):
    for k in range(1, g.n + 1):
        for s in combinations(range(g.n), k):
            if is_dominating(g, list(s)):
                return k
    return 0


def test_star_and_empty():
    star = PcDigraph.from_arcs(5, [(0, j) for j in range(1, 5)])
    assert domination_exact(star) == 1
    assert minimum_dominating_set(star) == [0]
    empty = PcDigraph.from_arcs(5, [])
    assert domination_exact(empty) == 5
    assert domination_exact(PcDigraph(0, (), ())) == 0


def test_directed_cycle():
    g = _cycle(5)
    assert domination_exact(g) == 3
    assert is_dominating(g, minimum_dominating_set(g))


def test_greedy_can_overshoot():
    # greedy takes the hub 8 first and then needs two more vertices; {0, 1} suffices
    g = PcDigraph.from_arcs(
        9,
        [(0, 2), (0, 3), (0, 4), (0, 8), (1, 5), (1, 6), (1, 7)]
        + [(8, j) for j in (2, 3, 4, 5, 6)],
    )
    assert greedy_dominating_set(g)[0] == 8
    assert domination_greedy(g) == 3
    assert minimum_dominating_set(g) == [0, 1]


def test_components_are_solved_separately():
    g = PcDigraph.from_arcs(7, [(0, 1), (0, 2), (3, 4), (5, 6), (6, 5)])
    assert minimum_dominating_set(g) == [0, 3, 5]


@pytest.mark.parametrize("seed", range(8))
def test_exact_matches_brute_force_on_random_digraphs(seed):
    rng = np.random.default_rng(seed)
    n = 9
    arcs = [(i, j) for i in range(n) for j in range(n) if i != j and rng.random() < 0.2]
    g = PcDigraph.from_arcs(n, arcs)
    exact = domination_exact(g)
    assert exact == _brute_force(g)
    assert exact <= domination_greedy(g)


def test_component_over_cap_uses_node_budget():
    g = _cycle(5)
    assert domination_exact(g, exact_cap=2, node_budget=10_000) == 3
    with pytest.raises(InstanceTooLarge):
        domination_exact(g, exact_cap=2, node_budget=1)


def test_large_r_on_one_triangle_is_dominated_by_one_point():
    # with r = 2 any point in the medial triangle catches the whole cell
    ys = np.array([[0.0, 0.0], [1.0, 0.0], [0.5, SQRT3 / 2]])
    xs = np.vstack([[[0.5, SQRT3 / 6]], np.random.default_rng(3).uniform(size=(30, 2)) * [1.0, 0.4]])
    g = build(xs, ys, parse_spec("pe:r=2"))
    assert domination_exact(g) == 1


def test_greedy_never_beats_exact_and_arcs_never_raise_gamma():
    rng = np.random.default_rng(2024)
    for _ in range(200):
        n = int(rng.integers(1, 16))
        p = rng.uniform(0.05, 0.4)
        arcs = [(i, j) for i in range(n) for j in range(n) if i != j and rng.random() < p]
        g = PcDigraph.from_arcs(n, arcs)
        exact = domination_exact(g)
        assert 1 <= exact <= domination_greedy(g) <= n
        extra = (int(rng.integers(n)), int(rng.integers(n)))
        assert domination_exact(g.with_arcs([extra])) <= exact


def test_small_hand_checked_case():
    g = PcDigraph.from_arcs(3, [(0, 1)])
    assert domination_exact(g) == 2
    assert minimum_dominating_set(g) == [0, 2]

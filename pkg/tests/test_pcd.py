import numpy as np
import pytest

from src.delaunay import OUTSIDE, triangulate
from src.geometry.core import SQRT3
from src.geometry.mapspec import parse_spec
from src.geometry.proximity import catches
from src.pcd import (
    EmptyX,
    IntervalFixture,
    InvariantViolation,
    PcDigraph,
    TooFewVertices,
    arcs_table,
    build,
    build_interval_cccd,
    finite_sample_variance,
    relative_density,
    u_statistic_moments,
)

TE_Y = np.array([[0.0, 0.0], [1.0, 0.0], [0.5, SQRT3 / 2]])


def _uniform_in_te(n, seed):
    rng = np.random.default_rng(seed)
    u = rng.uniform(size=(n, 2))
    flip = u.sum(axis=1) > 1
    u[flip] = 1 - u[flip]
    return u[:, :1] * TE_Y[1] + u[:, 1:] * TE_Y[2]


def test_single_triangle_matches_arc_predicate():
    xs = _uniform_in_te(40, 5)
    spec = parse_spec("pe:r=1.5")
    g = build(xs, TE_Y, spec)
    frame = triangulate(TE_Y).frame(0)
    bx = frame.to_basic.apply_array(xs)
    for i in range(len(xs)):
        for j in range(len(xs)):
            if i != j:
                assert g.has_arc(i, j) == catches(bx[i], bx[j], frame, spec)
    assert g.spec_label == "pe:r=1.5,M=CM,method=lines"


def test_arcs_stay_inside_cells_and_outside_points_are_excluded():
    ys = np.array([[0, 0], [4, 0], [4, 4], [0, 4], [2, 1.5]], dtype=float)
    rng = np.random.default_rng(9)
    xs = np.vstack([rng.uniform(0, 4, size=(80, 2)), [[5.0, 5.0], [-1.0, 2.0]]])
    g = build(xs, ys, parse_spec("pe:r=2"))
    assert g.excluded == (80, 81)
    assert g.n == 80
    for i, j in g.arcs():
        assert g.cell_of[i] == g.cell_of[j]
    assert len(set(g.cell_of)) > 1


def test_parallel_build_is_identical():
    ys = np.array([[0, 0], [4, 0], [4, 4], [0, 4], [2, 1.5]], dtype=float)
    xs = np.random.default_rng(10).uniform(0, 4, size=(120, 2))
    spec = parse_spec("cs:tau=0.8")
    assert build(xs, ys, spec, workers=1).succ == build(xs, ys, spec, workers=4).succ


def test_spherical_arcs_may_cross_cells():
    ys = np.array([[0, 0], [4, 0], [4, 4], [0, 4], [2, 1.5]], dtype=float)
    xs = np.random.default_rng(11).uniform(0, 4, size=(60, 2))
    g = build(xs, ys, parse_spec("sph"))
    d_y = np.min(np.hypot(xs[:, None, 0] - ys[None, :, 0], xs[:, None, 1] - ys[None, :, 1]), axis=1)
    d_x = np.hypot(xs[:, None, 0] - xs[None, :, 0], xs[:, None, 1] - xs[None, :, 1])
    expected = (d_x < d_y[:, None]) & ~np.eye(60, dtype=bool)
    assert np.array_equal(g.adjacency_matrix(), expected)


def test_empty_x():
    with pytest.raises(EmptyX):
        build(np.empty((0, 2)), TE_Y, parse_spec("pe:r=2"))
    with pytest.raises(EmptyX):
        build([[3.0, 3.0]], TE_Y, parse_spec("pe:r=2"))


def test_relative_density_bounds():
    xs = _uniform_in_te(30, 12)
    assert relative_density(build(xs, TE_Y, parse_spec("pe:r=inf"))) == pytest.approx(1.0)
    rho = relative_density(build(xs, TE_Y, parse_spec("pe:r=1.2")))
    assert 0.0 <= rho < 1.0
    with pytest.raises(TooFewVertices):
        relative_density(build(xs[:1], TE_Y, parse_spec("pe:r=2")))


def test_digraph_invariants():
    g = PcDigraph.from_arcs(3, [(0, 1), (1, 1), (2, 0)])
    assert g.n_arcs == 2
    assert not g.has_arc(1, 1)
    with pytest.raises(InvariantViolation):
        PcDigraph(2, (0b01, 0), (0, 0))
    with pytest.raises(InvariantViolation):
        PcDigraph(2, (0b100, 0), (0, 0))


def test_components():
    g = PcDigraph.from_arcs(6, [(0, 2), (3, 2), (4, 5)])
    assert g.components() == [[0, 2, 3], [1], [4, 5]]


def test_u_statistic_moments_small_graph():
    g = PcDigraph.from_arcs(3, [(0, 1), (1, 0), (0, 2)])
    m = u_statistic_moments(g)
    assert m.rho == pytest.approx(0.5)
    assert m.var_h == pytest.approx(2 / 3)
    assert m.cov_h == pytest.approx(-1 / 3)
    assert finite_sample_variance(3, m.var_h, m.cov_h) == pytest.approx(0.0, abs=1e-12)
    with pytest.raises(TooFewVertices):
        finite_sample_variance(1, 0.0, 0.0)


def test_arcs_table_maps_back_to_x_rows():
    xs = np.vstack([[[9.0, 9.0]], _uniform_in_te(10, 13)])
    g = build(xs, TE_Y, parse_spec("pe:r=2"))
    df = arcs_table(g)
    assert list(df.columns) == ["i", "j", "x_i", "x_j", "cell"]
    assert len(df) == g.n_arcs
    assert (df["x_i"] == df["i"] + 1).all()


def test_interval_cccd():
    f = IntervalFixture.of([2, 0, 1], [0.2, 0.25, 0.5, 1.5, -0.5, 2.5])
    g = build_interval_cccd(f)
    assert sorted(g.arcs()) == [(0, 1), (1, 0), (2, 0), (2, 1)]
    assert g.cell_of == (0, 0, 0, 1, OUTSIDE, OUTSIDE)
    assert f.radii() == pytest.approx([0.2, 0.25, 0.5, 0.5, 0.5, 0.5])


def test_interval_point_on_y_has_no_arcs():
    g = build_interval_cccd(IntervalFixture.of([0, 1, 2], [2.0, 1.9]))
    assert g.successors(0) == []
    assert g.cell_of[0] == 1


def test_interval_single_y_point_keeps_its_own_cell():
    f = IntervalFixture.of([1.0], [1.0, 0.5, 1.5])
    assert f.cells().tolist() == [0, OUTSIDE, OUTSIDE]
    g = build_interval_cccd(f)
    assert g.cell_of[0] != OUTSIDE
    assert f.radii() == pytest.approx([0.0, 0.5, 0.5])


def test_interval_fixture_validation():
    with pytest.raises(ValueError):
        IntervalFixture((1.0, 1.0), (0.5,))
    with pytest.raises(EmptyX):
        build_interval_cccd(IntervalFixture.of([0, 1], []))


def test_interval_arc_probability_is_one_half():
    xs = np.random.default_rng(14).uniform(size=600)
    g = build_interval_cccd(IntervalFixture.of([0.0, 1.0], xs))
    assert relative_density(g) == pytest.approx(0.5, abs=0.03)


def test_interval_hand_example():
    g = build_interval_cccd(IntervalFixture.of([0.0, 1.0], [0.3, 0.5]))
    assert sorted(g.arcs()) == [(0, 1), (1, 0)]
    assert IntervalFixture.of([0.0, 1.0], [0.3]).radii() == pytest.approx([0.3])

import numpy as np
import pytest

from src.delaunay.triangulation import locate_many, triangulate
from src.geometry.core import TriangleFrame, phi_e_array
from src.geometry.mapspec import parse_spec
from src.geometry.partitions import (
    CenterSpec,
    PartitionScheme,
    edge_regions_of,
    region_polygon,
    vertex_regions_of,
)
from src.geometry.proximity import catches_pairs, region
from src.montecarlo.sampling import sample_uniform_triangle

TE = TriangleFrame.equilateral()
# acute and scalene
FS = TriangleFrame.basic(0.4, 0.6)


def _random_frame(rng):
    # rejection-sample (c1, c2) in the basic-triangle domain, away from degenerate shapes
    while True:
        c1, c2 = rng.uniform(0.05, 0.5), rng.uniform(0.1, 0.95)
        if (1 - c1) ** 2 + c2 ** 2 <= 1.0:
            return TriangleFrame.basic(c1, c2)


@pytest.mark.parametrize("text", ["pe:r=1.5", "pe:r=2.5", "cs:tau=0.6", "cs:tau=1", "dd:M=CM"])
def test_arc_indicator_is_geometry_invariant(text):
    spec = parse_spec(text)
    rng = np.random.default_rng(100)
    for _ in range(20):
        f = _random_frame(rng)
        xs = sample_uniform_triangle(f.basic_vertices, 10_000, rng)
        ys = sample_uniform_triangle(f.basic_vertices, 10_000, rng)
        here = catches_pairs(xs, ys, f, spec)
        there = catches_pairs(phi_e_array(xs, f), phi_e_array(ys, f), TE, spec)
        # pairs on a region boundary may flip under rounding
        assert np.count_nonzero(here != there) <= 2


def test_double_x_is_not_geometry_invariant():
    f = TriangleFrame.basic(0.15, 0.45)
    rng = np.random.default_rng(101)
    xs = sample_uniform_triangle(f.basic_vertices, 10_000, rng)
    ys = sample_uniform_triangle(f.basic_vertices, 10_000, rng)
    spec = parse_spec("dx")
    here = catches_pairs(xs, ys, f, spec)
    there = catches_pairs(phi_e_array(xs, f), phi_e_array(ys, f), TE, spec)
    assert np.any(here != there)


@pytest.mark.parametrize("text", ["pe:r=1.3", "cs:tau=0.5", "as", "dd", "dx", "sph"])
def test_catches_agrees_with_region_membership(text):
    spec = parse_spec(text)
    rng = np.random.default_rng(102)
    f = TriangleFrame.basic(0.35, 0.55)
    ys = sample_uniform_triangle(f.basic_vertices, 5_000, rng)
    for x in sample_uniform_triangle(f.basic_vertices, 20, rng):
        by_pairs = catches_pairs(np.tile(x, (len(ys), 1)), ys, f, spec)
        by_region = region(x, f, spec).contains_many(ys)
        assert np.count_nonzero(by_pairs != by_region) <= 1


@pytest.mark.parametrize("text", ["pe:r=1.4", "pe:r=2", "cs:tau=0.7", "as", "dd", "dx"])
def test_region_area_matches_rejection_sampling(text):
    spec = parse_spec(text)
    rng = np.random.default_rng(103)
    n = 40_000
    for _ in range(8):
        f = _random_frame(rng)
        if text == "as" and f.shape_class != "acute":
            continue
        x = sample_uniform_triangle(f.basic_vertices, 1, rng)[0]
        g = region(x, f, spec)
        sample = sample_uniform_triangle(f.basic_vertices, n, rng)
        frac = g.contains_many(sample).mean()
        se = np.sqrt(max(frac * (1 - frac), 1.0 / n) / n)
        assert g.area() / f.area == pytest.approx(frac, abs=4 * se + 1e-3)


@pytest.mark.parametrize(
    "center, scheme",
    [
        ("CM", PartitionScheme("vertex", "lines")),
        ("IC", PartitionScheme("vertex", "lines")),
        ("IC", PartitionScheme("vertex", "orthogonal")),
        ("CM", PartitionScheme("edge", "lines")),
        ("IC", PartitionScheme("edge", "lines")),
    ],
)
def test_partitions_tile_random_frames(center, scheme):
    rng = np.random.default_rng(104)
    for _ in range(100):
        f = _random_frame(rng)
        total = sum(region_polygon(f, CenterSpec(center), scheme, i).area() for i in (1, 2, 3))
        assert total == pytest.approx(f.area, rel=1e-9)


def _pairs(frame, n, rng):
    v = frame.basic_vertices
    return sample_uniform_triangle(v, n, rng), sample_uniform_triangle(v, n, rng)


@pytest.mark.parametrize(
    "small, large",
    [
        ("pe:r=1", "pe:r=1.4"),
        ("pe:r=1.4", "pe:r=2"),
        ("pe:r=2", "pe:r=3"),
        ("cs:tau=0.25", "cs:tau=0.5"),
        ("cs:tau=0.5", "cs:tau=1"),
    ],
)
def test_region_grows_with_the_expansion_parameter(small, large):
    xs, ys = _pairs(FS, 100_000, np.random.default_rng(200))
    a = catches_pairs(xs, ys, FS, parse_spec(small))
    b = catches_pairs(xs, ys, FS, parse_spec(large))
    assert a.any()
    assert not np.any(a & ~b)
    assert np.count_nonzero(b) > np.count_nonzero(a)


@pytest.mark.parametrize("text", ["pe:r=1.3", "pe:r=2", "as"])
def test_region_grows_along_rays_from_the_vertex(text):
    spec = parse_spec(text)
    rng = np.random.default_rng(201)
    v = FS.basic_vertices
    far = sample_uniform_triangle(v, 2_000, rng)
    k = vertex_regions_of(far, FS, spec.center, spec.method) - 1
    near = v[k] + rng.uniform(0.1, 0.95, size=(len(far), 1)) * (far - v[k])
    same = vertex_regions_of(near, FS, spec.center, spec.method) - 1 == k
    near, far = np.repeat(near[same], 50, axis=0), np.repeat(far[same], 50, axis=0)
    ys = sample_uniform_triangle(v, len(near), rng)
    a = catches_pairs(near, ys, FS, spec)
    b = catches_pairs(far, ys, FS, spec)
    assert len(ys) > 50_000
    assert not np.any(a & ~b)


def test_cs_region_area_increases_with_distance_to_edge():
    spec = parse_spec("cs:tau=0.6")
    rng = np.random.default_rng(202)
    xs = sample_uniform_triangle(FS.basic_vertices, 300, rng)
    e = edge_regions_of(xs, FS, spec.center) - 1
    d = FS.edge_distances(xs)[np.arange(len(xs)), e]
    m = spec.center.resolve(FS)
    dm = FS.edge_distances(np.array([m.x, m.y]))[0]
    areas = np.array([region(x, FS, spec).area() for x in xs])
    # a similar copy of T scaled by tau * d(x, e) / d(M, e)
    assert areas == pytest.approx((0.6 * d / dm[e]) ** 2 * FS.area, rel=1e-9)
    for k in range(3):
        sel = e == k
        order = np.argsort(d[sel])
        grew = np.diff(d[sel][order]) > 1e-9
        assert np.all(np.diff(areas[sel][order])[grew] > 0)


def _line_distance(pts, p, q):
    d = q - p
    rel = pts - p
    return np.abs(rel[:, 0] * d[1] - rel[:, 1] * d[0]) / np.hypot(*d)


@pytest.mark.parametrize("tau", [0.4, 1.0])
def test_cs_region_grows_inside_the_parallelogram(tau):
    # x2 in R_M(e_l), no farther than x1 from the lines joining M to both ends of e_l
    spec = parse_spec(f"cs:tau={tau}")
    rng = np.random.default_rng(203)
    v = FS.basic_vertices
    m = spec.center.resolve(FS)
    m = np.array([m.x, m.y])
    x1, x2 = _pairs(FS, 20_000, rng)
    e1 = edge_regions_of(x1, FS, spec.center) - 1
    keep = e1 == edge_regions_of(x2, FS, spec.center) - 1
    for j in range(3):
        dist1 = _line_distance(x1, m, v[j])
        dist2 = _line_distance(x2, m, v[j])
        keep &= (e1 == j) | (dist2 <= dist1)
    assert np.count_nonzero(keep) > 500
    x1, x2 = np.repeat(x1[keep], 40, axis=0), np.repeat(x2[keep], 40, axis=0)
    ys = sample_uniform_triangle(v, len(x1), rng)
    a = catches_pairs(x1, ys, FS, spec)
    b = catches_pairs(x2, ys, FS, spec)
    assert a.any()
    assert not np.any(a & ~b)


def test_sph_regions_overlap_across_cells():
    ys = np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0], [0.5, 0.5]])
    t = triangulate(ys)
    xs = np.array([[0.5, 0.2], [0.8, 0.5]])
    cells = locate_many(t, xs)
    assert cells[0] != cells[1]
    spec = parse_spec("sph")
    g1 = region(xs[0], TE, spec, sites=ys)
    g2 = region(xs[1], TE, spec, sites=ys)
    r1, r2 = g1.disk.radius, g2.disk.radius
    w = xs[0] + r1 / (r1 + r2) * (xs[1] - xs[0])
    assert g1.slack(w)[0] > 0
    assert g2.slack(w)[0] > 0
    # a shared point is caught from both cells
    assert catches_pairs(xs, np.vstack([w, w]), TE, spec, sites=ys).all()

import math

import numpy as np
import pytest

from src.geometry.core import Point2, TriangleFrame
from src.geometry.exceptions import UnboundedRegion
from src.geometry.region import (
    Disk,
    ProximityRegion,
    RegionUnion,
    halfplane,
    polygon_area,
    polygon_disk_area,
    region_area,
    side_of_line,
)


def _triangle_region(a, b, c):
    return ProximityRegion((side_of_line(a, b, c), side_of_line(b, c, a), side_of_line(c, a, b)))


def test_triangle_polygon_area():
    r = _triangle_region((0, 0), (1, 0), (0.25, 0.5))
    poly = r.polygon()
    assert len(poly) == 3
    assert r.area() == pytest.approx(0.25)
    assert r.contains((0.3, 0.1))
    assert not r.contains((0.9, 0.4))


def test_boundary_points_are_inside_within_tolerance():
    r = _triangle_region((0, 0), (1, 0), (0, 1))
    assert r.contains((0.5, 0.0))
    assert r.contains((0.5, 0.5))
    assert not r.contains((0.5, 0.5 + 1e-6))


def test_disk_only_region_area():
    # a disk strictly inside the equilateral triangle
    r = ProximityRegion(disk=Disk(Point2(0.5, 0.3), 0.1))
    assert r.area() == pytest.approx(math.pi * 0.01, rel=1e-12)


def test_disk_clipped_by_halfplane():
    # lower half of the unit disk, boxed by a large square
    hps = (
        halfplane((0, 1), 0.0),
        halfplane((0, -1), 5.0),
        halfplane((1, 0), 5.0),
        halfplane((-1, 0), 5.0),
    )
    r = ProximityRegion(hps, Disk(Point2(0, 0), 1.0))
    assert r.area() == pytest.approx(math.pi / 2, rel=1e-12)


def test_tangent_clipping_line_leaves_the_disk_whole():
    r = ProximityRegion((halfplane((0, 1), 1.0), halfplane((1, 0), 1.0)), Disk(Point2(0, 0), 1.0))
    assert r.area() == pytest.approx(math.pi, rel=1e-12)
    # a square circumscribing the disk touches it at four edge midpoints
    sq = np.array([[-1, -1], [1, -1], [1, 1], [-1, 1]], dtype=float)
    assert polygon_disk_area(sq, Point2(0, 0), 1.0) == pytest.approx(math.pi, rel=1e-12)


def test_polygon_disk_area_matches_polygon_when_disk_covers_it():
    sq = np.array([[0, 0], [1, 0], [1, 1], [0, 1]], dtype=float)
    assert polygon_area(sq) == pytest.approx(1.0)
    assert polygon_disk_area(sq, Point2(0.5, 0.5), 10.0) == pytest.approx(1.0)
    assert polygon_disk_area(sq, Point2(0.5, 0.5), 0.0) == 0.0


def test_single_halfplane_is_unbounded():
    r = ProximityRegion((halfplane((0, 1), 0.0),))
    with pytest.raises(UnboundedRegion):
        r.polygon()


def test_degenerate_regions():
    assert ProximityRegion.of_point((0.2, 0.2)).area() == 0.0
    seg = ProximityRegion.of_segment((0, 0), (1, 0))
    assert seg.area() == 0.0
    assert seg.contains((0.5, 0.0))
    assert not seg.contains((0.5, 0.1))
    assert not ProximityRegion.empty().contains((0, 0))


def test_region_union_of_basic_triangle_halves():
    f = TriangleFrame.basic(0.25, 0.5)
    left = _triangle_region((0, 0), (0.5, 0), (0.25, 0.5))
    right = _triangle_region((0.5, 0), (1, 0), (0.25, 0.5))
    u = RegionUnion((left, right))
    assert region_area(u) == pytest.approx(f.area)
    assert u.contains((0.6, 0.1))
    hull = u.hull_vertices()
    assert len(hull) == 3
    assert len(u.vertex_set()) == 4
    assert not u.is_empty
    assert RegionUnion().is_empty


def test_halfplane_rejects_zero_normal():
    with pytest.raises(ValueError):
        halfplane((0, 0), 1.0)

import numpy as np
import pytest

from src.geometry.core import SQRT3, TriangleFrame
from src.geometry.exceptions import CenterOutsideTriangle, InvalidSpec, ProjectionOffEdge
from src.geometry.partitions import (
    CenterSpec,
    PartitionScheme,
    check_center,
    edge_region_of,
    region_polygon,
    vertex_region_of,
    vertex_regions_of,
)

TE = TriangleFrame.equilateral()
CM = CenterSpec("CM")


def test_center_spec_parse():
    assert CenterSpec.parse("cm") == CM
    c = CenterSpec.parse("0.4;0.2")
    assert c.kind == "custom"
    assert (c.point.x, c.point.y) == (0.4, 0.2)
    assert c.label() == "0.4;0.2"
    with pytest.raises(InvalidSpec):
        CenterSpec.parse("middle")
    with pytest.raises(InvalidSpec):
        CenterSpec("custom")


def test_edge_scheme_rejects_orthogonal():
    with pytest.raises(InvalidSpec):
        PartitionScheme("edge", "orthogonal")


def test_vertex_regions_on_equilateral():
    assert vertex_region_of((0.1, 0.05), TE, CM) == 1
    assert vertex_region_of((0.9, 0.05), TE, CM) == 2
    assert vertex_region_of((0.5, 0.8), TE, CM) == 3
    # M lies on every shared boundary; ties go to the smallest index
    assert vertex_region_of((0.5, SQRT3 / 6), TE, CM) == 1


def test_vectorized_matches_scalar():
    rng = np.random.default_rng(7)
    pts = rng.uniform(0, 1, size=(200, 2)) * [1.0, SQRT3 / 2]
    pts = pts[TE.edge_distances(pts).min(axis=1) >= 0]
    many = vertex_regions_of(pts, TE, CM)
    assert [vertex_region_of(p, TE, CM) for p in pts] == list(many)


def test_edge_regions_on_equilateral():
    assert edge_region_of((0.5, 0.02), TE, CM) == 3
    assert edge_region_of((0.8, 0.2), TE, CM) == 1
    assert edge_region_of((0.2, 0.2), TE, CM) == 2


@pytest.mark.parametrize("scheme", [PartitionScheme("vertex", "lines"), PartitionScheme("edge", "lines")])
def test_cm_regions_split_area_evenly(scheme):
    areas = [region_polygon(TE, CM, scheme, i).area() for i in (1, 2, 3)]
    assert sum(areas) == pytest.approx(TE.area)
    assert areas == pytest.approx([TE.area / 3] * 3)


def test_orthogonal_cc_regions_on_scalene_acute():
    f = TriangleFrame.basic(0.4, 0.6)
    scheme = PartitionScheme("vertex", "orthogonal")
    areas = [region_polygon(f, CenterSpec("CC"), scheme, i).area() for i in (1, 2, 3)]
    assert sum(areas) == pytest.approx(f.area)


def test_cc_outside_obtuse_triangle_is_rejected_for_lines():
    f = TriangleFrame.basic(0.3, 0.1)
    with pytest.raises(CenterOutsideTriangle):
        check_center(f, CenterSpec("CC"), PartitionScheme("vertex", "lines"))
    with pytest.raises(CenterOutsideTriangle):
        check_center(f, CenterSpec("OC"), PartitionScheme("vertex", "lines"))


def test_orthogonal_projection_off_edge():
    f = TriangleFrame.basic(0.3, 0.1)
    with pytest.raises(ProjectionOffEdge):
        check_center(f, CenterSpec.custom(0.29, 0.09), PartitionScheme("vertex", "orthogonal"))


def test_region_index_is_checked():
    with pytest.raises(InvalidSpec):
        region_polygon(TE, CM, PartitionScheme(), 4)

import math

import pytest
from hypothesis import given, strategies as st

from curvecx.complex import (
    GE3,
    ComplexUniverse,
    EdgePath,
    SurgeryError,
    adjacent,
    bfs_distance,
    log_bound_constants,
    probe_delta,
    sample_pairs,
    small_distance,
    surgery_path,
    triangle_slimness,
    torus_slope,
)
from curvecx.curves import CurveError, enumerate_curves, intersection_number, is_filling, torus_slope_curve
from curvecx.farey import FareySlope
from curvecx.surface import SurfaceSig, standard_triangulation

SPHERE5 = standard_triangulation(SurfaceSig(0, 5))
U5 = ComplexUniverse(SPHERE5, 2)
POOL5 = U5.vertices
PAIRS12 = sample_pairs(standard_triangulation(SurfaceSig(1, 2)), 40, seed=3)


def test_small_distance_basics():
    a = POOL5[0]
    assert small_distance(a, a) == 0
    b = next(x for x in POOL5 if x != a and intersection_number(a, x) == 0)
    assert small_distance(a, b) == 1
    assert bfs_distance(a, b, U5) == 1


def test_small_distance_two():
    a = POOL5[0]
    b = next(x for x in POOL5 if intersection_number(a, x) and not is_filling(a, x))
    assert small_distance(a, b) == 2
    assert bfs_distance(a, b, U5) == 2


def test_filling_pair_on_genus_two():
    tri = standard_triangulation(SurfaceSig(2, 1))
    cs = enumerate_curves(tri, 2)
    pair = next((a, b) for a in cs for b in cs if is_filling(a, b))
    assert small_distance(*pair) == GE3


def test_torus_uses_farey_convention(torus):
    a, b = torus_slope_curve(torus, 0, 1), torus_slope_curve(torus, 1, 0)
    assert adjacent(a, b)
    assert small_distance(a, b) == 1
    assert torus_slope(torus_slope_curve(torus, -2, 5)) == FareySlope(-2, 5)
    with pytest.raises(SurgeryError):
        surgery_path(a, torus_slope_curve(torus, 1, 2))


@given(st.sampled_from(POOL5), st.sampled_from(POOL5))
def test_bfs_metric_and_small_distance(a, b):
    d = bfs_distance(a, b, U5)
    assert d == bfs_distance(b, a, U5)
    assert (d == 0) == (a == b)
    s = small_distance(a, b)
    if s == GE3:
        assert d >= 3
    else:
        # the capped universe can only lengthen paths
        assert d >= s
        if s <= 1:
            assert d == s


@given(st.sampled_from(POOL5), st.sampled_from(POOL5), st.sampled_from(POOL5))
def test_bfs_triangle_inequality(a, b, c):
    assert bfs_distance(a, c, U5) <= bfs_distance(a, b, U5) + bfs_distance(b, c, U5)


def test_unknown_vertex_rejected(torus2):
    u = ComplexUniverse(torus2, 1)
    outside = next(c for c in enumerate_curves(torus2, 3) if c not in u)
    with pytest.raises(CurveError):
        u.distance(outside, u.vertices[0])


def test_disjoint_pair_path():
    a = POOL5[0]
    b = next(x for x in POOL5 if x != a and intersection_number(a, x) == 0)
    p = surgery_path(a, b)
    assert p.vertices == (a, b) and p.length == 1


def test_intersection_one_on_genus_two():
    tri = standard_triangulation(SurfaceSig(2, 1))
    cs = enumerate_curves(tri, 1)
    a, b = next((a, b) for a in cs for b in cs if intersection_number(a, b) == 1)
    p = surgery_path(a, b)
    assert p.length == 2
    mid = p.vertices[1]
    assert intersection_number(mid, a) == intersection_number(mid, b) == 0


@pytest.mark.parametrize("strategy", ["basic", "log"])
@pytest.mark.parametrize("pair", PAIRS12[:20] + sample_pairs(SPHERE5, 20, seed=5))
def test_surgery_path_valid(pair, strategy):
    a, b = pair
    p = surgery_path(a, b, strategy)
    assert p.vertices[0] == a and p.vertices[-1] == b
    EdgePath(p.vertices)  # revalidates adjacency
    i = intersection_number(a, b)
    assert p.length <= max(1, 2 * i)
    s = small_distance(a, b)
    assert p.length >= (3 if s == GE3 else s)


def test_edge_path_rejects_gap():
    a = POOL5[0]
    b = next(x for x in POOL5 if intersection_number(a, x))
    with pytest.raises(CurveError):
        EdgePath((a, b))


def test_log_bound_constants():
    assert log_bound_constants([(1, 1), (4, 5), (16, 9)]) == (2, 1)
    c1, c2 = log_bound_constants([(8, 3)])
    assert c1 * math.log2(8) + c2 >= 3


def test_sample_pairs_reproducible():
    assert sample_pairs(SPHERE5, 15, seed=9) == sample_pairs(SPHERE5, 15, seed=9)


def test_degenerate_triangles_are_slim():
    a, b = POOL5[0], POOL5[5]
    assert triangle_slimness(U5, a, a, a) == 0
    assert triangle_slimness(U5, a, a, b) == 0


def test_probe_delta_seeded():
    r1 = probe_delta(U5, 30, seed=1)
    r2 = probe_delta(U5, 30, seed=1)
    assert r1 == r2
    assert r1.max_slimness < math.inf
    assert sum(r1.histogram.values()) + r1.skipped == 30

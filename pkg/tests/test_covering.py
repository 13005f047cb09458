import json

import pytest
from hypothesis import given, strategies as st

from curvecx.covering import (
    CoverError,
    CoveringSpec,
    lift_degrees,
    lift_weights,
    pullback,
    quasiconvexity_probe,
    scaling_check,
    torus_cover,
    trivial_cover,
    twist_lift_check,
)
from curvecx.curves import enumerate_curves, intersection_number, is_filling, torus_slope_curve
from curvecx.surface import SurfaceSig, standard_triangulation

TORUS = standard_triangulation(SurfaceSig(1, 1))
SMALL = enumerate_curves(TORUS, 3)
COVERS = {2: torus_cover(2), 3: torus_cover(3)}


def test_cover_signatures():
    assert COVERS[2].signature == SurfaceSig(1, 2)
    assert COVERS[3].signature == SurfaceSig(1, 3)
    assert COVERS[2].cover.num_triangles == 4


def test_euler_consistency():
    # chi multiplies by the degree; punctures come from monodromy cycles
    for d, p in COVERS.items():
        chi_base = 2 - 2 * TORUS.genus - TORUS.num_punctures
        chi = 2 - 2 * p.cover.genus - p.cover.num_punctures
        assert chi == d * chi_base
        assert p.cover.num_punctures == sum(len(c) for c in p.monodromy_cycles())


def test_bad_permutations():
    with pytest.raises(CoverError):
        CoveringSpec(TORUS, 2, ((0, 1), (0, 0), (0, 1)))
    with pytest.raises(CoverError):
        CoveringSpec(TORUS, 2, ((0, 1),))


def test_json_round_trip():
    p = COVERS[3]
    again = CoveringSpec.from_json(json.loads(json.dumps(p.to_json())))
    assert again.edge_perms == p.edge_perms and again.cover == p.cover


@given(st.sampled_from(SMALL))
def test_weight_transport(c):
    p = COVERS[2]
    lifted = lift_weights(p, c)
    assert all(lifted[e] == c.weights[p.edge_image[e]] for e in range(p.cover.num_edges))
    total = pullback(p, c)
    mass = sum(m * sum(comp.weights) for comp, m in total.parts)
    assert mass == 2 * c.size


def test_slope_zero_lifts():
    c = torus_slope_curve(TORUS, 0, 1)
    for edge in range(3):
        degs = lift_degrees(torus_cover(2, edge), c)
        assert sum(degs) == 2
        assert degs in ([1, 1], [2])
    # some choice of shifted edge separates the two behaviours
    kinds = {tuple(lift_degrees(torus_cover(2, e), c)) for e in range(3)}
    assert kinds == {(1, 1), (2,)}


def test_degree_one_ratios():
    p = trivial_cover(TORUS)
    a, b, c = (torus_slope_curve(TORUS, *s) for s in ((1, 0), (0, 1), (1, 1)))
    rep = scaling_check(p, a, b, c)
    assert rep["intersection_ratio"] == 1 and rep["length_ratio"] == 1
    assert pullback(p, a).components[0].weights == a.weights


@pytest.mark.parametrize("degree", [2, 3])
def test_scaling_identities(degree):
    p = COVERS[degree]
    fill = [(a, b) for a in SMALL for b in SMALL if a < b and is_filling(a, b)][:8]
    for a, b in fill:
        for c in SMALL[:8]:
            rep = scaling_check(p, a, b, c)
            assert rep["intersection_ratio"] == degree
            assert rep["length"] == 0 or rep["length_ratio"] == degree


@given(st.sampled_from(SMALL), st.sampled_from(SMALL))
def test_pullback_intersection_scales(a, b):
    p = COVERS[3]
    assert intersection_number(pullback(p, a), pullback(p, b)) == 3 * intersection_number(a, b)


def test_twist_lift():
    p = torus_cover(2, 0)
    checked = 0
    for c in SMALL[:6]:
        for d in SMALL[:6]:
            rep = twist_lift_check(p, c, d, 1)
            if rep is not None:
                checked += 1
                assert rep["agrees"]
    assert checked > 0


def test_quasiconvexity_probe():
    rep = quasiconvexity_probe(COVERS[2], 20, cap=2, seed=1)
    assert rep["evaluated"] + rep["skipped"] == 20
    assert rep["P"] is not None
    assert rep == quasiconvexity_probe(COVERS[2], 20, cap=2, seed=1)

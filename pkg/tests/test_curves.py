from math import gcd

import pytest
from hypothesis import assume, given, strategies as st

from curvecx.curves import (
    CurveError,
    MappingClassWord,
    MultiCurve,
    NormalCurve,
    apply_twist,
    enumerate_curves,
    intersection_number,
    is_filling,
    torus_slope_curve,
    twist_curve,
)
from curvecx.surface import SurfaceSig, standard_triangulation

TORUS = standard_triangulation(SurfaceSig(1, 1))
SPHERE5 = standard_triangulation(SurfaceSig(0, 5))
POOL5 = enumerate_curves(SPHERE5, 2)

@st.composite
def slopes(draw, bound=12):
    q = draw(st.integers(0, bound))
    p = draw(st.sampled_from([p for p in range(-bound, bound + 1) if gcd(p, q) == 1]))
    return p, q


def test_meridian_longitude(torus):
    assert intersection_number(torus_slope_curve(torus, 0, 1), torus_slope_curve(torus, 1, 0)) == 1


def test_slopes_half_and_two(torus):
    assert intersection_number(torus_slope_curve(torus, 1, 2), torus_slope_curve(torus, 2, 1)) == 3


@given(slopes(), slopes())
def test_torus_oracle(s1, s2):
    (p, q), (r, s) = s1, s2
    a, b = torus_slope_curve(TORUS, p, q), torus_slope_curve(TORUS, r, s)
    assert intersection_number(a, b) == abs(p * s - q * r)


def test_disjoint_is_zero(sphere5):
    cs = enumerate_curves(sphere5, 1)
    pairs = [(a, b) for a in cs for b in cs if a < b and intersection_number(a, b) == 0]
    assert pairs
    a, b = pairs[0]
    assert intersection_number(b, a) == 0
    assert not is_filling(a, b)


def test_identity_word_fixes(sphere5):
    for c in POOL5[:10]:
        assert apply_twist(MappingClassWord(), c) == c


def test_torus_twist_example(torus):
    a, b = torus_slope_curve(torus, 0, 1), torus_slope_curve(torus, 1, 0)
    s = twist_curve(a, b, 1)
    assert intersection_number(s, b) == 1
    assert intersection_number(s, a) == 1


@given(slopes(6), slopes(6), st.integers(-3, 3))
def test_torus_twist_homology(c_slope, d_slope, k):
    # T_c^k sends d to d +- k I(c,d) c in homology
    (p, q), (r, s) = c_slope, d_slope
    c, d = torus_slope_curve(TORUS, p, q), torus_slope_curve(TORUS, r, s)
    assume(k != 0)
    i = p * s - q * r
    image = twist_curve(c, d, k)
    options = set()
    for sign in (1, -1):
        x, y = r + sign * k * i * p, s + sign * k * i * q
        if y < 0 or (y == 0 and x < 0):
            x, y = -x, -y
        options.add(torus_slope_curve(TORUS, x, y))
    assert image in options


@given(st.sampled_from(POOL5), st.sampled_from(POOL5), st.integers(-2, 2))
def test_twist_intersection_identity(c, d, k):
    # I(T_c^k d, d) = |k| I(c,d)^2 for simple closed curves
    image = twist_curve(c, d, k)
    assert intersection_number(image, d) == abs(k) * intersection_number(c, d) ** 2
    assert intersection_number(image, c) == intersection_number(d, c)


@given(st.sampled_from(POOL5), st.sampled_from(POOL5), st.integers(1, 2))
def test_twist_inverse(c, d, k):
    assert twist_curve(c, twist_curve(c, d, k), -k) == d


@given(st.sampled_from(POOL5), st.sampled_from(POOL5), st.sampled_from(POOL5))
def test_twist_preserves_intersection(c, x, y):
    g = MappingClassWord.twist(c, 1)
    assert intersection_number(apply_twist(g, x), apply_twist(g, y)) == intersection_number(x, y)


@given(st.sampled_from(POOL5), st.sampled_from(POOL5), st.integers(1, 3), st.integers(1, 3))
def test_bilinear_in_multiplicity(a, b, m, n):
    assert intersection_number(MultiCurve.of(a, m), MultiCurve.of(b, n)) == m * n * intersection_number(a, b)


@given(st.sampled_from(POOL5), st.sampled_from(POOL5))
def test_symmetric_and_self_zero(a, b):
    assert intersection_number(a, b) == intersection_number(b, a)
    assert intersection_number(a, a) == 0


def test_enumerate_torus_cap_one(torus):
    got = enumerate_curves(torus, 1)
    assert sorted(c.weights for c in got) == [(0, 1, 1), (1, 0, 1), (1, 1, 0)]


def test_slopes_up_to_three(torus):
    primitive = {(p, q) for p in range(-3, 4) for q in range(0, 4)
                 if abs(p) + abs(q) <= 3 and gcd(p, q) == 1 and (q > 0 or p == 1)}
    assert len(primitive) == 8
    curves = {torus_slope_curve(torus, p, q) for p, q in primitive}
    assert len(curves) == 8
    assert curves <= set(enumerate_curves(torus, 3))


def test_enumerate_monotone_in_cap(sphere5):
    assert set(enumerate_curves(sphere5, 1)) <= set(enumerate_curves(sphere5, 2))


def test_peripheral_rejected(torus):
    with pytest.raises(CurveError):
        NormalCurve(torus, (2, 2, 2))


@pytest.mark.parametrize("weights", [(0, 0, 0), (1, 1, 1), (1, 0, 0), (-1, 1, 0)])
def test_invalid_weights(torus, weights):
    with pytest.raises(CurveError):
        NormalCurve(torus, weights)


def test_filling_examples(torus):
    a, b = torus_slope_curve(torus, 0, 1), torus_slope_curve(torus, 1, 0)
    assert is_filling(a, b)
    assert not is_filling(a, a)


def test_multicurve_components_disjoint(sphere5):
    a, b = POOL5[0], next(x for x in POOL5 if intersection_number(POOL5[0], x))
    with pytest.raises(CurveError):
        MultiCurve(((a, 1), (b, 1)))


def _reference_linked(u, v, glue):
    from curvecx import _ribbon as rb

    return sum(l for vv in (v, rb.reverse_word(v, glue)) for *_, l, _ in rb.common_segments(u, vv, glue))


@given(st.sampled_from(POOL5), st.sampled_from(POOL5), st.sampled_from(POOL5), st.integers(1, 3))
def test_compiled_scan_matches_reference(c, d, e, k):
    from curvecx import _ribbon as rb

    # twisting makes the words long enough to take the compiled path
    x, y = twist_curve(c, d, k), twist_curve(d, e, -k)
    glue = SPHERE5.gluing
    fast = int(rb._linked_kernel(rb._as_array(x.word), rb._as_array(y.word), rb._as_array(glue)))
    assert fast == _reference_linked(x.word, y.word, glue)

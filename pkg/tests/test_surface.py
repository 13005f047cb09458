import json
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from curvecx.surface import (
    ComplexClass,
    IdealTriangulation,
    SurfaceError,
    SurfaceSig,
    classification_table,
    classify,
    parse_signature,
    standard_triangulation,
)

GOLDEN = Path(__file__).parent / "golden" / "classification.json"


@pytest.mark.parametrize(
    "sig, expected",
    [
        (SurfaceSig(0, 3), ComplexClass.EMPTY),
        (SurfaceSig(0, 4), ComplexClass.DISCRETE),
        (SurfaceSig(1, 1), ComplexClass.FAREY),
        (SurfaceSig(1, 0), ComplexClass.FAREY),
        (SurfaceSig(0, 5), ComplexClass.SUPPORTED),
        (SurfaceSig(1, 2), ComplexClass.SUPPORTED),
        (SurfaceSig(2, 0), ComplexClass.SUPPORTED),
        (SurfaceSig(1, 1, False), ComplexClass.NONORIENTABLE_SPORADIC),
        (SurfaceSig(3, 0, False), ComplexClass.NONORIENTABLE_UNSUPPORTED),
    ],
)
def test_classify_examples(sig, expected):
    assert classify(sig) is expected


def test_classification_golden():
    assert classification_table(5, 10) == json.loads(GOLDEN.read_text())


def test_nonorientable_genus_zero_rejected():
    with pytest.raises(SurfaceError):
        SurfaceSig(0, 3, False)


@pytest.mark.parametrize("g, n, T, E", [(1, 1, 2, 3), (0, 5, 6, 9), (1, 2, 4, 6), (2, 1, 6, 9)])
def test_standard_triangulation_counts(g, n, T, E):
    tri = standard_triangulation(SurfaceSig(g, n))
    assert (tri.num_triangles, tri.num_edges) == (T, E)
    assert tri.signature == SurfaceSig(g, n)


@pytest.mark.parametrize("sig", [SurfaceSig(0, 2), SurfaceSig(0, 3), SurfaceSig(0, 4), SurfaceSig(2, 0), SurfaceSig(1, 1, False)])
def test_standard_triangulation_rejects(sig):
    with pytest.raises(SurfaceError):
        standard_triangulation(sig)


@given(st.integers(0, 3), st.integers(1, 6))
def test_euler_count(g, n):
    sig = SurfaceSig(g, n)
    if classify(sig) not in (ComplexClass.FAREY, ComplexClass.SUPPORTED):
        return
    tri = standard_triangulation(sig)
    assert tri.num_triangles == 4 * g - 4 + 2 * n
    assert tri.num_edges == 6 * g - 6 + 3 * n
    assert len(tri.puncture_cycles()) == n


def test_json_round_trip(sphere5):
    again = IdealTriangulation.from_json(json.loads(json.dumps(sphere5.to_json())))
    assert again == sphere5


def test_bad_gluing():
    with pytest.raises(SurfaceError):
        IdealTriangulation((1, 0, 2, 3, 4, 5))


def test_parse_signature():
    assert parse_signature("0,5") == SurfaceSig(0, 5)
    assert parse_signature(["1", "2"]) == SurfaceSig(1, 2)
    assert parse_signature("2,1,nonorientable") == SurfaceSig(2, 1, False)

"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v``; the lines are repeated in the
terminal summary under "acceptance criteria".
"""

import math
import time
from collections import deque

import pytest

from curvecx import farey as fy
from curvecx.coarse import (
    CoarseLab,
    FillingPair,
    WeightedPair,
    calibrate_R,
    check_bowditch_axioms,
    diameter,
    mid_prime,
    probe_ax3,
    probe_centers,
    probe_fellow_travel,
    probe_thin_triangles,
    sample_filling_pairs,
)
from curvecx.complex import ComplexUniverse, log_bound_constants, sample_pairs, surgery_path
from curvecx.covering import quasiconvexity_probe, scaling_check, torus_cover
from curvecx.curves import enumerate_curves, intersection_number, is_filling, torus_slope_curve
from curvecx.qm import (
    QmSpec,
    axis_path,
    default_W,
    defect_scan,
    discounted_distance,
    evaluate_word,
    farey_stabilizer,
    growth,
    h_w,
    sample_word_pairs,
    stabilizer_probe,
)
from curvecx.surface import SurfaceSig, standard_triangulation

SEEDS = (1, 2)
SPHERE5 = standard_triangulation(SurfaceSig(0, 5))
TORUS2 = standard_triangulation(SurfaceSig(1, 2))
TORUS = standard_triangulation(SurfaceSig(1, 1))
AXIS_M = fy.IntMatrix(2, 1, 1, 1)
AXIS_LEN = 4
COARSE_CAP = 3


@pytest.fixture(scope="module")
def axis_spec():
    w = axis_path(AXIS_M, AXIS_LEN)
    return QmSpec(w, default_W(AXIS_LEN), w[0])


@pytest.fixture(scope="module")
def calibrated():
    R, report = calibrate_R(SPHERE5, 60, COARSE_CAP, seed=1, pair_cap=2)
    return R, report


@pytest.fixture(scope="module")
def labs(calibrated):
    R, _ = calibrated
    return CoarseLab(SPHERE5, COARSE_CAP, R)


def test_criterion_1_farey_oracle(criterion):
    start = time.perf_counter()
    bound = 60
    pairs = mismatches = 0
    for source in (fy.INF, fy.ZERO):
        dist = {source: 0}
        queue = deque([source])
        while queue:
            x = queue.popleft()
            for y in fy.neighbours_within(x, bound):
                if y not in dist:
                    dist[y] = dist[x] + 1
                    queue.append(y)
        for v in fy.ball(bound):
            pairs += 1
            mismatches += fy.farey_distance(source, v) != dist[v]
    elapsed = time.perf_counter() - start
    ok = mismatches == 0 and elapsed < 60 and pairs >= 8000
    criterion(1, ok, f"{pairs} pairs, {mismatches} mismatches, {elapsed:.1f}s")
    assert ok


def test_criterion_2_torus_intersection(criterion):
    start = time.perf_counter()
    slopes = [(1, 0)] + [(p, q) for q in range(1, 51) for p in range(0, q + 1) if math.gcd(p, q) == 1]
    curves = [torus_slope_curve(TORUS, p, q) for p, q in slopes]
    pairs = mismatches = 0
    for i in range(len(slopes)):
        p, q = slopes[i]
        for j in range(i + 1, len(slopes)):
            r, s = slopes[j]
            pairs += 1
            mismatches += intersection_number(curves[i], curves[j]) != abs(p * s - q * r)
    elapsed = time.perf_counter() - start
    ok = mismatches == 0 and elapsed < 60
    criterion(2, ok, f"{pairs} pairs of slopes in [0,1] u {{1/0}} with q <= 50, "
                     f"{mismatches} mismatches, {elapsed:.1f}s")
    assert ok


def _surgery_campaign(seed):
    rows = []
    for tri in (SPHERE5, TORUS2):
        for a, b in sample_pairs(tri, 500, seed=seed):
            i = intersection_number(a, b)
            rows.append((i, surgery_path(a, b, "basic").length, surgery_path(a, b, "log").length))
    return rows


@pytest.fixture(scope="module")
def surgery_rows():
    return {seed: _surgery_campaign(seed) for seed in SEEDS}


def test_criterion_3_distance_bound(criterion, surgery_rows):
    total = violations = 0
    for rows in surgery_rows.values():
        for i, basic, _ in rows:
            total += 1
            violations += basic > max(1, 2 * i)
    ok = violations == 0 and total >= 1000
    criterion(3, ok, f"{total} paths on (0,5) and (1,2), {violations} with length > 2I")
    assert ok


def test_criterion_4_log_bound(criterion, surgery_rows):
    consts = {}
    violations = 0
    for seed, rows in surgery_rows.items():
        c1, c2 = log_bound_constants([(i, log) for i, _, log in rows])
        consts[seed] = (c1, c2)
        violations += sum(1 for i, _, log in rows if i > 0 and log > c1 * math.log2(i) + c2 + 1e-9)
    (a1, a2), (b1, b2) = consts.values()
    ok = violations == 0 and abs(a1 - b1) <= 1 and abs(a2 - b2) <= 1
    criterion(4, ok, f"(C1, C2) per seed {consts}, {violations} violations")
    assert ok


def test_criterion_5_quasimorphism_range(criterion, axis_spec):
    spec = axis_spec
    rev = spec.reversed()
    c_checked = c_bad = 0
    for a, _ in sample_word_pairs(150, 8, seed=5):
        y = fy.act(evaluate_word(a), spec.x0)
        d = fy.farey_distance(spec.x0, y)
        for s in (spec, rev):
            c = discounted_distance(spec.x0, y, s)
            c_checked += 1
            c_bad += not 0 <= c <= d
    fixers = farey_stabilizer(spec.x0, [k for k in range(-20, 21) if k])
    fixed_bad = sum(1 for g in fixers if h_w(g, spec) != 0)
    vertices = [fy.INF, fy.FareySlope(1, 2), fy.FareySlope(-3, 5), fy.FareySlope(7, 4)]
    elements = stab_bad = 0
    for x in vertices:
        rep = stabilizer_probe(spec, x, farey_stabilizer(x, [k for k in range(-30, 31) if k]))
        elements += rep["samples"]
        stab_bad += rep["violations"]
    ok = c_bad == 0 and fixed_bad == 0 and stab_bad == 0 and elements >= 200 and len(vertices) >= 3
    criterion(5, ok, f"{c_checked} c-values ({c_bad} out of range), {len(fixers)} x0-fixers "
                     f"({fixed_bad} nonzero), {elements} stabilizer elements over {len(vertices)} "
                     f"vertices ({stab_bad} violations)")
    assert ok


def test_criterion_6_defect_and_growth(criterion, axis_spec):
    spec = axis_spec
    maxima = {}
    for seed in SEEDS:
        pairs = [(evaluate_word(a), evaluate_word(b)) for a, b in sample_word_pairs(1000, 10, seed=seed)]
        rep = defect_scan(spec, pairs, seed=seed)
        assert rep.cap_exceeded == 0
        maxima[seed] = rep.max_defect
    lo, hi = min(maxima.values()), max(maxima.values())
    stable = hi == 0 or (hi - lo) / hi < 0.10
    values = growth(spec, AXIS_M, 12)
    steps = [b - a for a, b in zip(values, values[1:])]
    increasing = all(s > 0 for s in steps)
    ok = stable and increasing
    criterion(6, ok, f"max defect per seed {maxima} (stable: {stable}); h(m^n), n=1..12 = {values} "
                     f"(strictly increasing: {increasing})")
    assert ok


def test_criterion_7_coarse_identities(criterion, calibrated):
    R, _ = calibrated
    pool = enumerate_curves(SPHERE5, 2)
    pairs = sample_filling_pairs(SPHERE5, 50, seed=7, pool=pool)
    u = ComplexUniverse(SPHERE5, COARSE_CAP)
    scale_bad = diam_bad = 0
    worst = 0
    for fp in pairs:
        base = mid_prime(WeightedPair(fp), R, COARSE_CAP)
        for n in range(2, 6):
            scaled = FillingPair(fp.a.scaled(n), fp.b.scaled(n))
            scale_bad += mid_prime(WeightedPair(scaled), R, COARSE_CAP) != base
        d = diameter(u, base)
        worst = max(worst, d)
        diam_bad += d > 2 + 2 * R * R
    ok = scale_bad == 0 and diam_bad == 0 and len(pairs) >= 50
    criterion(7, ok, f"{len(pairs)} pairs, R^={R}, {scale_bad} scaling mismatches (N<=5), "
                     f"max diameter {worst} vs bound {float(2 + 2 * R * R):.3f}, {diam_bad} violations")
    assert ok


PROBES = {
    "fellow_travel": probe_fellow_travel,
    "centers": probe_centers,
    "thin_triangles": probe_thin_triangles,
    "ax3": probe_ax3,
}


def test_criterion_8_closeness_probes(criterion, labs):
    table = {}
    ok = True
    for name, probe in PROBES.items():
        reps = [probe(labs, 50, seed) for seed in SEEDS]
        consts = [r.max_constant for r in reps]
        enough = all(len(r.values) >= 50 for r in reps)
        finite = all(c is not None for c in consts)
        stable = finite and abs(consts[0] - consts[1]) <= 2
        table[name] = (consts, [len(r.values) for r in reps])
        ok = ok and enough and stable
    criterion(8, ok, f"cap {COARSE_CAP}, (max constant, evaluated) per seed: {table}")
    assert ok


def test_criterion_9_bowditch_axioms(criterion, labs):
    per_seed = {}
    ok = True
    for seed in SEEDS:
        reps = check_bowditch_axioms(labs, 100, seed)
        per_seed[seed] = [r.max_constant for r in reps]
        ok = ok and all(len(r.values) >= 100 and r.max_constant is not None for r in reps)
        notes = reps[2].notes
        ok = ok and notes["transfer_condition_ok"] and notes["transfer_condition_checked"] > 0
    criterion(9, ok, f"empirical K for axioms 1-3 per seed {per_seed}, transfer condition verified")
    assert ok


def test_criterion_10_covering_identities(criterion):
    curves = enumerate_curves(TORUS, 4)
    checked = 0
    for degree in (2, 3):
        p = torus_cover(degree)
        for a in curves:
            for b in curves:
                if a == b or not is_filling(a, b):
                    continue
                for c in curves:
                    scaling_check(p, a, b, c)  # raises on any failure
                    checked += 1
    ok = checked > 0
    criterion(10, ok, f"{checked} exact (a,b,c) checks over {len(curves)} curves, degrees 2 and 3")
    assert ok


def test_criterion_11_quasiconvexity(criterion):
    p = torus_cover(2)
    reps = [quasiconvexity_probe(p, 100, cap=3, seed=seed) for seed in SEEDS]
    values = [r["P"] for r in reps]
    ok = all(v is not None for v in values) and abs(values[0] - values[1]) <= 2
    ok = ok and all(r["evaluated"] >= 100 for r in reps)
    criterion(11, ok, f"empirical P per seed {values}, evaluated {[r['evaluated'] for r in reps]}")
    assert ok

"""Coarse midpoints, coarse geodesics and centers for filling curve systems.

Everything is relative to a finite search universe of curves (all curves
up to a weight cap, together with the components of the systems involved)
and to an explicit constant ``R``.  Square roots never appear: a length
bound ``l <= R sqrt(I)`` is tested as ``l^2 <= R^2 I`` with ``R`` rational.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Iterable, Sequence

from .complex import ComplexUniverse, Unreachable
from .curves import (
    CurveError,
    MultiCurve,
    NormalCurve,
    as_multicurve,
    enumerate_curves,
    intersection_number,
    is_filling,
)
from .surface import IdealTriangulation


class EmptyAtThisR(CurveError):
    """No universe curve is short enough; carries the smallest ``l^2 / I`` seen."""

    def __init__(self, msg: str, min_ratio_sq: Fraction | None = None, cap: int | None = None):
        super().__init__(msg)
        self.min_ratio_sq = min_ratio_sq
        self.cap = cap


class NonFillingPair(CurveError):
    pass


def as_fraction(r) -> Fraction:
    r = Fraction(r)
    if r <= 0:
        raise ValueError("R must be positive")
    return r


# ---------------------------------------------------------------- systems


@dataclass(frozen=True)
class FillingPair:
    a: MultiCurve
    b: MultiCurve
    I: int = field(init=False)

    def __post_init__(self):
        a, b = as_multicurve(self.a), as_multicurve(self.b)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        if not is_filling(a, b):
            raise NonFillingPair("a and b do not fill")
        object.__setattr__(self, "I", intersection_number(a, b))

    @property
    def tri(self) -> IdealTriangulation:
        return self.a.tri


@dataclass(frozen=True)
class WeightedPair:
    """The system ``(q a, p b)``; its midpoint is the weighted midpoint at ``p/q``."""

    pair: FillingPair
    q: int = 1
    p: int = 1

    def __post_init__(self):
        if self.q < 1 or self.p < 1:
            raise ValueError("weights must be positive integers")

    @classmethod
    def at_slope(cls, pair: FillingPair, t) -> "WeightedPair":
        t = Fraction(t)
        return cls(pair, t.denominator, t.numerator)

    @property
    def I(self) -> int:
        return self.q * self.p * self.pair.I

    @property
    def slope(self) -> Fraction:
        return Fraction(self.p, self.q)


def length(c: "NormalCurve | MultiCurve", wp: WeightedPair) -> int:
    return wp.q * intersection_number(wp.pair.a, c) + wp.p * intersection_number(wp.pair.b, c)


def modulus_lower(c: "NormalCurve | MultiCurve", wp: WeightedPair, candidates: Iterable[NormalCurve]) -> Fraction:
    """``max I(c, x) / l(x)`` over the candidates: a lower bound for the modulus."""
    best = None
    for x in candidates:
        lx = length(x, wp)
        if lx <= 0:
            raise ValueError(f"candidate {x} has zero length")
        r = Fraction(intersection_number(c, x), lx)
        if best is None or r > best:
            best = r
    if best is None:
        raise ValueError("no candidates")
    return best


# ---------------------------------------------------------------- coarse sets


@dataclass(frozen=True)
class CoarseSet:
    curves: tuple[NormalCurve, ...]
    cap: int
    R: Fraction
    label: str = ""

    def __iter__(self):
        return iter(self.curves)

    def __len__(self):
        return len(self.curves)

    def __contains__(self, c):
        return c in self.curves

    def as_set(self) -> frozenset:
        return frozenset(self.curves)

    def __eq__(self, other):
        return isinstance(other, CoarseSet) and self.as_set() == other.as_set()

    def __hash__(self):
        return hash(self.as_set())

    def union(self, other: "CoarseSet", label: str = "") -> "CoarseSet":
        return CoarseSet(tuple(sorted(set(self.curves) | set(other.curves))), self.cap, self.R, label)

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "cap": self.cap,
            "R": str(self.R),
            "size": len(self.curves),
            "curves": [c.to_json() for c in self.curves],
        }


def search_universe(tri: IdealTriangulation, cap: int, *systems: MultiCurve) -> list[NormalCurve]:
    """Curves up to ``cap`` together with every component of the given systems."""
    found = set(enumerate_curves(tri, cap))
    for s in systems:
        found.update(as_multicurve(s).components)
    return sorted(found)


class Lengths:
    """Cached ``I(a, x)`` and ``I(b, x)`` over a universe for one pair of systems."""

    def __init__(self, a: MultiCurve, b: MultiCurve, universe: Sequence[NormalCurve]):
        self.a, self.b = as_multicurve(a), as_multicurve(b)
        self.universe = list(universe)
        self.ia = [intersection_number(self.a, x) for x in self.universe]
        self.ib = [intersection_number(self.b, x) for x in self.universe]
        self.I = intersection_number(self.a, self.b)

    def midpoint(self, q: int, p: int, R: Fraction) -> list[NormalCurve]:
        """Members with ``(q I(a,x) + p I(b,x))^2 <= R^2 q p I``."""
        rhs_num = R.numerator ** 2 * q * p * self.I
        den = R.denominator ** 2
        return [x for x, i, j in zip(self.universe, self.ia, self.ib) if (q * i + p * j) ** 2 * den <= rhs_num]

    def min_ratio_sq(self, q: int = 1, p: int = 1) -> tuple[Fraction, NormalCurve]:
        """Smallest ``l^2 / I`` over the universe and a curve attaining it."""
        best = None
        for x, i, j in zip(self.universe, self.ia, self.ib):
            r = Fraction((q * i + p * j) ** 2, q * p * self.I)
            if best is None or r < best[0]:
                best = (r, x)
        return best


def mid_prime(wp: WeightedPair, R, cap: int, lengths: Lengths | None = None) -> CoarseSet:
    """All universe curves ``c`` with ``l(c)^2 <= R^2 I(qa, pb)``."""
    R = as_fraction(R)
    if lengths is None:
        lengths = Lengths(wp.pair.a, wp.pair.b, search_universe(wp.pair.tri, cap, wp.pair.a, wp.pair.b))
    found = lengths.midpoint(wp.q, wp.p, R)
    if not found:
        r, _ = lengths.min_ratio_sq(wp.q, wp.p)
        raise EmptyAtThisR(
            f"Mid' is empty at R={R} (smallest l^2/I in the cap-{cap} universe is {r})", r, cap
        )
    return CoarseSet(tuple(found), cap, R, f"Mid'({wp.q}a,{wp.p}b)")


def coarse_geodesic(fp: FillingPair, R, slopes: Iterable, cap: int,
                    lengths: Lengths | None = None) -> list[tuple[Fraction, CoarseSet]]:
    """Weighted midpoints ordered by slope ``p/q`` (the coarse order on the geodesic)."""
    R = as_fraction(R)
    if lengths is None:
        lengths = Lengths(fp.a, fp.b, search_universe(fp.tri, cap, fp.a, fp.b))
    out = []
    for t in sorted({Fraction(s) for s in slopes}):
        if t <= 0:
            raise ValueError("slopes must be positive")
        out.append((t, mid_prime(WeightedPair.at_slope(fp, t), R, cap, lengths)))
    return out


def tilde_systems(a: MultiCurve, b: MultiCurve, c: MultiCurve):
    """``I(b,c) a, I(c,a) b, I(a,b) c`` and their common intersection number."""
    a, b, c = as_multicurve(a), as_multicurve(b), as_multicurve(c)
    iab, ibc, ica = intersection_number(a, b), intersection_number(b, c), intersection_number(c, a)
    for name, x, y in (("(a,b)", a, b), ("(b,c)", b, c), ("(c,a)", c, a)):
        if not is_filling(x, y):
            raise NonFillingPair(f"pair {name} does not fill")
    ta, tb, tc = a.scaled(ibc), b.scaled(ica), c.scaled(iab)
    tI = iab * ibc * ica
    assert intersection_number(ta, tb) == intersection_number(tb, tc) == intersection_number(tc, ta) == tI
    return ta, tb, tc, tI


def center(a, b, c, R, cap: int) -> CoarseSet:
    """Union of the midpoints of the three rescaled pairs."""
    R = as_fraction(R)
    ta, tb, tc, _ = tilde_systems(a, b, c)
    tri = ta.tri
    uni = search_universe(tri, cap, ta, tb, tc)
    out = None
    for x, y in ((ta, tb), (tb, tc), (tc, ta)):
        m = mid_prime(WeightedPair(FillingPair(x, y)), R, cap, Lengths(x, y, uni))
        out = m if out is None else out.union(m)
    return CoarseSet(out.curves, cap, R, "Center")


def side_of_center(alpha: int, beta: int, triple) -> str:
    """Where ``alpha x + beta y`` sits relative to the center of ``x, y, z``."""
    x, y, z = triple
    lhs = alpha * intersection_number(x, z)
    rhs = beta * intersection_number(y, z)
    if lhs > rhs:
        return "x-side"
    if lhs < rhs:
        return "y-side"
    return "balanced"


def transfer_condition(I: int, iac: int, ibc: int) -> dict:
    """The axiom-two transfer inequality as a linear polynomial in ``t``.

    With ``I(a,b) = I(b,d) = I`` and ``I(c_t, b) = t I(b,c) + (1-t) I`` the
    side-of-center test for ``c_t a b`` reads
    ``I I(a,c) (t I(b,c) + (1-t) I) >= I(b,c) I (t I(a,c) + (1-t) I)``
    after clearing the positive denominator.  Polynomials are
    ``(constant, coefficient of t)``.
    """
    lhs = (I * iac * I, I * iac * (ibc - I))
    rhs = (ibc * I * I, ibc * I * (iac - I))
    diff = (lhs[0] - rhs[0], lhs[1] - rhs[1])
    # claimed simplification: I^2 (1 - t) (I(a,c) - I(b,c))
    expected = (I * I * (iac - ibc), -I * I * (iac - ibc))
    ok = diff == expected
    # the condition holds on all of [0, 1) exactly when I(a,c) >= I(b,c)
    samples = [Fraction(k, 8) for k in range(8)]
    holds = all(diff[0] + diff[1] * t >= 0 for t in samples)
    return {"difference": diff, "simplifies": ok, "holds": holds, "reduced": iac >= ibc, "agrees": holds == (iac >= ibc)}


# ---------------------------------------------------------------- calibration


def sqrt_ceil(x: Fraction, denominator: int = 1000) -> Fraction:
    """Smallest ``k/denominator`` whose square is at least ``x``."""
    num = x.numerator * denominator * denominator
    k = isqrt(num // x.denominator)
    while k * k * x.denominator < num:
        k += 1
    while k > 0 and (k - 1) * (k - 1) * x.denominator >= num:
        k -= 1
    return Fraction(k, denominator)


def sample_filling_pairs(tri: IdealTriangulation, count: int, seed: int, pool: Sequence[NormalCurve],
                         max_attempts: int | None = None) -> list[FillingPair]:
    rng = random.Random(seed)
    pool = list(pool)
    if len(pool) < 2:
        raise CurveError("need at least two curves to sample pairs")
    out: list[FillingPair] = []
    attempts = 0
    limit = max_attempts if max_attempts is not None else 200 * count + 1000
    while len(out) < count:
        attempts += 1
        if attempts > limit:
            raise CurveError(f"found only {len(out)} filling pairs in {limit} attempts")
        a, b = rng.sample(pool, 2)
        if intersection_number(a, b) and is_filling(a, b):
            out.append(FillingPair(MultiCurve.of(a), MultiCurve.of(b)))
    return out


def calibrate_R(tri: IdealTriangulation, samples: int, cap: int, seed: int,
                pair_cap: int | None = None) -> tuple[Fraction, dict]:
    """``R^ = max`` over sampled filling pairs of ``min_c l(c) / sqrt(I)``.

    Pairs are drawn from curves up to ``pair_cap`` (default ``cap``); the
    minimum runs over the cap-``cap`` universe plus the pair itself.
    """
    pool = enumerate_curves(tri, pair_cap or cap)
    pairs = sample_filling_pairs(tri, samples, seed, pool)
    base = enumerate_curves(tri, cap)
    worst = Fraction(0)
    ratios = []
    at_cap = 0
    for fp in pairs:
        uni = sorted(set(base) | set(fp.a.components) | set(fp.b.components))
        r, x = Lengths(fp.a, fp.b, uni).min_ratio_sq()
        ratios.append((fp.I, r))
        worst = max(worst, r)
        if max(x.weights) >= cap:
            at_cap += 1
    R = sqrt_ceil(worst)
    report = {
        "R": str(R),
        "R_squared_max": str(worst),
        "samples": samples,
        "seed": seed,
        "cap": cap,
        "pair_cap": pair_cap or cap,
        "distribution": _histogram(float(r) for _, r in ratios),
        "by_intersection": _band(ratios),
        # minimisers touching the cap suggest a larger cap could lower R
        "minimisers_at_cap": at_cap,
    }
    return R, report


def _histogram(values: Iterable[float], width: float = 0.25) -> dict[str, int]:
    hist: dict[str, int] = {}
    for v in values:
        k = f"{width * int(v // width):.2f}"
        hist[k] = hist.get(k, 0) + 1
    return dict(sorted(hist.items(), key=lambda kv: float(kv[0])))


def _band(ratios: Sequence[tuple[int, Fraction]]) -> dict[str, str]:
    """Max ``l^2/I`` per dyadic band of intersection numbers."""
    out: dict[int, Fraction] = {}
    for i, r in ratios:
        k = i.bit_length() - 1
        out[k] = max(out.get(k, Fraction(0)), r)
    return {f"I in [{1 << k},{(1 << (k + 1)) - 1}]": str(v) for k, v in sorted(out.items())}


# ---------------------------------------------------------------- distances between sets


def hausdorff(u: ComplexUniverse, xs: Iterable[NormalCurve], ys: Iterable[NormalCurve]) -> int:
    xs, ys = list(xs), list(ys)
    if not xs or not ys:
        raise ValueError("Hausdorff distance of an empty set")

    def one_way(src, dst):
        worst = 0
        idx = [u.index[d] for d in dst]
        for s in src:
            dist = u.distances_from(s)
            best = min(dist[i] if dist[i] >= 0 else 1 << 30 for i in idx)
            if best >= 1 << 30:
                raise Unreachable(f"{s} cannot reach the other set at cap {u.weight_cap}")
            worst = max(worst, best)
        return worst

    return max(one_way(xs, ys), one_way(ys, xs))


def diameter(u: ComplexUniverse, xs: Iterable[NormalCurve]) -> int:
    xs = list(xs)
    worst = 0
    for x in xs:
        dist = u.distances_from(x)
        for y in xs:
            d = dist[u.index[y]]
            if d < 0:
                raise Unreachable(f"{x} and {y} are disconnected at cap {u.weight_cap}")
            worst = max(worst, d)
    return worst


def set_distance(u: ComplexUniverse, x: NormalCurve, ys: Iterable[NormalCurve]) -> int:
    dist = u.distances_from(x)
    vals = [dist[u.index[y]] for y in ys if dist[u.index[y]] >= 0]
    if not vals:
        raise Unreachable(f"{x} cannot reach the set at cap {u.weight_cap}")
    return min(vals)


# ---------------------------------------------------------------- probes


@dataclass
class ProbeReport:
    name: str
    samples: int
    seed: int
    cap: int
    R: Fraction
    skipped: int = 0
    values: list[int] = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    @property
    def max_constant(self) -> int | None:
        return max(self.values) if self.values else None

    def to_json(self) -> dict:
        hist: dict[str, int] = {}
        for v in self.values:
            hist[str(v)] = hist.get(str(v), 0) + 1
        out = {
            "name": self.name,
            "axiom": int(self.name[5:]) if self.name.startswith("axiom") else None,
            "samples": self.samples,
            "evaluated": len(self.values),
            "skipped": self.skipped,
            "max_constant": self.max_constant,
            "histogram": dict(sorted(hist.items(), key=lambda kv: int(kv[0]))),
            "seed": self.seed,
            "cap": self.cap,
            "R": str(self.R),
        }
        out.update(self.notes)
        if out["axiom"] is None:
            del out["axiom"]
        return out


class CoarseLab:
    """Shared state for sampling campaigns on one surface at one cap."""

    def __init__(self, tri: IdealTriangulation, cap: int, R):
        self.tri = tri
        self.cap = cap
        self.R = as_fraction(R)
        self.curves = enumerate_curves(tri, cap)
        self.universe = ComplexUniverse(tri, cap)
        self._I: dict[tuple[int, int], int] = {}
        self._lengths: dict[tuple, Lengths] = {}

    def I(self, x: NormalCurve, y: NormalCurve) -> int:
        return intersection_number(x, y)

    def lengths(self, a: MultiCurve, b: MultiCurve) -> Lengths:
        key = (a, b)
        if key not in self._lengths:
            self._lengths[key] = Lengths(a, b, self.universe.vertices)
        return self._lengths[key]

    def mid(self, a: MultiCurve, b: MultiCurve, q: int = 1, p: int = 1) -> list[NormalCurve]:
        found = self.lengths(a, b).midpoint(q, p, self.R)
        if not found:
            raise EmptyAtThisR(f"empty weighted midpoint ({q},{p})", cap=self.cap)
        return found

    def filling(self, x: NormalCurve, y: NormalCurve) -> bool:
        return x != y and self.I(x, y) > 0 and is_filling(x, y)

    def segment(self, a: MultiCurve, b: MultiCurve, s: Fraction, t: Fraction, steps: int = 4) -> list[NormalCurve]:
        """Union of weighted midpoints for slopes between ``s`` and ``t``.

        The slope interval is sampled at ``steps + 1`` geometrically spaced
        rationals (endpoints included).
        """
        lo, hi = min(s, t), max(s, t)
        slopes = {lo, hi}
        for k in range(1, steps):
            # geometric interpolation, rounded to a nearby rational
            v = float(lo) * (float(hi) / float(lo)) ** (k / steps)
            slopes.add(Fraction(v).limit_denominator(64))
        found: set[NormalCurve] = set()
        for sl in sorted(slopes):
            found.update(self.mid(a, b, sl.denominator, sl.numerator))
        return sorted(found)


def _single(c: NormalCurve) -> MultiCurve:
    return MultiCurve.of(c)


def _filling_triples(lab: CoarseLab, rng: random.Random, count: int, attempts: int):
    out = []
    curves = lab.curves
    for _ in range(attempts):
        if len(out) >= count:
            break
        a, b, c = rng.sample(curves, 3)
        if lab.filling(a, b) and lab.filling(b, c) and lab.filling(a, c):
            out.append((a, b, c))
    return out


def probe_fellow_travel(lab: CoarseLab, samples: int, seed: int) -> ProbeReport:
    """Hausdorff distance of ``Mid'(a,b)`` and ``Mid'(a,c)`` when ``I(b,c)=0``, ``I(a,b)=I(a,c)``."""
    rng = random.Random(seed)
    rep = ProbeReport("fellow_travel", samples, seed, lab.cap, lab.R)
    curves = lab.curves
    triples = []
    for a in curves:
        for b in curves:
            if not lab.filling(a, b):
                continue
            for c in curves:
                if c != b and lab.I(b, c) == 0 and lab.I(a, c) == lab.I(a, b) and lab.filling(a, c):
                    triples.append((a, b, c))
    rep.notes["population"] = len(triples)
    if not triples:
        return rep
    for _ in range(samples):
        a, b, c = triples[rng.randrange(len(triples))]
        A, B, C = _single(a), _single(b), _single(c)
        try:
            rep.values.append(hausdorff(lab.universe, lab.mid(A, B), lab.mid(A, C)))
        except (EmptyAtThisR, Unreachable):
            rep.skipped += 1
    return rep


def probe_centers(lab: CoarseLab, samples: int, seed: int) -> ProbeReport:
    rng = random.Random(seed)
    rep = ProbeReport("centers", samples, seed, lab.cap, lab.R)
    for a, b, c in _filling_triples(lab, rng, samples, 200 * samples):
        ta, tb, tc, _ = tilde_systems(_single(a), _single(b), _single(c))
        try:
            m = [lab.mid(ta, tb), lab.mid(tb, tc), lab.mid(tc, ta)]
            rep.values.append(max(hausdorff(lab.universe, m[i], m[j]) for i, j in ((0, 1), (1, 2), (2, 0))))
        except (EmptyAtThisR, Unreachable):
            rep.skipped += 1
    rep.skipped += samples - len(rep.values) - rep.skipped
    return rep


def probe_thin_triangles(lab: CoarseLab, samples: int, seed: int, max_weight: int = 4) -> ProbeReport:
    """Hausdorff distance of ``Mid'(M a~, N b~)`` and ``Mid'(M a~, N c~)`` for ``M >= N``."""
    rng = random.Random(seed)
    rep = ProbeReport("thin_triangles", samples, seed, lab.cap, lab.R)
    for a, b, c in _filling_triples(lab, rng, samples, 200 * samples):
        ta, tb, tc, _ = tilde_systems(_single(a), _single(b), _single(c))
        N = rng.randint(1, max_weight)
        M = rng.randint(N, max_weight)
        try:
            x = lab.mid(ta, tb, M, N)
            y = lab.mid(ta, tc, M, N)
            rep.values.append(hausdorff(lab.universe, x, y))
        except (EmptyAtThisR, Unreachable):
            rep.skipped += 1
    rep.skipped += samples - len(rep.values) - rep.skipped
    return rep


def probe_ax3(lab: CoarseLab, samples: int, seed: int, slopes_per_point: int = 5) -> ProbeReport:
    """Distance from ``x`` in ``Mid'(a,b;1)`` to ``Mid'(a,b;t)`` for ``t`` between 1 and ``I(a,x)/I(b,x)``."""
    rng = random.Random(seed)
    rep = ProbeReport("ax3", samples, seed, lab.cap, lab.R)
    pool = [(a, b) for a in lab.curves for b in lab.curves if a < b and lab.filling(a, b)]
    tries = 0
    while len(rep.values) + rep.skipped < samples and tries < 50 * samples:
        tries += 1
        a, b = pool[rng.randrange(len(pool))]
        A, B = _single(a), _single(b)
        try:
            mid1 = lab.mid(A, B)
        except EmptyAtThisR:
            rep.skipped += 1
            continue
        x = mid1[rng.randrange(len(mid1))]
        ia, ib = lab.I(a, x), lab.I(b, x)
        if ia == 0 or ib == 0:
            continue
        end = Fraction(ia, ib)
        lo, hi = min(Fraction(1), end), max(Fraction(1), end)
        worst = 0
        try:
            for _ in range(slopes_per_point):
                t = lo + (hi - lo) * Fraction(rng.randint(0, 16), 16)
                worst = max(worst, set_distance(lab.universe, x, lab.mid(A, B, t.denominator, t.numerator)))
        except (EmptyAtThisR, Unreachable):
            rep.skipped += 1
            continue
        rep.values.append(worst)
    return rep


def _a_end(lab: CoarseLab, A: MultiCurve, B: MultiCurve, a: NormalCurve) -> Fraction:
    """First dyadic slope ``1/2^k`` whose weighted midpoint contains ``a``."""
    for k in range(16):
        t = Fraction(1, 1 << k)
        try:
            if a in lab.mid(A, B, t.denominator, t.numerator):
                return t
        except EmptyAtThisR:
            pass
    raise EmptyAtThisR("a never enters the weighted midpoints", cap=lab.cap)


def axiom1_instance(lab: CoarseLab, a: NormalCurve, b: NormalCurve, c: NormalCurve) -> int:
    """``HausDist(Lambda_ab[a, phi], Lambda_ac[a, phi])`` with ``phi = Center(a,b,c)``."""
    A, B, C = _single(a), _single(b), _single(c)
    phi_ab = Fraction(lab.I(a, c), lab.I(b, c))
    phi_ac = Fraction(lab.I(a, b), lab.I(b, c))
    x = lab.segment(A, B, _a_end(lab, A, B, a), phi_ab)
    y = lab.segment(A, C, _a_end(lab, A, C, a), phi_ac)
    return hausdorff(lab.universe, x, y)


def axiom2_instance(lab: CoarseLab, a: NormalCurve, b: NormalCurve, c: NormalCurve, d: NormalCurve) -> int:
    """Diameter of ``Lambda_ab[phi(a,b,c), phi(a,b,d)]`` for adjacent ``c, d``."""
    if c == d:
        return 0
    A, B = _single(a), _single(b)
    s = Fraction(lab.I(a, c), lab.I(b, c))
    t = Fraction(lab.I(a, d), lab.I(b, d))
    return diameter(lab.universe, lab.segment(A, B, s, t))


def axiom3_instance(lab: CoarseLab, a: NormalCurve, b: NormalCurve, c: NormalCurve) -> int:
    """Diameter of ``Lambda_ab[c, phi(a,b,c)]`` for ``c`` on the slope-one midpoint."""
    A, B = _single(a), _single(b)
    t = Fraction(lab.I(a, c), lab.I(b, c))
    return diameter(lab.universe, lab.segment(A, B, Fraction(1), t) + [c])


def check_bowditch_axioms(lab: CoarseLab, samples: int, seed: int) -> list[ProbeReport]:
    """Empirical constants for the three axioms with ``phi = Center``.

    A point of the coarse geodesic is located by its slope: ``Center(a,b,c)``
    meets ``Lambda_ab`` at slope ``I(a,c)/I(b,c)``, and ``a`` sits at the
    smallest dyadic slope whose midpoint contains it.
    """
    rng = random.Random(seed)
    reps = [ProbeReport(f"axiom{k}", samples, seed, lab.cap, lab.R) for k in (1, 2, 3)]
    checked, ok = 0, True

    def record(rep, fn, *args):
        if len(rep.values) >= samples:
            return
        try:
            rep.values.append(fn(lab, *args))
        except (EmptyAtThisR, Unreachable):
            rep.skipped += 1

    # draw triples until every axiom has its quota (instances without a
    # usable neighbour or midpoint member are redrawn, not counted)
    for _ in range(400 * samples):
        if all(len(r.values) >= samples for r in reps):
            break
        a, b, c = rng.sample(lab.curves, 3)
        if not (lab.filling(a, b) and lab.filling(b, c) and lab.filling(a, c)):
            continue
        record(reps[0], axiom1_instance, a, b, c)

        nbrs = [lab.universe.vertices[j] for j in lab.universe.adjacency[lab.universe.index[c]]]
        nbrs = [d for d in nbrs if lab.filling(a, d) and lab.filling(b, d)]
        if nbrs:
            record(reps[1], axiom2_instance, a, b, c, nbrs[rng.randrange(len(nbrs))])

        try:
            mid1 = [x for x in lab.mid(_single(a), _single(b)) if lab.I(a, x) and lab.I(b, x)]
        except EmptyAtThisR:
            reps[2].skipped += 1
            continue
        if not mid1:
            continue
        x = mid1[rng.randrange(len(mid1))]
        record(reps[2], axiom3_instance, a, b, x)
        r = transfer_condition(lab.I(a, b), lab.I(a, x), lab.I(b, x))
        checked += 1
        ok = ok and r["simplifies"] and r["agrees"]

    reps[2].notes["transfer_condition_checked"] = checked
    reps[2].notes["transfer_condition_ok"] = ok
    return reps

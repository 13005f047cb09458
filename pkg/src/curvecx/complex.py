"""The curve complex explored inside finite, explicitly capped universes.

Besides breadth-first distances this module builds edge paths by the
surgery induction: repeatedly replace the far endpoint ``b`` by a curve
``c`` assembled from an arc of ``a`` and an arc of ``b``, with
``I(a, c) < I(a, b)`` and ``c`` within distance two of ``b``.
"""

from __future__ import annotations

import math
import random
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import _ribbon as rb
from . import farey
from .curves import (
    CurveError,
    NormalCurve,
    arrangement,
    disjoint_witnesses,
    enumerate_curves,
    intersection_number,
    is_filling,
)
from .surface import ComplexClass, IdealTriangulation, classify


class Unreachable(Exception):
    """The capped universe does not connect the two curves."""


class SurgeryError(CurveError):
    pass


GE3 = ">=3"


def _farey_model(tri: IdealTriangulation) -> bool:
    return classify(tri.signature) is ComplexClass.FAREY


def torus_slope(c: NormalCurve) -> farey.FareySlope:
    """Slope of a curve on the standard once-punctured torus triangulation."""
    tri = c.tri
    q, p, diag = (c.weights[tri.edge_of[s]] for s in (0, 1, 2))
    if diag != abs(p - q):
        p = -p
    return farey.FareySlope(p, q)


def adjacent(a: NormalCurve, b: NormalCurve) -> bool:
    """Edge relation; on the once-punctured torus it is the Farey one."""
    if a == b:
        return False
    i = intersection_number(a, b)
    return i == 1 if _farey_model(a.tri) else i == 0


def small_distance(a: NormalCurve, b: NormalCurve):
    """Exact distance when it is 0, 1 or 2; otherwise ``">=3"``."""
    if a == b:
        return 0
    if _farey_model(a.tri):
        d = farey.farey_distance(torus_slope(a), torus_slope(b))
        return d if d <= 2 else GE3
    if intersection_number(a, b) == 0:
        return 1
    return GE3 if is_filling(a, b) else 2


@dataclass(frozen=True)
class EdgePath:
    vertices: tuple[NormalCurve, ...]

    def __post_init__(self):
        vs = tuple(self.vertices)
        object.__setattr__(self, "vertices", vs)
        if not vs:
            raise CurveError("empty path")
        for x, y in zip(vs, vs[1:]):
            if not adjacent(x, y):
                raise CurveError(f"{x} and {y} are not adjacent")

    def __len__(self) -> int:
        return len(self.vertices) - 1

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    def to_json(self) -> dict:
        return {"length": self.length, "vertices": [c.to_json() for c in self.vertices]}

    def to_dot(self, name: str = "path") -> str:
        lines = [f"graph {name} {{"]
        for i, c in enumerate(self.vertices):
            lines.append(f'  v{i} [label="{",".join(map(str, c.weights))}"];')
        for i in range(len(self.vertices) - 1):
            lines.append(f"  v{i} -- v{i + 1};")
        lines.append("}")
        return "\n".join(lines) + "\n"


class ComplexUniverse:
    """All curves up to a weight cap (plus optional extras) with their edges."""

    def __init__(self, tri: IdealTriangulation, weight_cap: int, extra: Iterable[NormalCurve] = ()):
        self.tri = tri
        self.weight_cap = weight_cap
        verts = set(enumerate_curves(tri, weight_cap))
        for c in extra:
            if c.tri != tri:
                raise CurveError("extra vertex on a different triangulation")
            verts.add(c)
        self.vertices: list[NormalCurve] = sorted(verts)
        self.index = {c: i for i, c in enumerate(self.vertices)}
        self._adj: list[list[int]] | None = None
        self._dist_cache: dict[int, list[int]] = {}

    def __len__(self):
        return len(self.vertices)

    def __contains__(self, c):
        return c in self.index

    @property
    def adjacency(self) -> list[list[int]]:
        if self._adj is None:
            n = len(self.vertices)
            adj = [[] for _ in range(n)]
            for i in range(n):
                for j in range(i + 1, n):
                    if adjacent(self.vertices[i], self.vertices[j]):
                        adj[i].append(j)
                        adj[j].append(i)
            self._adj = adj
        return self._adj

    def distances_from(self, c: NormalCurve) -> list[int]:
        """BFS distances (``-1`` when unreachable) from ``c`` to every vertex."""
        s = self._idx(c)
        if s not in self._dist_cache:
            adj = self.adjacency
            dist = [-1] * len(self.vertices)
            dist[s] = 0
            queue = deque([s])
            while queue:
                x = queue.popleft()
                for y in adj[x]:
                    if dist[y] < 0:
                        dist[y] = dist[x] + 1
                        queue.append(y)
            self._dist_cache[s] = dist
        return self._dist_cache[s]

    def _idx(self, c: NormalCurve) -> int:
        try:
            return self.index[c]
        except KeyError:
            raise CurveError(f"{c} is not in the universe (cap {self.weight_cap})") from None

    def distance(self, a: NormalCurve, b: NormalCurve) -> int:
        d = self.distances_from(b)[self._idx(a)]
        if d < 0:
            raise Unreachable(f"{a} and {b} are disconnected at weight cap {self.weight_cap}")
        return d

    def geodesic(self, a: NormalCurve, b: NormalCurve) -> list[NormalCurve]:
        """The lexicographically least shortest path (by universe order)."""
        back = self.distances_from(b)
        i = self._idx(a)
        if back[i] < 0:
            raise Unreachable(f"{a} and {b} are disconnected at weight cap {self.weight_cap}")
        path = [i]
        adj = self.adjacency
        while back[path[-1]] > 0:
            x = path[-1]
            path.append(min(y for y in adj[x] if back[y] == back[x] - 1))
        return [self.vertices[k] for k in path]


def bfs_distance(a: NormalCurve, b: NormalCurve, u: ComplexUniverse) -> int:
    return u.distance(a, b)


# ---------------------------------------------------------------- surgery


@dataclass
class _Crossings:
    """Crossings of ``b`` along ``a`` in minimal position, with signs."""

    arr: rb.Arrangement
    order: list[int]  # crossing ids in order along a
    sign: dict[int, int]
    b_pos: dict[int, int]  # index along b

    @classmethod
    def of(cls, a: NormalCurve, b: NormalCurve) -> "_Crossings":
        arr = arrangement(a, b)
        order = [cid for cid, _, _ in arr.along[0]]
        sign = {}
        for cid, x in enumerate(arr.crossings):
            # sign of b crossing a; swap when the crossing was recorded the other way
            sign[cid] = x["sign"] if x["a"] == 0 else -x["sign"]
        b_pos = {cid: idx for idx, (cid, _, _) in enumerate(arr.along[1])}
        return cls(arr, order, sign, b_pos)

    def a_arc(self, c1: int, c2: int) -> list[int]:
        w = self.arr.where
        return self.arr.segment(0, w[(c1, 0)], w[(c2, 0)], True)

    def b_arc(self, c1: int, c2: int, forward: bool) -> list[int]:
        w = self.arr.where
        return self.arr.segment(1, w[(c1, 1)], w[(c2, 1)], forward)

    def b_interior(self, c1: int, c2: int, forward: bool) -> list[int]:
        """Crossing ids strictly inside the arc of b from ``c1`` to ``c2``."""
        n = len(self.b_pos)
        i, j = self.b_pos[c1], self.b_pos[c2]
        along = self.arr.along[1]
        if forward:
            steps = (j - i) % n
            return [along[(i + s) % n][0] for s in range(1, steps)]
        steps = (i - j) % n
        return [along[(i - s) % n][0] for s in range(1, steps)]


def _linked_crossings(x: NormalCurve, y: NormalCurve):
    """``(i, j, word, sign)`` per crossing, read off the linked common segments.

    ``word`` is ``y`` or its reverse (whichever runs along ``x``) and the
    sign is relative to the orientation of ``y``.
    """
    glue = x.tri.gluing
    out = []
    for vv, flip in ((y.word, 1), (rb.reverse_word(y.word, glue), -1)):
        for i, j, _, linked, enters_left in rb.common_segments(x.word, vv, glue):
            if linked:
                out.append((i, j, vv, flip * (1 if enters_left else -1)))
    return out


def _lap(word, i: int, glue, forward: bool = True) -> list[int]:
    n = len(word)
    if forward:
        return [word[(i + k) % n] for k in range(n)]
    return [glue[word[(i - 1 - k) % n]] for k in range(n)]


def _neighbourhood_curve(x: NormalCurve, y: NormalCurve) -> NormalCurve:
    """An essential boundary curve of a regular neighbourhood of ``x`` union ``y``."""
    glue = x.tri.gluing
    cross = _linked_crossings(x, y)
    if len(cross) == 1:
        # one crossing: the boundary of the one-holed torus is the commutator
        i, j, vv, _ = cross[0]
        path = _lap(x.word, i, glue) + _lap(vv, j, glue) + _lap(x.word, i, glue, False) + _lap(vv, j, glue, False)
        try:
            return NormalCurve.from_word(x.tri, path)
        except CurveError:
            raise SurgeryError(
                f"the neighbourhood of {x} and {y} has inessential boundary; "
                "the case analysis needs curves that do not exist on this surface"
            ) from None
    wit = disjoint_witnesses(x, y)
    if not wit:
        raise SurgeryError(
            f"no essential boundary curve of a neighbourhood of {x} and {y}; "
            "the case analysis needs curves that do not exist on this surface"
        )
    return wit[0]


def _short_link(c: NormalCurve, b: NormalCurve) -> list[NormalCurve] | None:
    """A path of length <= 2 from ``c`` to ``b`` when one is certified."""
    if c == b:
        return [b]
    i = intersection_number(c, b)
    if i == 0:
        return [c, b]
    if i == 1:
        return [c, _neighbourhood_curve(c, b), b]
    if i == 2:
        signs = [s for *_, s in _linked_crossings(c, b)]
        if signs[0] != signs[1]:
            return [c, _neighbourhood_curve(c, b), b]
    return None


def _candidates(a: NormalCurve, b: NormalCurve, cr: _Crossings):
    """Surgery paths ``(path, crossings on the b-arc)`` in order along ``a``."""
    order, sign = cr.order, cr.sign
    n = len(order)
    for k in range(n):
        p1, p2 = order[k], order[(k + 1) % n]
        if p1 != p2 and sign[p1] == sign[p2]:
            arc_a = cr.a_arc(p1, p2)
            for forward in (True, False):
                path = arc_a + cr.b_arc(p2, p1, forward)
                yield path, len(cr.b_interior(p2, p1, forward))
        if n >= 3:
            p3 = order[(k + 2) % n]
            if sign[p1] == sign[p3] and sign[p2] != sign[p1]:
                arc_a = cr.a_arc(p1, p2) + cr.a_arc(p2, p3)
                for forward in (True, False):
                    if p2 in cr.b_interior(p3, p1, forward):
                        continue
                    path = arc_a + cr.b_arc(p3, p1, forward)
                    yield path, len(cr.b_interior(p3, p1, forward))


def _surgery_step(a: NormalCurve, b: NormalCurve, strategy: str):
    """One induction step: ``c`` with ``I(a,c) < I(a,b)`` and a short link to ``b``."""
    iab = intersection_number(a, b)
    cr = _Crossings.of(a, b)
    ranked = []
    seen = set()
    for path, inner in _candidates(a, b, cr):
        try:
            c = NormalCurve.from_word(a.tri, path)
        except CurveError:
            continue
        if c in seen:
            continue
        seen.add(c)
        iac = intersection_number(a, c)
        if iac >= iab:
            continue
        if strategy == "basic":
            link = _short_link(c, b)
            if link is not None:
                return c, link
            continue
        ranked.append(((inner, iac, c.size, c.weights), c))
    ranked.sort(key=lambda kc: kc[0])
    for _, c in ranked:
        link = _short_link(c, b)
        if link is not None:
            return c, link
    raise SurgeryError(f"no surgery candidate found for I={iab}")


def surgery_path(a: NormalCurve, b: NormalCurve, strategy: str = "basic") -> EdgePath:
    """Edge path from ``a`` to ``b`` built by the surgery induction.

    ``basic`` takes the first usable pair of crossings along ``a``; ``log``
    takes, among all usable pairs and both arcs of ``b``, the arc of ``b``
    with the fewest crossings (ties broken by smaller ``I(a, c)``).
    """
    if strategy not in ("basic", "log"):
        raise ValueError(f"unknown strategy {strategy!r}")
    if a.tri != b.tri:
        raise CurveError("curves live on different triangulations")
    if _farey_model(a.tri):
        raise SurgeryError("the once-punctured torus has no disjoint curves; use the Farey engine")
    tail: list[NormalCurve] = []
    target = b
    while True:
        link = _short_link(a, target)
        if link is not None:
            return EdgePath(tuple(link + tail[1:]))
        before = intersection_number(a, target)
        c, link = _surgery_step(a, target, strategy)
        assert intersection_number(a, c) < before
        tail = link + tail[1:]
        target = c


def log_bound_constants(samples: Sequence[tuple[int, int]], c1: int = 2) -> tuple[int, int]:
    """Constants with ``length <= C1 log2 I + C2`` over ``(I, length)`` samples.

    ``C1`` is the halving rate of the improved induction (each step at
    least halves ``I`` at a cost of two edges); ``C2`` is the smallest
    integer making every sample satisfy the bound.
    """
    c2 = -math.inf
    for i, length in samples:
        if i <= 0:
            continue
        c2 = max(c2, length - c1 * math.log2(i))
    return c1, (math.ceil(c2 - 1e-12) if c2 > -math.inf else 0)


# ---------------------------------------------------------------- hyperbolicity probe


@dataclass
class DeltaReport:
    samples: int
    seed: int
    weight_cap: int
    skipped: int
    max_slimness: int
    histogram: dict[int, int] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "samples": self.samples,
            "seed": self.seed,
            "weight_cap": self.weight_cap,
            "skipped": self.skipped,
            "max_slimness": self.max_slimness,
            "histogram": {str(k): v for k, v in sorted(self.histogram.items())},
        }


def triangle_slimness(u: ComplexUniverse, x: NormalCurve, y: NormalCurve, z: NormalCurve) -> int:
    """Max distance from a point of one geodesic side to the other two sides."""
    sides = [u.geodesic(x, y), u.geodesic(y, z), u.geodesic(z, x)]
    worst = 0
    for k in range(3):
        others = {c for j in range(3) if j != k for c in sides[j]}
        for p in sides[k]:
            dist = u.distances_from(p)
            worst = max(worst, min(dist[u.index[o]] for o in others))
    return worst


def probe_delta(u: ComplexUniverse, samples: int, seed: int) -> DeltaReport:
    rng = random.Random(seed)
    hist: dict[int, int] = {}
    skipped = 0
    best = 0
    n = len(u.vertices)
    for _ in range(samples):
        x, y, z = (u.vertices[rng.randrange(n)] for _ in range(3))
        try:
            s = triangle_slimness(u, x, y, z)
        except Unreachable:
            skipped += 1
            continue
        hist[s] = hist.get(s, 0) + 1
        best = max(best, s)
    return DeltaReport(samples, seed, u.weight_cap, skipped, best, hist)


def sample_pairs(tri: IdealTriangulation, count: int, seed: int, weight_cap: int = 2,
                 twist_depth: int = 2) -> list[tuple[NormalCurve, NormalCurve]]:
    """Random pairs of distinct curves: small curves and their twisted images.

    Twisting spreads the intersection numbers over a wider range than the
    small-weight universe alone.
    """
    from .curves import twist_curve

    rng = random.Random(seed)
    pool = enumerate_curves(tri, weight_cap)
    out = []
    while len(out) < count:
        a, b = rng.sample(pool, 2)
        for _ in range(rng.randrange(twist_depth + 1)):
            c = rng.choice(pool)
            b = twist_curve(c, b, rng.choice((-1, 1)))
        if a != b:
            out.append((a, b))
    return out


def ratio(i: int, length: int) -> Fraction:
    return Fraction(length, max(i, 1))

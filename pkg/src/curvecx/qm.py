"""Counting quasi-homomorphisms: copy counts, discounted distances and ``h_w``.

For a path ``w`` and an integer ``0 < W < |w|``,

    c(x, y) = d(x, y) - min over paths a from x to y of (|a| - W |a|_w)

where ``|a|_w`` is the largest number of edge-disjoint translates of ``w``
inside ``a``.  The minimum is a shortest-path problem: walk ordinary edges
at cost 1, or jump across a whole translate ``g.w`` at cost ``|w| - W``.
Since every step costs at least ``1 - W/|w|`` per edge, no minimiser is
longer than ``d |w| / (|w| - W)``; the search is a dynamic program over
(vertex, length used) up to that bound.
"""

from __future__ import annotations

import itertools
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Sequence

from . import farey as fy
from .complex import ComplexUniverse, Unreachable
from .curves import MappingClassWord, NormalCurve, apply_twist


class QmError(ValueError):
    pass


class SearchCapExceeded(Exception):
    """The pruning bound is above the cap; ``lower_bound`` is still a valid lower bound for c."""

    def __init__(self, bound: int, cap: int, lower_bound: int, direction: str = "w"):
        super().__init__(f"pruning bound {bound} exceeds search cap {cap} ({direction})")
        self.bound = bound
        self.cap = cap
        self.lower_bound = lower_bound
        self.direction = direction


class BoundViolation(AssertionError):
    def __init__(self, msg: str, report: dict):
        super().__init__(msg)
        self.report = report


# ---------------------------------------------------------------- engines


class FareyEngine:
    """PSL(2,Z) acting on the Farey graph; translates are decided exactly.

    The search universe for a pair ``x, y`` is the ladder between them (all
    geodesics live there) thickened by ``fringe`` layers of adjacent Farey
    triangles, so that translates of ``w`` starting just off the ladder are
    seen.  The thickening is intrinsic, hence equivariant.
    """

    exact = True
    name = "farey"

    def __init__(self, fringe: int = 3):
        self.fringe = fringe

    @staticmethod
    def act(g: fy.IntMatrix, v: fy.FareySlope) -> fy.FareySlope:
        return fy.act(g, v)

    @staticmethod
    def compose(g: fy.IntMatrix, h: fy.IntMatrix) -> fy.IntMatrix:
        return g @ h

    @staticmethod
    def inverse(g: fy.IntMatrix) -> fy.IntMatrix:
        return g.inverse()

    identity = fy.IDENTITY

    @staticmethod
    def is_path(w: Sequence) -> bool:
        return fy.is_path(w)

    @staticmethod
    def distance(x, y) -> int:
        return fy.farey_distance(x, y)

    def universe(self, x: fy.FareySlope, y: fy.FareySlope) -> list[fy.FareySlope]:
        m = fy._to_infinity(x)
        minv = m.inverse()
        verts = {fy.act(minv, v) for v in fy.ladder(fy.act(m, y))}
        frontier = _edges(verts)
        for _ in range(self.fringe):
            new = set()
            for u, v in frontier:
                for t in ((u.p + v.p, u.q + v.q), (u.p - v.p, u.q - v.q)):
                    z = fy.FareySlope(*t)
                    if z not in verts:
                        new.add(z)
            if not new:
                break
            old = verts
            verts = verts | new
            frontier = [(u, v) for u, v in _edges(verts) if u in new or v in new]
            del old
        return sorted(verts, key=fy.FareySlope.key)

    def search_graph(self, x, y, w):
        verts = self.universe(x, y)
        return (verts, *self.graph(verts, w))

    def graph(self, verts: Sequence[fy.FareySlope], w: Sequence[fy.FareySlope]):
        """Adjacency lists and the translate jumps ``(i, j)`` among ``verts``."""
        n = len(verts)
        adj: list[list[int]] = [[] for _ in range(n)]
        w0, wl = w[0], w[-1]
        delta = abs(w0.p * wl.q - w0.q * wl.p)
        # g w0 = u, g wl = v for some g exactly when, after moving u and w0
        # to 1/0, the images of v and wl differ by an integer translation
        mw = fy._to_infinity(w0)
        z = fy.act(mw, wl)
        jumps = []
        for i, u in enumerate(verts):
            mu = None
            for j, v in enumerate(verts):
                det = abs(u.p * v.q - u.q * v.p)
                if det == 1 and j > i:
                    adj[i].append(j)
                    adj[j].append(i)
                if det == delta and delta > 1 and i != j:
                    if mu is None:
                        mu = fy._to_infinity(u)
                    zz = fy.act(mu, v)
                    if zz.q == z.q and (zz.p - z.p) % z.q == 0:
                        jumps.append((i, j))
                elif delta == 1 and det == 1 and i != j:
                    # an ordered edge is always a translate of another ordered edge
                    jumps.append((i, j))
        return adj, jumps


def _edges(verts: Iterable[fy.FareySlope]) -> list[tuple[fy.FareySlope, fy.FareySlope]]:
    vs = list(verts)
    return [(u, v) for u, v in itertools.combinations(vs, 2) if fy.adjacent(u, v)]


class CurveEngine:
    """Mapping-class words acting on a capped curve-complex universe.

    Translates of ``w`` are only those by words of length at most
    ``word_length`` in the declared generators, so every number produced
    here is approximate.
    """

    exact = False
    name = "normal"

    def __init__(self, universe: ComplexUniverse, generators: Sequence[MappingClassWord], word_length: int = 2):
        self.base = universe
        self.generators = list(generators)
        self.word_length = word_length
        self._universes: dict[frozenset, ComplexUniverse] = {}
        self._translates: dict[tuple, list[tuple[NormalCurve, NormalCurve]]] = {}

    @staticmethod
    def act(g: MappingClassWord, v: NormalCurve) -> NormalCurve:
        return apply_twist(g, v)

    @staticmethod
    def compose(g: MappingClassWord, h: MappingClassWord) -> MappingClassWord:
        return g * h

    @staticmethod
    def inverse(g: MappingClassWord) -> MappingClassWord:
        return g.inverse()

    identity = MappingClassWord()

    def is_path(self, w: Sequence[NormalCurve]) -> bool:
        from .complex import adjacent

        return all(adjacent(x, y) for x, y in zip(w, w[1:]))

    def words(self) -> list[MappingClassWord]:
        letters = self.generators + [g.inverse() for g in self.generators]
        out = [MappingClassWord()]
        layer = [MappingClassWord()]
        for _ in range(self.word_length):
            layer = [x * l for x in layer for l in letters]
            out.extend(layer)
        return out

    def endpoints(self, w: Sequence[NormalCurve]) -> list[tuple[NormalCurve, NormalCurve]]:
        key = (w[0], w[-1])
        if key not in self._translates:
            self._translates[key] = sorted({(apply_twist(g, w[0]), apply_twist(g, w[-1])) for g in self.words()})
        return self._translates[key]

    def _universe_for(self, *extra: NormalCurve) -> ComplexUniverse:
        missing = frozenset(c for c in extra if c not in self.base)
        if not missing:
            return self.base
        if missing not in self._universes:
            self._universes[missing] = ComplexUniverse(self.base.tri, self.base.weight_cap, missing)
        return self._universes[missing]

    def distance(self, x, y) -> int:
        return self._universe_for(x, y).distance(x, y)

    def search_graph(self, x, y, w):
        uni = self._universe_for(x, y)
        index = uni.index
        jumps = [(index[s], index[t]) for s, t in self.endpoints(w) if s in index and t in index and s != t]
        return uni.vertices, uni.adjacency, jumps


# ---------------------------------------------------------------- spec and counting


@dataclass
class QmSpec:
    w: tuple
    W: int
    x0: Hashable
    engine: object = field(default_factory=FareyEngine)

    def __post_init__(self):
        self.w = tuple(self.w)
        if len(self.w) < 3:
            raise QmError("w needs at least two edges")
        if not 0 < self.W < len(self.w) - 1:
            raise QmError(f"W must satisfy 0 < W < |w| = {len(self.w) - 1}")
        if not self.engine.is_path(self.w):
            raise QmError("w is not a path")

    @property
    def length(self) -> int:
        return len(self.w) - 1

    @property
    def oracle(self) -> str:
        return "exact" if self.engine.exact else "bounded"

    def reversed(self) -> "QmSpec":
        return QmSpec(tuple(reversed(self.w)), self.W, self.x0, self.engine)

    def to_json(self) -> dict:
        return {"w": [_vjson(v) for v in self.w], "W": self.W, "x0": _vjson(self.x0), "oracle": self.oracle}


def _vjson(v):
    if isinstance(v, fy.FareySlope):
        return str(v)
    return v.to_json()


def default_W(length: int) -> int:
    return -(-length // 2)


@dataclass
class CopyCount:
    path: tuple
    count: int
    witnesses: list[tuple[int, int, object]]  # (start, end, translating element)

    def to_json(self) -> dict:
        return {"count": self.count, "intervals": [[s, e] for s, e, _ in self.witnesses]}


def _matches(spec: QmSpec, alpha: Sequence) -> list[tuple[int, int, object]]:
    L = spec.length
    out = []
    for i in range(len(alpha) - L):
        seg = alpha[i:i + L + 1]
        if isinstance(spec.engine, FareyEngine):
            g = fy.translate_match(spec.w, seg)
            if g is not None:
                out.append((i, i + L, g))
        else:
            for g in spec.engine.words():
                if all(apply_twist(g, x) == y for x, y in zip(spec.w, seg)):
                    out.append((i, i + L, g))
                    break
    return out


def count_copies(alpha: Sequence, spec: QmSpec) -> CopyCount:
    """Maximal number of edge-disjoint translates of ``w`` along ``alpha``."""
    chosen = []
    last = -1
    for s, e, g in sorted(_matches(spec, alpha), key=lambda t: t[1]):
        if s >= last:
            chosen.append((s, e, g))
            last = e
    return CopyCount(tuple(alpha), len(chosen), chosen)


# ---------------------------------------------------------------- discounted distance


@dataclass
class Discounted:
    c: int
    d: int
    best: int
    bound: int
    universe: int
    exact: bool

    def to_json(self) -> dict:
        return {
            "c": self.c,
            "d": self.d,
            "min_cost": self.best,
            "pruning_bound": self.bound,
            "universe": self.universe,
            "oracle": "exact" if self.exact else "bounded",
        }


def min_discounted_cost(n: int, adj: Sequence[Sequence[int]], jumps: Iterable[tuple[int, int]],
                        L: int, W: int, src: int, dst: int, max_len: int) -> int | None:
    """``min |a| - W k`` over paths of length at most ``max_len`` with ``k`` marked copies.

    ``best[l][v]`` is the cheapest way to reach ``v`` using real length
    exactly ``l``; an ordinary edge adds length 1 and cost 1, a jump adds
    length ``L`` and cost ``L - W``.
    """
    INF = None
    by_target: list[list[int]] = [[] for _ in range(n)]
    for i, j in jumps:
        by_target[j].append(i)
    best: list[list] = [[INF] * n for _ in range(max_len + 1)]
    best[0][src] = 0
    answer = 0 if src == dst else None
    for l in range(1, max_len + 1):
        row = best[l]
        prev = best[l - 1]
        for v in range(n):
            cands = [prev[u] + 1 for u in adj[v] if prev[u] is not None]
            if l >= L:
                back = best[l - L]
                cands.extend(back[u] + L - W for u in by_target[v] if back[u] is not None)
            if cands:
                row[v] = min(cands)
        if row[dst] is not None and (answer is None or row[dst] < answer):
            answer = row[dst]
    return answer


def discounted_distance(x, y, spec: QmSpec, search_cap: int = 10_000, detail: bool = False):
    """``c_{w,W}(x, y)``; raises ``SearchCapExceeded`` when the bound is above the cap."""
    eng = spec.engine
    if x == y:
        res = Discounted(0, 0, 0, 0, 1, eng.exact)
        return res if detail else 0
    verts, adj, jumps = eng.search_graph(x, y, spec.w)
    index = {v: i for i, v in enumerate(verts)}
    src, dst = index[x], index[y]
    d = _bfs(adj, src, dst)
    if d is None:
        raise Unreachable(f"{x} and {y} are disconnected in the search universe")
    L, W = spec.length, spec.W
    bound = (d * L) // (L - W)
    # a geodesic always fits, so the capped search still yields a lower bound
    limit = max(min(bound, search_cap), d)
    best = min_discounted_cost(len(verts), adj, jumps, L, W, src, dst, limit)
    c = d - best
    assert 0 <= c <= d, (c, d)
    if bound > search_cap:
        raise SearchCapExceeded(bound, search_cap, c)
    res = Discounted(c, d, best, bound, len(verts), eng.exact)
    return res if detail else c


def _bfs(adj, src: int, dst: int) -> int | None:
    dist = {src: 0}
    queue = deque([src])
    while queue:
        x = queue.popleft()
        if x == dst:
            return dist[x]
        for y in adj[x]:
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    return None


def h_w(g, spec: QmSpec, search_cap: int = 10_000) -> int:
    """``c_w(x0, g x0) - c_{w^-1}(x0, g x0)``."""
    y = spec.engine.act(g, spec.x0)
    try:
        plus = discounted_distance(spec.x0, y, spec, search_cap)
    except SearchCapExceeded as e:
        e.direction = "w"
        raise
    try:
        minus = discounted_distance(spec.x0, y, spec.reversed(), search_cap)
    except SearchCapExceeded as e:
        e.direction = "w^-1"
        raise
    return plus - minus


class HCache:
    """Memoised ``h_w`` keyed by the group element."""

    def __init__(self, spec: QmSpec, search_cap: int = 10_000):
        self.spec = spec
        self.search_cap = search_cap
        self._memo: dict = {}

    def __call__(self, g) -> int:
        key = spec_key(g)
        if key not in self._memo:
            self._memo[key] = h_w(g, self.spec, self.search_cap)
        return self._memo[key]


def spec_key(g):
    if isinstance(g, MappingClassWord):
        return g.letters
    return g


# ---------------------------------------------------------------- campaigns


FAREY_LETTERS = {
    "T": fy.IntMatrix(1, 1, 0, 1),
    "L": fy.IntMatrix(1, 0, 1, 1),
    "t": fy.IntMatrix(1, -1, 0, 1),
    "l": fy.IntMatrix(1, 0, -1, 1),
}


def evaluate_word(word: str, letters: dict = FAREY_LETTERS) -> fy.IntMatrix:
    out = fy.IDENTITY
    for ch in word:
        out = out @ letters[ch]
    return out


def sample_word_pairs(count: int, max_len: int, seed: int, alphabet: str = "TLtl") -> list[tuple[str, str]]:
    """Random pairs of freely reduced words of length at most ``max_len``."""
    rng = random.Random(seed)
    inverse = {"T": "t", "t": "T", "L": "l", "l": "L"}

    def word():
        n = rng.randint(0, max_len)
        out = ""
        while len(out) < n:
            ch = rng.choice(alphabet)
            if out and inverse.get(out[-1]) == ch:
                continue
            out += ch
        return out

    return [(word(), word()) for _ in range(count)]


@dataclass
class DefectReport:
    samples: int
    seed: int
    search_cap: int
    defects: list[int]
    antisymmetry: list[int]
    cap_exceeded: int
    oracle: str

    @property
    def max_defect(self) -> int:
        return max(self.defects, default=0)

    def to_json(self) -> dict:
        hist: dict[str, int] = {}
        for v in self.defects:
            hist[str(v)] = hist.get(str(v), 0) + 1
        return {
            "samples": self.samples,
            "evaluated": len(self.defects),
            "seed": self.seed,
            "search_cap": self.search_cap,
            "max_defect": self.max_defect,
            "max_antisymmetry": max(self.antisymmetry, default=0),
            "distribution": dict(sorted(hist.items(), key=lambda kv: int(kv[0]))),
            "cap_exceeded": self.cap_exceeded,
            "oracle": self.oracle,
        }


def defect_scan(spec: QmSpec, pairs: Sequence[tuple], search_cap: int = 10_000, seed: int = 0,
                h: HCache | None = None) -> DefectReport:
    """``max |h(g1 g2) - h(g1) - h(g2)|`` over the given pairs of group elements."""
    h = h or HCache(spec, search_cap)
    eng = spec.engine
    defects, anti = [], []
    exceeded = 0
    for g1, g2 in pairs:
        try:
            defects.append(abs(h(eng.compose(g1, g2)) - h(g1) - h(g2)))
            anti.append(abs(h(g1) + h(eng.inverse(g1))))
        except SearchCapExceeded:
            exceeded += 1
    return DefectReport(len(pairs), seed, search_cap, defects, anti, exceeded, spec.oracle)


def farey_stabilizer(x: fy.FareySlope, powers: Iterable[int]) -> list[fy.IntMatrix]:
    """Parabolic elements fixing ``x``: conjugates of ``[[1,k],[0,1]]``."""
    m = fy._to_infinity(x)
    minv = m.inverse()
    return [minv @ fy.IntMatrix(1, k, 0, 1) @ m for k in powers]


def stabilizer_probe(spec: QmSpec, x, elements: Sequence, search_cap: int = 10_000,
                     h: HCache | None = None) -> dict:
    """Checks ``|h_w(g)| <= 2 d(x0, x)`` for elements fixing ``x``."""
    eng = spec.engine
    h = h or HCache(spec, search_cap)
    for g in elements:
        if eng.act(g, x) != x:
            raise QmError(f"{g} does not fix {x}")
    bound = 2 * eng.distance(spec.x0, x)
    values = [h(g) for g in elements]
    bad = [i for i, v in enumerate(values) if abs(v) > bound]
    report = {
        "vertex": _vjson(x),
        "bound": bound,
        "samples": len(values),
        "max_abs_h": max((abs(v) for v in values), default=0),
        "violations": len(bad),
        "oracle": spec.oracle,
    }
    if bad:
        raise BoundViolation(f"|h| exceeds {bound} on {len(bad)} elements", report)
    return report


def axis_vertex(m: fy.IntMatrix, probe: int = 6) -> fy.FareySlope:
    """A vertex moved the least by ``m`` whose orbit is a geodesic (checked up to ``m^3``)."""
    approx = fy.act(m ** probe, fy.ZERO)
    if approx == fy.act(m ** (probe + 1), fy.ZERO):
        raise QmError(f"{m} is not hyperbolic")
    # vertices near the attracting fixed point: the ladder toward a far orbit point
    cands = set(fy.farey_path(fy.ZERO, approx)) | set(fy.farey_path(fy.INF, approx))
    best = None
    for v in sorted(cands, key=fy.FareySlope.key):
        tau = fy.farey_distance(v, fy.act(m, v))
        if tau == 0 or fy.farey_distance(v, fy.act(m ** 3, v)) != 3 * tau:
            continue
        if best is None or tau < best[0]:
            best = (tau, v)
    if best is None:
        raise QmError(f"no geodesic orbit found for {m}")
    return best[1]


def axis_path(m: fy.IntMatrix, edges: int, x: fy.FareySlope | None = None) -> list[fy.FareySlope]:
    """``edges`` edges of an ``m``-invariant path through ``x`` (default: a geodesic axis vertex)."""
    if x is None:
        x = axis_vertex(m)
    seg = fy.farey_path(x, fy.act(m, x))
    if len(seg) < 2:
        raise QmError(f"{m} fixes {x}")
    out = [x]
    g = fy.IDENTITY
    while len(out) <= edges:
        out.extend(fy.act(g, v) for v in seg[1:])
        g = g @ m
    return out[:edges + 1]


def growth(spec: QmSpec, m, n_max: int, search_cap: int = 10_000) -> list[int]:
    """``h_w(m^n)`` for ``n = 1..n_max``."""
    eng = spec.engine
    h = HCache(spec, search_cap)
    out = []
    g = m
    for _ in range(n_max):
        out.append(h(g))
        g = eng.compose(g, m)
    return out

"""Essential simple closed curves in normal coordinates.

A :class:`NormalCurve` is a weight per triangulation edge.  Its isotopy class
is the weight vector (normal coordinates on an ideal triangulation are
canonical), so equality and hashing use the weights only.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from . import _ribbon as rb
from .surface import IdealTriangulation


class CurveError(ValueError):
    pass


class TriangulationMismatch(CurveError):
    pass


@dataclass(frozen=True, eq=False)
class NormalCurve:
    tri: IdealTriangulation
    weights: tuple[int, ...]
    word: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        w = tuple(int(x) for x in self.weights)
        object.__setattr__(self, "weights", w)
        if len(w) != self.tri.num_edges:
            raise CurveError(f"expected {self.tri.num_edges} weights, got {len(w)}")
        if any(x < 0 for x in w):
            raise CurveError("weights must be nonnegative")
        if not any(w):
            raise CurveError("the zero vector is not a curve")
        try:
            comps = rb.trace_components(self.tri.gluing, self.tri.edge_of, w)
        except ValueError as exc:
            raise CurveError(str(exc)) from None
        if len(comps) != 1:
            raise CurveError(f"weights describe {len(comps)} components, not a connected curve")
        word = comps[0]
        if rb.is_peripheral(word, self.tri.gluing):
            raise CurveError("peripheral curve (bounds a once-punctured disk)")
        object.__setattr__(self, "word", word)

    @classmethod
    def from_word(cls, tri: IdealTriangulation, word: Sequence[int]) -> "NormalCurve":
        word = rb.cyclic_reduce(word, tri.gluing)
        if not word:
            raise CurveError("null-homotopic path")
        c = cls(tri, rb.edge_counts(word, tri.edge_of, tri.num_edges))
        if not (rb.same_cyclic(c.word, word) or rb.same_cyclic(c.word, rb.reverse_word(word, tri.gluing))):
            raise CurveError("path is not homotopic to a simple closed curve")
        return c

    def __eq__(self, other):
        return isinstance(other, NormalCurve) and self.weights == other.weights and self.tri == other.tri

    def __hash__(self):
        return hash(self.weights)

    def __lt__(self, other: "NormalCurve"):
        return (sum(self.weights), self.weights) < (sum(other.weights), other.weights)

    @property
    def size(self) -> int:
        return sum(self.weights)

    def to_json(self) -> dict:
        return {"weights": list(self.weights)}

    def __repr__(self):
        return f"NormalCurve{self.weights}"


@dataclass(frozen=True)
class MultiCurve:
    """Formal positive combination of pairwise disjoint, distinct curves."""

    parts: tuple[tuple[NormalCurve, int], ...]

    def __post_init__(self):
        merged: dict[NormalCurve, int] = {}
        for c, m in self.parts:
            if m <= 0:
                raise CurveError("multiplicities must be positive")
            merged[c] = merged.get(c, 0) + m
        items = tuple(sorted(merged.items(), key=lambda cm: (cm[0].size, cm[0].weights)))
        if not items:
            raise CurveError("empty multicurve")
        tri = items[0][0].tri
        for c, _ in items:
            if c.tri != tri:
                raise TriangulationMismatch("components live on different triangulations")
        for (c, _), (d, _) in itertools.combinations(items, 2):
            if _intersection(c, d):
                raise CurveError("multicurve components must be disjoint")
        object.__setattr__(self, "parts", items)

    @classmethod
    def of(cls, curve: NormalCurve, mult: int = 1) -> "MultiCurve":
        return cls(((curve, mult),))

    @property
    def tri(self) -> IdealTriangulation:
        return self.parts[0][0].tri

    @property
    def components(self) -> list[NormalCurve]:
        return [c for c, _ in self.parts]

    def scaled(self, n: int) -> "MultiCurve":
        return MultiCurve(tuple((c, m * n) for c, m in self.parts))

    def to_json(self) -> list:
        return [[c.to_json(), m] for c, m in self.parts]


def as_multicurve(x: "NormalCurve | MultiCurve") -> MultiCurve:
    return x if isinstance(x, MultiCurve) else MultiCurve.of(x)


def _check_same(a, b):
    if a.tri != b.tri:
        raise TriangulationMismatch("curves live on different triangulations")


@lru_cache(maxsize=1 << 20)
def _intersection(a: NormalCurve, b: NormalCurve) -> int:
    if a.weights == b.weights:
        return 0
    return rb.linked_count(a.word, b.word, a.tri.gluing)


def intersection_number(a: "NormalCurve | MultiCurve", b: "NormalCurve | MultiCurve") -> int:
    """Geometric intersection number, bilinear over multiplicities."""
    _check_same(a, b)
    if isinstance(a, NormalCurve) and isinstance(b, NormalCurve):
        return _intersection(a, b)
    A, B = as_multicurve(a), as_multicurve(b)
    return sum(m * n * _intersection(c, d) for c, m in A.parts for d, n in B.parts)


def arrangement(*curves: NormalCurve) -> rb.Arrangement:
    tri = curves[0].tri
    return rb.Arrangement([c.word for c in curves], tri.gluing, tri.edge_of)


def crossing_count(a: NormalCurve, b: NormalCurve) -> int:
    """Intersection number read off an explicit minimal-position drawing.

    Independent of :func:`intersection_number`'s linked-pair count; the two
    must agree.
    """
    _check_same(a, b)
    if a == b:
        return 0
    return len(arrangement(a, b).crossings)


# ---------------------------------------------------------------- mapping classes


@dataclass(frozen=True)
class MappingClassWord:
    """Product of Dehn twist powers, applied right to left like composition."""

    letters: tuple[tuple[NormalCurve, int], ...] = ()

    def __post_init__(self):
        for c, e in self.letters:
            if not isinstance(c, NormalCurve):
                raise CurveError("twist curves must be NormalCurves")
            if not isinstance(e, int) or e == 0:
                raise CurveError("twist exponents must be nonzero integers")
        tris = {c.tri for c, _ in self.letters}
        if len(tris) > 1:
            raise TriangulationMismatch("twist curves on different triangulations")

    @classmethod
    def twist(cls, c: NormalCurve, power: int = 1) -> "MappingClassWord":
        return cls(((c, power),))

    def __mul__(self, other: "MappingClassWord") -> "MappingClassWord":
        """``(f * g)(x) = f(g(x))``."""
        return MappingClassWord(self.letters + other.letters)

    def inverse(self) -> "MappingClassWord":
        return MappingClassWord(tuple((c, -e) for c, e in reversed(self.letters)))

    def __pow__(self, n: int) -> "MappingClassWord":
        if n < 0:
            return self.inverse() ** (-n)
        return MappingClassWord(self.letters * n)

    def __len__(self):
        return len(self.letters)

    def to_json(self, names: dict[NormalCurve, str] | None = None) -> list:
        if names is None:
            return [[list(c.weights), e] for c, e in self.letters]
        return [[names[c], e] for c, e in self.letters]


def twist_curve(c: NormalCurve, d: NormalCurve, power: int) -> NormalCurve:
    """``T_c^power(d)`` for single curves."""
    _check_same(c, d)
    if power == 0 or _intersection(c, d) == 0:
        return d
    word = rb.twist_word(d.word, c.word, power, c.tri.gluing, c.tri.edge_of)
    return NormalCurve.from_word(c.tri, word)


def apply_twist(g: MappingClassWord, x: "NormalCurve | MultiCurve") -> "NormalCurve | MultiCurve":
    """Image of a curve or multicurve under a twist word (rightmost letter first)."""
    if isinstance(x, NormalCurve):
        for c, e in reversed(g.letters):
            x = twist_curve(c, x, e)
        return x
    parts = []
    for comp, m in x.parts:
        parts.append((apply_twist(g, comp), m))
    return MultiCurve(tuple(parts))


# ---------------------------------------------------------------- filling


def complement_census(a: "NormalCurve | MultiCurve", b: "NormalCurve | MultiCurve") -> dict:
    """Regions of the complement of ``a`` union ``b`` in minimal position.

    Returns the vertex/edge/boundary-walk counts of the union graph, the
    Euler defect ``V - E + F - chi(closed surface)`` (zero iff every region
    is a disk), how many boundary walks bound a disk / once-punctured disk /
    something essential, and whether the union is connected.
    """
    _check_same(a, b)
    A, B = as_multicurve(a), as_multicurve(b)
    comps = A.components + [c for c in B.components if c not in A.components]
    tri = comps[0].tri
    arr = arrangement(*comps)
    V = len(arr.crossings)
    isolated = [k for k in range(len(comps)) if not arr.along[k]]
    parent = list(range(len(comps)))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for x in arr.crossings:
        ra, rb_ = find(x["a"]), find(x["b"])
        if ra != rb_:
            parent[ra] = rb_
    connected = len({find(k) for k in range(len(comps))}) == 1 and not isolated
    walks = arr.face_paths() if V else []
    disks = punctured = essential = 0
    essential_words = []
    for path in walks:
        w = rb.cyclic_reduce(path, tri.gluing)
        if not w:
            disks += 1
        elif rb.is_peripheral(w, tri.gluing):
            punctured += 1
        else:
            essential += 1
            essential_words.append(w)
    chi = 2 - 2 * tri.genus
    F = len(walks)
    return {
        "vertices": V,
        "edges": 2 * V,
        "boundary_walks": F,
        "euler_defect": V - 2 * V + F - chi if V else None,
        "disks": disks,
        "punctured_disks": punctured,
        "essential_walks": essential,
        "connected": connected,
        "_essential_words": essential_words,
    }


def is_filling(a: "NormalCurve | MultiCurve", b: "NormalCurve | MultiCurve") -> bool:
    census = complement_census(a, b)
    if not census["connected"] or census["essential_walks"]:
        return False
    tri = as_multicurve(a).tri
    # every region is a disk; each puncture sits in exactly one of them
    assert census["euler_defect"] == 0, census
    assert census["punctured_disks"] == tri.num_punctures, census
    return True


def disjoint_witnesses(a: NormalCurve, b: NormalCurve) -> list[NormalCurve]:
    """Essential boundary curves of a regular neighbourhood of ``a`` union ``b``."""
    census = complement_census(a, b)
    out = []
    for w in census["_essential_words"]:
        c = NormalCurve.from_word(a.tri, w)
        if c not in out:
            out.append(c)
    return sorted(out)


# ---------------------------------------------------------------- enumeration


def enumerate_curves(tri: IdealTriangulation, weight_cap: int) -> list[NormalCurve]:
    """All essential connected normal curves with every weight <= ``weight_cap``."""
    if weight_cap < 1:
        raise CurveError("weight_cap must be at least 1")
    return list(_enumerate(tri, weight_cap))


@lru_cache(maxsize=64)
def _enumerate(tri: IdealTriangulation, cap: int) -> tuple[NormalCurve, ...]:
    E = tri.num_edges
    tris = [tri.triangle_edges(t) for t in range(tri.num_triangles)]
    # assign edges in order; check a triangle once all its edges are set
    last = {}
    for t, es in enumerate(tris):
        last.setdefault(max(es), []).append(es)
    out = []
    w = [0] * E

    def ok(es):
        x, y, z = (w[e] for e in es)
        return (x + y + z) % 2 == 0 and x <= y + z and y <= x + z and z <= x + y

    def rec(e):
        if e == E:
            if any(w):
                try:
                    out.append(NormalCurve(tri, tuple(w)))
                except CurveError:
                    pass
            return
        for v in range(cap + 1):
            w[e] = v
            if all(ok(es) for es in last.get(e, ())):
                rec(e + 1)
        w[e] = 0

    rec(0)
    out.sort()
    return tuple(out)


# ---------------------------------------------------------------- torus slopes


def torus_slope_curve(tri: IdealTriangulation, p: int, q: int) -> NormalCurve:
    """Slope ``p/q`` curve on the standard once-punctured torus triangulation.

    The triangulation is the unit square with sides ``a`` (direction (1,0)),
    ``b`` (direction (0,1)) and diagonal (1,1); a straight line of direction
    ``(p, q)`` meets an arc of direction ``(u, v)`` ``|p v - q u|`` times.
    """
    from math import gcd

    if (tri.genus, tri.num_punctures) != (1, 1) or tri.num_triangles != 2:
        raise CurveError("slope curves need the standard once-punctured torus triangulation")
    if gcd(p, q) != 1:
        raise CurveError("slope must be primitive")
    # polygon sides: slot 0 is a (P0->P1), slot 1 is b (P1->P2), diagonal is slot 2
    dirs = {tri.edge_of[0]: (1, 0), tri.edge_of[1]: (0, 1), tri.edge_of[2]: (1, 1)}
    weights = [abs(p * dirs[e][1] - q * dirs[e][0]) for e in range(3)]
    return NormalCurve(tri, tuple(weights))


# ---------------------------------------------------------------- serialization


def curve_from_json(tri: IdealTriangulation, data) -> NormalCurve:
    if isinstance(data, dict):
        data = data["weights"]
    return NormalCurve(tri, tuple(int(x) for x in data))


def multicurve_from_json(tri: IdealTriangulation, data) -> MultiCurve:
    return MultiCurve(tuple((curve_from_json(tri, c), int(m)) for c, m in data))


def load_registry(tri: IdealTriangulation, text: str) -> dict[str, NormalCurve]:
    """A named-curve registry: ``{"name": {"weights": [...]}, ...}``."""
    data = json.loads(text)
    return {name: curve_from_json(tri, v) for name, v in data.items()}


def word_from_json(registry: dict[str, NormalCurve], data: Iterable) -> MappingClassWord:
    letters = []
    for name, e in data:
        if name not in registry:
            raise CurveError(f"unknown curve id {name!r}")
        letters.append((registry[name], int(e)))
    return MappingClassWord(tuple(letters))

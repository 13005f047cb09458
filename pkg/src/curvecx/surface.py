"""Surface signatures, curve-complex classification and ideal triangulations.

Triangulation labelling
-----------------------
Triangle ``t`` has corners ``v0, v1, v2`` in counter-clockwise order and
sides ``0, 1, 2`` where side ``i`` runs from ``v_i`` to ``v_{i+1}``.  A side
is addressed by the integer ``3*t + i`` (a "slot").  Gluings pair slots and
are always orientation reversing, so side ``(t, i)`` glued to ``(t', i')``
identifies ``v_i`` with ``v'_{i'+1}`` and ``v_{i+1}`` with ``v'_{i'}``.
Edges are numbered in increasing order of their smaller slot.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from typing import Iterable


class SurfaceError(ValueError):
    pass


class ComplexClass(str, enum.Enum):
    EMPTY = "EmptyComplex"
    DISCRETE = "DiscreteComplex"
    FAREY = "FareyModel"
    SUPPORTED = "Supported"
    NONORIENTABLE_SPORADIC = "NonOrientableSporadic"
    NONORIENTABLE_UNSUPPORTED = "NonOrientableUnsupported"


@dataclass(frozen=True)
class SurfaceSig:
    """Genus (number of cross-caps when non-orientable), punctures, orientability."""

    genus: int
    punctures: int
    orientable: bool = True

    def __post_init__(self):
        if self.genus < 0 or self.punctures < 0:
            raise SurfaceError("genus and punctures must be nonnegative")
        if not self.orientable and self.genus == 0:
            raise SurfaceError("a non-orientable surface needs at least one cross-cap")

    @property
    def euler_characteristic(self) -> int:
        if self.orientable:
            return 2 - 2 * self.genus - self.punctures
        return 2 - self.genus - self.punctures

    def to_json(self) -> dict:
        return {"genus": self.genus, "punctures": self.punctures, "orientable": self.orientable}

    @classmethod
    def from_json(cls, data: dict) -> "SurfaceSig":
        return cls(int(data["genus"]), int(data["punctures"]), bool(data.get("orientable", True)))

    def __str__(self):
        kind = "S" if self.orientable else "N"
        return f"{kind}({self.genus},{self.punctures})"


def classify(sig: SurfaceSig) -> ComplexClass:
    g, n = sig.genus, sig.punctures
    if not sig.orientable:
        if (g == 1 and n <= 2) or (g == 2 and n <= 1):
            return ComplexClass.NONORIENTABLE_SPORADIC
        return ComplexClass.NONORIENTABLE_UNSUPPORTED
    if g == 0:
        if n <= 3:
            return ComplexClass.EMPTY
        if n == 4:
            return ComplexClass.DISCRETE
        return ComplexClass.SUPPORTED
    if g == 1 and n <= 1:
        return ComplexClass.FAREY
    return ComplexClass.SUPPORTED


def _next(slot: int) -> int:
    return slot - slot % 3 + (slot + 1) % 3


def _prev(slot: int) -> int:
    return slot - slot % 3 + (slot + 2) % 3


@dataclass(frozen=True, eq=False)
class IdealTriangulation:
    """An orientable ideal triangulation given by a slot involution.

    ``gluing[s]`` is the slot glued to slot ``s``.  Construction validates
    the involution, connectivity and the Euler count.
    """

    gluing: tuple[int, ...]
    edge_of: tuple[int, ...] = field(init=False, repr=False)
    edge_slots: tuple[tuple[int, int], ...] = field(init=False, repr=False)
    corner_puncture: tuple[int, ...] = field(init=False, repr=False)
    num_punctures: int = field(init=False)
    genus: int = field(init=False)

    def __post_init__(self):
        glue = tuple(int(x) for x in self.gluing)
        object.__setattr__(self, "gluing", glue)
        n = len(glue)
        if n == 0 or n % 6:
            raise SurfaceError("number of slots must be a positive multiple of 6 (even triangle count)")
        for s, t in enumerate(glue):
            if not 0 <= t < n or t == s or glue[t] != s:
                raise SurfaceError(f"slot {s} is not paired by an involution")
        edge_of = [-1] * n
        edges = []
        for s in range(n):
            if edge_of[s] < 0:
                edge_of[s] = edge_of[glue[s]] = len(edges)
                edges.append((s, glue[s]))
        object.__setattr__(self, "edge_of", tuple(edge_of))
        object.__setattr__(self, "edge_slots", tuple(edges))

        # corners: corner k of triangle t is vertex v_k, index 3t+k
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x, y):
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[max(rx, ry)] = min(rx, ry)

        for s, t in enumerate(glue):
            # v_i ~ v'_{i'+1} and v_{i+1} ~ v'_{i'}
            union(s, _next(t))
            union(_next(s), t)
        roots = {}
        corner = []
        for c in range(n):
            r = find(c)
            corner.append(roots.setdefault(r, len(roots)))
        object.__setattr__(self, "corner_puncture", tuple(corner))
        object.__setattr__(self, "num_punctures", len(roots))

        tri_parent = list(range(n // 3))

        def tfind(x):
            while tri_parent[x] != x:
                tri_parent[x] = tri_parent[tri_parent[x]]
                x = tri_parent[x]
            return x

        for s, t in enumerate(glue):
            a, b = tfind(s // 3), tfind(t // 3)
            if a != b:
                tri_parent[max(a, b)] = min(a, b)
        if len({tfind(x) for x in range(n // 3)}) != 1:
            raise SurfaceError("triangulated surface is not connected")
        chi = self.num_punctures - len(edges) + n // 3
        if chi % 2:
            raise SurfaceError("odd Euler characteristic for an orientable surface")
        object.__setattr__(self, "genus", (2 - chi) // 2)

    @property
    def num_triangles(self) -> int:
        return len(self.gluing) // 3

    @property
    def num_edges(self) -> int:
        return len(self.edge_slots)

    @property
    def signature(self) -> SurfaceSig:
        return SurfaceSig(self.genus, self.num_punctures, True)

    def next_slot(self, slot: int) -> int:
        return _next(slot)

    def prev_slot(self, slot: int) -> int:
        return _prev(slot)

    def triangle_edges(self, t: int) -> tuple[int, int, int]:
        return tuple(self.edge_of[3 * t + i] for i in range(3))

    def puncture_cycles(self) -> list[list[int]]:
        """Corners grouped by puncture, each group in cyclic order around it."""
        cycles = []
        seen = set()
        for c in range(len(self.gluing)):
            if c in seen:
                continue
            cyc = []
            x = c
            while x not in seen:
                seen.add(x)
                cyc.append(x)
                # rotate around v_k: cross side k-1 (prev slot) into the neighbour
                x = self.gluing[_prev(x)]
            cycles.append(cyc)
        return cycles

    def __eq__(self, other):
        return isinstance(other, IdealTriangulation) and self.gluing == other.gluing

    def __hash__(self):
        return hash(self.gluing)

    def to_json(self) -> dict:
        rows = []
        for a, b in self.edge_slots:
            rows.append([a // 3, a % 3, b // 3, b % 3])
        return {"triangles": self.num_triangles, "gluing": rows}

    @classmethod
    def from_json(cls, data: dict) -> "IdealTriangulation":
        T = int(data["triangles"])
        glue = [-1] * (3 * T)
        for t, i, u, j in data["gluing"]:
            a, b = 3 * t + i, 3 * u + j
            if glue[a] != -1 or glue[b] != -1:
                raise SurfaceError(f"slot glued twice in row {[t, i, u, j]}")
            glue[a], glue[b] = b, a
        if -1 in glue:
            raise SurfaceError("unglued slot")
        return cls(tuple(glue))

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def validate_triangulation(tri: IdealTriangulation, sig: SurfaceSig | None = None) -> None:
    T, E = tri.num_triangles, tri.num_edges
    if 2 * E != 3 * T:
        raise SurfaceError("E != 3T/2")
    g, n = tri.genus, tri.num_punctures
    if T != 4 * g - 4 + 2 * n or E != 6 * g - 6 + 3 * n:
        raise SurfaceError("Euler count mismatch")
    if sig is not None and (sig.genus, sig.punctures, sig.orientable) != (g, n, True):
        raise SurfaceError(f"triangulation has signature {tri.signature}, expected {sig}")


def _cone(glue: list[int], t: int) -> None:
    """Add a puncture inside triangle ``t`` (1 triangle becomes 3)."""
    tb = len(glue) // 3
    tc = tb + 1
    glue.extend([-1] * 6)
    ext = [glue[3 * t + i] for i in range(3)]
    # triangle t keeps side 0; tb gets old side 1; tc gets old side 2
    new_outer = [3 * t, 3 * tb, 3 * tc]
    for old, new in zip(ext, new_outer):
        glue[new] = old
        glue[old] = new
    pairs = [(3 * t + 1, 3 * tb + 2), (3 * tb + 1, 3 * tc + 2), (3 * tc + 1, 3 * t + 2)]
    for a, b in pairs:
        glue[a], glue[b] = b, a


def _glue(glue: list[int], a: int, b: int) -> None:
    glue[a], glue[b] = b, a


def standard_triangulation(sig: SurfaceSig) -> IdealTriangulation:
    """The fixed triangulation used for all coordinates on ``sig``.

    Genus ``g >= 1``: the standard ``4g``-gon ``a1 b1 a1^-1 b1^-1 ...`` fanned
    from its first vertex (one puncture).  Genus 0: the doubled triangle
    (three punctures).  Further punctures are added one at a time by coning
    triangle ``k`` for the ``k``-th added puncture.
    """
    cls = classify(sig)
    if not sig.orientable:
        raise SurfaceError(f"{sig}: non-orientable surfaces are classification-only")
    if sig.punctures < 1:
        raise SurfaceError(f"{sig}: closed surfaces are not triangulated (need at least one puncture)")
    if cls not in (ComplexClass.FAREY, ComplexClass.SUPPORTED):
        raise SurfaceError(f"{sig}: sporadic surface ({cls.value}) has no standard triangulation")

    g = sig.genus
    if g == 0:
        glue = [-1] * 6
        _glue(glue, 0, 5)  # A0 x->y with B2 y->x
        _glue(glue, 1, 4)  # A1 y->z with B1 z->y
        _glue(glue, 2, 3)  # A2 z->x with B0 x->z
        base_punctures = 3
    else:
        m = 4 * g
        T = m - 2
        glue = [-1] * (3 * T)
        # triangle k-1 = (P0, Pk, Pk+1) for k = 1..m-2
        polygon_slot = {}
        for k in range(1, m - 1):
            t = k - 1
            polygon_slot[k] = 3 * t + 1
            if k == 1:
                polygon_slot[0] = 3 * t
            else:
                _glue(glue, 3 * t, 3 * (t - 1) + 2)
            if k == m - 2:
                polygon_slot[m - 1] = 3 * t + 2
        for i in range(g):
            _glue(glue, polygon_slot[4 * i], polygon_slot[4 * i + 2])
            _glue(glue, polygon_slot[4 * i + 1], polygon_slot[4 * i + 3])
        base_punctures = 1

    for k in range(sig.punctures - base_punctures):
        _cone(glue, k)
    tri = IdealTriangulation(tuple(glue))
    validate_triangulation(tri, sig)
    return tri


def classification_table(genus_max: int = 5, punctures_max: int = 10) -> list[dict]:
    rows = []
    for orientable in (True, False):
        for g in range(0 if orientable else 1, genus_max + 1):
            for n in range(punctures_max + 1):
                sig = SurfaceSig(g, n, orientable)
                rows.append({**sig.to_json(), "class": classify(sig).value})
    return rows


def parse_signature(items: Iterable[str] | str) -> SurfaceSig:
    """Parse ``"g,n"`` / ``"g,n,nonorientable"`` or a JSON object."""
    if isinstance(items, str):
        text = items.strip()
        if text.startswith("{"):
            return SurfaceSig.from_json(json.loads(text))
        items = text.split(",")
    parts = [p.strip() for p in items]
    orientable = True
    if len(parts) == 3:
        orientable = parts[2].lower() in ("1", "true", "o", "orientable")
    return SurfaceSig(int(parts[0]), int(parts[1]), orientable)

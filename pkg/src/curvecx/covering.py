"""Finite covers of triangulated surfaces and the pullback of curves.

A cover of degree ``d`` has triangle ``t * d + s`` for every base triangle
``t`` and sheet ``s``.  Each base edge, stored as the slot pair ``(h, h')``
with ``h < h'``, carries a sheet permutation ``sigma``: sheet ``s`` of slot
``h`` is glued to sheet ``sigma[s]`` of slot ``h'``.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field

from . import _ribbon as rb
from .complex import ComplexUniverse, surgery_path
from .curves import (
    CurveError,
    MappingClassWord,
    MultiCurve,
    NormalCurve,
    apply_twist,
    as_multicurve,
    enumerate_curves,
    intersection_number,
    is_filling,
    twist_curve,
)
from .surface import IdealTriangulation, SurfaceError, SurfaceSig, standard_triangulation


class CoverError(SurfaceError):
    pass


class IdentityViolation(AssertionError):
    def __init__(self, msg: str, report: dict):
        super().__init__(msg)
        self.report = report


@dataclass(frozen=True, eq=False)
class CoveringSpec:
    base: IdealTriangulation
    degree: int
    edge_perms: tuple[tuple[int, ...], ...]
    cover: IdealTriangulation = field(init=False, repr=False)
    edge_image: tuple[int, ...] = field(init=False, repr=False)

    def __post_init__(self):
        d = int(self.degree)
        if d < 1:
            raise CoverError("degree must be positive")
        perms = tuple(tuple(int(x) for x in p) for p in self.edge_perms)
        if len(perms) != self.base.num_edges:
            raise CoverError(f"need one permutation per base edge ({self.base.num_edges})")
        for p in perms:
            if sorted(p) != list(range(d)):
                raise CoverError(f"{list(p)} is not a permutation of {d} sheets")
        object.__setattr__(self, "edge_perms", perms)
        glue = [-1] * (3 * self.base.num_triangles * d)
        for e, (a, b) in enumerate(self.base.edge_slots):
            for s in range(d):
                x, y = self.slot(a, s), self.slot(b, perms[e][s])
                glue[x], glue[y] = y, x
        try:
            cover = IdealTriangulation(tuple(glue))
        except SurfaceError as exc:
            raise CoverError(f"invalid cover: {exc}") from None
        object.__setattr__(self, "cover", cover)
        image = [-1] * cover.num_edges
        for h in range(len(glue)):
            image[cover.edge_of[h]] = self.base.edge_of[self.base_slot(h)]
        object.__setattr__(self, "edge_image", tuple(image))
        expected = sum(len(c) for c in self.monodromy_cycles())
        if expected != cover.num_punctures:
            raise CoverError(f"monodromy predicts {expected} punctures, cover has {cover.num_punctures}")

    def slot(self, h: int, sheet: int) -> int:
        t, i = divmod(h, 3)
        return 3 * (t * self.degree + sheet) + i

    def base_slot(self, h: int) -> int:
        t, i = divmod(h, 3)
        return 3 * (t // self.degree) + i

    def sheet_of(self, h: int) -> int:
        return (h // 3) % self.degree

    def cross(self, h: int, sheet: int) -> int:
        """Sheet reached when leaving through base slot ``h`` on ``sheet``."""
        e = self.base.edge_of[h]
        p = self.edge_perms[e]
        if self.base.edge_slots[e][0] == h:
            return p[sheet]
        return p.index(sheet)

    def monodromy_cycles(self) -> list[list[list[int]]]:
        """Cycle decomposition of the sheet permutation around each base puncture."""
        out = []
        for cyc in self.base.puncture_cycles():
            perm = list(range(self.degree))
            for s in range(self.degree):
                sheet = s
                for corner in cyc:
                    sheet = self.cross(rb.prv(corner), sheet)
                perm[s] = sheet
            seen, cycles = set(), []
            for s in range(self.degree):
                if s in seen:
                    continue
                c, x = [], s
                while x not in seen:
                    seen.add(x)
                    c.append(x)
                    x = perm[x]
                cycles.append(c)
            out.append(cycles)
        return out

    @property
    def signature(self) -> SurfaceSig:
        return self.cover.signature

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "sheets": self.degree,
            "edge_perms": [list(p) for p in self.edge_perms],
            "base": self.base.to_json(),
        }

    @classmethod
    def from_json(cls, data: dict) -> "CoveringSpec":
        return cls(IdealTriangulation.from_json(data["base"]), int(data["degree"]), tuple(map(tuple, data["edge_perms"])))


def torus_cover(degree: int, edge: int = 0) -> CoveringSpec:
    """Cyclic cover of the once-punctured torus: sheets shift by one across ``edge``."""
    base = standard_triangulation(SurfaceSig(1, 1))
    ident = tuple(range(degree))
    shift = tuple((s + 1) % degree for s in range(degree))
    perms = tuple(shift if e == edge else ident for e in range(base.num_edges))
    return CoveringSpec(base, degree, perms)


def trivial_cover(base: IdealTriangulation) -> CoveringSpec:
    return CoveringSpec(base, 1, tuple((0,) for _ in range(base.num_edges)))


# ---------------------------------------------------------------- pullback


def lift_weights(p: CoveringSpec, c: "NormalCurve | MultiCurve") -> tuple[int, ...]:
    if isinstance(c, NormalCurve):
        w = c.weights
    else:
        w = [0] * p.base.num_edges
        for comp, m in c.parts:
            for e, x in enumerate(comp.weights):
                w[e] += m * x
    if len(w) != p.base.num_edges:
        raise CurveError("curve is not on the base triangulation")
    return tuple(w[p.edge_image[e]] for e in range(p.cover.num_edges))


def pullback(p: CoveringSpec, c: "NormalCurve | MultiCurve") -> MultiCurve:
    """The full preimage, split into components with multiplicities."""
    c = as_multicurve(c)
    if c.tri != p.base:
        raise CurveError("curve is not on the base triangulation")
    cov = p.cover
    words = rb.trace_components(cov.gluing, cov.edge_of, lift_weights(p, c))
    parts = [(NormalCurve(cov, rb.edge_counts(w, cov.edge_of, cov.num_edges)), 1) for w in words]
    return MultiCurve(tuple(parts))


def lift_degrees(p: CoveringSpec, c: NormalCurve) -> list[int]:
    """Degree of each preimage component over ``c`` (listed with multiplicity)."""
    out = []
    for comp, m in pullback(p, c).parts:
        out.extend([comp.size // c.size] * m)
    return sorted(out)


def scaling_check(p: CoveringSpec, a, b, c) -> dict:
    """Exact check of the two scaling identities for one triple; raises on failure."""
    a, b, c = as_multicurve(a), as_multicurve(b), as_multicurve(c)
    if not is_filling(a, b):
        raise CurveError("a and b do not fill the base")
    la, lb, lc = pullback(p, a), pullback(p, b), pullback(p, c)
    iab = intersection_number(a, b)
    iab_up = intersection_number(la, lb)
    length = intersection_number(a, c) + intersection_number(b, c)
    length_up = intersection_number(la, lc) + intersection_number(lb, lc)
    report = {
        "degree": p.degree,
        "I": iab,
        "I_lift": iab_up,
        "length": length,
        "length_lift": length_up,
        "intersection_ratio": _ratio(iab_up, iab),
        "length_ratio": _ratio(length_up, length),
    }
    if iab_up != p.degree * iab or length_up != p.degree * length:
        raise IdentityViolation("lifted quantities are not degree times the base ones", report)
    return report


def _ratio(x: int, y: int):
    if y == 0:
        return None
    return x // y if x % y == 0 else x / y


def twist_lift_check(p: CoveringSpec, c: NormalCurve, d: NormalCurve, power: int = 1) -> dict | None:
    """Compare ``p*(T_c^k d)`` with the product of twists about the lifts of ``c``.

    Only meaningful when every lift of ``c`` has degree one (the annulus
    lifts); otherwise ``None`` is returned and the instance is skipped.
    """
    degs = lift_degrees(p, c)
    if any(x != 1 for x in degs):
        return None
    lifts = pullback(p, c).components
    g = MappingClassWord(tuple((x, power) for x in lifts))
    down = pullback(p, twist_curve(c, d, power))
    up = apply_twist(g, pullback(p, d))
    return {"components": len(lifts), "agrees": down == up}


# ---------------------------------------------------------------- quasi-convexity


def image_set(p: CoveringSpec, cap: int) -> list[NormalCurve]:
    """Components of pullbacks of all base curves up to ``cap``."""
    out = set()
    for c in enumerate_curves(p.base, cap):
        out.update(pullback(p, c).components)
    return sorted(out)


def _multi_source(u: ComplexUniverse, sources) -> list[int]:
    adj = u.adjacency
    dist = [-1] * len(u)
    queue = deque()
    for s in sources:
        i = u.index[s]
        if dist[i] < 0:
            dist[i] = 0
            queue.append(i)
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if dist[y] < 0:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def quasiconvexity_probe(p: CoveringSpec, samples: int, cap: int, seed: int, cover_cap: int = 2) -> dict:
    """Empirical ``P``: how far paths between lifted curves stray from the image.

    Pairs of base curves up to ``cap`` are lifted (one component each), joined
    by a surgery path upstairs, and each path vertex is measured against the
    image set inside the cover universe at ``cover_cap`` (plus the path).
    """
    rng = random.Random(seed)
    base = enumerate_curves(p.base, cap)
    image = image_set(p, cap)
    values, skipped = [], 0
    paths = []
    for _ in range(samples):
        a, b = rng.sample(base, 2)
        la, lb = pullback(p, a).components, pullback(p, b).components
        x, y = la[rng.randrange(len(la))], lb[rng.randrange(len(lb))]
        if x == y:
            path = [x]
        elif intersection_number(x, y) == 0:
            path = [x, y]
        else:
            path = surgery_path(x, y, "basic").vertices
        paths.append(path)
    extra = {v for path in paths for v in path} | set(image)
    uni = ComplexUniverse(p.cover, cover_cap, extra)
    dist = _multi_source(uni, image)
    for path in paths:
        ds = [dist[uni.index[v]] for v in path]
        if any(x < 0 for x in ds):
            skipped += 1
            continue
        values.append(max(ds))
    hist: dict[str, int] = {}
    for v in values:
        hist[str(v)] = hist.get(str(v), 0) + 1
    return {
        "degree": p.degree,
        "samples": samples,
        "evaluated": len(values),
        "skipped": skipped,
        "P": max(values, default=None),
        "histogram": dict(sorted(hist.items(), key=lambda kv: int(kv[0]))),
        "seed": seed,
        "cap": cap,
        "cover_cap": cover_cap,
        "image_size": len(image),
    }

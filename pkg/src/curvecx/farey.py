"""The Farey graph: rational slopes joined when ``|ps - qr| = 1``.

Distances use the ladder of a pair: after moving ``u`` to ``1/0`` with an
integral matrix, every geodesic to ``v`` stays among the endpoints of
Farey edges that separate ``1/0`` from ``v``.  Those are the convergents
and intermediate fractions met on the Stern-Brocot descent toward ``v``,
so a breadth-first search on that finite set is exact.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence


class FareyError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class FareySlope:
    p: int
    q: int

    def __post_init__(self):
        p, q = int(self.p), int(self.q)
        if (p, q) == (0, 0) or gcd(p, q) != 1:
            raise FareyError(f"{p}/{q} is not a primitive slope")
        if q < 0 or (q == 0 and p < 0):
            p, q = -p, -q
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    @classmethod
    def parse(cls, text: str) -> "FareySlope":
        text = text.strip()
        if text in ("inf", "oo", "infinity"):
            return INF
        if "/" in text:
            p, q = text.split("/")
            return cls(int(p), int(q))
        return cls(int(text), 1)

    @property
    def is_infinity(self) -> bool:
        return self.q == 0

    def key(self) -> tuple[int, int]:
        """Ordering used for lexicographically least geodesics."""
        return (self.q, self.p)

    def __str__(self):
        return f"{self.p}/{self.q}"

    def __repr__(self):
        return f"FareySlope({self.p}/{self.q})"


INF = FareySlope(1, 0)
ZERO = FareySlope(0, 1)


def slope(x) -> FareySlope:
    if isinstance(x, FareySlope):
        return x
    if isinstance(x, str):
        return FareySlope.parse(x)
    if isinstance(x, Fraction):
        return FareySlope(x.numerator, x.denominator)
    if isinstance(x, int):
        return FareySlope(x, 1)
    p, q = x
    return FareySlope(p, q)


def adjacent(u: FareySlope, v: FareySlope) -> bool:
    return abs(u.p * v.q - u.q * v.p) == 1


@dataclass(frozen=True)
class IntMatrix:
    """Integral 2x2 matrix of determinant +-1, taken up to sign."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        vals = [int(self.a), int(self.b), int(self.c), int(self.d)]
        if vals[0] * vals[3] - vals[1] * vals[2] not in (1, -1):
            raise FareyError(f"determinant of {vals} is not +-1")
        lead = next(x for x in vals if x)
        if lead < 0:
            vals = [-x for x in vals]
        for name, x in zip("abcd", vals):
            object.__setattr__(self, name, x)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "IntMatrix":
        (a, b), (c, d) = rows
        return cls(a, b, c, d)

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        return IntMatrix(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "IntMatrix":
        s = self.det
        return IntMatrix(s * self.d, -s * self.b, -s * self.c, s * self.a)

    def __pow__(self, n: int) -> "IntMatrix":
        base = self if n >= 0 else self.inverse()
        out = IDENTITY
        for _ in range(abs(n)):
            out = out @ base
        return out

    def rows(self) -> list[list[int]]:
        return [[self.a, self.b], [self.c, self.d]]

    def __str__(self):
        return str(self.rows())


IDENTITY = IntMatrix(1, 0, 0, 1)


def act(m: IntMatrix, v: FareySlope) -> FareySlope:
    return FareySlope(m.a * v.p + m.b * v.q, m.c * v.p + m.d * v.q)


def _to_infinity(u: FareySlope) -> IntMatrix:
    """A determinant-one matrix sending ``u`` to ``1/0``."""
    p, q = u.p, u.q
    # solve p*s - q*r = 1
    g, x, y = _egcd(p, q)  # p*x + q*y = g = 1
    s, r = x, -y
    return IntMatrix(s, -r, -q, p)


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        k, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - k * x1
        y0, y1 = y1, y0 - k * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def ladder(v: FareySlope) -> list[FareySlope]:
    """Endpoints of the Farey edges separating ``1/0`` from ``v``, plus both ends."""
    if v.is_infinity:
        return [INF]
    out = {INF, v}
    x = Fraction(v.p, v.q)
    lo = x.numerator // x.denominator
    left, right = (lo, 1), (lo + 1, 1)
    out.add(FareySlope(*left))
    out.add(FareySlope(*right))
    if v.q == 1:
        return sorted(out, key=FareySlope.key)
    while True:
        m = (left[0] + right[0], left[1] + right[1])
        out.add(FareySlope(*m))
        mx = Fraction(*m)
        if mx == x:
            break
        if x < mx:
            right = m
        else:
            left = m
    return sorted(out, key=FareySlope.key)


def _bfs_tree(vertices: Sequence[FareySlope], source: FareySlope) -> dict[FareySlope, int]:
    dist = {source: 0}
    queue = deque([source])
    while queue:
        x = queue.popleft()
        for y in vertices:
            if y not in dist and adjacent(x, y):
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def farey_distance(u, v) -> int:
    u, v = slope(u), slope(v)
    if u == v:
        return 0
    if adjacent(u, v):
        return 1
    m = _to_infinity(u)
    target = act(m, v)
    verts = ladder(target)
    return _bfs_tree(verts, INF)[target]


def farey_path(u, v) -> list[FareySlope]:
    """The lexicographically least geodesic from ``u`` to ``v``."""
    u, v = slope(u), slope(v)
    if u == v:
        return [u]
    m = _to_infinity(u)
    minv = m.inverse()
    target = act(m, v)
    verts = ladder(target)
    back = _bfs_tree(verts, target)
    # the ladder lives in moved coordinates; compare in original coordinates
    path = [INF]
    while path[-1] != target:
        x = path[-1]
        step = [y for y in verts if back.get(y) == back[x] - 1 and adjacent(x, y)]
        path.append(min(step, key=lambda y: act(minv, y).key()))
    return [act(minv, y) for y in path]


def neighbours_within(u: FareySlope, bound: int) -> list[FareySlope]:
    """All Farey neighbours of ``u`` with ``|p|, |q| <= bound``."""
    if u.is_infinity:
        return [FareySlope(k, 1) for k in range(-bound, bound + 1)]
    g, x, y = _egcd(u.p, u.q)
    # u.p * x + u.q * y = 1, so (r, s) = (-y, x) has u.p*s - u.q*r = 1
    base_r, base_s = -y, x
    out = set()
    for sgn in (1, -1):
        r0, s0 = sgn * base_r, sgn * base_s
        # (r0 + k p, s0 + k q): |s0 + k q| <= bound confines k
        if u.q:
            klo = (-bound - s0) // u.q - 1
            khi = (bound - s0) // u.q + 1
        else:
            klo, khi = -bound - abs(r0) - 1, bound + abs(r0) + 1
        for k in range(klo, khi + 1):
            r, s = r0 + k * u.p, s0 + k * u.q
            if abs(r) <= bound and abs(s) <= bound and (r, s) != (0, 0):
                out.add(FareySlope(r, s))
    return sorted(out, key=FareySlope.key)


def ball(bound: int) -> list[FareySlope]:
    """All slopes with ``|p|, |q| <= bound``."""
    out = [INF]
    for q in range(1, bound + 1):
        for p in range(-bound, bound + 1):
            if gcd(p, q) == 1:
                out.append(FareySlope(p, q))
    return out


def translate_match(w: Sequence[FareySlope], sigma: Sequence[FareySlope],
                    allow_reflection: bool = False) -> IntMatrix | None:
    """A matrix ``g`` with ``g . w[i] == sigma[i]`` for all ``i``, if one exists.

    The first edge pins ``g`` down: an ordered Farey edge has trivial
    projective stabilizer in determinant one (and exactly one extra element
    of determinant minus one).
    """
    if len(w) != len(sigma):
        raise FareyError("paths must have the same length")
    if len(w) < 2:
        raise FareyError("paths need at least one edge")
    if not adjacent(w[0], w[1]) or not adjacent(sigma[0], sigma[1]):
        return None
    dw = w[0].p * w[1].q - w[0].q * w[1].p
    ds = sigma[0].p * sigma[1].q - sigma[0].q * sigma[1].p
    signs = [dw * ds]
    if allow_reflection:
        signs.append(-dw * ds)
    for s1 in signs:
        # columns: g (w0, w1) = (sigma0, s1 * sigma1)
        # g = S diag(1, s1) W^{-1},  W^{-1} = dw * [[w1.q, -w1.p], [-w0.q, w0.p]]
        S = ((sigma[0].p, s1 * sigma[1].p), (sigma[0].q, s1 * sigma[1].q))
        Wi = ((dw * w[1].q, -dw * w[1].p), (-dw * w[0].q, dw * w[0].p))
        a = S[0][0] * Wi[0][0] + S[0][1] * Wi[1][0]
        b = S[0][0] * Wi[0][1] + S[0][1] * Wi[1][1]
        c = S[1][0] * Wi[0][0] + S[1][1] * Wi[1][0]
        d = S[1][0] * Wi[0][1] + S[1][1] * Wi[1][1]
        g = IntMatrix(a, b, c, d)
        if all(act(g, x) == y for x, y in zip(w, sigma)):
            return g
    return None


def is_path(vertices: Iterable[FareySlope]) -> bool:
    vs = list(vertices)
    return all(adjacent(x, y) for x, y in zip(vs, vs[1:]))


def slimness(x: FareySlope, y: FareySlope, z: FareySlope) -> int:
    """Max distance from a vertex of one lexicographic geodesic side to the other two."""
    sides = [farey_path(x, y), farey_path(y, z), farey_path(z, x)]
    worst = 0
    for k in range(3):
        others = {v for j in range(3) if j != k for v in sides[j]}
        for p in sides[k]:
            worst = max(worst, min(farey_distance(p, o) for o in others))
    return worst


def slimness_probe(samples: int, seed: int, bound: int = 100) -> dict:
    """Slimness of random geodesic triangles with corners in ``ball(bound)``."""
    import random

    rng = random.Random(seed)
    verts = ball(bound)
    hist: dict[str, int] = {}
    worst = 0
    for _ in range(samples):
        s = slimness(*(verts[rng.randrange(len(verts))] for _ in range(3)))
        hist[str(s)] = hist.get(str(s), 0) + 1
        worst = max(worst, s)
    return {
        "samples": samples,
        "seed": seed,
        "bound": bound,
        "max_slimness": worst,
        "histogram": dict(sorted(hist.items(), key=lambda kv: int(kv[0]))),
    }

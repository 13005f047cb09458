"""Curves as cyclic words in the dual ribbon graph of an ideal triangulation.

The dual graph has one trivalent vertex per triangle and one edge per
triangulation edge; the half-edge leaving triangle ``t`` through side ``i``
is the slot ``3t + i`` and the cyclic (counter-clockwise) order at a vertex
is ``0 -> 1 -> 2``.  A closed curve is a cyclic sequence of *outgoing*
slots ``h_0 .. h_{n-1}`` with ``h_{k+1}`` leaving the triangle that
``glue[h_k]`` enters, and it is reduced when ``h_{k+1} != glue[h_k]``.

Normal curves trace to reduced words and reduced cyclic words are unique in
their free homotopy class, so the edge counts of a reduced word are the
normal coordinates of the simple curve it represents.
"""

from __future__ import annotations

from functools import cmp_to_key, lru_cache
from typing import Sequence

import numba
import numpy as np

Word = tuple[int, ...]


def nxt(h: int) -> int:
    return h - h % 3 + (h + 1) % 3


def prv(h: int) -> int:
    return h - h % 3 + (h + 2) % 3


# ---------------------------------------------------------------- tracing


def trace_components(glue: Sequence[int], edge_of: Sequence[int], weights: Sequence[int]) -> list[Word]:
    """Split a normal coordinate vector into the words of its components.

    Raises ``ValueError`` if a triangle violates the matching equations.
    """
    n_slots = len(glue)
    x = [weights[edge_of[s]] for s in range(n_slots)]
    corner = [0] * n_slots  # corner[3t+k]: arcs cutting off v_k
    for t in range(n_slots // 3):
        for k in range(3):
            a, b, c = x[3 * t + (k + 2) % 3], x[3 * t + k], x[3 * t + (k + 1) % 3]
            tot = a + b - c
            if tot < 0 or tot % 2:
                raise ValueError(f"weights violate the matching equations in triangle {t}")
            corner[3 * t + k] = tot // 2

    visited = [bytearray(x[s]) for s in range(n_slots)]
    words: list[Word] = []
    for s0 in range(n_slots):
        for k0 in range(x[s0]):
            if visited[s0][k0]:
                continue
            word = []
            s, k = s0, k0  # entering the triangle of s through side s at ccw index k
            while not visited[s][k]:
                visited[s][k] = 1
                cs = corner[s]
                if k < cs:
                    out = prv(s)
                    kout = x[out] - 1 - k
                else:
                    out = nxt(s)
                    kout = x[s] - 1 - k
                word.append(out)
                opp = glue[out]
                visited[out][kout] = 1
                s, k = opp, x[out] - 1 - kout
            words.append(tuple(word))
    return words


def edge_counts(word: Word, edge_of: Sequence[int], num_edges: int) -> tuple[int, ...]:
    w = [0] * num_edges
    for h in word:
        w[edge_of[h]] += 1
    return tuple(w)


def turns(word: Word, glue: Sequence[int]) -> list[int]:
    """+1 for a left turn, -1 for a right turn at each vertex of the word."""
    n = len(word)
    out = []
    for i in range(n):
        arrival = glue[word[i - 1]]
        out.append(1 if word[i] == prv(arrival) else -1)
    return out


def is_peripheral(word: Word, glue: Sequence[int]) -> bool:
    t = turns(word, glue)
    return all(v == t[0] for v in t)


def reverse_word(word: Word, glue: Sequence[int]) -> Word:
    return tuple(glue[h] for h in reversed(word))


def cyclic_reduce(path: Sequence[int], glue: Sequence[int]) -> Word:
    """Freely and cyclically reduce a closed path of outgoing slots."""
    stack: list[int] = []
    for h in path:
        if stack and h == glue[stack[-1]]:
            stack.pop()
        else:
            stack.append(h)
    lo, hi = 0, len(stack)
    while hi - lo >= 2 and stack[lo] == glue[stack[hi - 1]]:
        lo += 1
        hi -= 1
    return tuple(stack[lo:hi])


def check_closed(path: Sequence[int], glue: Sequence[int]) -> None:
    n = len(path)
    for i in range(n):
        if glue[path[i - 1]] // 3 != path[i] // 3:
            raise ValueError("path is not closed in the dual graph")


def canonical_rotation(word: Word) -> Word:
    if not word:
        return word
    n = len(word)
    best = min(range(n), key=lambda i: word[i:] + word[:i])
    return word[best:] + word[:best]


def same_cyclic(u: Word, v: Word) -> bool:
    return len(u) == len(v) and canonical_rotation(u) == canonical_rotation(v)


# ---------------------------------------------------------------- linked pairs


def common_segments(u: Word, v: Word, glue: Sequence[int]):
    """Yield ``(i, j, length, linked, enters_left)`` for maximal common segments.

    ``u`` and ``v`` traverse the segment in the same direction starting at
    positions ``i`` and ``j``.  ``enters_left`` says whether ``u`` arrives
    from the left of ``v``; ``linked`` means the two words leave the segment
    on opposite sides from where they entered, i.e. they cross once.
    Infinite common segments (identical curves) are skipped.
    """
    n, m = len(u), len(v)
    if not n or not m:
        return
    where: dict[int, list[int]] = {}
    for j, h in enumerate(v):
        where.setdefault(h, []).append(j)
    bound = n + m
    for i in range(n):
        js = where.get(u[i])
        if not js:
            continue
        arr_u = glue[u[i - 1]]
        for j in js:
            arr_v = glue[v[j - 1]]
            if arr_u == arr_v:
                continue
            L = 1
            while L < bound and u[(i + L) % n] == v[(j + L) % m]:
                L += 1
            if L >= bound:
                continue
            enters_left = arr_u == nxt(u[i])
            c_end = glue[u[(i + L - 1) % n]]
            leaves_left = u[(i + L) % n] == prv(c_end)
            yield i, j, L, enters_left != leaves_left, enters_left


# above this many position pairs the compiled scan wins
_COMPILED_THRESHOLD = 400


def linked_count(u: Word, v: Word, glue: Sequence[int]) -> int:
    if not u or not v:
        return 0
    if len(u) * len(v) >= _COMPILED_THRESHOLD:
        return int(_linked_kernel(_as_array(u), _as_array(v), _as_array(tuple(glue))))
    total = 0
    for vv in (v, reverse_word(v, glue)):
        for *_, linked, _ in common_segments(u, vv, glue):
            total += linked
    return total


@numba.njit(cache=True)
def _linked_kernel(u, v, glue) -> int:
    """Compiled ``linked_count`` for long words (both orientations of ``v``)."""
    n, m = len(u), len(v)
    bound = n + m
    rev = np.empty(m, dtype=np.int64)
    for k in range(m):
        rev[k] = glue[v[m - 1 - k]]
    total = 0
    for w in (v, rev):
        for i in range(n):
            ui = u[i]
            arr_u = glue[u[i - 1]]
            for j in range(m):
                if w[j] != ui or glue[w[j - 1]] == arr_u:
                    continue
                L = 1
                while L < bound and u[(i + L) % n] == w[(j + L) % m]:
                    L += 1
                if L >= bound:
                    continue
                enters_left = arr_u == ui - ui % 3 + (ui + 1) % 3
                c_end = glue[u[(i + L - 1) % n]]
                leaves_left = u[(i + L) % n] == c_end - c_end % 3 + (c_end + 2) % 3
                if enters_left != leaves_left:
                    total += 1
    return total


@lru_cache(maxsize=1 << 16)
def _as_array(word: Word) -> np.ndarray:
    return np.asarray(word, dtype=np.int64)


def twist_word(d: Word, c: Word, power: int, glue: Sequence[int], edge_of: Sequence[int]) -> Word:
    """Reduced word of ``T_c^power(d)``; positive powers turn left onto ``c``.

    Laps of ``c`` are spliced into ``d`` at the crossings of a minimal
    position drawing, in their order along ``d``: when several crossings
    share a stretch of ``d`` their laps do not commute.
    """
    if power == 0:
        return d
    arr = Arrangement([d, c], glue, edge_of)
    if not arr.crossings:
        return d
    m = len(c)
    inserts: dict[int, list[int]] = {}
    for cid, i, _ in arr.along[0]:
        x = arr.crossings[cid]
        sign = x["sign"] if x["a"] == 0 else -x["sign"]
        j = arr.where[(cid, 1)][0]
        # sign +1: d crosses c from c's left, so a left turn runs along c
        if (sign > 0) == (power > 0):
            lap = [c[(j + k) % m] for k in range(m)]
        else:
            lap = [glue[c[(j - 1 - k) % m]] for k in range(m)]
        inserts.setdefault(i, []).extend(lap * abs(power))
    path = []
    for i in range(len(d)):
        path.extend(inserts.get(i, ()))
        path.append(d[i])
    return cyclic_reduce(path, glue)


# ---------------------------------------------------------------- arrangement

_SIDE = 1 << 40
_FULL = 3 * _SIDE


def _inside(z: int, x: int, y: int) -> bool:
    """``z`` strictly inside the counter-clockwise boundary arc from ``x`` to ``y``."""
    return z != x and (z - x) % _FULL < (y - x) % _FULL


class Arrangement:
    """A transverse drawing of simple closed words, reduced to minimal position.

    Strands along each dual edge are first ordered left to right by comparing
    their futures in the edge's reference direction.  That drawing is
    transverse with every word embedded, but a linked pair may cross several
    times; empty bigon faces are then removed one at a time by swapping the
    two strands along the bigon.  Innermost bigons between two families of
    mutually disjoint curves are always empty, so the result has no bigons
    without a puncture.

    The words must split into two families of pairwise disjoint curves
    (components of ``a`` and components of ``b``); that is what makes every
    innermost bigon empty.

    After construction:

    * ``crossings[c]`` is a dict with word indices ``a``, ``b``, positions
      ``ia``, ``ib`` (the triangle index along each word) and ``sign``
      (+1 when word ``b`` crosses word ``a`` from its right to its left);
    * ``along[k]`` lists ``(crossing, position, local order)`` along word ``k``.
    """

    def __init__(self, words: Sequence[Word], glue: Sequence[int], edge_of: Sequence[int],
                 minimal: bool = True):
        self.words = [tuple(w) for w in words]
        self.glue = glue
        self.edge_of = edge_of
        self.rev = [reverse_word(w, glue) for w in self.words]
        self.bigons_removed = 0
        self._place()
        self._arcs_by_tri()
        self._tri_cross = {t: self._cross_in(t) for t in self._arcs}
        self._collect()
        if minimal:
            while True:
                touched = self._remove_bigons()
                if not touched:
                    break
                for t in touched:
                    self._tri_cross[t] = self._cross_in(t)
                self._collect()

    def _seq(self, k: int, r: bool) -> Word:
        return self.rev[k] if r else self.words[k]

    def _cmp(self, p, q) -> int:
        glue = self.glue
        u, i = self._seq(p[0], p[1]), p[2]
        v, j = self._seq(q[0], q[1]), q[2]
        n, m = len(u), len(v)
        for step in range(1, n + m + 1):
            a, b = u[(i + step) % n], v[(j + step) % m]
            if a != b:
                arrival = glue[u[(i + step - 1) % n]]
                return -1 if a == prv(arrival) else 1
        return -1 if p < q else (1 if p > q else 0)

    def _place(self):
        glue = self.glue
        by_edge: dict[int, list] = {}
        for k, w in enumerate(self.words):
            n = len(w)
            for i, h in enumerate(w):
                e = self.edge_of[h]
                if h < glue[h]:
                    by_edge.setdefault(e, []).append((k, False, i))
                else:
                    by_edge.setdefault(e, []).append((k, True, n - 1 - i))
        # rank[(k, i)]: left-to-right index of passage i of word k along the
        # edge's reference slot (the smaller of its two slots)
        self.rank: dict[tuple[int, int], int] = {}
        self.edge_count: dict[int, int] = {}
        self.edge_strands: dict[int, list] = {}
        for e, strands in by_edge.items():
            strands.sort(key=cmp_to_key(self._cmp))
            self.edge_count[e] = len(strands)
            lst = []
            for r, (k, rev, pos) in enumerate(strands):
                i = len(self.words[k]) - 1 - pos if rev else pos
                self.rank[(k, i)] = r
                lst.append((k, i))
            self.edge_strands[e] = lst

    def _param(self, k: int, i: int, slot: int) -> int:
        r = self.rank[(k, i)]
        cnt = self.edge_count[self.edge_of[slot]]
        p = cnt - 1 - r if slot < self.glue[slot] else r
        return (slot % 3) * _SIDE + p

    def _arcs_by_tri(self):
        self._arcs: dict[int, list[tuple[int, int]]] = {}
        for k, w in enumerate(self.words):
            for i in range(len(w)):
                self._arcs.setdefault(w[i] // 3, []).append((k, i))

    def _cross_in(self, t: int) -> list[tuple]:
        """Crossings inside triangle ``t`` as ``(k1, i1, k2, i2, sign, key1, key2)``."""
        glue = self.glue
        chords = []
        for k, i in self._arcs[t]:
            w = self.words[k]
            x = self._param(k, (i - 1) % len(w), glue[w[i - 1]])
            y = self._param(k, i, w[i])
            chords.append((min(x, y), max(x, y), k, i, x, y))
        chords.sort()
        out = []
        for ai, (lo1, hi1, k1, i1, x1, y1) in enumerate(chords):
            for bi in range(ai + 1, len(chords)):
                lo2, hi2, k2, i2, x2, y2 = chords[bi]
                if lo2 > hi1:
                    break
                if hi2 < hi1 or k1 == k2:
                    continue
                # lo1 < lo2 < hi1 < hi2: the chords interleave
                in_x2 = _inside(x2, x1, y1)
                e1 = x2 if in_x2 else y2
                e2 = x1 if _inside(x1, x2, y2) else y1
                out.append((k1, i1, k2, i2, 1 if in_x2 else -1, (e1 - x1) % _FULL, (e2 - x2) % _FULL))
        return out

    def _collect(self):
        self.crossings = []
        local: dict[tuple[int, int], list] = {}
        for t in sorted(self._tri_cross):
            for k1, i1, k2, i2, sign, key1, key2 in self._tri_cross[t]:
                cid = len(self.crossings)
                self.crossings.append({"a": k1, "ia": i1, "b": k2, "ib": i2, "sign": sign})
                local.setdefault((k1, i1), []).append((key1, cid))
                local.setdefault((k2, i2), []).append((key2, cid))
        self.along = [[] for _ in self.words]
        self.where: dict[tuple[int, int], tuple[int, int]] = {}
        for (k, i), lst in local.items():
            lst.sort()
            for o, (_, cid) in enumerate(lst):
                self.along[k].append((cid, i, o))
                self.where[(cid, k)] = (i, o)
        self._index = {}
        for k in range(len(self.words)):
            self.along[k].sort(key=lambda z: (z[1], z[2]))
            for idx, z in enumerate(self.along[k]):
                self._index[(z[0], k)] = idx

    # -------------------------------------------------------------- queries

    def count_between(self, group_a: set[int], group_b: set[int]) -> int:
        c = 0
        for x in self.crossings:
            if (x["a"] in group_a and x["b"] in group_b) or (x["a"] in group_b and x["b"] in group_a):
                c += 1
        return c

    def passages(self, k: int, start: tuple[int, int], end: tuple[int, int], forward: bool) -> list[int]:
        """Word positions whose edges word ``k`` crosses between two locations."""
        n = len(self.words[k])
        (i0, o0), (i1, o1) = start, end
        if forward:
            cnt = (i1 - i0) % n
            if i1 == i0 and o1 <= o0:
                cnt = n
            return [(i0 + s) % n for s in range(cnt)]
        cnt = (i0 - i1) % n
        if i0 == i1 and o1 >= o0:
            cnt = n
        return [(i0 - 1 - s) % n for s in range(cnt)]

    def segment(self, k: int, start: tuple[int, int], end: tuple[int, int], forward: bool) -> list[int]:
        """Slots traversed by word ``k`` between two locations."""
        w = self.words[k]
        pos = self.passages(k, start, end, forward)
        if forward:
            return [w[p] for p in pos]
        return [self.glue[w[p]] for p in pos]

    def next_along(self, k: int, cid: int, forward: bool) -> int:
        seq = self.along[k]
        idx = self._index[(cid, k)]
        return seq[(idx + (1 if forward else -1)) % len(seq)][0]

    def _rotation(self, cid: int):
        x = self.crossings[cid]
        A, B = x["a"], x["b"]
        if x["sign"] > 0:
            return [(A, 1), (B, 1), (A, -1), (B, -1)]
        return [(A, 1), (B, -1), (A, -1), (B, 1)]

    def face_walks(self) -> list[list[tuple[int, int, int]]]:
        """Boundary walks of the complement as lists of darts ``(crossing, word, dir)``."""
        seen = set()
        faces = []
        for cid in range(len(self.crossings)):
            for k, d in self._rotation(cid):
                if (cid, k, d) in seen:
                    continue
                walk = []
                cur = (cid, k, d)
                while cur not in seen:
                    seen.add(cur)
                    walk.append(cur)
                    c0, kk, dd = cur
                    c1 = self.next_along(kk, c0, dd > 0)
                    rot = self._rotation(c1)
                    back = rot.index((kk, -dd))
                    nk, nd = rot[(back + 1) % 4]
                    cur = (c1, nk, nd)
                faces.append(walk)
        return faces

    def walk_path(self, walk) -> list[int]:
        path: list[int] = []
        for c0, k, d in walk:
            c1 = self.next_along(k, c0, d > 0)
            path.extend(self.segment(k, self.where[(c0, k)], self.where[(c1, k)], d > 0))
        return path

    def face_paths(self) -> list[list[int]]:
        return [self.walk_path(w) for w in self.face_walks()]

    def _remove_bigons(self) -> set[int]:
        """Uncross every empty bigon face that does not interfere with another.

        Returns the triangles whose chords moved.
        """
        used_edges: set[int] = set()
        touched: set[int] = set()
        for walk in self.face_walks():
            if len(walk) != 2:
                continue
            (c0, k0, d0), (c1, k1, d1) = walk
            if k0 == k1 or cyclic_reduce(self.walk_path(walk), self.glue):
                continue
            p0 = self.passages(k0, self.where[(c0, k0)], self.where[(c1, k0)], d0 > 0)
            p1 = self.passages(k1, self.where[(c1, k1)], self.where[(c0, k1)], d1 > 0)
            if len(p0) != len(p1) or not p0:
                continue
            pairs = list(zip(p0, reversed(p1)))
            edges = [self.edge_of[self.words[k0][i]] for i, _ in pairs]
            if any(e != self.edge_of[self.words[k1][j]] for e, (_, j) in zip(edges, pairs)):
                continue
            if used_edges.intersection(edges):
                continue
            if any(abs(self.rank[(k0, i)] - self.rank[(k1, j)]) != 1 for i, j in pairs):
                raise AssertionError("bigon face is not empty")
            used_edges.update(edges)
            for (i, j), e in zip(pairs, edges):
                ri, rj = self.rank[(k0, i)], self.rank[(k1, j)]
                self.rank[(k0, i)], self.rank[(k1, j)] = rj, ri
                lst = self.edge_strands[e]
                lst[ri], lst[rj] = lst[rj], lst[ri]
                h = self.words[k0][i]
                touched.add(h // 3)
                touched.add(self.glue[h] // 3)
            self.bigons_removed += 1
        return touched

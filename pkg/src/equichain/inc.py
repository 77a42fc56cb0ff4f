"""Strictly increasing maps, finite permutations, and their action on R.

An :class:`IncMap` is the restriction of an element of Inc(N) to a window
[m]; that restriction determines the action on R_m.  Where an honest element
of Inc(N) is needed, the map is extended by k -> k + (p(m) - m) for k > m.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, NamedTuple, Optional, Sequence, Union

from .ring import Monomial, Polynomial


@dataclass(frozen=True)
class IncMap:
    images: tuple

    def __post_init__(self):
        imgs = tuple(int(v) for v in self.images)
        object.__setattr__(self, "images", imgs)
        prev = 0
        for v in imgs:
            if v <= prev:
                raise ValueError(f"images must be strictly increasing and >= 1: {imgs}")
            prev = v

    @classmethod
    def identity(cls, m: int) -> "IncMap":
        return cls(tuple(range(1, m + 1)))

    @property
    def m(self) -> int:
        return len(self.images)

    @property
    def top(self) -> int:
        """p(m); 0 for the empty map."""
        return self.images[-1] if self.images else 0

    def __call__(self, k: int) -> int:
        if k < 1:
            raise ValueError(f"column {k} < 1")
        if k <= self.m:
            return self.images[k - 1]
        return k + self.top - self.m

    def in_window(self, m: int, n: int) -> bool:
        """Whether this restriction belongs to Inc(N)_{m,n}."""
        return self.m == m and self.top <= n

    def then(self, other: "IncMap") -> "IncMap":
        """other o self, restricted to [self.m]."""
        return IncMap(tuple(other(v) for v in self.images))

    def __str__(self):
        return f"[{self.m}->({','.join(map(str, self.images))})]"

    @classmethod
    def parse(cls, text: str) -> "IncMap":
        mt = re.fullmatch(r"\s*\[\s*(\d+)\s*->\s*\(([\d,\s]*)\)\s*\]\s*", text)
        if not mt:
            raise ValueError(f"cannot parse IncMap {text!r}")
        imgs = tuple(int(s) for s in mt.group(2).split(",") if s.strip())
        if len(imgs) != int(mt.group(1)):
            raise ValueError(f"domain bound {mt.group(1)} does not match {len(imgs)} images")
        return cls(imgs)


@dataclass(frozen=True)
class Permutation:
    """Bijection of [n], identity beyond n (an element of S_n)."""

    images: tuple

    def __post_init__(self):
        imgs = tuple(int(v) for v in self.images)
        object.__setattr__(self, "images", imgs)
        if sorted(imgs) != list(range(1, len(imgs) + 1)):
            raise ValueError(f"not a permutation of [{len(imgs)}]: {imgs}")

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, k: int) -> int:
        return self.images[k - 1] if k <= self.n else k

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, v in enumerate(self.images, start=1):
            inv[v - 1] = i
        return Permutation(tuple(inv))

    @classmethod
    def reversal(cls, n: int) -> "Permutation":
        """j -> n + 1 - j on [n]."""
        return cls(tuple(range(n, 0, -1)))

    def __str__(self):
        return f"({','.join(map(str, self.images))})"


def apply(p: Union[IncMap, Permutation], f: Union[Polynomial, Monomial]):
    """Relabel columns of ``f`` through ``p``; IncMaps only see columns <= p.m."""
    if isinstance(p, IncMap) and f.max_col() > p.m:
        raise ValueError(f"column {f.max_col()} exceeds domain bound {p.m} of {p}")
    return f.relabel(p)


def enumerate_inc(m: int, n: int) -> list:
    """All strictly increasing maps [m] -> [n], lexicographically."""
    if m < 0 or m > n:
        raise ValueError(f"need 0 <= m <= n, got m={m}, n={n}")
    return [IncMap(c) for c in combinations(range(1, n + 1), m)]


def _check_points(points: Sequence, N: int, n: int):
    if N > n:
        raise ValueError(f"need N <= n, got N={N}, n={n}")
    pi = pj = 0
    for pt in points:
        if len(pt) != 2:
            raise ValueError(f"malformed point {pt!r}")
        i, j = pt
        if i <= pi or j <= pj:
            raise ValueError(f"points must increase strictly in both coordinates: {points}")
        pi, pj = i, j
    if pi > N or pj > n:
        raise ValueError(f"points {points} exceed window ({N}, {n})")


def exists_map_through(points: Sequence, N: int, n: int) -> bool:
    """Gap criterion: some p in Inc(N)_{N,n} has p(i_r) = j_r for every point.

    Holds iff j_r - j_{r-1} >= i_r - i_{r-1} for all r, with sentinels
    (0, 0) in front and (N+1, n+1) at the end.
    """
    _check_points(points, N, n)
    pts = [(0, 0), *points, (N + 1, n + 1)]
    return all(b[1] - a[1] >= b[0] - a[0] for a, b in zip(pts, pts[1:]))


def map_through(points: Sequence, N: int, n: int) -> Optional[IncMap]:
    """A witness for :func:`exists_map_through`, or None.

    Columns between anchors are packed against the left anchor; the gap
    criterion guarantees room.
    """
    if not exists_map_through(points, N, n):
        return None
    anchors = dict(points)
    imgs = []
    last_i = last_j = 0
    for k in range(1, N + 1):
        if k in anchors:
            last_i, last_j = k, anchors[k]
            imgs.append(last_j)
        else:
            imgs.append(last_j + (k - last_i))
    return IncMap(tuple(imgs))


def can_replace_in_window(f: Polynomial, p: IncMap, m: int, n: int) -> bool:
    """Whether some p' in Inc(N)_{m,n} satisfies p'.f = p.f.

    With m', n' the smallest truncations containing f and p.f this is
    m - m' <= n - n'.
    """
    if f.degree <= 0:
        raise ValueError("f must have positive degree")
    m_min = f.max_col()
    if m_min > m:
        raise ValueError(f"f is not in R_{m}")
    n_min = apply(p, f).max_col()
    if n_min > n:
        raise ValueError(f"p.f is not in R_{n}")
    return m - m_min <= n - n_min


class Decomposition(NamedTuple):
    p1: IncMap
    p2: IncMap


def decompose(p: IncMap, l: int, m: int, n: int) -> Decomposition:
    """Split p in Inc_{l,n} as p2 o p1 with p1 in Inc_{l,m}, p2 in Inc_{m,n}.

    p1(k) = max(k, p(k) - (n - m)): the shift p(k) - p1(k) is then
    nondecreasing in k and at most n - m, which is exactly the gap criterion
    for a p2 through the points (p1(k), p(k)).
    """
    if not (0 <= l <= m <= n) or p.m != l or p.top > n:
        raise ValueError(f"need p in Inc_{{{l},{n}}} and l <= m <= n; got {p}, l={l}, m={m}, n={n}")
    slack = n - m
    p1 = IncMap(tuple(max(k, v - slack) for k, v in enumerate(p.images, start=1)))
    p2 = map_through(list(zip(p1.images, p.images)), m, n)
    if p2 is None:  # pragma: no cover - excluded by the construction above
        raise AssertionError(f"no decomposition found for {p}")
    return Decomposition(p1, p2)


class IncWitness(NamedTuple):
    p: IncMap
    h: Monomial


def inc_divides(f: Monomial, g: Monomial, window: tuple) -> Optional[IncWitness]:
    """Find p in Inc(N)_{m,n} and a monomial h with h * (p.f) = g, if any.

    Exhaustive over increasing assignments of f's support columns to g's
    support columns, each validated by the gap criterion.
    """
    m, n = window
    if f.max_col() > m or g.max_col() > n:
        raise ValueError("monomials exceed the window")
    if m > n:
        return None
    fcols = f.columns()
    gcols = g.columns()
    for targets in combinations(gcols, len(fcols)):
        pts = list(zip(fcols, targets))
        if not exists_map_through(pts, m, n):
            continue
        p = map_through(pts, m, n)
        h = g.quotient(f.relabel(p))
        if h is not None:
            return IncWitness(p, h)
    return None


def find_stabilizing_pair(levels: Sequence[int], monomials: Sequence[Monomial]) -> Optional[tuple]:
    """First (j, k), 1-based with j < k, such that g_k lies in <Inc_{i_j,i_k} g_j>.

    Scans k ascending, then j ascending.  None when the finite input has no
    such pair.
    """
    if len(levels) != len(monomials) or not levels:
        raise ValueError("need equally long, nonempty level and monomial lists")
    if any(a > b for a, b in zip(levels, levels[1:])):
        raise ValueError("levels must be ascending")
    for k in range(1, len(levels)):
        for j in range(k):
            if inc_divides(monomials[j], monomials[k], (levels[j], levels[k])) is not None:
                return (j + 1, k + 1)
    return None


def extend_to_permutation(p: IncMap, cols: Iterable[int], n: int) -> Permutation:
    """A sigma in S_n agreeing with p on ``cols``; other columns fill in order."""
    cols = sorted(set(cols))
    fixed = {c: p(c) for c in cols}
    if any(v > n for v in fixed.values()) or any(c > n for c in cols):
        raise ValueError("columns or images exceed n")
    free_src = [k for k in range(1, n + 1) if k not in fixed]
    used = set(fixed.values())
    free_dst = [k for k in range(1, n + 1) if k not in used]
    imgs = dict(fixed)
    imgs.update(zip(free_src, free_dst))
    return Permutation(tuple(imgs[k] for k in range(1, n + 1)))


def orbit_inclusion_check(f: Polynomial, m: int, n: int) -> bool:
    """Inc(N)_{m,n}.f is contained in S_n.f, witnessed map by map."""
    if f.max_col() > m or m > n:
        raise ValueError("need f in R_m and m <= n")
    cols = f.columns()
    for p in enumerate_inc(m, n):
        sigma = extend_to_permutation(p, cols, n)
        if apply(sigma, f) != apply(p, f):
            return False
    return True

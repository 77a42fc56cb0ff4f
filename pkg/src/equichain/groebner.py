"""Buchberger's algorithm, normal forms and monomial ideals in truncated rings.

Only total term orders drive Buchberger; initial ideals of preorders come
from the linear-algebra oracle instead.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence

from .inc import IncMap, apply
from .orders import BlockOrder, ColumnLex, DEGMAX2, OrderSpec
from .ring import Monomial, Polynomial, Truncation, TruncationError


def _require_term_order(order: OrderSpec):
    if not order.is_term_order:
        raise ValueError(f"{order.label} is not a total term order")


def _check_trunc(gens: Iterable[Polynomial], trunc: Truncation):
    for g in gens:
        if not trunc.contains(g):
            raise TruncationError(f"{g} does not lie in R_{trunc.n} with c={trunc.c}")


class MonomialIdeal:
    """Monomial ideal stored by its unique minimal generating set."""

    __slots__ = ("trunc", "gens")

    def __init__(self, gens: Iterable[Monomial] = (), trunc: Optional[Truncation] = None):
        self.trunc = trunc
        cands = sorted(set(gens), key=lambda m: (m.degree, m.key))
        kept: list = []
        for m in cands:
            if not any(g.divides(m) for g in kept):
                kept.append(m)
        self.gens = tuple(kept)

    def contains(self, m: Monomial) -> bool:
        return any(g.divides(m) for g in self.gens)

    __contains__ = contains

    def issubset(self, other: "MonomialIdeal") -> bool:
        return all(other.contains(g) for g in self.gens)

    __le__ = issubset

    def is_zero(self) -> bool:
        return not self.gens

    def relabel(self, p, trunc: Optional[Truncation] = None) -> "MonomialIdeal":
        return MonomialIdeal((apply(p, g) for g in self.gens), trunc)

    def __add__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return MonomialIdeal(self.gens + other.gens, self.trunc or other.trunc)

    def __eq__(self, other):
        return isinstance(other, MonomialIdeal) and self.gens == other.gens

    def __hash__(self):
        return hash(self.gens)

    def __str__(self):
        if not self.gens:
            return "<0>"
        return "<" + ", ".join(str(g) for g in self.gens) + ">"

    def __repr__(self):
        return f"MonomialIdeal({self})"


def _leading(f: Polynomial, key: Callable):
    m = max(f.terms, key=key)
    return m, f.terms[m]


def _monic(f: Polynomial, key: Callable) -> Polynomial:
    _, c = _leading(f, key)
    return f if c == 1 else f.scale(1 / c)


def normal_form(f: Polynomial, G: Sequence[Polynomial], order: OrderSpec, key: Optional[Callable] = None) -> Polynomial:
    """Full remainder of f modulo G; the first divisor in G's stored order is used."""
    key = key or order.sort_key()
    leads = [_leading(g, key) for g in G if not g.is_zero()]
    G = [g for g in G if not g.is_zero()]
    p = dict(f.terms)
    rem: dict = {}
    while p:
        m = max(p, key=key)
        c = p[m]
        for g, (lm, lc) in zip(G, leads):
            q = m.quotient(lm)
            if q is None:
                continue
            factor = c / lc
            for t, v in g.terms.items():
                tq = t * q
                s = p.get(tq, 0) - factor * v
                if s == 0:
                    p.pop(tq, None)
                else:
                    p[tq] = s
            break
        else:
            rem[m] = c
            del p[m]
    return Polynomial._raw(rem)


def s_polynomial(f: Polynomial, g: Polynomial, order: OrderSpec, key: Optional[Callable] = None) -> Polynomial:
    if f.is_zero() or g.is_zero():
        raise ValueError("S-polynomial of a zero polynomial")
    key = key or order.sort_key()
    lf, cf = _leading(f, key)
    lg, cg = _leading(g, key)
    lcm = lf.lcm(lg)
    return f.mul_term(lcm.quotient(lf), 1 / cf) - g.mul_term(lcm.quotient(lg), 1 / cg)


@dataclass
class GroebnerBasis:
    order: OrderSpec
    trunc: Truncation
    elements: list
    reduced: bool = True

    def __post_init__(self):
        self._key = self.order.sort_key()

    @property
    def leading_monomials(self) -> list:
        return [_leading(g, self._key)[0] for g in self.elements]

    def initial_ideal(self) -> MonomialIdeal:
        return MonomialIdeal(self.leading_monomials, self.trunc)

    def reduce(self, f: Polynomial) -> Polynomial:
        return normal_form(f, self.elements, self.order, self._key)

    def contains(self, f: Polynomial) -> bool:
        return self.reduce(f).is_zero()

    def is_groebner(self) -> bool:
        """Every S-polynomial reduces to zero."""
        G = self.elements
        for i in range(len(G)):
            for j in range(i + 1, len(G)):
                if not self.reduce(s_polynomial(G[i], G[j], self.order, self._key)).is_zero():
                    return False
        return True

    def as_dict(self) -> dict:
        return {
            "order": self.order.spec,
            "c": self.trunc.c,
            "n": self.trunc.n,
            "elements": [str(g) for g in self.elements],
            "initial_ideal": [str(m) for m in self.initial_ideal().gens],
        }


def _pair_key(lms, i, j):
    lcm = lms[i].lcm(lms[j])
    return (lcm.degree, lcm.key, i, j)


def buchberger(
    gens: Sequence[Polynomial],
    order: OrderSpec,
    trunc: Truncation,
    chain_criterion: bool = False,
    check: bool = False,
) -> GroebnerBasis:
    """Reduced Groebner basis of <gens> in R_trunc.

    Pairs are processed by the normal strategy (ascending lcm degree, ties
    by canonical key).  Coprime leading monomials are skipped; with
    ``chain_criterion`` a pair is also skipped when a third leading monomial
    divides its lcm and both companion pairs are already done.
    """
    _require_term_order(order)
    _check_trunc(gens, trunc)
    key = order.sort_key()
    G: list = []
    lms: list = []
    for g in sorted({g for g in gens if not g.is_zero()}, key=lambda g: [t.key for t, _ in g.sorted_terms()]):
        G.append(_monic(g, key))
        lms.append(_leading(G[-1], key)[0])
    heap = [_pair_key(lms, i, j) for i in range(len(G)) for j in range(i + 1, len(G))]
    heapq.heapify(heap)
    done = set()
    while heap:
        _, _, i, j = heapq.heappop(heap)
        done.add((i, j))
        if lms[i].lcm(lms[j]).degree == lms[i].degree + lms[j].degree:
            continue  # coprime leading monomials
        if chain_criterion:
            lcm = lms[i].lcm(lms[j])
            if any(
                k != i and k != j
                and lms[k].divides(lcm)
                and (min(i, k), max(i, k)) in done
                and (min(j, k), max(j, k)) in done
                for k in range(len(G))
            ):
                continue
        r = normal_form(s_polynomial(G[i], G[j], order, key), G, order, key)
        if r.is_zero():
            continue
        G.append(_monic(r, key))
        lms.append(_leading(G[-1], key)[0])
        k = len(G) - 1
        for a in range(k):
            heapq.heappush(heap, _pair_key(lms, a, k))
    basis = GroebnerBasis(order, trunc, _reduce_basis(G, lms, order, key))
    if check and not basis.is_groebner():  # pragma: no cover - would be a bug
        raise AssertionError("Buchberger output fails the S-polynomial criterion")
    return basis


def _reduce_basis(G, lms, order, key) -> list:
    keep = []
    for i, m in enumerate(lms):
        dominated = False
        for j, other in enumerate(lms):
            if j == i:
                continue
            if other.divides(m) and (other != m or j < i):
                dominated = True
                break
        if not dominated:
            keep.append(i)
    minimal = [G[i] for i in keep]
    out = []
    for idx, g in enumerate(minimal):
        lm, _ = _leading(g, key)
        tail = Polynomial._raw({t: c for t, c in g.terms.items() if t != lm})
        others = minimal[:idx] + minimal[idx + 1:]
        r = normal_form(tail, others, order, key)
        out.append(r + Polynomial._raw({lm: g.terms[lm]}))
    out = [_monic(g, key) for g in out]
    out.sort(key=lambda g: key(_leading(g, key)[0]))
    return out


def initial_ideal(gens: Sequence[Polynomial], order: OrderSpec, trunc: Truncation) -> MonomialIdeal:
    return buchberger(gens, order, trunc).initial_ideal()


def reference_order(c: int) -> OrderSpec:
    """Fixed total order used for order-independent questions."""
    if c == 1:
        return DEGMAX2
    inner = [[1] * c] + [[1 if k == r else 0 for k in range(c)] for r in range(c - 1)]
    return ColumnLex(tuple(tuple(row) for row in inner))


def ideal_equal(gens1: Sequence[Polynomial], gens2: Sequence[Polynomial], trunc: Truncation) -> bool:
    """<gens1> == <gens2> in R_trunc, by mutual normal-form membership."""
    order = reference_order(trunc.c)
    g1 = buchberger(gens1, order, trunc)
    g2 = buchberger(gens2, order, trunc)
    return all(g1.contains(f) for f in gens2) and all(g2.contains(f) for f in gens1)


def ideal_contains(gens: Sequence[Polynomial], f: Polynomial, trunc: Truncation) -> bool:
    return buchberger(gens, reference_order(trunc.c), trunc).contains(f)


def intersect_with_columns(gens: Sequence[Polynomial], trunc: Truncation, A: Iterable[int]) -> list:
    """Generators of <gens> intersected with R_A, the ring on columns in A.

    Eliminates the other columns with a block order; the basis elements
    free of those columns form a Groebner basis of the intersection.
    """
    A = frozenset(A)
    if any(a < 1 or a > trunc.n for a in A):
        raise ValueError(f"columns {sorted(A)} not inside [{trunc.n}]")
    gb = buchberger(gens, BlockOrder(A, trunc), trunc)
    return [g for g in gb.elements if set(g.columns()) <= A]


def check_in_commutes_with_inc(gens: Sequence[Polynomial], p: IncMap, order: OrderSpec, trunc: Truncation) -> bool:
    """p.in(J) == in(p.J), both as monomial ideals of R_{p(n)}."""
    if p.m < trunc.n:
        raise ValueError(f"{p} must be defined on [{trunc.n}]")
    target = Truncation(trunc.c, p.top)
    lhs = initial_ideal(gens, order, trunc).relabel(p, target)
    rhs = initial_ideal([apply(p, g) for g in gens], order, target)
    return lhs == rhs

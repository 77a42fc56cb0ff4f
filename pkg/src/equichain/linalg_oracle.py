"""Degree-by-degree ideal slices and initial spaces by exact linear algebra.

This is the independent check on the Groebner code, and the only route to
initial spaces of non-total preorders: refine the preorder to a total order
(ties broken by the canonical monomial key), echelonize, then take the
preorder leading form of every echelon row.
"""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .orders import CompareResult, OrderSpec, leading_form
from .ring import GF, Monomial, Polynomial, Truncation, TruncationError


def rref(vectors: Sequence[dict], columns: Sequence[Monomial]) -> list:
    """Reduced row echelon form of sparse vectors (dict column -> value).

    ``columns`` lists the pivot priority, first = highest.  Returns the
    nonzero rows, each normalized to pivot coefficient 1, in pivot order.
    """
    rank = {m: i for i, m in enumerate(columns)}
    rows: dict = {}  # pivot column -> row
    for vec in vectors:
        v = {m: Fraction(c) if isinstance(c, int) else c for m, c in vec.items() if c != 0}
        for m in v:
            if m not in rank:
                raise ValueError(f"monomial {m} is not among the columns")
        while v:
            piv = min(v, key=rank.__getitem__)
            if piv not in rows:
                inv = 1 / v[piv]
                rows[piv] = {m: c * inv for m, c in v.items()}
                break
            r = rows[piv]
            f = v[piv]
            for m, c in r.items():
                s = v.get(m, 0) - f * c
                if s == 0:
                    v.pop(m, None)
                else:
                    v[m] = s
    # back substitution, lowest pivots first
    pivots = sorted(rows, key=rank.__getitem__)
    for idx in range(len(pivots) - 1, -1, -1):
        p = pivots[idx]
        for q in pivots[:idx]:
            rq = rows[q]
            f = rq.get(p)
            if f:
                for m, c in rows[p].items():
                    s = rq.get(m, 0) - f * c
                    if s == 0:
                        rq.pop(m, None)
                    else:
                        rq[m] = s
    return [rows[p] for p in pivots]


def pivot_of(row: dict, columns: Sequence[Monomial]) -> Monomial:
    rank = {m: i for i, m in enumerate(columns)}
    return min(row, key=rank.__getitem__)


@dataclass
class GradedPiece:
    trunc: Truncation
    degree: int
    basis: list  # RREF rows as Polynomials
    columns: tuple  # canonical column order used for the echelon form

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, f: Polynomial) -> bool:
        return in_span(f, self.basis, self.columns)


def _canonical_columns(trunc: Truncation, d: int) -> tuple:
    layer = _degree_monomials(trunc, d)
    return tuple(sorted(layer, key=lambda m: m.key, reverse=True))


def _degree_monomials(trunc: Truncation, d: int) -> list:
    vars_ = trunc.variables()
    return [Monomial([(v, 1) for v in combo]) for combo in itertools.combinations_with_replacement(vars_, d)]


def graded_piece(gens: Sequence[Polynomial], trunc: Truncation, d: int) -> GradedPiece:
    """Basis of the degree-d part of <gens> in R_trunc (homogeneous generators)."""
    vecs = []
    for g in gens:
        if g.is_zero():
            continue
        if not g.is_homogeneous():
            raise ValueError(f"graded pieces need homogeneous generators; {g} is not")
        if not trunc.contains(g):
            raise TruncationError(f"{g} does not lie in R_{trunc.n}")
        e = g.degree
        if e > d:
            continue
        for m in _degree_monomials(trunc, d - e):
            vecs.append(g.mul_term(m, 1).terms)
    cols = _canonical_columns(trunc, d)
    rows = rref(vecs, cols)
    return GradedPiece(trunc, d, [Polynomial._raw(r) for r in rows], cols)


def in_span(f: Polynomial, basis: Sequence[Polynomial], columns: Sequence[Monomial]) -> bool:
    if f.is_zero():
        return True
    rows = rref([b.terms for b in basis], columns)
    return len(rref([r for r in rows] + [f.terms], columns)) == len(rows)


def refinement_key(order: OrderSpec):
    """Total refinement: the order first, canonical key for ties."""

    def cmp(a: Monomial, b: Monomial) -> int:
        r = order.compare(a, b)
        if r is CompareResult.LESS:
            return -1
        if r is CompareResult.GREATER:
            return 1
        return (a.key > b.key) - (a.key < b.key)

    return functools.cmp_to_key(cmp)


def initial_space(order: OrderSpec, piece: GradedPiece) -> Union[frozenset, list]:
    """Pivot monomials (term orders) or an echelon basis of leading forms (preorders)."""
    if order.is_term_order:
        cols = sorted(piece.columns, key=order.sort_key(), reverse=True)
        rows = rref([b.terms for b in piece.basis], cols)
        return frozenset(pivot_of(r, cols) for r in rows)
    cols = sorted(piece.columns, key=refinement_key(order), reverse=True)
    rows = rref([b.terms for b in piece.basis], cols)
    forms = [leading_form(order, Polynomial._raw(r)) for r in rows]
    return [Polynomial._raw(r) for r in rref([f.terms for f in forms], piece.columns)]


def monomial_in_initial(order: OrderSpec, gens: Sequence[Polynomial], trunc: Truncation, m: Monomial) -> bool:
    piece = graded_piece(gens, trunc, m.degree)
    space = initial_space(order, piece)
    if isinstance(space, frozenset):
        return m in space
    if not space:
        return False
    return in_span(Polynomial._raw({m: _one_like(space[0])}), space, piece.columns)


def _one_like(f: Polynomial):
    c = next(iter(f.terms.values()))
    return GF(1, c.p) if isinstance(c, GF) else Fraction(1)


def leading_form_span_bruteforce(order: OrderSpec, basis: Sequence[Polynomial], columns: Sequence[Monomial]) -> list:
    """Echelon basis of the span of leading forms of every nonzero vector.

    Enumerates the whole space, so the basis must be over a small GF(p).
    """
    if not basis:
        return []
    c0 = next(iter(basis[0].terms.values()))
    if not isinstance(c0, GF):
        raise ValueError("full enumeration needs GF(p) coefficients")
    p = c0.p
    forms = []
    for coeffs in itertools.product(range(p), repeat=len(basis)):
        if not any(coeffs):
            continue
        v = Polynomial()
        for a, b in zip(coeffs, basis):
            if a:
                v = v + b.scale(GF(a, p))
        if not v.is_zero():
            forms.append(leading_form(order, v).terms)
    return [Polynomial._raw(r) for r in rref(forms, columns)]


def spans_equal(a: Sequence[Polynomial], b: Sequence[Polynomial], columns: Sequence[Monomial]) -> bool:
    ra = rref([f.terms for f in a], columns)
    rb = rref([f.terms for f in b], columns)
    return ra == rb

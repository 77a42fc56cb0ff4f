import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import gf2_span
from equichain.chains import spread
from equichain.inc import Permutation
from equichain.linalg_oracle import (
    graded_piece,
    initial_space,
    leading_form_span_bruteforce,
    monomial_in_initial,
    rref,
    spans_equal,
)
from equichain.orders import (
    DEG,
    TRIVIAL,
    MatrixOrder,
    NamedOrder,
    PermutedLex,
    leading_form,
    prop43_families,
)
from equichain.ring import GF, Polynomial, Truncation, TruncationError, parse_polynomial, to_gf


def P(t):
    return parse_polynomial(t)


def M(t):
    return P(t).monomials()[0]


R3 = Truncation(1, 3)
CUBIC = spread([P("x1^2*x2 + x1*x2^2")], 2, 3)  # f_12, f_13, f_23


def test_graded_piece_examples():
    piece = graded_piece(CUBIC, R3, 3)
    assert piece.dim == 3
    for i, j in itertools.combinations(range(1, 4), 2):
        assert piece.contains(P(f"x{i}^2*x{j} + x{i}*x{j}^2"))
    assert not piece.contains(P("x1^3"))
    assert graded_piece([], R3, 4).dim == 0
    piece = graded_piece([P("x1")], Truncation(1, 2), 2)
    assert piece.dim == 2 and piece.contains(P("x1^2")) and piece.contains(P("x1*x2"))
    assert not piece.contains(P("x2^2"))


def test_graded_piece_errors():
    with pytest.raises(ValueError):
        graded_piece([P("x1 + x2^2")], R3, 2)
    with pytest.raises(TruncationError):
        graded_piece([P("x4")], R3, 1)


def test_rref_is_reduced():
    cols = sorted(graded_piece([], R3, 2).columns, key=lambda m: m.key, reverse=True)
    rows = rref([P("x1^2 + x2^2").terms, P("x1^2 - x1*x2").terms, P("2*x2^2").terms], cols)
    pivots = [min(r, key=cols.index) for r in rows]
    assert len(rows) == 3
    for r, p in zip(rows, pivots):
        assert r[p] == 1
        assert all(p not in other for other in rows if other is not r)


def test_initial_space_permuted_lex():
    piece = graded_piece(CUBIC, R3, 3)
    assert M("x1^2*x2") in initial_space(PermutedLex(Permutation((1, 2, 3))), piece)
    assert M("x1^2*x2") not in initial_space(PermutedLex(Permutation((2, 1, 3))), piece)
    assert M("x1*x2^2") in initial_space(PermutedLex(Permutation((2, 1, 3))), piece)


def test_initial_space_max3_forms():
    piece = graded_piece(CUBIC, R3, 3)
    forms = initial_space(NamedOrder("max", 3), piece)
    assert isinstance(forms, list) and len(forms) == 3
    expected = [P("x1^2*x2 + x1*x2^2"), P("x1*x3^2"), P("x2*x3^2")]
    assert spans_equal(forms, expected, piece.columns)
    assert leading_form(NamedOrder("max", 3), P("x1^2*x3 + x1*x3^2")) == P("x1*x3^2")


def test_monomial_in_initial_examples():
    assert monomial_in_initial(NamedOrder("max", 2), CUBIC, R3, M("x1*x2^2"))
    assert not monomial_in_initial(NamedOrder("max", 3), CUBIC, R3, M("x1*x2^2"))
    assert monomial_in_initial(NamedOrder("max", 3), CUBIC, R3, M("x1*x3^2"))
    assert not monomial_in_initial(NamedOrder("max", 2), [], R3, M("x1"))
    assert not monomial_in_initial(TRIVIAL, CUBIC, R3, M("x1*x3^2"))


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_max_n_initial_ideals_pairwise_distinct(n):
    """x1*xn^2 is in in(J) under Max(n) and not under Max(n') for n' > n."""
    T = Truncation(1, 5)
    J = spread([P("x1^2*x2 + x1*x2^2")], 2, 5)
    m = M(f"x1*x{n}^2")
    assert monomial_in_initial(NamedOrder("max", n), J, T, m)
    for n2 in range(n + 1, 6):
        assert not monomial_in_initial(NamedOrder("max", n2), J, T, m)


def test_graded_dimension_monotone():
    g = [P("x1*x2 - x2^2")]
    for d in (2, 3):
        dims = [graded_piece(spread(g, 2, n), Truncation(1, n), d).dim for n in range(2, 6)]
        assert dims == sorted(dims)


NONTOTAL = [o for o in prop43_families() if not o.is_term_order] + [
    DEG,
    MatrixOrder(((1, 1, 1, 1),)),
    MatrixOrder(((0, 0, 0, 1), (0, 1, 0, 0))),
    NamedOrder("max", 3),
]


def _gf2_forms_span(order, basis):
    elems = set()
    for coeffs in itertools.product((0, 1), repeat=len(basis)):
        v = {}
        for a, b in zip(coeffs, basis):
            if a:
                for m, c in b.terms.items():
                    v[m] = (v.get(m, 0) + int(c.value)) % 2
        v = {m: c for m, c in v.items() if c}
        if v:
            lf = leading_form(order, Polynomial({m: GF(c, 2) for m, c in v.items()}))
            elems.add(frozenset(lf.terms))
    return gf2_span([{m: 1 for m in e} for e in elems])


@pytest.mark.parametrize("order", NONTOTAL, ids=lambda o: o.spec)
@settings(max_examples=15)
@given(st.lists(st.tuples(st.integers(1, 3), st.integers(1, 4), st.integers(1, 4)), min_size=1, max_size=3), st.integers(2, 3))
def test_refinement_matches_full_enumeration_gf2(order, picks, d):
    T = Truncation(1, 4)
    gens = [to_gf(P(f"x{a}*x{b} + x{b}*x{c} + x{a}*x{c}"), 2) for a, b, c in picks]
    piece = graded_piece(gens, T, d)
    if piece.dim == 0 or piece.dim > 12:
        return
    refined = initial_space(order, piece)
    brute = leading_form_span_bruteforce(order, piece.basis, piece.columns)
    assert spans_equal(refined, brute, piece.columns)
    ours = gf2_span([{m: 1 for m in f.terms} for f in refined])
    assert ours == _gf2_forms_span(order, piece.basis)


def test_bruteforce_requires_finite_field():
    with pytest.raises(ValueError):
        leading_form_span_bruteforce(TRIVIAL, [P("x1")], [M("x1")])

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import monomials
from oracles import dense, named_relation, quad_decimal
from equichain.inc import Permutation
from equichain.orders import (
    DEG,
    DEGMAX2,
    DEGMIN,
    MAX1,
    MIN,
    SIX_TERM_ORDERS,
    TRIVIAL,
    ColumnLex,
    CompareResult,
    MatrixOrder,
    NamedOrder,
    OrderSpec,
    PermutedLex,
    QuadraticNumber,
    UnsupportedOrderError,
    check_inc_compatibility,
    check_preorder_axioms,
    distinguishing_pair,
    identify_order_on_r4,
    leading_form,
    matrix_row_conditions_r4,
    parse_order,
    prop43_families,
)
from equichain.ring import Monomial, Truncation, parse_polynomial

LESS, GREATER, EQUAL, INC = (CompareResult.LESS, CompareResult.GREATER, CompareResult.EQUAL, CompareResult.INCOMPARABLE)


def M(t):
    return parse_polynomial(t).monomials()[0]


def P(t):
    return parse_polynomial(t)


def test_compare_examples():
    assert MIN.compare(M("x2^2"), M("x1*x3")) is LESS
    assert NamedOrder("max", 2).compare(M("x1"), M("x1^2")) is INC
    assert DEGMAX2.compare(M("x1*x2"), M("x1*x3")) is LESS
    sigma2 = PermutedLex(Permutation((2, 1)))
    assert sigma2.compare(M("x1^2*x2"), M("x1*x2^2")) is LESS
    mat = MatrixOrder(((1, 1, 1, 1), (3, -1, -1, -1)))
    assert mat.compare(M("x1"), M("x2")) is GREATER
    assert MIN.compare(M("x1"), M("x1")) is EQUAL


def test_compare_errors():
    with pytest.raises(UnsupportedOrderError):
        MIN.compare(Monomial.var(2, 1), Monomial.var(1, 1))
    with pytest.raises(UnsupportedOrderError):
        MatrixOrder(((1, 1),)).compare(M("x3"), M("x1"))
    with pytest.raises(ValueError):
        MatrixOrder(((0, 0),))
    with pytest.raises(ValueError):
        NamedOrder("max")


FAMILY_ARGS = [(f, None) for f in ("deg", "min", "degmin", "revdegmin", "trivial")]
FAMILY_ARGS += [(f, i) for f in ("max", "degmax", "revdegmax") for i in (1, 2, 3, 4, 6)]


@pytest.mark.parametrize("family,i", FAMILY_ARGS)
@pytest.mark.parametrize("inverted", [False, True])
@given(a=monomials(n=5, max_deg=4), b=monomials(n=5, max_deg=4))
def test_named_matches_definitions(family, i, inverted, a, b):
    o = NamedOrder(family, i, inverted)
    expect = named_relation(family, i, inverted, dense(a, 5), dense(b, 5))
    assert o.compare(a, b).value == expect


ALL_VARIANTS = list(prop43_families()) + [
    MatrixOrder(((1, 1, 1, 1), (3, -1, -1, -1))),
    parse_order("matrix-sqrt:2:[[1,s,0,1],[0,1,1,1]]"),
    PermutedLex(Permutation((3, 1, 2))),
    PermutedLex(Permutation((2, 1)), inverted=True),
]


@pytest.mark.parametrize("order", ALL_VARIANTS, ids=lambda o: o.spec)
@given(a=monomials(n=4, max_deg=4), b=monomials(n=4, max_deg=4), h=monomials(n=4, max_deg=2))
def test_antisymmetry_and_multiplicativity(order, a, b, h):
    r = order.compare(a, b)
    assert order.compare(b, a) is r.flip()
    assert (r is EQUAL) == (a == b)
    if isinstance(order, NamedOrder):
        assert order.compare(h * a, h * b) is r


@given(a=monomials(n=6, max_deg=5), b=monomials(n=6, max_deg=5))
def test_deg_restated(a, b):
    assert (DEG.compare(a, b) is LESS) == (a.degree < b.degree)


KEYED = list(SIX_TERM_ORDERS) + [
    MatrixOrder(((1, 1, 1, 1), (3, -1, -1, -1), (0, 2, -1, -1), (0, 0, 1, -1))),
    parse_order("matrix-sqrt:2:[[1,1,1,1],[1,s,0,0],[0,0,1,0],[0,0,0,1]]"),
    PermutedLex(Permutation((2, 4, 1, 3))),
]


@pytest.mark.parametrize("order", KEYED, ids=lambda o: o.spec)
@given(a=monomials(n=4, max_deg=5), b=monomials(n=4, max_deg=5))
def test_sort_key_agrees_with_compare(order, a, b):
    assert order.is_term_order
    key = order.sort_key()
    r = order.compare(a, b)
    assert (key(a) < key(b)) == (r is LESS)
    assert (key(a) == key(b)) == (r is EQUAL)


@given(a=monomials(c=2, n=4, max_deg=4), b=monomials(c=2, n=4, max_deg=4))
def test_collex_key_agrees(a, b):
    o = ColumnLex(((1, 1), (1, 0)))
    key = o.sort_key()
    r = o.compare(a, b)
    assert (key(a) < key(b)) == (r is LESS) and (key(a) == key(b)) == (r is EQUAL)


def test_term_order_flags():
    assert all(o.is_term_order for o in SIX_TERM_ORDERS)
    assert not NamedOrder("revdegmin").is_term_order
    assert not NamedOrder("max", 2).is_term_order
    assert not MatrixOrder(((1, -1),)).is_term_order
    assert not MatrixOrder(((1, 1, 1),)).is_term_order  # not total
    assert MatrixOrder(((1, 1), (1, 0))).is_term_order
    assert parse_order("matrix-sqrt:2:[[1,s]]").is_term_order


@given(st.fractions(max_denominator=50), st.fractions(max_denominator=50), st.sampled_from([2, 3, 5, 7]))
def test_quadratic_sign_matches_high_precision(q, r, d):
    x = QuadraticNumber(q, r, d)
    dec = quad_decimal(q, r, d)
    assert x.sign() == (dec > 0) - (dec < 0)


@given(st.fractions(max_denominator=20), st.fractions(max_denominator=20),
       st.fractions(max_denominator=20), st.fractions(max_denominator=20))
def test_quadratic_field_ops(a, b, c, d):
    x, y = QuadraticNumber(a, b, 2), QuadraticNumber(c, d, 2)
    assert (x + y) - y == x
    assert (x * y) == (y * x)
    if y:
        assert (x / y) * y == x
    assert float(x * y) == pytest.approx(float(x) * float(y), rel=1e-9, abs=1e-9)


def test_quadratic_basics():
    s = QuadraticNumber(0, 1, 2)
    assert s * s == 2 and QuadraticNumber(3, -2, 2) > 0 and QuadraticNumber(1, -1, 2) < 0
    assert str(QuadraticNumber(1, 1, 2)) == "1+s" and str(-s) == "-s"
    with pytest.raises(ZeroDivisionError):
        s / QuadraticNumber(0, 0, 2)


def test_leading_form_examples():
    assert leading_form(DEGMAX2, P("x1 + x3")) == P("x3")
    f = P("x1^2*x2 + x1*x2^2")
    assert leading_form(NamedOrder("max", 2), f) == P("x1*x2^2")
    assert leading_form(NamedOrder("max", 3), f) == f
    with pytest.raises(ValueError):
        leading_form(MIN, P("0"))


def test_axioms_examples():
    rep = check_preorder_axioms(MIN, Truncation(1, 4), 3)
    assert rep.ok and rep.total and rep.one_minimal
    rep = check_preorder_axioms(NamedOrder("max", 2), Truncation(1, 4), 3)
    assert rep.ok and not rep.total
    rep = check_preorder_axioms(TRIVIAL, Truncation(1, 4), 3)
    assert rep.ok and not rep.total and not rep.one_minimal


class _Cyclic(OrderSpec):
    """x1 < x2 < x3 < x1 on the variables, degree otherwise: not transitive."""

    def _raw(self, f, g):
        cyc = {(1, 2), (2, 3), (3, 1)}
        if f.degree == g.degree == 1:
            a, b = f.columns()[0], g.columns()[0]
            return LESS if (a, b) in cyc else GREATER
        return LESS if f.degree < g.degree else GREATER if f.degree > g.degree else INC

    @property
    def spec(self):
        return "cyclic"


class _NotMultiplicative(OrderSpec):
    """Min on degree <= 1, Max(1) above: breaks multiplicativity."""

    def _raw(self, f, g):
        if f.degree <= 1 and g.degree <= 1:
            return MIN.compare(f, g)
        return MAX1.compare(f, g)

    @property
    def spec(self):
        return "patchwork"


def test_axiom_checker_finds_counterexamples():
    rep = check_preorder_axioms(_Cyclic(), Truncation(1, 3), 2)
    assert rep.axioms["transitive"] is not None and not rep.ok
    a, b, c = rep.axioms["transitive"]
    o = _Cyclic()
    assert o.compare(a, b) is LESS and o.compare(b, c) is LESS and o.compare(a, c) is not LESS
    rep = check_preorder_axioms(_NotMultiplicative(), Truncation(1, 3), 2)
    f, g, h = rep.axioms["multiplicative"]
    o = _NotMultiplicative()
    assert o.compare(f, g) is LESS and o.compare(h * f, h * g) is not LESS


def test_compatibility_examples():
    assert check_inc_compatibility(DEGMAX2, Truncation(1, 5), 3).ok
    rep = check_inc_compatibility(PermutedLex(Permutation((2, 1))), Truncation(1, 4), 2)
    f, g, p = rep.violation
    assert (str(f), str(g), p.images) == ("x[1,1]", "x[1,2]", (1, 3))
    o = PermutedLex(Permutation((2, 1)))
    # the shift by (2, 3) is another witness
    assert o.compare(M("x1"), M("x2")) is LESS and o.compare(M("x2"), M("x3")) is GREATER


@pytest.mark.parametrize("inner", ["[[1,0],[0,1]]", "[[1,1],[1,0]]", "sqrt:2:[[1,s]]", "[[1,1],[0,1]]"])
def test_collex_compatible_c2(inner):
    o = parse_order("collex:" + inner)
    assert o.is_term_order
    assert check_inc_compatibility(o, Truncation(2, 4), 2).ok
    rep = check_preorder_axioms(o, Truncation(2, 3), 2)
    assert rep.ok and rep.total and rep.one_minimal


def test_row_conditions_examples():
    r = matrix_row_conditions_r4([[1, 1, 1, 1], [3, -1, -1, -1]])
    assert r.passed and r.first_row_family == "(l,l,l,l)" and r.second_row_family == "(3m,-m,-m,-m)"
    r = matrix_row_conditions_r4([[1, 2, 3, 4]])
    assert not r.passed and r.failing == "A_1" and r.failing_rank == 2
    r = matrix_row_conditions_r4([[0, 0, 0, 5]])
    assert r.passed and r.first_row_family == "(0,0,0,l)"
    r = matrix_row_conditions_r4([[1, 1, 1, 1], [1, 2, 0, 0]])
    assert not r.passed
    r = matrix_row_conditions_r4(MatrixOrder(((2, 2, 2, 2), (5, 1, 1, 1))))  # orthogonalizes to (3,-1,-1,-1)
    assert r.passed and r.second_row_family == "(3m,-m,-m,-m)"


def test_identify_examples():
    degmin_matrix = MatrixOrder(((1, 1, 1, 1), (3, -1, -1, -1), (0, 2, -1, -1), (0, 0, 1, -1)))
    assert identify_order_on_r4(degmin_matrix, 4) == "DegMin"
    assert identify_order_on_r4(MAX1, 4) == "Max(1)"
    assert identify_order_on_r4(MatrixOrder(((1, 2, 3, 4),)), 4) == "unclassified"
    assert identify_order_on_r4(NamedOrder("degmax", 3, True), 3) == "DegMax(3)^-1"


@pytest.mark.parametrize("text", [
    "min", "degmin", "revdegmin-inv", "max:1", "degmax:2", "revdegmax-inv:2", "deg", "trivial",
    "matrix:[[1,1,1,1],[3,-1,-1,-1]]", "matrix-sqrt:2:[[1,s]]", "permlex:(2,1,3)", "collex:[[1,0],[0,1]]",
    "matrix-inv:[[1,1]]", "collex:sqrt:3:[[1,1+s]]",
])
def test_parse_order_roundtrip(text):
    o = parse_order(text)
    assert parse_order(o.spec) == o


def test_parse_order_inv_suffix():
    assert parse_order("permlex:(2,1)-inv") == PermutedLex(Permutation((2, 1)), inverted=True)
    assert parse_order("degmax:3-inv") == NamedOrder("degmax", 3, inverted=True)
    assert parse_order("matrix-sqrt:2:[[1,-2*s+1/2]]").rows[0][1] == QuadraticNumber(Fraction(1, 2), -2, 2)
    with pytest.raises(ValueError):
        parse_order("lex")
    with pytest.raises(ValueError):
        parse_order("matrix:[[1,x]]")


def test_six_orders_distinct():
    for i, a in enumerate(SIX_TERM_ORDERS):
        for b in SIX_TERM_ORDERS[i + 1:]:
            f, g = distinguishing_pair(a, b, Truncation(1, 4), 3)
            assert a.compare(f, g) != b.compare(f, g)


def test_x_n_below_x_n_plus_1():
    up = [o.label for o in SIX_TERM_ORDERS if o.compare(M("x1"), M("x2")) is LESS]
    assert up == ["RevdegMin^-1", "Max(1)", "DegMax(2)"]


def test_prop43_families_small():
    tr = Truncation(1, 3)
    for o in prop43_families():
        assert check_preorder_axioms(o, tr, 3).ok, o.label
        assert check_inc_compatibility(o, tr, 3).ok, o.label

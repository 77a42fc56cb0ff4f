"""The fourteen acceptance criteria, each timed against its limit.

Run with ``pytest tests/test_acceptance.py`` or ``python tests/test_acceptance.py``;
either way one PASS/FAIL line per criterion is printed at the end.
"""
import functools
import itertools
from math import comb
import random
import subprocess
import sys
import time

from conftest import ACCEPTANCE_LINES
from oracles import all_inc_maps, brute_can_replace, brute_exists_map, relabel
from equichain import chains as ch
from equichain.groebner import check_in_commutes_with_inc, initial_ideal
from equichain.inc import IncMap, Permutation, apply, can_replace_in_window, exists_map_through, orbit_inclusion_check
from equichain.linalg_oracle import graded_piece, initial_space, leading_form_span_bruteforce, monomial_in_initial, spans_equal
from equichain.orders import (
    DEGMAX2,
    SIX_TERM_ORDERS,
    CompareResult,
    MatrixOrder,
    NamedOrder,
    PermutedLex,
    check_inc_compatibility,
    check_preorder_axioms,
    distinguishing_pair,
    matrix_row_conditions_r4,
    parse_order,
    prop43_families,
)
from equichain.ring import Monomial, Polynomial, Truncation, parse_polynomial, to_gf


def criterion(num, title, limit):
    def deco(fn):
        @functools.wraps(fn)
        def wrapper():
            t0 = time.perf_counter()
            err = None
            try:
                fn()
            except AssertionError as exc:
                err = exc
            dt = time.perf_counter() - t0
            ok = err is None and dt < limit
            line = f"{'PASS' if ok else 'FAIL'} {num}: {title} [{dt:.1f} s, limit {limit} s]"
            ACCEPTANCE_LINES.append(line)
            print(line)
            if err is not None:
                raise err
            assert dt < limit, f"took {dt:.1f} s, limit {limit} s"

        return wrapper

    return deco


def P(t):
    return parse_polynomial(t)


def _random_poly(rng, m, max_terms=3, max_deg=3):
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        deg = rng.randint(1, max_deg)
        mon = Monomial([((1, rng.randint(1, m)), 1) for _ in range(deg)])
        terms[mon] = rng.choice([-2, -1, 1, 3])
    f = Polynomial(terms)
    return f if not f.is_zero() else Polynomial({Monomial.var(1, 1): 1})


@criterion(1, "gap criterion agrees with brute force, N <= 5, n <= 9", 10)
def test_c01_gap_criterion():
    checked = 0
    for n in range(1, 10):
        for N in range(0, min(5, n) + 1):
            maps = all_inc_maps(N, n)
            for k in range(0, min(3, N) + 1):
                for I in itertools.combinations(range(1, N + 1), k):
                    for J in itertools.combinations(range(1, n + 1), k):
                        pts = list(zip(I, J))
                        expect = any(all(p[i - 1] == j for i, j in pts) for p in maps)
                        assert exists_map_through(pts, N, n) == expect, (pts, N, n)
                        checked += 1
    expected = sum(
        comb(N, k) * comb(n, k) for n in range(1, 10) for N in range(0, min(5, n) + 1) for k in range(0, min(3, N) + 1)
    )
    assert checked == expected


@criterion(2, "replacement criterion agrees with brute force on 200 polynomials", 30)
def test_c02_replacement():
    rng = random.Random(2024)
    done = 0
    while done < 200:
        n = rng.randint(1, 8)
        m = rng.randint(1, 5)
        f = _random_poly(rng, m)
        if m > n + 3:
            continue
        imgs = tuple(sorted(rng.sample(range(1, n + 4), m)))
        if apply(IncMap(imgs), f).max_col() > n:
            continue
        assert can_replace_in_window(f, IncMap(imgs), m, n) == brute_can_replace(f, imgs, m, n), (f, imgs, m, n)
        done += 1


@criterion(3, "chain seeded by x1+x3 at level 4, DegMax(2)", 60)
def test_c03_seeded_chain():
    chain = ch.remark32_chain()
    x = lambda j: Monomial.var(1, j)  # noqa: E731
    assert ch.level_initial(chain, DEGMAX2, 4).gens == (x(3),)
    assert x(2) in ch.level_initial(chain, DEGMAX2, 5)
    assert ch.initial_candidate_index(chain, DEGMAX2, 10) >= 5
    cert = next(N for N in range(4, 9) if ch.certify_initial_stability(chain, DEGMAX2, N).certified)
    top = ch.level_initial(chain, DEGMAX2, 2 * cert)
    for n in range(2 * cert, 13):
        spread = ch.MonomialIdeal(ch.spread(top.gens, 2 * cert, n))
        assert spread == ch.level_initial(chain, DEGMAX2, n)


@criterion(4, "six term orders: axioms, compatibility, pairwise distinct", 120)
def test_c04_six_orders():
    trunc = Truncation(1, 6)
    for o in SIX_TERM_ORDERS:
        ax = check_preorder_axioms(o, trunc, 4)
        assert ax.ok and ax.total and ax.one_minimal, o.label
        assert check_inc_compatibility(o, trunc, 4).ok, o.label
    for a, b in itertools.combinations(SIX_TERM_ORDERS, 2):
        f, g = distinguishing_pair(a, b, Truncation(1, 6), 3)
        assert f.degree <= 3 and g.degree <= 3 and a.compare(f, g) != b.compare(f, g)


@criterion(5, "compatible preorder families on R_4", 300)
def test_c05_families():
    trunc = Truncation(1, 4)
    fams = prop43_families()
    assert len(fams) == 2 * 14 + 1  # 14 listed preorders, their inverses, Trivial
    for o in fams:
        ax = check_preorder_axioms(o, trunc, 4)
        assert ax.ok, (o.label, ax.axioms)
        assert ax.axioms["incomparability_transitive"] is None
        assert check_inc_compatibility(o, trunc, 4).ok, o.label
    x1 = Monomial.var(1, 1)
    assert NamedOrder("max", 2).compare(x1, x1 * x1) is CompareResult.INCOMPARABLE


@criterion(6, "matrix row conditions on R_4", 1)
def test_c06_row_conditions():
    assert matrix_row_conditions_r4([[1, 1, 1, 1], [3, -1, -1, -1]]).passed
    assert matrix_row_conditions_r4([[0, 0, 0, 1]]).passed
    r = matrix_row_conditions_r4([[1, 2, 3, 4]])
    assert not r.passed and r.failing == "A_1" and r.failing_rank == 2


@criterion(7, "reversed-lex orders separate x1^2*x_n' at (1,2), (2,3)", 10)
def test_c07_reversed_lex():
    for n, n2 in ((1, 2), (2, 3)):
        trunc = Truncation(1, n2 + 1)
        gens = ch.spread([P("x1^2*x2 + x1*x2^2")], 2, n2 + 1)
        m = Monomial({(1, 1): 2, (1, n2): 1})
        assert monomial_in_initial(PermutedLex(Permutation.reversal(n)), gens, trunc, m)
        assert not monomial_in_initial(PermutedLex(Permutation.reversal(n2)), gens, trunc, m)


@criterion(8, "Max(2) and Max(3) separate x1*x2^2", 10)
def test_c08_max_preorders():
    trunc = Truncation(1, 3)
    gens = ch.spread([P("x1^2*x2 + x1*x2^2")], 2, 3)
    m = P("x1*x2^2").monomials()[0]
    assert monomial_in_initial(NamedOrder("max", 2), gens, trunc, m)
    assert not monomial_in_initial(NamedOrder("max", 3), gens, trunc, m)


SAMPLES = [
    (ch.level_generators(ch.remark32_chain(), 5), 5),
    (ch.spread([P("x1^2*x2 + x1*x2^2")], 2, 4), 4),
    (ch.spread([P("x1*x2 - x2^2")], 2, 4), 4),
    ([P("x1*x3 - x2^2"), P("x1^2 - x2*x3"), P("x3^3")], 3),
    ([P("x1 + x2 - x4"), P("x2*x3 - x1*x4")], 4),
    (ch.spread([P("x1*x3 - x2^2")], 3, 5), 5),
]


@criterion(9, "Buchberger initial ideals match linear algebra to degree 5", 300)
def test_c09_groebner_vs_oracle():
    for gens, n in SAMPLES:
        trunc = Truncation(1, n)
        for o in SIX_TERM_ORDERS:
            I = initial_ideal(gens, o, trunc)
            for d in range(1, 6):
                piece = graded_piece(gens, trunc, d)
                assert initial_space(o, piece) == {m for m in piece.columns if m in I}, (n, o.label, d)


@criterion(10, "preorder initial spaces match full GF(2) enumeration, 50 instances", 120)
def test_c10_gf2():
    rng = random.Random(10)
    orders = [o for o in prop43_families() if not o.is_term_order] + [MatrixOrder(((1, 1, 1, 1),)), NamedOrder("deg")]
    trunc = Truncation(1, 4)
    done = 0
    while done < 50:
        d = rng.choice([2, 3])
        gens = [to_gf(_random_poly(rng, 4, max_terms=4, max_deg=2), 2) for _ in range(rng.randint(1, 3))]
        gens = [g for g in gens if not g.is_zero() and g.is_homogeneous()]
        if not gens:
            continue
        piece = graded_piece(gens, trunc, d)
        if not 1 <= piece.dim <= 12:
            continue
        o = rng.choice(orders)
        brute = leading_form_span_bruteforce(o, piece.basis, piece.columns)
        assert spans_equal(initial_space(o, piece), brute, piece.columns), (o.label, gens, d)
        done += 1


@criterion(11, "intersection decomposition for the x1+x3 chain at (5,6), (5,7)", 120)
def test_c11_decomposition():
    chain = ch.remark32_chain()
    assert ch.check_intersection_decomposition(chain, DEGMAX2, 5, 6)
    assert ch.check_intersection_decomposition(chain, DEGMAX2, 5, 7)


CHAINS_12 = [
    ch.remark32_chain(),
    ch.seed_chain(2, ["x1*x2 - x2^2"]),
    ch.seed_chain(3, ["x1*x3 - x2^2"]),
]


@criterion(12, "certified stability bounds for all six orders on three chains", 600)
def test_c12_iset():
    for chain in CHAINS_12:
        s = chain.seed_level
        rep = ch.compute_I_set(chain, SIX_TERM_ORDERS, 2 * s + 2, max_certificate_level=4 * s)
        assert rep.all_certified and rep.max_bound is not None
        for r in rep.reports.values():
            assert r.certificate_level <= 4 * s and r.index_bound_proven


def _brute_orbit_inclusion(f, m, n):
    perms = {relabel(f, sigma) for sigma in itertools.permutations(range(1, n + 1))}
    return all(relabel(f, p) in perms for p in all_inc_maps(m, n))


@criterion(13, "orbit inclusion and in/Inc commutation, 100 instances each", 120)
def test_c13_orbits_and_commutation():
    rng = random.Random(13)
    for _ in range(100):
        m = rng.randint(1, 4)
        n = rng.randint(m, 6)
        f = _random_poly(rng, m)
        assert orbit_inclusion_check(f, m, n)
        assert _brute_orbit_inclusion(f, m, n)
    for _ in range(100):
        n = rng.randint(1, 3)
        gens = [_random_poly(rng, n, max_terms=3, max_deg=2) for _ in range(rng.randint(1, 2))]
        top = rng.randint(n, n + 3)
        p = IncMap(tuple(sorted(rng.sample(range(1, top + 1), n))))
        o = rng.choice(SIX_TERM_ORDERS)
        assert check_in_commutes_with_inc(gens, p, o, Truncation(1, n)), (gens, p, o.label)


@criterion(14, "irrational matrix orders A(sqrt d) and B(sqrt d)", 30)
def test_c14_irrational_matrices():
    A = {d: parse_order(f"matrix-sqrt:{d}:[[1,s]]") for d in (2, 3)}
    B = {d: parse_order(f"matrix-sqrt:{d}:[[1,1,1],[1+s,-1,-s]]") for d in (2, 3)}
    for o, n in ((A[2], 2), (B[2], 3)):
        ax = check_preorder_axioms(o, Truncation(1, n), 6)
        assert ax.ok and ax.total
        assert check_inc_compatibility(o, Truncation(1, n), 6).ok
    for fam, n in ((A, 2), (B, 3)):
        f, g = distinguishing_pair(fam[2], fam[3], Truncation(1, n), 10)
        assert fam[2].compare(f, g) != fam[3].compare(f, g)


if __name__ == "__main__":
    sys.exit(subprocess.call([sys.executable, "-m", "pytest", __file__, "-q"]))

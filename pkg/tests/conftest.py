import os
import sys

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from equichain.ring import Monomial, Polynomial

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def monomials(draw, c=1, n=4, max_deg=3, min_deg=0):
    deg = draw(st.integers(min_deg, max_deg))
    vars_ = [(r, j) for r in range(1, c + 1) for j in range(1, n + 1)]
    picks = draw(st.lists(st.sampled_from(vars_), min_size=deg, max_size=deg))
    return Monomial([(v, 1) for v in picks])


@st.composite
def polynomials(draw, c=1, n=4, max_deg=3, max_terms=4, homogeneous=False):
    k = draw(st.integers(0, max_terms))
    if homogeneous:
        d = draw(st.integers(0, max_deg))
        mons = draw(st.lists(monomials(c, n, d, d), min_size=k, max_size=k))
    else:
        mons = draw(st.lists(monomials(c, n, max_deg), min_size=k, max_size=k))
    coeffs = draw(st.lists(st.integers(-3, 3), min_size=k, max_size=k))
    return Polynomial(zip(mons, coeffs))


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)

"""Inc(N)-invariant ideal chains, equivariant Groebner bases and compatible term orders."""

from .ring import (
    GF,
    Monomial,
    ONE,
    ParseError,
    Polynomial,
    Truncation,
    TruncationError,
    parse_polynomial,
    parse_polynomials,
)
from .inc import IncMap, Permutation, apply, decompose, enumerate_inc, exists_map_through, inc_divides
from .orders import (
    SIX_TERM_ORDERS,
    CompareResult,
    MatrixOrder,
    NamedOrder,
    OrderSpec,
    QuadraticNumber,
    parse_order,
)
from .groebner import MonomialIdeal, buchberger, ideal_equal, initial_ideal, normal_form
from .chains import ChainSpec, parse_chain

__version__ = "0.1.0"

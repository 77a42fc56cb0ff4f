"""Sparse exact polynomials in the variables x[i,j], i in [c], j >= 1.

Monomials are sparse maps (row, col) -> exponent; polynomials are sparse maps
monomial -> coefficient.  Coefficients are ``fractions.Fraction`` by default;
:class:`GF` elements are supported for small prime-field experiments.

Truncation (the ring R_n) is metadata carried by :class:`Truncation`, never
baked into a monomial, so column relabelings move monomials freely.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple, Optional, Union


class ParseError(ValueError):
    """Malformed polynomial text; ``position`` is the 0-based offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class TruncationError(ValueError):
    """A variable lies outside the requested truncation."""


@dataclass(frozen=True)
class Truncation:
    """The ring R_n over a grid of ``c`` rows; ``n = 0`` is the base field."""

    c: int
    n: int

    def __post_init__(self):
        if self.c < 1 or self.n < 0:
            raise ValueError(f"invalid truncation c={self.c}, n={self.n}")

    def variables(self):
        return [(i, j) for i in range(1, self.c + 1) for j in range(1, self.n + 1)]

    def contains(self, f: Union["Monomial", "Polynomial"]) -> bool:
        for row, col in f.variables():
            if row > self.c or col > self.n:
                return False
        return True


class GF:
    """Element of the prime field GF(p)."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.p = p
        self.value = value % p

    def _coerce(self, other):
        if isinstance(other, GF):
            if other.p != self.p:
                raise ValueError("mixing different prime fields")
            return other.value
        if isinstance(other, int):
            return other % self.p
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p) % self.p
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else GF(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else GF(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else GF(o - self.value, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else GF(self.value * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
        return GF(self.value * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GF(o, self.p) / self

    def __neg__(self):
        return GF(-self.value, self.p)

    def __eq__(self, other):
        o = self._coerce(other)
        return False if o is NotImplemented else self.value == o

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"GF({self.value}, {self.p})"

    def __str__(self):
        return str(self.value)


Coefficient = Union[Fraction, GF]


def _as_coeff(c):
    if isinstance(c, (Fraction, GF)):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"unsupported coefficient {c!r}")


class Monomial:
    """Product of variables x[row,col]^exp, stored as sorted (row, col, exp) triples."""

    __slots__ = ("_items", "_hash")

    def __init__(self, exponents: Union[Mapping, Iterable] = ()):
        if isinstance(exponents, Mapping):
            pairs = exponents.items()
        else:
            pairs = exponents
        acc: dict = {}
        for var, e in pairs:
            row, col = var
            if e < 0 or row < 1 or col < 1:
                raise ValueError(f"bad variable/exponent {var}^{e}")
            if e:
                acc[(row, col)] = acc.get((row, col), 0) + e
        self._items = tuple(sorted((r, c, e) for (r, c), e in acc.items()))
        self._hash = hash(self._items)

    @classmethod
    def _raw(cls, items: tuple) -> "Monomial":
        m = object.__new__(cls)
        m._items = items
        m._hash = hash(items)
        return m

    @classmethod
    def var(cls, row: int, col: int, exp: int = 1) -> "Monomial":
        return cls({(row, col): exp})

    @property
    def key(self) -> tuple:
        """Canonical serialization key (row-major, column, exponent); not a term order."""
        return self._items

    def items(self):
        return [((r, c), e) for r, c, e in self._items]

    def as_dict(self) -> dict:
        return {(r, c): e for r, c, e in self._items}

    def variables(self):
        return [(r, c) for r, c, _ in self._items]

    def exponent(self, row: int, col: int) -> int:
        for r, c, e in self._items:
            if r == row and c == col:
                return e
        return 0

    def columns(self):
        return sorted({c for _, c, _ in self._items})

    def column_exponents(self) -> dict:
        """col -> total exponent of the variables in that column."""
        out: dict = {}
        for _, c, e in self._items:
            out[c] = out.get(c, 0) + e
        return out

    @property
    def degree(self) -> int:
        return sum(e for _, _, e in self._items)

    def is_one(self) -> bool:
        return not self._items

    def max_col(self) -> int:
        return max((c for _, c, _ in self._items), default=0)

    def max_row(self) -> int:
        return max((r for r, _, _ in self._items), default=0)

    def __mul__(self, other: "Monomial") -> "Monomial":
        if not isinstance(other, Monomial):
            return NotImplemented
        if not other._items:
            return self
        if not self._items:
            return other
        acc = self.as_dict()
        for r, c, e in other._items:
            acc[(r, c)] = acc.get((r, c), 0) + e
        return Monomial._raw(tuple(sorted((r, c, e) for (r, c), e in acc.items())))

    def lcm(self, other: "Monomial") -> "Monomial":
        acc = self.as_dict()
        for r, c, e in other._items:
            if e > acc.get((r, c), 0):
                acc[(r, c)] = e
        return Monomial._raw(tuple(sorted((r, c, e) for (r, c), e in acc.items())))

    def divides(self, other: "Monomial") -> bool:
        if len(self._items) > len(other._items):
            return False
        theirs = other.as_dict()
        return all(theirs.get((r, c), 0) >= e for r, c, e in self._items)

    def quotient(self, divisor: "Monomial") -> Optional["Monomial"]:
        """self / divisor, or None when divisor does not divide self."""
        acc = self.as_dict()
        for r, c, e in divisor._items:
            have = acc.get((r, c), 0)
            if have < e:
                return None
            if have == e:
                del acc[(r, c)]
            else:
                acc[(r, c)] = have - e
        return Monomial._raw(tuple(sorted((r, c, e) for (r, c), e in acc.items())))

    def relabel(self, col_map) -> "Monomial":
        """Move column j to col_map(j); rows and exponents unchanged."""
        acc: dict = {}
        for r, c, e in self._items:
            key = (r, col_map(c))
            acc[key] = acc.get(key, 0) + e
        return Monomial._raw(tuple(sorted((r, c, e) for (r, c), e in acc.items())))

    def dense(self, n: int) -> tuple:
        """Exponent vector (a_1, ..., a_n) for single-row monomials."""
        v = [0] * n
        for r, c, e in self._items:
            if r != 1:
                raise ValueError("dense exponent vectors need c = 1")
            if c > n:
                raise TruncationError(f"column {c} exceeds {n}")
            v[c - 1] = e
        return tuple(v)

    def __eq__(self, other):
        return isinstance(other, Monomial) and self._items == other._items

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        # canonical key only, for deterministic sorting
        return self._items < other._items

    def __str__(self):
        if not self._items:
            return "1"
        parts = []
        for r, c, e in self._items:
            parts.append(f"x[{r},{c}]" if e == 1 else f"x[{r},{c}]^{e}")
        return "*".join(parts)

    def __repr__(self):
        return f"Monomial({self})"


ONE = Monomial()


def mul_monomials(f: Monomial, g: Monomial) -> Monomial:
    return f * g


class LcmDivides(NamedTuple):
    lcm: Monomial
    divides: bool
    quotient: Optional[Monomial]


def lcm_divides_div(f: Monomial, g: Monomial) -> LcmDivides:
    """lcm(f, g), whether f | g, and g / f when it does."""
    q = g.quotient(f)
    return LcmDivides(f.lcm(g), q is not None, q)


def _fmt_coeff(c) -> str:
    if isinstance(c, Fraction):
        return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
    return str(c)


class Polynomial:
    """Immutable sparse polynomial; zero coefficients are never stored."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Union[Mapping, Iterable, None] = None):
        acc: dict = {}
        if terms is not None:
            pairs = terms.items() if isinstance(terms, Mapping) else terms
            for m, c in pairs:
                if not isinstance(m, Monomial):
                    m = Monomial(m)
                c = _as_coeff(c)
                if m in acc:
                    acc[m] = acc[m] + c
                else:
                    acc[m] = c
        self._terms = {m: c for m, c in acc.items() if c != 0}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "Polynomial":
        p = object.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, c) -> "Polynomial":
        return cls({ONE: c})

    @classmethod
    def from_monomial(cls, m: Monomial, c=1) -> "Polynomial":
        return cls({m: c})

    @classmethod
    def var(cls, row: int, col: int) -> "Polynomial":
        return cls({Monomial.var(row, col): 1})

    @property
    def terms(self) -> dict:
        return self._terms

    def monomials(self):
        return list(self._terms)

    def coefficient(self, m: Monomial):
        return self._terms.get(m, 0)

    def sorted_terms(self):
        """Terms in canonical serialization order (descending canonical key)."""
        return sorted(self._terms.items(), key=lambda t: t[0].key, reverse=True)

    def variables(self):
        return sorted({v for m in self._terms for v in m.variables()})

    def columns(self):
        return sorted({c for _, c in self.variables()})

    def max_col(self) -> int:
        return max((m.max_col() for m in self._terms), default=0)

    @property
    def degree(self) -> int:
        if not self._terms:
            return -1
        return max(m.degree for m in self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_homogeneous(self) -> bool:
        return len({m.degree for m in self._terms}) <= 1

    def homogeneous_parts(self) -> dict:
        parts: dict = {}
        for m, c in self._terms.items():
            parts.setdefault(m.degree, {})[m] = c
        return {d: Polynomial._raw(t) for d, t in parts.items()}

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(other)
        if len(other._terms) > len(self._terms):
            self, other = other, self
        acc = dict(self._terms)
        for m, c in other._terms.items():
            s = acc.get(m)
            if s is None:
                acc[m] = c
            else:
                s = s + c
                if s == 0:
                    del acc[m]
                else:
                    acc[m] = s
        return Polynomial._raw(acc)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Polynomial":
        c = _as_coeff(c)
        if c == 0:
            return Polynomial._raw({})
        return Polynomial._raw({m: v * c for m, v in self._terms.items()})

    def mul_term(self, m: Monomial, c) -> "Polynomial":
        """self * (c * m)."""
        if c == 0:
            return Polynomial._raw({})
        return Polynomial._raw({t * m: v * c for t, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, Monomial):
            return self.mul_term(other, 1)
        if not isinstance(other, Polynomial):
            return self.scale(other)
        acc: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = m1 * m2
                acc[m] = acc.get(m, 0) + c1 * c2
        return Polynomial._raw({m: c for m, c in acc.items() if c != 0})

    __rmul__ = __mul__

    def relabel(self, col_map) -> "Polynomial":
        acc: dict = {}
        for m, c in self._terms.items():
            t = m.relabel(col_map)
            acc[t] = acc.get(t, 0) + c
        return Polynomial._raw({m: c for m, c in acc.items() if c != 0})

    def monic(self) -> "Polynomial":
        """Scale so the canonically-first coefficient is 1 (order-free normalization)."""
        if not self._terms:
            return self
        lead = self.sorted_terms()[0][1]
        return self.scale(1 / lead) if lead != 1 else self

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction, GF)):
            return self == Polynomial.constant(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __str__(self):
        if not self._terms:
            return "0"
        out = []
        for i, (m, c) in enumerate(self.sorted_terms()):
            neg = c < 0 if isinstance(c, Fraction) else False
            mag = -c if neg else c
            if m.is_one():
                body = _fmt_coeff(mag)
            elif mag == 1:
                body = str(m)
            else:
                body = f"{_fmt_coeff(mag)}*{m}"
            if i == 0:
                out.append(f"-{body}" if neg else body)
            else:
                out.append(f" - {body}" if neg else f" + {body}")
        return "".join(out)

    def __repr__(self):
        return f"Polynomial({self})"


def poly_arith(op: str, f: Polynomial, g) -> Polynomial:
    """Dispatch for the four ring operations; ``g`` is a coefficient for 'scale'."""
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    if op == "scale":
        return f.scale(g)
    raise ValueError(f"unknown op {op!r}")


def to_gf(f: Polynomial, p: int) -> Polynomial:
    """Reduce rational coefficients modulo p."""
    return Polynomial({m: GF(0, p) + c for m, c in f.terms.items()})


class SupportStats(NamedTuple):
    m: float  # min column; math.inf for constants
    M: int  # max column; 0 for constants
    e: Optional[int]  # exponent at column m (monomials only)
    E: Optional[int]  # exponent at column M (monomials only)
    deg: int


def support_stats(f: Union[Polynomial, Monomial]) -> SupportStats:
    """Minimal/maximal occurring column and their exponents.

    For constants m = inf and M = 0.  For c >= 2 the exponents e, E are the
    total exponents of the respective columns.
    """
    if isinstance(f, Monomial):
        cols = f.column_exponents()
        if not cols:
            return SupportStats(math.inf, 0, 0, 0, 0)
        lo, hi = min(cols), max(cols)
        return SupportStats(lo, hi, cols[lo], cols[hi], f.degree)
    cols = f.columns()
    deg = max(f.degree, 0)
    if not cols:
        return SupportStats(math.inf, 0, None, None, deg)
    return SupportStats(cols[0], cols[-1], None, None, deg)


# --------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(r"\s*(?:(\d+)|(x)|([\[\],^*/+\-]))")


def _tokenize(text: str):
    pos = 0
    toks = []
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        mt = _TOKEN.match(text, pos)
        if not mt:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        start = mt.start(mt.lastindex)
        if mt.group(1) is not None:
            toks.append(("int", int(mt.group(1)), start))
        elif mt.group(2) is not None:
            toks.append(("x", "x", start))
        else:
            toks.append((mt.group(3), mt.group(3), start))
        pos = mt.end()
    toks.append(("end", None, len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, trunc: Optional[Truncation]):
        self.toks = _tokenize(text)
        self.i = 0
        self.trunc = trunc

    def peek(self):
        return self.toks[self.i]

    def take(self, kind):
        tok = self.toks[self.i]
        if tok[0] != kind:
            found = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ParseError(f"expected {kind!r}, found {found}", tok[2])
        self.i += 1
        return tok

    def poly(self) -> Polynomial:
        acc: dict = {}
        sign = 1
        if self.peek()[0] in "+-":
            sign = -1 if self.take(self.peek()[0])[0] == "-" else 1
        while True:
            m, c = self.term()
            acc[m] = acc.get(m, 0) + sign * c
            kind = self.peek()[0]
            if kind in ("+", "-"):
                self.i += 1
                sign = 1 if kind == "+" else -1
                continue
            if kind != "end":
                tok = self.peek()
                raise ParseError(f"unexpected {tok[1]!r}", tok[2])
            break
        return Polynomial(acc)

    def coeff(self) -> Fraction:
        num = self.take("int")[1]
        if self.peek()[0] == "/":
            self.i += 1
            tok = self.take("int")
            if tok[1] == 0:
                raise ParseError("zero denominator", tok[2])
            return Fraction(num, tok[1])
        return Fraction(num)

    def term(self):
        c = Fraction(1)
        exps: dict = {}
        if self.peek()[0] == "int":
            c = self.coeff()
            if self.peek()[0] != "*":
                return ONE, c
            self.i += 1
        self.factor(exps)
        while self.peek()[0] == "*":
            self.i += 1
            self.factor(exps)
        return Monomial(exps), c

    def factor(self, exps: dict):
        start = self.take("x")[2]
        if self.peek()[0] == "[":
            self.i += 1
            row = self.take("int")[1]
            self.take(",")
            col = self.take("int")[1]
            self.take("]")
        else:
            if self.trunc is not None and self.trunc.c != 1:
                raise ParseError("shorthand xN needs c = 1", start)
            row, col = 1, self.take("int")[1]
        if row < 1 or col < 1:
            raise ParseError("variable indices start at 1", start)
        e = 1
        if self.peek()[0] == "^":
            self.i += 1
            e = self.take("int")[1]
        if self.trunc is not None and (row > self.trunc.c or col > self.trunc.n):
            raise TruncationError(
                f"x[{row},{col}] at position {start} lies outside R_{self.trunc.n} with c={self.trunc.c}"
            )
        exps[(row, col)] = exps.get((row, col), 0) + e


def parse_polynomial(text: str, trunc: Optional[Truncation] = None) -> Polynomial:
    """Parse ``x[1,1]^2*x[1,2] + 1/2*x[2,1] - 3``; ``x3`` abbreviates x[1,3] when c = 1."""
    return _Parser(text, trunc).poly()


def parse_polynomials(text: str, trunc: Optional[Truncation] = None) -> list:
    """Semicolon- or newline-separated list of polynomials."""
    parts = [s for s in re.split(r"[;\n]", text) if s.strip()]
    return [parse_polynomial(s, trunc) for s in parts]

"""Monomial orders and preorders on R, with axiom and compatibility checkers.

Comparators return a four-valued :class:`CompareResult`.  The named c = 1
families work on column-exponent vectors; with A = {j | a_j != b_j}:

    Deg           deg a < deg b
    Min           a_min(A) < b_min(A)
    DegMin        deg, then Min
    RevdegMin     reversed deg, then Min
    Max(i)        max(A) >= i and a_max(A) < b_max(A)
    DegMax(i)     deg, then Max(i)
    RevdegMax(i)  reversed deg, then Max(i)
    Trivial       nothing comparable

Every variant accepts ``inverted=True``.  The six compatible term orders are
Min, DegMin, RevdegMin^-1, Max(1), DegMax(2) and RevdegMax(2)^-1.
"""
from __future__ import annotations

import enum
import functools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Callable, Optional, Sequence

import numpy as np

from .inc import Permutation, enumerate_inc
from .ring import Monomial, Polynomial, Truncation


class UnsupportedOrderError(ValueError):
    """The order is not defined for this number of rows or columns."""


class CompareResult(enum.Enum):
    EQUAL = "="
    LESS = "<"
    GREATER = ">"
    INCOMPARABLE = "~"

    def flip(self) -> "CompareResult":
        if self is CompareResult.LESS:
            return CompareResult.GREATER
        if self is CompareResult.GREATER:
            return CompareResult.LESS
        return self


LESS, GREATER, EQUAL, INCOMPARABLE = (
    CompareResult.LESS,
    CompareResult.GREATER,
    CompareResult.EQUAL,
    CompareResult.INCOMPARABLE,
)


def _sign(x) -> int:
    return (x > 0) - (x < 0)


# --------------------------------------------------------------------------
# exact arithmetic in Q(sqrt d)


@functools.total_ordering
class QuadraticNumber:
    """q + r*sqrt(d) with rational q, r and a fixed square-free d >= 2."""

    __slots__ = ("q", "r", "d")

    def __init__(self, q=0, r=0, d: int = 2):
        self.q = Fraction(q)
        self.r = Fraction(r)
        self.d = d

    def _lift(self, other) -> "QuadraticNumber":
        if isinstance(other, QuadraticNumber):
            if other.d != self.d and other.r != 0 and self.r != 0:
                raise ValueError(f"mixing sqrt({self.d}) and sqrt({other.d})")
            return other
        return QuadraticNumber(other, 0, self.d)

    def __add__(self, other):
        o = self._lift(other)
        return QuadraticNumber(self.q + o.q, self.r + o.r, self.d if self.r else o.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticNumber(-self.q, -self.r, self.d)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        d = self.d if self.r else o.d
        return QuadraticNumber(self.q * o.q + self.r * o.r * d, self.q * o.r + self.r * o.q, d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        norm = o.q * o.q - o.r * o.r * o.d
        if norm == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt d)")
        conj = QuadraticNumber(o.q / norm, -o.r / norm, o.d)
        return self * conj

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def sign(self) -> int:
        """Exact sign, comparing q^2 with r^2 d when the signs disagree."""
        sq, sr = _sign(self.q), _sign(self.r)
        if sr == 0 or sq == sr:
            return sq or sr
        if sq == 0:
            return sr
        lhs, rhs = self.q * self.q, self.r * self.r * self.d
        if lhs == rhs:
            return 0
        return sq if lhs > rhs else sr

    def __eq__(self, other):
        try:
            return (self - other).sign() == 0
        except (TypeError, ValueError):
            return NotImplemented

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __hash__(self):
        return hash((self.q, self.r if self.r else 0, self.d if self.r else 0))

    def __bool__(self):
        return self.sign() != 0

    def __float__(self):
        return float(self.q) + float(self.r) * self.d ** 0.5

    def __repr__(self):
        return f"QuadraticNumber({self.q}, {self.r}, d={self.d})"

    def __str__(self):
        if self.r == 0:
            return _fmt_frac(self.q)
        rs = "s" if self.r == 1 else "-s" if self.r == -1 else f"{_fmt_frac(self.r)}*s"
        if self.q == 0:
            return rs
        return f"{_fmt_frac(self.q)}{'' if rs.startswith('-') else '+'}{rs}"


def _fmt_frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# --------------------------------------------------------------------------
# order specifications


def _c1_exponents(m: Monomial) -> dict:
    out = {}
    for (r, c), e in m.items():
        if r != 1:
            raise UnsupportedOrderError("this order is only defined for c = 1")
        out[c] = e
    return out


def _trimmed(d: dict) -> tuple:
    if not d:
        return ()
    top = max(d)
    return tuple(d.get(j, 0) for j in range(1, top + 1))


class OrderSpec:
    """Base class.  Subclasses implement ``_raw`` (uninverted comparison)."""

    inverted: bool = False

    def compare(self, f: Monomial, g: Monomial) -> CompareResult:
        if f == g:
            return EQUAL
        res = self._raw(f, g)
        return res.flip() if self.inverted else res

    def _raw(self, f: Monomial, g: Monomial) -> CompareResult:  # pragma: no cover
        raise NotImplementedError

    @property
    def is_term_order(self) -> bool:
        """Total with 1 minimal (a well-order), as Buchberger needs."""
        return False

    def sort_key(self) -> Callable:
        """Key whose ascending order is this order; valid for total orders only."""
        cmp = self.compare
        return functools.cmp_to_key(lambda a, b: {LESS: -1, GREATER: 1}.get(cmp(a, b), 0))

    @property
    def spec(self) -> str:  # pragma: no cover
        raise NotImplementedError

    @property
    def label(self) -> str:
        return self.spec

    def inverse(self) -> "OrderSpec":
        import dataclasses

        return dataclasses.replace(self, inverted=not self.inverted)

    def __str__(self):
        return self.spec


FAMILIES = ("deg", "min", "degmin", "revdegmin", "max", "degmax", "revdegmax", "trivial")
_FAMILY_LABEL = {
    "deg": "Deg",
    "min": "Min",
    "degmin": "DegMin",
    "revdegmin": "RevdegMin",
    "max": "Max",
    "degmax": "DegMax",
    "revdegmax": "RevdegMax",
    "trivial": "Trivial",
}
_INDEXED = ("max", "degmax", "revdegmax")


@dataclass(frozen=True)
class NamedOrder(OrderSpec):
    family: str
    i: Optional[int] = None
    inverted: bool = False

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.family in _INDEXED:
            if self.i is None or self.i < 1:
                raise ValueError(f"{self.family} needs an index i >= 1")
        elif self.i is not None:
            raise ValueError(f"{self.family} takes no index")

    def _raw(self, f, g):
        fam = self.family
        if fam == "trivial":
            _c1_exponents(f), _c1_exponents(g)
            return INCOMPARABLE
        a, b = _c1_exponents(f), _c1_exponents(g)
        da, db = sum(a.values()), sum(b.values())
        if fam == "deg":
            return LESS if da < db else GREATER if da > db else INCOMPARABLE
        if fam in ("degmin", "degmax") and da != db:
            return LESS if da < db else GREATER
        if fam in ("revdegmin", "revdegmax") and da != db:
            return LESS if da > db else GREATER
        diff = [j for j in a.keys() | b.keys() if a.get(j, 0) != b.get(j, 0)]
        if fam in ("min", "degmin", "revdegmin"):
            j = min(diff)
            return LESS if a.get(j, 0) < b.get(j, 0) else GREATER
        j = max(diff)
        if j < self.i:
            return INCOMPARABLE
        return LESS if a.get(j, 0) < b.get(j, 0) else GREATER

    @property
    def is_term_order(self) -> bool:
        return (self.family, self.i, self.inverted) in _TERM_ORDER_KEYS

    def sort_key(self):
        fk = (self.family, self.i, self.inverted)
        if fk not in _TERM_ORDER_KEYS:
            return super().sort_key()
        return _TERM_ORDER_KEYS[fk]

    @property
    def spec(self) -> str:
        s = self.family + ("-inv" if self.inverted else "")
        return f"{s}:{self.i}" if self.i is not None else s

    @property
    def label(self) -> str:
        s = _FAMILY_LABEL[self.family]
        if self.i is not None:
            s += f"({self.i})"
        return s + ("^-1" if self.inverted else "")


def _key_min(m):
    return _trimmed(_c1_exponents(m))


def _key_degmin(m):
    a = _c1_exponents(m)
    return (sum(a.values()), _trimmed(a))


def _key_revdegmin_inv(m):
    a = _c1_exponents(m)
    return (sum(a.values()), tuple(-v for v in _trimmed(a)) + (1,))


def _key_max1(m):
    t = _trimmed(_c1_exponents(m))
    return (len(t), t[::-1])


def _key_degmax2(m):
    a = _c1_exponents(m)
    t = _trimmed(a)
    return (sum(a.values()), len(t), t[::-1])


def _key_revdegmax2_inv(m):
    a = _c1_exponents(m)
    t = _trimmed(a)
    return (sum(a.values()), -len(t), tuple(-v for v in reversed(t)))


_TERM_ORDER_KEYS = {
    ("min", None, False): _key_min,
    ("degmin", None, False): _key_degmin,
    ("revdegmin", None, True): _key_revdegmin_inv,
    ("max", 1, False): _key_max1,
    ("degmax", 2, False): _key_degmax2,
    ("revdegmax", 2, True): _key_revdegmax2_inv,
}

MIN = NamedOrder("min")
DEGMIN = NamedOrder("degmin")
REVDEGMIN_INV = NamedOrder("revdegmin", inverted=True)
MAX1 = NamedOrder("max", 1)
DEGMAX2 = NamedOrder("degmax", 2)
REVDEGMAX2_INV = NamedOrder("revdegmax", 2, inverted=True)
SIX_TERM_ORDERS = (MIN, DEGMIN, REVDEGMIN_INV, MAX1, DEGMAX2, REVDEGMAX2_INV)
DEG = NamedOrder("deg")
TRIVIAL = NamedOrder("trivial")


def prop43_families(max_i: int = 4) -> list:
    """The R_4 list: families (1)-(7) with their index ranges, inverses, Trivial."""
    base = [NamedOrder("deg"), NamedOrder("min"), NamedOrder("degmin"), NamedOrder("revdegmin")]
    base += [NamedOrder("max", i) for i in range(1, max_i + 1)]
    base += [NamedOrder("degmax", i) for i in range(2, max_i + 1)]
    base += [NamedOrder("revdegmax", i) for i in range(2, max_i + 1)]
    return base + [o.inverse() for o in base] + [TRIVIAL]


def _entry(x, d: Optional[int]):
    if d is None:
        if isinstance(x, QuadraticNumber):
            raise ValueError("irrational entry without a configured radical")
        return Fraction(x)
    if isinstance(x, QuadraticNumber):
        return x
    return QuadraticNumber(x, 0, d)


def _dot(row, vec):
    s = 0
    for w, v in zip(row, vec):
        if v:
            s = w * v + s
    return s


def _exact_sign(x) -> int:
    return x.sign() if isinstance(x, QuadraticNumber) else _sign(x)


def _lex_sign(rows, diff) -> int:
    for row in rows:
        s = _exact_sign(_dot(row, diff))
        if s:
            return s
    return 0


def _matrix_is_term_order(rows, n: int) -> bool:
    # full column rank over Q after splitting q + r*sqrt(d) into (q, r) rows
    split = []
    for row in rows:
        if any(isinstance(v, QuadraticNumber) for v in row):
            split.append([Fraction(v.q) for v in row])
            split.append([Fraction(v.r) for v in row])
        else:
            split.append([Fraction(v) for v in row])
    if _rank(split) < n:
        return False
    for j in range(n):
        col = [row[j] for row in rows]
        first = next((v for v in col if v != 0), None)
        if first is None or not first > 0:
            return False
    return True


def _rank(rows) -> int:
    mat = [list(r) for r in rows]
    rank = 0
    ncols = len(mat[0]) if mat else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(mat)) if mat[i][col] != 0), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        for i in range(len(mat)):
            if i != rank and mat[i][col] != 0:
                factor = mat[i][col] / mat[rank][col]
                mat[i] = [a - factor * b for a, b in zip(mat[i], mat[rank])]
        rank += 1
    return rank


def _fmt_matrix(rows) -> str:
    return "[" + ",".join("[" + ",".join(str(v) for v in row) + "]" for row in rows) + "]"


@dataclass(frozen=True)
class MatrixOrder(OrderSpec):
    """x^a < x^b iff M a <_lex M b, on c = 1 exponent vectors of length ``n``."""

    rows: tuple
    d: Optional[int] = None
    inverted: bool = False

    def __post_init__(self):
        rows = tuple(tuple(_entry(x, self.d) for x in row) for row in self.rows)
        if not rows or len({len(r) for r in rows}) != 1:
            raise ValueError("matrix rows must be nonempty and of equal length")
        if any(all(v == 0 for v in row) for row in rows):
            raise ValueError("matrix rows must be nonzero")
        object.__setattr__(self, "rows", rows)

    @property
    def n(self) -> int:
        return len(self.rows[0])

    def _diff(self, f, g):
        a, b = _c1_exponents(f), _c1_exponents(g)
        if max(a, default=0) > self.n or max(b, default=0) > self.n:
            raise UnsupportedOrderError(f"monomial outside R_{self.n} for a {self.n}-column matrix")
        return [a.get(j, 0) - b.get(j, 0) for j in range(1, self.n + 1)]

    def _raw(self, f, g):
        s = _lex_sign(self.rows, self._diff(f, g))
        return LESS if s < 0 else GREATER if s > 0 else INCOMPARABLE

    @property
    def is_term_order(self) -> bool:
        if self.inverted:
            return False
        return _matrix_is_term_order(self.rows, self.n)

    def weights(self, m: Monomial) -> tuple:
        a = _c1_exponents(m)
        return tuple(_dot(row, [a.get(j, 0) for j in range(1, self.n + 1)]) for row in self.rows)

    def sort_key(self):
        if self.is_term_order:
            return self.weights
        return super().sort_key()

    @property
    def spec(self) -> str:
        head = "matrix" if self.d is None else f"matrix-sqrt:{self.d}"
        if self.inverted:
            head = head.replace("matrix", "matrix-inv", 1)
        return f"{head}:{_fmt_matrix(self.rows)}"


@dataclass(frozen=True)
class ColumnLex(OrderSpec):
    """Compare column blocks x_i^{a(i)} at the first differing column via an inner matrix order on c variables."""

    inner: tuple
    d: Optional[int] = None
    inverted: bool = False

    def __post_init__(self):
        rows = tuple(tuple(_entry(x, self.d) for x in row) for row in self.inner)
        if not rows or len({len(r) for r in rows}) != 1 or any(all(v == 0 for v in r) for r in rows):
            raise ValueError("inner matrix rows must be nonzero and of equal length")
        object.__setattr__(self, "inner", rows)

    @property
    def c(self) -> int:
        return len(self.inner[0])

    def _blocks(self, m: Monomial) -> dict:
        out: dict = {}
        for (r, col), e in m.items():
            if r > self.c:
                raise UnsupportedOrderError(f"row {r} exceeds the inner order's {self.c} variables")
            out.setdefault(col, [0] * self.c)[r - 1] = e
        return out

    def _raw(self, f, g):
        a, b = self._blocks(f), self._blocks(g)
        zero = [0] * self.c
        for col in sorted(a.keys() | b.keys()):
            va, vb = a.get(col, zero), b.get(col, zero)
            if va != vb:
                s = _lex_sign(self.inner, [x - y for x, y in zip(va, vb)])
                return LESS if s < 0 else GREATER if s > 0 else INCOMPARABLE
        return EQUAL  # pragma: no cover - distinct monomials differ somewhere

    @property
    def is_term_order(self) -> bool:
        return not self.inverted and _matrix_is_term_order(self.inner, self.c)

    def sort_key(self):
        if not self.is_term_order:
            return super().sort_key()
        inner, c = self.inner, self.c

        def key(m):
            blocks = self._blocks(m)
            if not blocks:
                return ()
            top = max(blocks)
            zero = [0] * c
            return tuple(
                tuple(_dot(row, blocks.get(j, zero)) for row in inner) for j in range(1, top + 1)
            )

        return key

    @property
    def spec(self) -> str:
        head = "collex" + ("-inv" if self.inverted else "")
        if self.d is not None:
            head += f":sqrt:{self.d}"
        return f"{head}:{_fmt_matrix(self.inner)}"


@dataclass(frozen=True)
class PermutedLex(OrderSpec):
    """Lex with variable priority x_{sigma(1)}, x_{sigma(2)}, ...; sigma is the identity beyond its n."""

    sigma: Permutation
    inverted: bool = False

    def _positions(self, m: Monomial) -> dict:
        inv = self.sigma.inverse()
        return {inv(c): e for c, e in _c1_exponents(m).items()}

    def _raw(self, f, g):
        a, b = self._positions(f), self._positions(g)
        j = min(k for k in a.keys() | b.keys() if a.get(k, 0) != b.get(k, 0))
        return LESS if a.get(j, 0) < b.get(j, 0) else GREATER

    @property
    def is_term_order(self) -> bool:
        return not self.inverted

    def sort_key(self):
        if self.inverted:
            return super().sort_key()
        return lambda m: _trimmed(self._positions(m))

    @property
    def spec(self) -> str:
        return f"permlex{'-inv' if self.inverted else ''}:{self.sigma}"


@dataclass(frozen=True)
class BlockOrder(OrderSpec):
    """Internal elimination order: variables outside ``keep`` dominate.

    Degree-lex on the eliminated block first, then degree-lex on the kept
    block.  A term order, not Inc-compatible in general.
    """

    keep: frozenset
    trunc: Truncation
    inverted: bool = False

    def _split(self, m: Monomial):
        out, inn = [], []
        for r, c in self.trunc.variables():
            e = m.exponent(r, c)
            (inn if c in self.keep else out).append(e)
        return (sum(out), tuple(out), sum(inn), tuple(inn))

    def _raw(self, f, g):
        a, b = self._split(f), self._split(g)
        return LESS if a < b else GREATER

    @property
    def is_term_order(self) -> bool:
        return not self.inverted

    def sort_key(self):
        return self._split

    @property
    def spec(self) -> str:
        return f"elim:{sorted(self.keep)}"


# --------------------------------------------------------------------------
# text syntax

_SQRT_TERM = re.compile(r"([+-]?)(\d+(?:/\d+)?)?\*?(s)?")


def _parse_entry(text: str, d: Optional[int]):
    text = text.replace(" ", "")
    if not text:
        raise ValueError("empty matrix entry")
    if d is None:
        return Fraction(text)
    q = r = Fraction(0)
    pos = 0
    while pos < len(text):
        mt = _SQRT_TERM.match(text, pos)
        if not mt or mt.end() == pos or (mt.group(2) is None and mt.group(3) is None):
            raise ValueError(f"bad matrix entry {text!r}")
        coef = Fraction(mt.group(2)) if mt.group(2) else Fraction(1)
        if mt.group(1) == "-":
            coef = -coef
        if mt.group(3):
            r += coef
        else:
            q += coef
        pos = mt.end()
    return QuadraticNumber(q, r, d)


def _parse_matrix(text: str, d: Optional[int]) -> tuple:
    text = text.strip()
    if not (text.startswith("[[") and text.endswith("]]")):
        raise ValueError(f"bad matrix {text!r}")
    rows = re.findall(r"\[([^\[\]]*)\]", text[1:-1])
    return tuple(tuple(_parse_entry(e, d) for e in row.split(",")) for row in rows)


def parse_order(text: str) -> OrderSpec:
    """Parse the CLI order syntax, e.g. ``degmax:2``, ``revdegmin-inv``,
    ``matrix:[[1,1],[1,0]]``, ``matrix-sqrt:2:[[1,s]]``, ``permlex:(2,1,3)``,
    ``collex:[[1,0],[0,1]]``.  A trailing ``-inv`` inverts any variant."""
    s = text.strip()
    inv = False
    if s.endswith("-inv"):
        inv, s = True, s[: -len("-inv")]
    head, _, rest = s.partition(":")
    if head.endswith("-inv"):
        inv, head = not inv, head[: -len("-inv")]
    if head in FAMILIES:
        i = int(rest) if rest else None
        return NamedOrder(head, i, inverted=inv)
    if head == "matrix":
        return MatrixOrder(_parse_matrix(rest, None), inverted=inv)
    if head == "matrix-sqrt":
        d, _, mat = rest.partition(":")
        return MatrixOrder(_parse_matrix(mat, int(d)), d=int(d), inverted=inv)
    if head == "permlex":
        imgs = tuple(int(v) for v in rest.strip("() ").split(",") if v.strip())
        return PermutedLex(Permutation(imgs), inverted=inv)
    if head == "collex":
        if rest.startswith("sqrt:"):
            _, d, mat = rest.split(":", 2)
            return ColumnLex(_parse_matrix(mat, int(d)), d=int(d), inverted=inv)
        if rest.startswith("matrix:"):
            rest = rest[len("matrix:"):]
        return ColumnLex(_parse_matrix(rest, None), inverted=inv)
    raise ValueError(f"unknown order {text!r}")


# --------------------------------------------------------------------------
# leading forms


def leading_form(order: OrderSpec, f: Polynomial) -> Polynomial:
    """Sum of the terms of f that no other term of f exceeds."""
    if f.is_zero():
        raise ValueError("leading form of the zero polynomial")
    mons = f.monomials()
    keep = [
        m for m in mons if not any(order.compare(m, other) is LESS for other in mons if other is not m)
    ]
    return Polynomial({m: f.coefficient(m) for m in keep})


def leading_monomial(order: OrderSpec, f: Polynomial, key: Optional[Callable] = None) -> Monomial:
    """Leading monomial for a total order."""
    if f.is_zero():
        raise ValueError("leading monomial of the zero polynomial")
    return max(f.terms, key=key or order.sort_key())


def leading_term(order: OrderSpec, f: Polynomial, key: Optional[Callable] = None):
    m = leading_monomial(order, f, key)
    return m, f.coefficient(m)


# --------------------------------------------------------------------------
# exhaustive checkers


def monomials_upto(trunc: Truncation, max_degree: int) -> list:
    """All monomials of degree <= max_degree in the truncation, by degree then canonical key."""
    vars_ = trunc.variables()
    out = []
    for deg in range(max_degree + 1):
        layer = [Monomial([(v, 1) for v in combo]) for combo in combinations_with_replacement(vars_, deg)]
        out.extend(sorted(layer, key=lambda m: m.key))
    return out


def relation_matrix(order: OrderSpec, mons: Sequence[Monomial]) -> np.ndarray:
    """Boolean matrix R with R[i, j] iff mons[i] < mons[j]; both directions queried."""
    k = len(mons)
    R = np.zeros((k, k), dtype=bool)
    for i, f in enumerate(mons):
        for j, g in enumerate(mons):
            if i != j and order.compare(f, g) is LESS:
                R[i, j] = True
    return R


@dataclass
class AxiomReport:
    order: str
    trunc: Truncation
    max_degree: int
    axioms: dict = field(default_factory=dict)  # name -> first counterexample or None
    total: bool = False
    total_witness: Optional[tuple] = None
    one_minimal: bool = False

    @property
    def ok(self) -> bool:
        return all(v is None for v in self.axioms.values())

    def as_dict(self) -> dict:
        return {
            "order": self.order,
            "c": self.trunc.c,
            "n": self.trunc.n,
            "max_degree": self.max_degree,
            "ok": self.ok,
            "axioms": {
                k: None if v is None else [str(x) for x in v] for k, v in self.axioms.items()
            },
            "total": self.total,
            "one_minimal": self.one_minimal,
        }


def _first(mask: np.ndarray):
    hits = np.argwhere(mask)
    return tuple(int(x) for x in hits[0]) if len(hits) else None


def check_preorder_axioms(order: OrderSpec, trunc: Truncation, max_degree: int) -> AxiomReport:
    """Exhaustive check over monomials of degree <= max_degree.

    Multiplicativity and cancellativity are tested against every single
    variable; iterating variable multiplications covers every multiplier
    inside the degree bound.  Equal monomials count as incomparable.
    """
    mons = monomials_upto(trunc, max_degree)
    index = {m: i for i, m in enumerate(mons)}
    R = relation_matrix(order, mons)
    Ri = R.astype(np.int64)
    rep = AxiomReport(order.label, trunc, max_degree)

    diag = np.flatnonzero(np.diag(R))
    rep.axioms["irreflexive"] = None if not len(diag) else (mons[int(diag[0])],)

    asym = _first(R & R.T)
    rep.axioms["asymmetric"] = None if asym is None else (mons[asym[0]], mons[asym[1]])

    trans = _first(((Ri @ Ri) > 0) & ~R)
    if trans is None:
        rep.axioms["transitive"] = None
    else:
        i, k = trans
        j = int(np.argmax(R[i] & R[:, k]))
        rep.axioms["transitive"] = (mons[i], mons[j], mons[k])

    inc = ~R & ~R.T
    inci = inc.astype(np.int64)
    itrans = _first(((inci @ inci) > 0) & ~inc)
    if itrans is None:
        rep.axioms["incomparability_transitive"] = None
    else:
        i, k = itrans
        j = int(np.argmax(inc[i] & inc[:, k]))
        rep.axioms["incomparability_transitive"] = (mons[i], mons[j], mons[k])

    low = [i for i, m in enumerate(mons) if m.degree < max_degree]
    rep.axioms["multiplicative"] = None
    rep.axioms["cancellative"] = None
    if low:
        low_idx = np.array(low)
        R_low = R[np.ix_(low_idx, low_idx)]
        for r, c in trunc.variables():
            x = Monomial.var(r, c)
            up = np.array([index[mons[i] * x] for i in low])
            R_up = R[np.ix_(up, up)]
            if rep.axioms["multiplicative"] is None:
                hit = _first(R_low & ~R_up)
                if hit is not None:
                    rep.axioms["multiplicative"] = (mons[low[hit[0]]], mons[low[hit[1]]], x)
            if rep.axioms["cancellative"] is None:
                hit = _first(R_up & ~R_low)
                if hit is not None:
                    rep.axioms["cancellative"] = (mons[low[hit[0]]], mons[low[hit[1]]], x)

    off = inc & ~np.eye(len(mons), dtype=bool)
    tw = _first(off)
    rep.total = tw is None
    rep.total_witness = None if tw is None else (mons[tw[0]], mons[tw[1]])
    rep.one_minimal = bool(R[0, 1:].all()) if len(mons) > 1 else True
    return rep


@dataclass
class CompatibilityReport:
    order: str
    trunc: Truncation
    max_degree: int
    violation: Optional[tuple] = None  # (f, g, p) with f < g but not p.f < p.g

    @property
    def ok(self) -> bool:
        return self.violation is None

    def as_dict(self) -> dict:
        v = self.violation
        return {
            "order": self.order,
            "c": self.trunc.c,
            "n": self.trunc.n,
            "max_degree": self.max_degree,
            "compatible": self.ok,
            "violation": None if v is None else {"f": str(v[0]), "g": str(v[1]), "p": str(v[2])},
        }


def check_inc_compatibility(
    order: OrderSpec, trunc: Truncation, max_degree: int, relation: Optional[np.ndarray] = None
) -> CompatibilityReport:
    """f < g implies p.f < p.g for monomials in R_m and every p in Inc(N)_{m,n}, m <= n.

    Scans m ascending, maps lexicographically, then pairs by index; the
    first violation found is reported.
    """
    mons = monomials_upto(trunc, max_degree)
    index = {m: i for i, m in enumerate(mons)}
    R = relation_matrix(order, mons) if relation is None else relation
    rep = CompatibilityReport(order.label, trunc, max_degree)
    for m in range(1, trunc.n + 1):
        dom = [i for i, mon in enumerate(mons) if mon.max_col() <= m]
        dom_idx = np.array(dom)
        R_dom = R[np.ix_(dom_idx, dom_idx)]
        for p in enumerate_inc(m, trunc.n):
            img = np.array([index[mons[i].relabel(p)] for i in dom])
            hit = _first(R_dom & ~R[np.ix_(img, img)])
            if hit is not None:
                rep.violation = (mons[dom[hit[0]]], mons[dom[hit[1]]], p)
                return rep
    return rep


# --------------------------------------------------------------------------
# R_4 analysis


def _orthogonalize(rows) -> list:
    out = []
    for row in rows:
        v = list(row)
        for u in out:
            uu = _dot(u, u)
            coef = _dot(u, v) / uu
            v = [a - coef * b for a, b in zip(v, u)]
        if any(x != 0 for x in v):
            out.append(v)
    return out


def _rank_le_one(mat) -> int:
    """Rank of a small matrix, capped at 2 (only <= 1 vs 2 matters)."""
    if all(x == 0 for row in mat for x in row):
        return 0
    r0, r1 = mat
    for i in range(len(r0)):
        for j in range(i + 1, len(r0)):
            if r0[i] * r1[j] - r0[j] * r1[i] != 0:
                return 2
    return 1


def _row_family(row) -> Optional[str]:
    a1, a2, a3, a4 = row
    if a1 != 0 and a1 == a2 == a3 == a4:
        return "(l,l,l,l)"
    if a1 != 0 and a2 == a3 == a4 == 0:
        return "(l,0,0,0)"
    if a4 != 0 and a1 == a2 == a3 == 0:
        return "(0,0,0,l)"
    return None


def _second_row_family(row) -> Optional[str]:
    b1, b2, b3, b4 = row
    if b1 != 0 and b1 == b2 == b3 and b4 == -3 * b1:
        return "(-m,-m,-m,3m)"
    if b2 != 0 and b2 == b3 == b4 and b1 == -3 * b2:
        return "(3m,-m,-m,-m)"
    return None


@dataclass
class RowConditionReport:
    passed: bool
    first_row_family: Optional[str] = None
    second_row_family: Optional[str] = None
    ranks: dict = field(default_factory=dict)
    failing: Optional[str] = None
    failing_matrix: Optional[list] = None
    failing_rank: Optional[int] = None

    def as_dict(self) -> dict:
        return {
            "passed": self.passed,
            "first_row_family": self.first_row_family,
            "second_row_family": self.second_row_family,
            "ranks": self.ranks,
            "failing": self.failing,
            "failing_matrix": None
            if self.failing_matrix is None
            else [[str(x) for x in r] for r in self.failing_matrix],
            "failing_rank": self.failing_rank,
        }


def matrix_row_conditions_r4(M) -> RowConditionReport:
    """Necessary row conditions for a compatible preorder on R_4 given by a matrix.

    The rows are first made orthogonal (Gram-Schmidt, exact), which does not
    change the preorder.  The first row must make
    A_1 = [[a1,a2,a3],[a2,a3,a4]] and A_2 = [[a1,a2,a3],[a1,a3,a4]] rank <= 1
    and be constant, (l,0,0,0) or (0,0,0,l).  A constant first row forces the
    analogous conditions on B_1, B_2 and the shape of the second row.
    """
    rows = M.rows if isinstance(M, MatrixOrder) else tuple(tuple(Fraction(x) for x in r) for r in M)
    if any(len(r) != 4 for r in rows):
        raise ValueError("need a matrix with 4 columns")
    rows = _orthogonalize(rows)
    rep = RowConditionReport(passed=False)
    if not rows:
        rep.failing = "zero matrix"
        return rep
    a1, a2, a3, a4 = rows[0]
    checks = [("A_1", [[a1, a2, a3], [a2, a3, a4]]), ("A_2", [[a1, a2, a3], [a1, a3, a4]])]
    for name, mat in checks:
        rk = _rank_le_one(mat)
        rep.ranks[name] = rk
        if rk > 1:
            rep.failing, rep.failing_matrix, rep.failing_rank = name, mat, rk
            return rep
    rep.first_row_family = _row_family(rows[0])
    if rep.first_row_family is None:
        rep.failing = "first row shape"
        return rep
    if rep.first_row_family == "(l,l,l,l)" and len(rows) >= 2:
        b1, b2, b3, b4 = rows[1]
        checks = [
            ("B_1", [[b1 - b3, b2 - b3], [b2 - b4, b3 - b4]]),
            ("B_2", [[b1 - b3, b2 - b3], [b1 - b4, b3 - b4]]),
        ]
        for name, mat in checks:
            rk = _rank_le_one(mat)
            rep.ranks[name] = rk
            if rk > 1:
                rep.failing, rep.failing_matrix, rep.failing_rank = name, mat, rk
                return rep
        rep.second_row_family = _second_row_family(rows[1])
        if rep.second_row_family is None:
            rep.failing = "second row shape"
            return rep
    rep.passed = True
    return rep


_R4_CACHE: dict = {}


def _r4_relation(order: OrderSpec, max_degree: int, mons) -> np.ndarray:
    key = (order, max_degree)
    if key not in _R4_CACHE:
        _R4_CACHE[key] = relation_matrix(order, mons)
    return _R4_CACHE[key]


def identify_order_on_r4(order: OrderSpec, max_degree: int = 4) -> str:
    """Name of the unique R_4 family behaving like ``order`` on all pairs of
    degree <= max_degree, or "unclassified"."""
    mons = monomials_upto(Truncation(1, 4), max_degree)
    R = relation_matrix(order, mons)
    matches = [o.label for o in prop43_families() if np.array_equal(R, _r4_relation(o, max_degree, mons))]
    return matches[0] if len(matches) == 1 else "unclassified"


def distinguishing_pair(o1: OrderSpec, o2: OrderSpec, trunc: Truncation, max_degree: int) -> Optional[tuple]:
    """First monomial pair (by degree, then canonical key) the two orders compare differently."""
    mons = monomials_upto(trunc, max_degree)
    for i, f in enumerate(mons):
        for g in mons[i + 1:]:
            if o1.compare(f, g) != o2.compare(f, g):
                return (f, g)
    return None

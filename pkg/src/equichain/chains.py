"""Inc(N)-invariant ideal chains, their initial chains and stability indices.

A chain is given by finitely many data (:class:`ChainSpec`):

* explicit generators at some levels, used verbatim below the seed level;
* optionally a seed level N with seed generators in R_N.  From level N on,
  J_n is generated by the Inc(N)_{m,n}-images of every seed and explicit
  generator g living at level m <= n.

Without a seed level the chain is purely explicit: J_n is generated by the
explicit generators at levels <= n and nothing is spread.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .groebner import (
    GroebnerBasis,
    MonomialIdeal,
    buchberger,
    initial_ideal,
    intersect_with_columns,
    reference_order,
)
from .inc import IncMap, exists_map_through, map_through
from .orders import OrderSpec
from .ring import Monomial, Polynomial, Truncation, TruncationError, parse_polynomial, parse_polynomials


class ChainFormatError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class ChainInclusionError(RuntimeError):
    """in(J_n) is not contained in in(J_{n+1}): a non-compatible order or a bug."""


@dataclass(frozen=True)
class ChainSpec:
    c: int = 1
    seed_level: Optional[int] = None
    seed_gens: tuple = ()
    explicit_levels: tuple = ()  # ((level, (gens...)), ...) ascending

    def __post_init__(self):
        seeds = tuple(g for g in self.seed_gens if not g.is_zero())
        levels = {}
        items = self.explicit_levels.items() if isinstance(self.explicit_levels, dict) else self.explicit_levels
        for lvl, gens in items:
            levels.setdefault(int(lvl), []).extend(g for g in gens if not g.is_zero())
        object.__setattr__(self, "seed_gens", seeds)
        object.__setattr__(
            self, "explicit_levels", tuple((lvl, tuple(levels[lvl])) for lvl in sorted(levels))
        )
        if self.seed_level is not None and self.seed_level < 1:
            raise ValueError("seed level must be >= 1")
        if self.seed_gens and self.seed_level is None:
            raise ValueError("seed generators need a seed level")
        for g in self.seed_gens:
            if not Truncation(self.c, self.seed_level).contains(g):
                raise TruncationError(f"seed generator {g} is not in R_{self.seed_level}")
        for lvl, gens in self.explicit_levels:
            if lvl < 1:
                raise ValueError("levels start at 1")
            if self.seed_level is not None and lvl >= self.seed_level:
                raise ValueError(f"explicit level {lvl} must lie below the seed level {self.seed_level}")
            for g in gens:
                if not Truncation(self.c, lvl).contains(g):
                    raise TruncationError(f"generator {g} of level {lvl} is not in R_{lvl}")

    def sources(self):
        """(level, generator) pairs: explicit ones, then the seed."""
        out = [(lvl, g) for lvl, gens in self.explicit_levels for g in gens]
        out += [(self.seed_level, g) for g in self.seed_gens]
        return out

    @property
    def is_seeded(self) -> bool:
        return self.seed_level is not None

    def to_text(self) -> str:
        lines = [f"c={self.c}"]
        if self.seed_level is not None:
            lines.append(f"seed_level={self.seed_level}")
        for g in self.seed_gens:
            lines.append(f"seed: {g}")
        for lvl, gens in self.explicit_levels:
            lines.append(f"level {lvl}: " + "; ".join(str(g) for g in gens))
        return "\n".join(lines) + "\n"


def parse_chain(text: str) -> ChainSpec:
    """Line format: ``c=1``, ``seed_level=4``, ``seed: x1+x3``, ``level 2: f; g``; '#' comments."""
    c, seed_level = 1, None
    seeds, levels = [], []
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, val = line.partition("=")
        if sep and key.strip() in ("c", "seed_level") and ":" not in key:
            try:
                v = int(val.strip())
            except ValueError:
                raise ChainFormatError(f"expected an integer in {raw!r}", no) from None
            if key.strip() == "c":
                c = v
            else:
                seed_level = v
            continue
        head, sep, body = line.partition(":")
        if not sep:
            raise ChainFormatError(f"cannot read {raw!r}", no)
        head = head.strip()
        if head == "seed":
            seeds.append((no, body))
        elif head.startswith("level"):
            try:
                lvl = int(head[len("level"):].strip())
            except ValueError:
                raise ChainFormatError(f"bad level in {raw!r}", no) from None
            levels.append((no, lvl, body))
        else:
            raise ChainFormatError(f"unknown key {head!r}", no)
    seed_gens = []
    for no, body in seeds:
        if seed_level is None:
            raise ChainFormatError("seed given without seed_level", no)
        seed_gens += _parse_gens(body, Truncation(c, seed_level), no)
    explicit = {}
    for no, lvl, body in levels:
        explicit.setdefault(lvl, []).extend(_parse_gens(body, Truncation(c, lvl), no))
    try:
        return ChainSpec(c, seed_level, tuple(seed_gens), explicit)
    except ValueError as exc:
        raise ChainFormatError(str(exc), 0) from None


def _parse_gens(body: str, trunc: Truncation, no: int) -> list:
    try:
        return parse_polynomials(body.replace(";", "\n"), trunc)
    except ValueError as exc:
        raise ChainFormatError(str(exc), no) from None


def load_chain(path) -> ChainSpec:
    with open(path, encoding="utf-8") as fh:
        return parse_chain(fh.read())


# a few chains used throughout the tests and demos


def seed_chain(seed_level: int, gens: Iterable, c: int = 1) -> ChainSpec:
    polys = [parse_polynomial(g, Truncation(c, seed_level)) if isinstance(g, str) else g for g in gens]
    return ChainSpec(c, seed_level, tuple(polys))


def remark32_chain() -> ChainSpec:
    """J_n = 0 for n < 4, J_4 = <x1 + x3>, spread from level 4."""
    return seed_chain(4, ["x1 + x3"])


def zero_chain(c: int = 1) -> ChainSpec:
    return ChainSpec(c)


def doubling_chain(k: int) -> ChainSpec:
    """J_{2^j} adds x_{2^{j-1}+1} + ... + x_{2^j}; constant between powers of two."""
    levels = {}
    for j in range(1, k + 1):
        lo, hi = 2 ** (j - 1) + 1, 2 ** j
        levels[hi] = [Polynomial({Monomial.var(1, col): 1 for col in range(lo, hi + 1)})]
    return ChainSpec(1, None, (), levels)


# --------------------------------------------------------------------------
# spreading


def spread_images(g, m: int, n: int) -> list:
    """Distinct images p.g for p in Inc(N)_{m,n}, each with a witness map.

    Only the images of g's support columns matter, so candidate targets are
    enumerated and filtered by the gap criterion.
    """
    cols = g.columns()
    out = []
    for targets in combinations(range(1, n + 1), len(cols)):
        pts = list(zip(cols, targets))
        if exists_map_through(pts, m, n):
            p = map_through(pts, m, n)
            out.append((p, g.relabel(p)))
    return out


def spread(gens: Iterable, m: int, n: int) -> list:
    """Deduplicated generators of <Inc(N)_{m,n} . gens>, in first-seen order."""
    seen = {}
    for g in gens:
        for _, img in spread_images(g, m, n):
            seen.setdefault(img, None)
    return list(seen)


@functools.lru_cache(maxsize=None)
def _level_generators(chain: ChainSpec, n: int) -> tuple:
    seen: dict = {}
    if chain.seed_level is None or n < chain.seed_level:
        for lvl, gens in chain.explicit_levels:
            if lvl <= n:
                for g in gens:
                    seen.setdefault(g, None)
        return tuple(seen)
    for lvl, g in chain.sources():
        for _, img in spread_images(g, lvl, n):
            seen.setdefault(img, None)
    return tuple(seen)


def level_generators(chain: ChainSpec, n: int) -> list:
    if n < 1:
        raise ValueError("levels start at 1")
    return list(_level_generators(chain, n))


@functools.lru_cache(maxsize=None)
def _level_gb(chain: ChainSpec, order: OrderSpec, n: int) -> GroebnerBasis:
    return buchberger(_level_generators(chain, n), order, Truncation(chain.c, n))


def level_basis(chain: ChainSpec, n: int, order: Optional[OrderSpec] = None) -> GroebnerBasis:
    return _level_gb(chain, order or reference_order(chain.c), n)


def level_initial(chain: ChainSpec, order: OrderSpec, n: int) -> MonomialIdeal:
    return _level_gb(chain, order, n).initial_ideal()


def clear_caches():
    _level_generators.cache_clear()
    _level_gb.cache_clear()


# --------------------------------------------------------------------------
# invariance and stability


@dataclass
class InvarianceReport:
    invariant: bool
    horizon: int
    counterexample: Optional[dict] = None

    def as_dict(self) -> dict:
        return {"invariant": self.invariant, "horizon": self.horizon, "counterexample": self.counterexample}


def is_inc_invariant(chain: ChainSpec, horizon: int) -> InvarianceReport:
    """Inc(N)_{m,n} . J_m inside J_n for all m <= n <= horizon, by normal forms."""
    for n in range(1, horizon + 1):
        gb = level_basis(chain, n)
        for m in range(1, n + 1):
            for g in _level_generators(chain, m):
                for p, img in spread_images(g, m, n):
                    if not gb.contains(img):
                        return InvarianceReport(
                            False,
                            horizon,
                            {"m": m, "n": n, "generator": str(g), "p": str(p), "image": str(img)},
                        )
    return InvarianceReport(True, horizon)


@dataclass
class StabilityReport:
    candidate_index: int
    horizon: int
    certified: bool = False
    certificate_level: Optional[int] = None
    bound: Optional[int] = None
    index_bound_proven: bool = False
    exact: bool = False
    order: Optional[str] = None

    def as_dict(self) -> dict:
        return {
            "order": self.order,
            "candidate_index": self.candidate_index,
            "horizon": self.horizon,
            "certified": self.certified,
            "certificate_level": self.certificate_level,
            "bound": self.bound,
            "index_bound_proven": self.index_bound_proven,
            "exact": self.exact,
        }


def _ideal_gb_equal(gens: Sequence[Polynomial], gb: GroebnerBasis) -> bool:
    """<gens> equals the ideal with reduced basis gb (same truncation and order)."""
    if not all(gb.contains(f) for f in gens):
        return False
    other = buchberger(gens, gb.order, gb.trunc)
    return other.elements == gb.elements


def _candidate(horizon: int, holds) -> int:
    for N in range(1, horizon + 1):
        if all(holds(N, n) for n in range(N + 1, horizon + 1)):
            return N
    return horizon  # pragma: no cover - N = horizon always holds


def stability_index_upto(chain: ChainSpec, horizon: int) -> StabilityReport:
    """Smallest N <= horizon with <Inc_{N,n} J_N> = J_n for N <= n <= horizon.

    A lower bound for the true index.  For seeded chains the seed level is a
    proven upper bound, and once the horizon reaches it the candidate is the
    true index: J_n = <Inc_{s,n} J_s> and J_s = <Inc_{N,s} J_N> compose.
    """
    if horizon < 1:
        raise ValueError("horizon must be >= 1")

    def holds(N, n):
        return _ideal_gb_equal(spread(_level_generators(chain, N), N, n), level_basis(chain, n))

    cand = _candidate(horizon, holds)
    rep = StabilityReport(cand, horizon)
    if chain.is_seeded:
        rep.bound = chain.seed_level
        rep.index_bound_proven = True
        rep.exact = horizon >= chain.seed_level
    return rep


def initial_chain(chain: ChainSpec, order: OrderSpec, horizon: int) -> list:
    """[in(J_1), ..., in(J_horizon)], checking chain inclusion."""
    out = [level_initial(chain, order, n) for n in range(1, horizon + 1)]
    for n in range(1, horizon):
        if not out[n - 1].issubset(out[n]):
            raise ChainInclusionError(f"in(J_{n}) is not contained in in(J_{n + 1}) under {order.label}")
    return out


def _monomial_spread(I: MonomialIdeal, N: int, n: int) -> MonomialIdeal:
    return MonomialIdeal(spread(I.gens, N, n))


def initial_candidate_index(chain: ChainSpec, order: OrderSpec, horizon: int) -> int:
    ins = {n: level_initial(chain, order, n) for n in range(1, horizon + 1)}
    return _candidate(horizon, lambda N, n: _monomial_spread(ins[N], N, n) == ins[n])


def _chain_index_floor(chain: ChainSpec, horizon: int) -> tuple:
    """(an N known or assumed to be >= Ind(J), whether that is proven)."""
    if chain.is_seeded:
        return chain.seed_level, True
    return stability_index_upto(chain, horizon).candidate_index, False


def certify_initial_stability(chain: ChainSpec, order: OrderSpec, N: int, horizon: Optional[int] = None) -> StabilityReport:
    """Check in(J_{2N}) = <Inc_{N,2N} in(J_N)>; when it holds Ind(in(J)) <= 2N.

    N must not lie below the chain's own (candidate) index.  For seeded
    chains N >= seed level makes the bound a proof.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    if chain.is_seeded and N >= chain.seed_level:
        cand, proven = chain.seed_level, True
    else:
        cand = stability_index_upto(chain, max(2 * N, N + 1)).candidate_index
        proven = False
        if N < cand:
            raise ValueError(f"N={N} lies below the chain's candidate stability index {cand}")
    ok = _monomial_spread(level_initial(chain, order, N), N, 2 * N) == level_initial(chain, order, 2 * N)
    h = horizon or 2 * N
    rep = StabilityReport(
        initial_candidate_index(chain, order, h),
        h,
        certified=ok,
        certificate_level=N if ok else None,
        bound=2 * N if ok else None,
        index_bound_proven=ok and proven,
        order=order.label,
    )
    rep.exact = ok and proven and h >= 2 * N
    return rep


@dataclass
class ISetReport:
    reports: dict  # order label -> StabilityReport
    horizon: int
    sampled_only: bool = False  # c >= 2: compatible orders are not exhausted

    @property
    def all_certified(self) -> bool:
        return all(r.certified for r in self.reports.values())

    @property
    def max_candidate(self) -> int:
        return max((r.candidate_index for r in self.reports.values()), default=1)

    @property
    def max_bound(self) -> Optional[int]:
        if not self.all_certified:
            return None
        return max((r.bound for r in self.reports.values()), default=None)

    def as_dict(self) -> dict:
        return {
            "horizon": self.horizon,
            "reports": {k: v.as_dict() for k, v in self.reports.items()},
            "all_certified": self.all_certified,
            "max_candidate_index": self.max_candidate,
            "max_certified_bound": self.max_bound,
            "sampled_only": self.sampled_only,
        }


def compute_I_set(
    chain: ChainSpec, orders: Sequence[OrderSpec], horizon: int, max_certificate_level: Optional[int] = None
) -> ISetReport:
    """Stability data of in(J) for every order.

    Certificates are tried at N = floor, floor + 1, ... up to
    ``max_certificate_level`` (default four times the floor), where floor is
    the seed level or the chain's candidate index.  A certified bound 2N <=
    horizon makes the candidate index exact.
    """
    floor, proven = _chain_index_floor(chain, horizon)
    floor = max(floor, 1)
    top = max_certificate_level or 4 * floor
    reports = {}
    for order in orders:
        rep = StabilityReport(initial_candidate_index(chain, order, horizon), horizon, order=order.label)
        for N in range(floor, top + 1):
            if _monomial_spread(level_initial(chain, order, N), N, 2 * N) == level_initial(chain, order, 2 * N):
                rep.certified = True
                rep.certificate_level = N
                rep.bound = 2 * N
                rep.index_bound_proven = proven
                rep.exact = proven and horizon >= 2 * N
                break
        reports[order.label] = rep
    return ISetReport(reports, horizon, sampled_only=chain.c >= 2)


@dataclass
class DistinctChainsReport:
    classes: list  # list of lists of order labels
    horizon: int
    certified: bool

    @property
    def count(self) -> int:
        return len(self.classes)

    def as_dict(self) -> dict:
        return {"count": self.count, "classes": self.classes, "horizon": self.horizon, "certified": self.certified}


def distinct_initial_chains(chain: ChainSpec, orders: Sequence[OrderSpec], horizon: int, certify: bool = True) -> DistinctChainsReport:
    """Group orders by their initial chains up to the horizon.

    Certified when every order's index bound is proven and <= horizon, since
    two chains that agree up to both indices agree everywhere.
    """
    groups: dict = {}
    for order in orders:
        sig = tuple(initial_chain(chain, order, horizon))
        groups.setdefault(sig, []).append(order.label)
    certified = False
    if certify:
        iset = compute_I_set(chain, orders, horizon)
        certified = all(r.index_bound_proven and r.bound is not None and r.bound <= horizon for r in iset.reports.values())
    return DistinctChainsReport(list(groups.values()), horizon, certified)


def check_intersection_decomposition(chain: ChainSpec, order: OrderSpec, N: int, n: int) -> bool:
    """in(J_n) == sum over N-subsets T of [n] of <in(J_n cap R_T)>.

    Each intersection is pulled back to R_N along T, its initial ideal taken
    there, and pushed forward along the increasing map T.
    """
    if not 1 <= N <= n:
        raise ValueError("need 1 <= N <= n")
    trunc = Truncation(chain.c, n)
    gens = _level_generators(chain, n)
    small = Truncation(chain.c, N)
    acc = []
    for T in combinations(range(1, n + 1), N):
        K = intersect_with_columns(gens, trunc, T)
        back = {t: k for k, t in enumerate(T, start=1)}
        K_small = [f.relabel(back.__getitem__) for f in K]
        p = IncMap(T)
        acc.extend(m.relabel(p) for m in initial_ideal(K_small, order, small).gens)
    return MonomialIdeal(acc) == level_initial(chain, order, n)


def gb_support_report(chain: ChainSpec, order: OrderSpec, n: int) -> int:
    """Largest number of distinct variables in an element of the reduced basis of J_n."""
    gb = _level_gb(chain, order, n)
    return max((len(g.variables()) for g in gb.elements), default=0)

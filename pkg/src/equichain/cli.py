"""Command-line front end: ``equichain <command> [options]``.

Exit codes: 0 success, 1 a mathematical check failed (the failure is the
payload), 2 usage or input errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from . import chains as ch
from .groebner import buchberger, intersect_with_columns, normal_form
from .inc import IncMap, Permutation, decompose, exists_map_through, inc_divides, map_through
from .linalg_oracle import graded_piece, initial_space, leading_form_span_bruteforce, monomial_in_initial, spans_equal
from .orders import (
    DEGMAX2,
    SIX_TERM_ORDERS,
    MatrixOrder,
    NamedOrder,
    check_inc_compatibility,
    check_preorder_axioms,
    distinguishing_pair,
    identify_order_on_r4,
    matrix_row_conditions_r4,
    PermutedLex,
    parse_order,
)
from .ring import Monomial, Polynomial, Truncation, parse_polynomial, parse_polynomials, to_gf

SCHEMA_VERSION = 1
EXPERIMENTS = ("remark32", "remark35", "remark45", "six-orders", "remark44")


class UsageError(Exception):
    pass


# --------------------------------------------------------------------------
# argument helpers


def _trunc(args) -> Truncation:
    n = args.trunc if args.trunc is not None else args.n
    if n is None:
        raise UsageError("a truncation is required (--trunc N)")
    return Truncation(args.c, n)


def _field(args, polys):
    if args.field in (None, "q"):
        return polys
    if args.field.startswith("gf:"):
        p = int(args.field[3:])
        return [to_gf(f, p) for f in polys]
    raise UsageError(f"unknown field {args.field!r}; use q or gf:<p>")


def _gens(args, trunc: Truncation) -> list:
    text = args.gens or ""
    return _field(args, parse_polynomials(text.replace(";", "\n"), trunc))


def _poly(text: Optional[str], trunc: Optional[Truncation], what: str) -> Polynomial:
    if text is None:
        raise UsageError(f"--{what} is required")
    return parse_polynomial(text, trunc)


def _monomial(text: Optional[str], what: str) -> Monomial:
    f = _poly(text, None, what)
    if len(f) != 1 or next(iter(f.terms.values())) != 1:
        raise UsageError(f"--{what} must be a monomial")
    return next(iter(f.terms))


def _order(args):
    if not args.order:
        raise UsageError("--order is required")
    return parse_order(args.order[0])


def _orders(args) -> list:
    if args.orders == "all-six":
        return list(SIX_TERM_ORDERS)
    if args.orders:
        return [parse_order(s) for s in args.orders.split(";")]
    if args.order:
        return [parse_order(s) for s in args.order]
    return list(SIX_TERM_ORDERS)


def _chain(args) -> ch.ChainSpec:
    if not args.chain:
        raise UsageError("--chain is required (a file or builtin:remark32|zero|doubling:<k>)")
    if args.chain.startswith("builtin:"):
        name = args.chain[len("builtin:"):]
        if name == "remark32":
            return ch.remark32_chain()
        if name == "zero":
            return ch.zero_chain(args.c)
        if name.startswith("doubling:"):
            return ch.doubling_chain(int(name.split(":")[1]))
        raise UsageError(f"unknown builtin chain {name!r}")
    return ch.load_chain(args.chain)


def _points(text: Optional[str]) -> list:
    if not text:
        return []
    out = []
    for part in text.split(","):
        i, _, j = part.partition(":")
        if not _:
            raise UsageError(f"bad point {part!r}; use i:j")
        out.append((int(i), int(j)))
    return out


def _incmap(text: Optional[str]) -> IncMap:
    if not text:
        raise UsageError("--p is required")
    text = text.strip()
    if text.startswith("["):
        return IncMap.parse(text)
    return IncMap(tuple(int(v) for v in text.strip("()").split(",") if v.strip()))


def _need(value, flag):
    if value is None:
        raise UsageError(f"{flag} is required")
    return value


# --------------------------------------------------------------------------
# commands; each returns (ok, payload, text_lines)


def cmd_gb(args):
    trunc = _trunc(args)
    gb = buchberger(_gens(args, trunc), _order(args), trunc, chain_criterion=args.chain_criterion)
    lines = [str(g) for g in gb.elements] or ["(empty basis: zero ideal)"]
    lines.append("initial ideal: " + str(gb.initial_ideal()))
    return True, gb.as_dict(), lines


def cmd_nf(args):
    trunc = _trunc(args)
    order = _order(args)
    gens = _gens(args, trunc)
    f = _field(args, [_poly(args.f, trunc, "f")])[0]
    if args.as_given:
        r = normal_form(f, gens, order)
    else:
        r = buchberger(gens, order, trunc).reduce(f)
    return True, {"order": order.spec, "f": str(f), "normal_form": str(r)}, [str(r)]


def cmd_initial(args):
    trunc = _trunc(args)
    order = _order(args)
    I = buchberger(_gens(args, trunc), order, trunc).initial_ideal()
    return True, {"order": order.spec, "initial_ideal": [str(m) for m in I.gens]}, [str(I)]


def cmd_inc_exists(args):
    pts = _points(args.points)
    N, n = _need(args.N, "--N"), _need(args.n, "--n")
    ok = exists_map_through(pts, N, n)
    p = map_through(pts, N, n)
    payload = {"points": pts, "N": N, "n": n, "exists": ok, "witness": None if p is None else str(p)}
    lines = ["true" if ok else "false"] + ([f"witness {p}"] if p else [])
    return True, payload, lines


def cmd_inc_divides(args):
    f, g = _monomial(args.f, "f"), _monomial(args.g, "g")
    m, n = _need(args.m, "--m"), _need(args.n, "--n")
    w = inc_divides(f, g, (m, n))
    payload = {"f": str(f), "g": str(g), "m": m, "n": n, "divides": w is not None}
    if w is None:
        return True, payload, ["false"]
    payload.update({"p": str(w.p), "h": str(w.h)})
    return True, payload, ["true", f"p = {w.p}", f"h = {w.h}"]


def cmd_decompose(args):
    p = _incmap(args.p)
    m, n = _need(args.m, "--m"), _need(args.n, "--n")
    d = decompose(p, p.m, m, n)
    payload = {"p": str(p), "l": p.m, "m": m, "n": n, "p1": str(d.p1), "p2": str(d.p2)}
    return True, payload, [f"p1 = {d.p1}", f"p2 = {d.p2}"]


def cmd_chain_invariance(args):
    rep = ch.is_inc_invariant(_chain(args), _need(args.horizon, "--horizon"))
    lines = ["invariant" if rep.invariant else f"not invariant: {rep.counterexample}"]
    return rep.invariant, rep.as_dict(), lines


def cmd_chain_stability(args):
    rep = ch.stability_index_upto(_chain(args), _need(args.horizon, "--horizon"))
    lines = [f"candidate index {rep.candidate_index} (horizon {rep.horizon})"]
    if rep.index_bound_proven:
        lines.append(f"proven upper bound {rep.bound}; exact: {rep.exact}")
    return True, rep.as_dict(), lines


def cmd_chain_initial(args):
    chain = _chain(args)
    order = _order(args)
    horizon = _need(args.horizon, "--horizon")
    ins = ch.initial_chain(chain, order, horizon)
    payload = {"order": order.spec, "levels": {str(n): [str(m) for m in I.gens] for n, I in enumerate(ins, 1)}}
    return True, payload, [f"in(J_{n}) = {I}" for n, I in enumerate(ins, 1)]


def cmd_iset(args):
    chain = _chain(args)
    rep = ch.compute_I_set(chain, _orders(args), _need(args.horizon, "--horizon"), args.max_level)
    lines = []
    for label, r in rep.reports.items():
        cert = f"certified at N={r.certificate_level}, Ind <= {r.bound}" if r.certified else "not certified"
        lines.append(f"{label}: candidate {r.candidate_index}; {cert}")
    lines.append(f"max candidate {rep.max_candidate}; max certified bound {rep.max_bound}")
    if rep.sampled_only:
        lines.append("note: c >= 2, the compatible orders were only sampled")
    return rep.all_certified, rep.as_dict(), lines


def cmd_distinct_chains(args):
    rep = ch.distinct_initial_chains(_chain(args), _orders(args), _need(args.horizon, "--horizon"))
    lines = [f"{rep.count} distinct initial chains (certified: {rep.certified})"]
    lines += [" = ".join(c) for c in rep.classes]
    return True, rep.as_dict(), lines


def cmd_intersect(args):
    trunc = _trunc(args)
    if not args.A:
        raise UsageError("--A is required")
    A = [int(v) for v in args.A.split(",") if v.strip()]
    out = intersect_with_columns(_gens(args, trunc), trunc, A)
    return True, {"A": A, "generators": [str(g) for g in out]}, [str(g) for g in out] or ["0"]


def cmd_compat_check(args):
    order = _order(args)
    rep = check_inc_compatibility(order, Truncation(args.c, args.n or 5), args.deg or 3)
    if rep.ok:
        return True, rep.as_dict(), ["compatible"]
    f, g, p = rep.violation
    return False, rep.as_dict(), [f"violation: {f} < {g} but not {p}.{f} < {p}.{g} (p = {p})"]


def cmd_axioms_check(args):
    order = _order(args)
    rep = check_preorder_axioms(order, Truncation(args.c, args.n or 4), args.deg or 3)
    lines = [f"{k}: {'ok' if v is None else 'FAILS at ' + ', '.join(map(str, v))}" for k, v in rep.axioms.items()]
    lines += [f"total: {rep.total}", f"1-minimal: {rep.one_minimal}"]
    return rep.ok, rep.as_dict(), lines


def cmd_classify_r4(args):
    order = _order(args)
    name = identify_order_on_r4(order, args.deg or 4)
    payload = {"order": order.spec, "classification": name}
    lines = [name]
    if isinstance(order, MatrixOrder) and order.n == 4:
        rc = matrix_row_conditions_r4(order)
        payload["row_conditions"] = rc.as_dict()
        lines.append(f"row conditions: {'pass' if rc.passed else 'fail (' + str(rc.failing) + ')'}")
    return True, payload, lines


GF2_CHECK_MAX_DIM = 12


def _gf2_crosscheck(order, piece, space, field) -> str:
    """Full enumeration of the leading-form span; only feasible over GF(2) in small dimension."""
    if field != "gf:2":
        return "skipped (needs --field gf:2)"
    if piece.dim > GF2_CHECK_MAX_DIM:
        return f"skipped (dimension {piece.dim} > {GF2_CHECK_MAX_DIM})"
    brute = leading_form_span_bruteforce(order, piece.basis, piece.columns)
    return "passed" if spans_equal(space, brute, piece.columns) else "FAILED"


def cmd_oracle_initial(args):
    trunc = _trunc(args)
    order = _order(args)
    deg = _need(args.deg, "--deg")
    piece = graded_piece(_gens(args, trunc), trunc, deg)
    space = initial_space(order, piece)
    if isinstance(space, frozenset):
        items = [str(m) for m in sorted(space, key=order.sort_key(), reverse=True)]
        kind = "monomials"
    else:
        items = [str(f) for f in space]
        kind = "leading_forms"
    payload = {"order": order.spec, "degree": deg, "dim": piece.dim, kind: items}
    lines = [f"dim J_{deg} = {piece.dim}"] + items
    if kind == "leading_forms":
        check = _gf2_crosscheck(order, piece, space, args.field)
        payload["gf2_crosscheck"] = check
        lines.append(f"GF(2) enumeration cross-check: {check}")
    if args.monomial:
        m = _monomial(args.monomial, "monomial")
        member = monomial_in_initial(order, _gens(args, trunc), trunc, m)
        payload["monomial"] = str(m)
        payload["member"] = member
        lines.append(f"{m} in initial space: {member}")
    return True, payload, lines


# --------------------------------------------------------------------------
# experiments


def exp_remark32(args):
    order = parse_order(args.order[0]) if args.order else DEGMAX2
    horizon = args.horizon or 10
    chain = ch.remark32_chain()
    x = lambda j: Monomial.var(1, j)  # noqa: E731
    ins = ch.initial_chain(chain, order, max(horizon, 5))
    in4, in5 = ins[3], ins[4]
    cand = ch.initial_candidate_index(chain, order, horizon)
    cert = None
    for N in range(4, 9):
        rep = ch.certify_initial_stability(chain, order, N)
        if rep.certified:
            cert = N
            break
    spot = None
    if cert is not None:
        top = max(12, horizon)
        I = ch.level_initial(chain, order, 2 * cert)
        spot = all(
            ch._monomial_spread(I, 2 * cert, n) == ch.level_initial(chain, order, n)
            for n in range(2 * cert, top + 1)
        )
    claims = {
        "in(J_4) = <x3>": in4.gens == (x(3),),
        "x2 in in(J_5)": in5.contains(x(2)),
        "candidate index >= 5": cand >= 5,
        "certificate at some N <= 8": cert is not None,
        "certificate spot-verified to 12": bool(spot),
    }
    payload = {
        "order": order.spec,
        "horizon": horizon,
        "chain_index": ch.stability_index_upto(chain, horizon).candidate_index,
        "initial_chain": [[str(m) for m in I.gens] for I in ins[:horizon]],
        "initial_candidate_index": cand,
        "certificate_level": cert,
        "certified_bound": None if cert is None else 2 * cert,
        "claims": claims,
    }
    lines = [f"in(J_{n}) = {I}" for n, I in enumerate(ins[:horizon], 1)]
    lines.append(f"candidate Ind(in(J)) at horizon {horizon}: {cand}")
    lines.append(f"certificate: N = {cert}, bound {None if cert is None else 2 * cert}")
    lines += [f"[{'ok' if v else 'FAIL'}] {k}" for k, v in claims.items()]
    return all(claims.values()), payload, lines


def _remark35_instance(n, n2):
    trunc = Truncation(1, n2 + 1)
    seed = parse_polynomial("x1^2*x2 + x1*x2^2")
    gens = ch.spread([seed], 2, n2 + 1)
    m = Monomial({(1, 1): 2, (1, n2): 1})
    in_n = monomial_in_initial(PermutedLex(Permutation.reversal(n)), gens, trunc, m)
    in_n2 = monomial_in_initial(PermutedLex(Permutation.reversal(n2)), gens, trunc, m)
    return m, in_n, in_n2


def exp_remark35(args):
    rows, lines, ok = [], [], True
    for n, n2 in ((1, 2), (2, 3)):
        m, a, b = _remark35_instance(n, n2)
        good = a and not b
        ok &= good
        rows.append({"n": n, "n_prime": n2, "monomial": str(m), "in_sigma_n": a, "in_sigma_n_prime": b})
        lines.append(f"(n, n') = ({n}, {n2}): {m} in in_sigma{n}: {a}; in in_sigma{n2}: {b} [{'ok' if good else 'FAIL'}]")
    return ok, {"instances": rows}, lines


def exp_remark45(args):
    n, n2 = 2, 3
    trunc = Truncation(1, n2)
    gens = ch.spread([parse_polynomial("x1^2*x2 + x1*x2^2")], 2, n2)
    m = Monomial({(1, 1): 1, (1, n): 2})
    a = monomial_in_initial(NamedOrder("max", n), gens, trunc, m)
    b = monomial_in_initial(NamedOrder("max", n2), gens, trunc, m)
    ok = a and not b
    payload = {"n": n, "n_prime": n2, "monomial": str(m), "in_max_n": a, "in_max_n_prime": b}
    return ok, payload, [f"{m} in in_Max({n}): {a}; in in_Max({n2}): {b} [{'ok' if ok else 'FAIL'}]"]


def exp_six_orders(args):
    n, deg = args.n or 6, args.deg or 4
    trunc = Truncation(1, n)
    rows, lines, ok = [], [], True
    for o in SIX_TERM_ORDERS:
        ax = check_preorder_axioms(o, trunc, deg)
        cp = check_inc_compatibility(o, trunc, deg)
        good = ax.ok and ax.total and ax.one_minimal and cp.ok
        ok &= good
        rows.append({"order": o.label, "axioms": ax.ok, "total": ax.total, "one_minimal": ax.one_minimal, "compatible": cp.ok})
        lines.append(f"{o.label}: axioms {ax.ok}, total {ax.total}, 1-minimal {ax.one_minimal}, compatible {cp.ok}")
    pairs = {}
    for i, a in enumerate(SIX_TERM_ORDERS):
        for b in SIX_TERM_ORDERS[i + 1:]:
            w = distinguishing_pair(a, b, Truncation(1, 4), 3)
            ok &= w is not None
            pairs[f"{a.label} | {b.label}"] = None if w is None else [str(w[0]), str(w[1])]
            lines.append(f"{a.label} vs {b.label}: {w[0]} , {w[1]}" if w else f"{a.label} vs {b.label}: none")
    return ok, {"n": n, "deg": deg, "orders": rows, "distinguishing_pairs": pairs}, lines


def exp_remark44(args):
    deg = args.deg or 6
    specs = {
        "A(sqrt2)": "matrix-sqrt:2:[[1,s]]",
        "B(sqrt2)": "matrix-sqrt:2:[[1,1,1],[1+s,-1,-s]]",
    }
    rows, lines, ok = {}, [], True
    for name, text in specs.items():
        o = parse_order(text)
        tr = Truncation(1, o.n)
        ax = check_preorder_axioms(o, tr, deg)
        cp = check_inc_compatibility(o, tr, deg)
        good = ax.ok and ax.total and cp.ok
        ok &= good
        rows[name] = {"order": text, "total": ax.total, "axioms": ax.ok, "compatible": cp.ok}
        lines.append(f"{name}: total {ax.total}, axioms {ax.ok}, compatible within R_{o.n} {cp.ok}")
    for kind, (t2, t3), n in (
        ("A", ("matrix-sqrt:2:[[1,s]]", "matrix-sqrt:3:[[1,s]]"), 2),
        ("B", ("matrix-sqrt:2:[[1,1,1],[1+s,-1,-s]]", "matrix-sqrt:3:[[1,1,1],[1+s,-1,-s]]"), 3),
    ):
        w = distinguishing_pair(parse_order(t2), parse_order(t3), Truncation(1, n), max(deg, 10))
        ok &= w is not None
        rows[f"{kind}: sqrt2 vs sqrt3"] = None if w is None else [str(w[0]), str(w[1])]
        lines.append(f"{kind}(sqrt2) vs {kind}(sqrt3) differ on: {w[0]} , {w[1]}" if w else f"{kind}: no difference found")
    return ok, rows, lines


def cmd_experiment(args):
    return {
        "remark32": exp_remark32,
        "remark35": exp_remark35,
        "remark45": exp_remark45,
        "six-orders": exp_six_orders,
        "remark44": exp_remark44,
    }[args.name](args)


COMMANDS = {
    "gb": (cmd_gb, "reduced Groebner basis"),
    "nf": (cmd_nf, "normal form of --f modulo --gens"),
    "initial": (cmd_initial, "initial ideal under a term order"),
    "inc-exists": (cmd_inc_exists, "is there p in Inc_{N,n} through --points"),
    "inc-divides": (cmd_inc_divides, "Inc-divisibility of monomials --f, --g"),
    "decompose": (cmd_decompose, "split p in Inc_{l,n} through level m"),
    "chain-invariance": (cmd_chain_invariance, "check Inc-invariance up to --horizon"),
    "chain-stability": (cmd_chain_stability, "candidate stability index"),
    "chain-initial": (cmd_chain_initial, "initial chain under --order"),
    "iset": (cmd_iset, "stability indices of initial chains"),
    "distinct-chains": (cmd_distinct_chains, "group orders by initial chain"),
    "intersect": (cmd_intersect, "intersection with the ring on columns --A"),
    "compat-check": (cmd_compat_check, "exhaustive Inc-compatibility check"),
    "axioms-check": (cmd_axioms_check, "exhaustive preorder axiom check"),
    "classify-r4": (cmd_classify_r4, "identify an order on R_4"),
    "oracle-initial": (cmd_oracle_initial, "initial space by linear algebra"),
    "experiment": (cmd_experiment, "reproduce a worked example"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--order", action="append", help="order spec, e.g. degmax:2 (repeatable)")
    common.add_argument("--orders", help="'all-six' or ';'-separated order specs")
    common.add_argument("--horizon", type=int)
    common.add_argument("--deg", "--degree-bound", dest="deg", type=int)
    common.add_argument("--trunc", type=int, help="truncation n of R_n")
    common.add_argument("--c", type=int, default=1, help="number of rows")
    common.add_argument("--field", default="q", help="q or gf:<p>")
    common.add_argument("--chain", help="chain file, or builtin:remark32|zero|doubling:<k>")
    common.add_argument("--gens", help="generators separated by ';'")
    common.add_argument("--f")
    common.add_argument("--g")
    common.add_argument("--monomial")
    common.add_argument("--points", help="e.g. 1:2,4:5")
    common.add_argument("--p", help="increasing map, e.g. 1,3 or [2->(1,3)]")
    common.add_argument("--A", help="columns, e.g. 1,2")
    common.add_argument("--N", type=int)
    common.add_argument("--n", type=int)
    common.add_argument("--m", type=int)
    common.add_argument("--max-level", type=int, dest="max_level")
    common.add_argument("--as-given", action="store_true", dest="as_given")
    common.add_argument("--chain-criterion", action="store_true", dest="chain_criterion")

    parser = argparse.ArgumentParser(prog="equichain", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_) in COMMANDS.items():
        sp = sub.add_parser(name, parents=[common], help=help_)
        if name == "experiment":
            sp.add_argument("name", choices=EXPERIMENTS)
    return parser


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    fn = COMMANDS[args.command][0]
    try:
        ok, payload, lines = fn(args)
    except (UsageError, ValueError, OSError) as exc:
        print(f"equichain: error: {exc}", file=sys.stderr)
        return 2
    if args.json:
        doc = {"schema_version": SCHEMA_VERSION, "command": args.command, "ok": ok, "result": payload}
        if args.command == "experiment":
            doc["experiment"] = args.name
        out.write(json.dumps(doc, indent=2, sort_keys=True, default=str) + "\n")
    else:
        for line in lines:
            out.write(line + "\n")
    return 0 if ok else 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()

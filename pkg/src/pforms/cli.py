"""Command-line interface: one context per invocation, every operation a
subcommand, optional single-object JSON output with timings."""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import groups
from .core import (
    compose,
    delta,
    iterate,
    membership_necessary_checks,
    order,
    star,
    verify_inverse,
)
from .degrees import UnitSystem
from .dobbertin import (
    derive_permutation_polynomial,
    dobbertin_form,
    dobbertin_form_inverse,
    iterate_delta_closed_form,
    uniform_representation,
)
from .errors import BudgetExceeded, InvalidContext, PFormError
from .exprs import parse, parse_modulus, ratfunc_string
from .ffield import ff_from_q, ff_make
from .poly import PFormCtx


def _field_of(args):
    modulus = None
    if args.modulus:
        p = args.p
        if p is None and args.q is not None:
            p = ff_from_q(args.q).p
        if p is None:
            raise InvalidContext("--modulus needs --p or --q")
        modulus = parse_modulus(args.modulus, p)
    if args.q is not None:
        return ff_from_q(args.q, modulus)
    if args.p is None:
        raise InvalidContext("specify the field with --q or --p [--s] [--modulus]")
    return ff_make(args.p, args.s, modulus)


def _ctx_of(args) -> PFormCtx:
    if args.n is None:
        raise InvalidContext("this command needs --n")
    return PFormCtx(_field_of(args), args.n)


def _expr(args, text: str):
    return parse(text, _ctx_of(args))


def _coords(text: str):
    return tuple(int(v) for v in text.replace(" ", "").split(","))


def _deg_elem(args, text: str):
    ctx = _ctx_of(args)
    coords = _coords(text)
    if len(coords) != ctx.n:
        raise InvalidContext(f"need {ctx.n} coordinates, got {len(coords)}")
    return ctx.deg.elem(coords)


def _require_q2(args):
    field = _field_of(args)
    if field.q != 2:
        raise InvalidContext("this command requires the field F_2 (--q 2)")


def _generator_table(args) -> groups.GeneratorTable:
    ctx = _ctx_of(args)
    table = groups.GeneratorTable(ctx)
    gens = json.loads(args.gens)
    invs = json.loads(args.invs) if args.invs else {}
    for name, text in gens.items():
        inverse = parse(invs[name], ctx) if name in invs else None
        table.add(name, parse(text, ctx), inverse)
    return table


# --- command handlers ----------------------------------------------------------


def _cmd_star(args):
    return ratfunc_string(star(_expr(args, args.expr), args.k))


def _cmd_compose(args):
    ctx = _ctx_of(args)
    return ratfunc_string(compose(parse(args.f, ctx), parse(args.g, ctx)))


def _cmd_iterate(args):
    return ratfunc_string(iterate(_expr(args, args.expr), args.m))


def _cmd_delta(args):
    return delta(_expr(args, args.expr)).to_json()


def _cmd_verify_inverse(args):
    ctx = _ctx_of(args)
    return verify_inverse(parse(args.f, ctx), parse(args.g, ctx))


def _cmd_order(args):
    return order(_expr(args, args.expr), args.bound).to_json()


def _cmd_classify_coset(args):
    rep, verified = groups.classify_coset(_expr(args, args.expr))
    return {"representative": repr(rep), "verified": verified}


def _cmd_coset_system(args):
    reps = groups.coset_representatives(_field_of(args))
    return {"size": len(reps), "representatives": [repr(r) for r in reps]}


def _cmd_qn(args):
    _require_q2(args)
    return ratfunc_string(dobbertin_form(args.n))


def _cmd_qn_inverse(args):
    _require_q2(args)
    return ratfunc_string(dobbertin_form_inverse(args.n))


def _cmd_qn_delta_table(args):
    _require_q2(args)
    rows = []
    for m in range(args.mmax + 1):
        pair = iterate_delta_closed_form(args.n, m)
        rows.append({"m": m, **pair.to_json()})
    return rows


def _cmd_phi(args):
    ctx = _ctx_of(args)
    mono = groups.unit_to_monomial(ctx, _deg_elem(args, args.coords))
    return ratfunc_string(mono.as_ratfunc())


def _cmd_phi_inv(args):
    mono = groups.RationalMonomial.from_ratfunc(_expr(args, args.expr))
    return groups.monomial_to_degree(mono).to_json()


def _cmd_is_monomial_unit(args):
    mono = groups.RationalMonomial.from_ratfunc(_expr(args, args.expr))
    return groups.is_invertible_monomial(mono)


def _cmd_unit_norm(args):
    return _deg_elem(args, args.coords).norm()


def _cmd_unit_inv(args):
    return _deg_elem(args, args.coords).unit_inverse().to_json()


def _cmd_embed(args):
    field = _field_of(args)
    src = PFormCtx(field, args.source_n)
    target = _ctx_of(args)
    return ratfunc_string(groups.embed(parse(args.expr, src), target))


def _cmd_commutes(args):
    ctx = _ctx_of(args)
    return groups.commutes(parse(args.f, ctx), parse(args.g, ctx))


def _cmd_cor412(args):
    ctx = _ctx_of(args)
    units = UnitSystem([ctx.deg.elem(c) for c in json.loads(args.units)])
    d, mu = groups.central_scalars(units, ctx.field)
    return {"d": d, "mu_d": [repr(c) for c in mu]}


def _cmd_word_expand(args):
    table = _generator_table(args)
    word = groups.Word(tuple((name, e) for name, e in json.loads(args.word)))
    return ratfunc_string(groups.expand_word(word, table))


def _cmd_word_delta(args):
    field = _field_of(args)
    if field.q != 2 or (args.n is not None and args.n != 2):
        raise InvalidContext("the closed form is specific to q = 2, n = 2")
    return groups.alternating_word_delta(_coords(args.exponents)).to_json()


def _cmd_relation_search(args):
    table = _generator_table(args)
    result = groups.relation_search(table, args.max_len, budget=args.budget)
    out = result.to_json(table)
    if result.budget_exceeded:
        raise BudgetExceeded(json.dumps(out))
    return out


def _cmd_uniform_rep(args):
    rep = uniform_representation(_expr(args, args.expr), args.nprime, args.m)
    return ratfunc_string(rep)


def _cmd_perm_poly(args):
    ctx = _ctx_of(args)
    g, report = derive_permutation_polynomial(
        parse(args.f, ctx), parse(args.inverse, ctx), args.nprime, args.m
    )
    return report.to_json()


def _cmd_check_membership(args):
    return membership_necessary_checks(_expr(args, args.expr)).to_json()


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pforms",
        description="exact arithmetic for twisted rational-function composition over F_q",
    )
    parser.add_argument("--p", type=int, help="field characteristic")
    parser.add_argument("--s", type=int, default=1, help="extension degree (default 1)")
    parser.add_argument("--q", type=int, help="field size p^s (alternative to --p/--s)")
    parser.add_argument("--modulus", help="extension modulus in t, e.g. 't^2+t+1'")
    parser.add_argument("--n", type=int, help="number of variables")
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    parser.add_argument(
        "--budget", type=int, default=10**6, help="node budget for searches"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def cmd(name, handler, **flags):
        sp = sub.add_parser(name)
        for flag, opts in flags.items():
            sp.add_argument(f"--{flag.replace('_', '-')}", **opts)
        sp.set_defaults(handler=handler)
        return sp

    req = {"required": True}
    intreq = {"required": True, "type": int}
    cmd("star", _cmd_star, expr=req, k={"type": int, "default": 1})
    cmd("compose", _cmd_compose, f=req, g=req)
    cmd("iterate", _cmd_iterate, expr=req, m=intreq)
    cmd("delta", _cmd_delta, expr=req)
    cmd("verify-inverse", _cmd_verify_inverse, f=req, g=req)
    cmd("order", _cmd_order, expr=req, bound={"type": int, "default": 12})
    cmd("classify-coset", _cmd_classify_coset, expr=req)
    cmd("coset-system", _cmd_coset_system)
    cmd("qn", _cmd_qn)
    cmd("qn-inverse", _cmd_qn_inverse)
    cmd("qn-delta-table", _cmd_qn_delta_table, mmax=intreq)
    cmd("phi", _cmd_phi, coords=req)
    cmd("phi-inv", _cmd_phi_inv, expr=req)
    cmd("is-monomial-unit", _cmd_is_monomial_unit, expr=req)
    cmd("unit-norm", _cmd_unit_norm, coords=req)
    cmd("unit-inv", _cmd_unit_inv, coords=req)
    cmd("embed", _cmd_embed, expr=req, source_n=intreq)
    cmd("commutes", _cmd_commutes, f=req, g=req)
    cmd("cor412", _cmd_cor412, units=req)
    cmd("word-expand", _cmd_word_expand, gens=req, invs={}, word=req)
    cmd("word-delta", _cmd_word_delta, exponents=req)
    cmd(
        "relation-search",
        _cmd_relation_search,
        gens=req,
        invs={},
        max_len={"required": True, "type": int},
    )
    cmd("uniform-rep", _cmd_uniform_rep, expr=req, nprime=intreq, m=intreq)
    cmd("perm-poly", _cmd_perm_poly, f=req, inverse=req, nprime=intreq, m=intreq)
    cmd("check-membership", _cmd_check_membership, expr=req)
    return parser


def _context_json(args):
    out = {}
    for key in ("p", "s", "q", "modulus", "n"):
        value = getattr(args, key)
        if value is not None:
            out[key] = value
    return out


def run(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        result = args.handler(args)
    except PFormError as exc:
        print(f"{exc.code}: {exc}", file=sys.stderr)
        return 1
    elapsed_ms = (time.perf_counter() - start) * 1000.0
    if args.json:
        payload = {
            "result": result,
            "context": _context_json(args),
            "timings": {"ms": round(elapsed_ms, 3)},
        }
        print(json.dumps(payload))
    else:
        if isinstance(result, str):
            print(result)
        else:
            print(json.dumps(result, indent=2))
    return 0


def main() -> None:
    sys.exit(run())

"""``ore`` command line interface.

Exit status: 0 on success, 2 when inputs violate a precondition (parse
errors, bad contexts, non-nucleus elements, ...), 1 on internal errors.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from typing import Any, Dict, List, Optional, Sequence, Tuple

from .algebra import AlgebraError
from .bc import annihilating_polynomial, find_annihilating_polynomial
from .centralizer import (CentralizerQuery, PreconditionError, RankBoundExceeded,
                          centralizer_space, check_D_condition, check_rank_divides,
                          module_basis)
from .coeff import NEG_INF, ContextError, verify_sigma_derivation
from .exact import mpq, rat_str
from .ore import OreContext, OreElem, chi, commutes, nucleus_check, ore_mul
from .parser import ParseError, parse_element
from .contexts import PRESETS, build_context

VERBS = ("mul", "commutes", "chi", "nucleus-check", "centralizer", "module-basis",
         "dcond", "bc-poly", "verify-context")

USER_ERRORS = (ParseError, ContextError, AlgebraError, PreconditionError)


def _chi_out(d):
    return "-inf" if d == NEG_INF else int(d)


def _caps(value: Optional[str]):
    if value is None or value == "auto":
        return None
    parts = [int(p) for p in value.split(",")]
    return parts[0] if len(parts) == 1 else parts


def _ctx_info(ctx: OreContext) -> Dict[str, Any]:
    info = {"name": ctx.name, "algebra_dim": ctx.spec.dim,
            "sigma": ctx.sigma.mode, "delta": ctx.delta.mode}
    if ctx.sigma.subst_poly is not None:
        info["sigma_y"] = str(ctx.sigma.subst_poly)
    if ctx.delta.delta_of_y is not None:
        info["delta_y"] = str(ctx.delta.delta_of_y)
    return info


def _elems(es: Sequence[OreElem]) -> List[str]:
    return [str(e) for e in es]


def _cmd_mul(args, ctx, ops):
    u, v = ops
    p = ore_mul(u, v)
    return {"product": str(p), "terms": p.to_json()["terms"]}, str(p)


def _cmd_commutes(args, ctx, ops):
    u, v = ops
    ok = commutes(u, v)
    return {"commutes": ok, "commutator": str(ore_mul(u, v) - ore_mul(v, u))}, \
        "true" if ok else "false"


def _cmd_chi(args, ctx, ops):
    d = _chi_out(chi(ops[0]))
    return {"chi": d}, str(d)


def _cmd_nucleus(args, ctx, ops):
    res = nucleus_check(ops[0], *args.bounds)
    out: Dict[str, Any] = {"in_nucleus": res.ok, "bounds": list(args.bounds)}
    text = "true"
    if res.witness is not None:
        w = res.witness
        out["witness"] = {"slot": w.slot, "triple": _elems(w.triple), "associator": str(w.value)}
        text = f"false\nwitness ({w.slot} slot): ({', '.join(_elems(w.triple))}) -> {w.value}"
    return out, text


def _query(args, a, max_deg) -> CentralizerQuery:
    return CentralizerQuery(a, max_deg, _caps(args.caps), args.slack, tuple(args.nucleus_bounds))


def _cmd_centralizer(args, ctx, ops):
    q = _query(args, ops[0], args.degree)
    space = centralizer_space(q, args.degree)
    return {"degree": args.degree, "caps": q.caps(args.degree), "dimension": len(space),
            "basis": _elems(space)}, "\n".join(_elems(space))


def _cmd_module_basis(args, ctx, ops):
    q = _query(args, ops[0], args.max_deg)
    mb = module_basis(q)
    out = {"rank": len(mb), "rank_bound": mb.rank_bound, "m": mb.m,
           "elements": _elems(mb.elements), "degrees": mb.degrees}
    if ctx.spec.dim == 1:
        rd = check_rank_divides(mb, mb.m)
        out["rank_divides_m"] = rd.ok
        out["residues"] = list(rd.residues)
    lines = [f"rank {len(mb)} (bound {mb.rank_bound})"]
    lines += [f"  [{d}] {e}" for d, e in zip(mb.degrees, _elems(mb.elements))]
    return out, "\n".join(lines)


def _random_equal_chi(space: List[OreElem], n: int, count: int, rng: random.Random):
    top = [b for b in space if chi(b) == n]
    if not top:
        raise PreconditionError(f"the centralizer has no element of chi = {n} within the caps")
    out = []
    while len(out) < count:
        e = space[0].ctx.zero
        for b in space:
            e = e + b.scale(mpq(rng.randint(-3, 3), rng.randint(1, 2)))
        if chi(e) == n:
            out.append(e)
    return out


def _cmd_dcond(args, ctx, ops):
    elems = list(ops)
    if args.of is not None:
        a = parse_element(args.of, ctx)
        q = _query(args, a, args.degree)
        space = centralizer_space(q, args.degree)
        count = args.count if args.count is not None else args.ell + 1
        elems = _random_equal_chi(space, args.degree, count, random.Random(args.seed))
    if not elems:
        raise PreconditionError("dcond needs elements or --of/--degree")
    cert = check_D_condition(elems, args.ell)
    out = {"verdict": cert.verdict, "ell": args.ell, "elements": _elems(elems),
           "chi_before": _chi_out(cert.chi_before), "chi_after": _chi_out(cert.chi_after)}
    text = cert.verdict
    if cert.scalars is not None:
        out["scalars"] = [rat_str(s) for s in cert.scalars]
        text += " " + " ".join(out["scalars"])
    return out, text


def _cmd_bc(args, ctx, ops):
    a, b = ops
    nb = tuple(args.nucleus_bounds)
    if args.box:
        P = annihilating_polynomial(a, b, args.box[0], args.box[1], nb)
    else:
        P = find_annihilating_polynomial(a, b, args.budget, nb)
    if P is None:
        return {"polynomial": None}, "none"
    return {"polynomial": str(P), "json": P.to_json()}, str(P)


def _cmd_verify(args, ctx, ops):
    ok = verify_sigma_derivation(ctx.delta, ctx.sigma, args.samples, ctx.spec, args.seed)
    return {"sigma_derivation": ok, "samples": args.samples}, "true" if ok else "false"


_DISPATCH = {
    "mul": (_cmd_mul, 2),
    "commutes": (_cmd_commutes, 2),
    "chi": (_cmd_chi, 1),
    "nucleus-check": (_cmd_nucleus, 1),
    "centralizer": (_cmd_centralizer, 1),
    "module-basis": (_cmd_module_basis, 1),
    "dcond": (_cmd_dcond, None),
    "bc-poly": (_cmd_bc, 2),
    "verify-context": (_cmd_verify, 0),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--ctx", default="diff-rat", choices=PRESETS,
                        help="context preset (default: diff-rat)")
    common.add_argument("--algebra", help="built-in algebra name or AlgebraSpec JSON file")
    common.add_argument("--s", dest="sigma_y", help="sigma(y) as a polynomial in y")
    common.add_argument("--delta-y", dest="delta_y", help="delta(y) as a polynomial in y")
    common.add_argument("--json", action="store_true", help="print a JSON report")
    common.add_argument("--no-timing", action="store_true", help="omit timing from JSON")
    common.add_argument("--seed", type=int, default=int(os.environ.get("ORE_SEED", "0")))
    common.add_argument("--nucleus-bounds", type=int, nargs=2, default=[3, 3],
                        metavar=("XDEG", "YDEG"))

    p = argparse.ArgumentParser(prog="ore", description="Ore extension toolkit")
    sub = p.add_subparsers(dest="verb", required=True)
    for verb in ("mul", "commutes", "bc-poly"):
        sp = sub.add_parser(verb, parents=[common])
        sp.add_argument("a")
        sp.add_argument("b")
        if verb == "bc-poly":
            sp.add_argument("--box", type=int, nargs=2, metavar=("T_DEG", "S_DEG"))
            sp.add_argument("--budget", type=int, default=32)
    sub.add_parser("chi", parents=[common]).add_argument("a")
    sp = sub.add_parser("nucleus-check", parents=[common])
    sp.add_argument("a")
    sp.add_argument("--bounds", type=int, nargs=2, default=[3, 3], metavar=("XDEG", "YDEG"))
    for verb in ("centralizer", "module-basis"):
        sp = sub.add_parser(verb, parents=[common])
        sp.add_argument("a")
        if verb == "centralizer":
            sp.add_argument("--degree", type=int, required=True)
        else:
            sp.add_argument("--max-deg", type=int, default=5)
        sp.add_argument("--caps", help="'auto', one y-degree cap, or a comma list per x-degree")
        sp.add_argument("--slack", type=int)
    sp = sub.add_parser("dcond", parents=[common])
    sp.add_argument("elements", nargs="*")
    sp.add_argument("--ell", type=int, required=True)
    sp.add_argument("--of", help="draw equal-chi elements from the centralizer of this element")
    sp.add_argument("--degree", type=int, default=1)
    sp.add_argument("--count", type=int)
    sp.add_argument("--caps")
    sp.add_argument("--slack", type=int)
    sp = sub.add_parser("verify-context", parents=[common])
    sp.add_argument("--samples", type=int, default=20)
    return p


def _operands(args) -> List[str]:
    if args.verb == "dcond":
        return list(args.elements)
    return [getattr(args, n) for n in ("a", "b") if hasattr(args, n)]


def run(args) -> Tuple[int, Dict[str, Any], str]:
    """Execute a parsed command; returns (exit code, report, text output)."""
    start = time.perf_counter()
    report: Dict[str, Any] = {"command": args.verb}
    try:
        ctx = build_context(args.ctx, args.algebra, args.sigma_y, args.delta_y)
        report["context"] = _ctx_info(ctx)
        ops = [parse_element(src, ctx) for src in _operands(args)]
        report["inputs"] = _elems(ops)
        handler, _ = _DISPATCH[args.verb]
        result, text = handler(args, ctx, ops)
        report["result"] = result
        code = 0
    except USER_ERRORS as exc:
        report["error"] = str(exc)
        text, code = f"error: {exc}", 2
    except (ArithmeticError, RankBoundExceeded, AssertionError) as exc:
        report["error"] = f"internal error: {exc}"
        text, code = f"internal error: {exc}", 1
    if not args.no_timing:
        report["timing_ms"] = round((time.perf_counter() - start) * 1000, 3)
    return code, report, text


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    code, report, text = run(args)
    if args.json:
        print(json.dumps(report, indent=2))
    elif code == 0:
        print(text)
    else:
        print(text, file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())

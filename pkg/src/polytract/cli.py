"""The ``polytract`` command line.

Every subcommand prints one JSON document (``enumerate`` prints one per
line).  Exit status is 0 on success, 1 on a domain error and 2 on
malformed input; errors are reported as {"error": ..., "kind": ...}.
"""

from __future__ import annotations

import argparse
import os
import random
import sys
from typing import Any, Sequence

from . import jsonio
from .errors import MalformedInputError, PolytractError, TractMismatchError
from .hives import integral_hives, lr_coefficient
from .mconvex import (
    canonical_form,
    combinatorially_equivalent,
    decompose,
    direct_sum,
    dual,
    embedded_minor,
    enumerate_mconvex,
    exchange_witness,
    invariants_of,
    is_matroid_translate,
    is_proper,
    component_count,
)
from .plucker import format_relation
from .presentations import (
    enumerate_cross_ratios,
    foundation_unit_group,
    pasture_presentation,
    tutte_group,
    tutte_rank,
    verify_bijection_theorem,
    verify_cross_ratios_generate,
)
from .representations import verify
from .strata import dressian, dressian_constraints, polygrassmannian_strata
from .tracts import tract_id


def _vec(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip() != ""]
    except ValueError as exc:
        raise MalformedInputError(f"expected comma separated integers, got {text!r}") from exc


def _read(path: str) -> Any:
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise MalformedInputError(f"cannot read {path}: {exc}") from exc
    return jsonio.loads(text)


def _inputs(args: argparse.Namespace, count: int) -> list[Any]:
    paths = args.inputs or []
    if len(paths) != count:
        raise MalformedInputError(f"{args.command} needs exactly {count} --in file(s)")
    return [_read(p) for p in paths]


def _set(args: argparse.Namespace):
    return jsonio.set_from_json(_inputs(args, 1)[0])


def _symbol(sym) -> dict:
    alpha, i, j, k, l = sym
    return {"alpha": list(alpha), "ijkl": [i, j, k, l]}


# ---------------------------------------------------------------------------
# subcommands

def cmd_check(args):
    ps = jsonio.pointset_from_json(_inputs(args, 1)[0])
    w = exchange_witness(ps.points, frozenset(ps.points))
    if w is None:
        return {"m_convex": True}
    return {"m_convex": False, "witness": w}


def cmd_info(args):
    J = _set(args)
    inv = invariants_of(J)
    return {
        "size": len(J),
        "delta_minus": list(inv.delta_minus),
        "delta_plus": list(inv.delta_plus),
        "delta": list(inv.delta),
        "omega": list(inv.omega),
        "effective_rank": inv.effective_rank,
        "reduction": jsonio.set_to_json(inv.reduction),
        "matroid_translate": is_matroid_translate(J),
        "proper": is_proper(J),
        "components": component_count(J),
    }


def cmd_dual(args):
    return jsonio.set_to_json(dual(_set(args)))


def cmd_minor(args):
    J = _set(args)
    zero = ",".join("0" * J.n)
    em = embedded_minor(J, _vec(args.nu or zero), _vec(args.mu or zero), _vec(args.tau) if args.tau else None)
    return jsonio.set_to_json(em.minor)


def cmd_sum(args):
    a, b = (jsonio.set_from_json(d) for d in _inputs(args, 2))
    return jsonio.set_to_json(direct_sum(a, b))


def cmd_decompose(args):
    d = decompose(_set(args))
    return {
        "blocks": [list(b) for b in d.blocks],
        "components": [jsonio.set_to_json(c) for c in d.components],
    }


def cmd_canon(args):
    return jsonio.set_to_json(canonical_form(_set(args)))


def cmd_equiv(args):
    a, b = (jsonio.set_from_json(d) for d in _inputs(args, 2))
    return {"equivalent": combinatorially_equivalent(a, b)}


def cmd_enumerate(args):
    for J in enumerate_mconvex(args.n, args.r, args.guard):
        yield jsonio.set_to_json(J)


def cmd_verify_rep(args):
    rho = jsonio.representation_from_json(_inputs(args, 1)[0])
    if args.tract is not None and tract_id(args.tract) != rho.tract:
        raise TractMismatchError(f"representation is over {rho.tract.value}, not {args.tract}")
    res = verify(rho, args.mode)
    return {
        "ok": res.ok,
        "mode": args.mode,
        "violations": [
            {"s": v.s, "alpha": list(v.alpha), "i": list(v.i), "j": list(v.j)}
            for v in res.violations
        ],
        "diagnostic": res.diagnostic,
    }


def _cross_ratio_summary(J) -> dict:
    data = enumerate_cross_ratios(J)
    return {
        "omega": len(data.omega),
        "nondegenerate": [_symbol(s) for s in data.nondegenerate],
        "degenerate": len(data.degenerate),
        "generate": verify_cross_ratios_generate(J),
    }


def cmd_foundation(args):
    J = _set(args)
    P = pasture_presentation(J)
    F = foundation_unit_group(J)
    return {
        "generators": P.generators,
        "relations": P.relations,
        "free_rank": F.free_rank,
        "invariant_factors": F.invariant_factors,
        "minus_one": F.minus_one_status,
        "tutte_rank": tutte_rank(J),
        "cross_ratios": _cross_ratio_summary(J),
    }


def cmd_tutte_rank(args):
    J = _set(args)
    T = tutte_group(J)
    return {"tutte_rank": tutte_rank(J), "degree_zero_free_rank": T.free_rank,
            "invariant_factors": T.invariant_factors}


def cmd_cross_ratios(args):
    J = _set(args)
    data = enumerate_cross_ratios(J)
    return {
        "omega": [
            {**_symbol(s), "nondegenerate": s in set(data.nondegenerate), "vector": data.vectors[s]}
            for s in data.omega
        ],
        "nondegenerate_up_to_inversion": len(data.nondegenerate_up_to_inversion),
        "generate": verify_cross_ratios_generate(J),
    }


def cmd_bijection_check(args):
    return {"bijection": verify_bijection_theorem(_set(args))}


def cmd_hive_count(args):
    lam, mu, nu = _vec(args.lam), _vec(args.mu), _vec(args.nu)
    r = args.r
    if r is None:
        r = max(len([x for x in p if x]) for p in (lam, mu, nu)) or 1
    if args.list:
        hives = integral_hives(lam, mu, nu, r)
        return {"lr": len(hives), "hives": [jsonio.hive_to_json(h) for h in hives]}
    return {"lr": lr_coefficient(lam, mu, nu, r)}


def cmd_polygr(args):
    strata = list(polygrassmannian_strata(args.n, args.r, args.guard))
    return {"n": args.n, "r": args.r, "count": len(strata),
            "strata": [jsonio.set_to_json(J) for J in strata]}


def cmd_dressian(args):
    if args.inputs:
        J = _set(args)
        items = [(J, dressian_constraints(J))]
    else:
        items = dressian(args.n, args.r, args.guard)
    return {"strata": [{"set": jsonio.set_to_json(J), "constraints": [c.as_dict() for c in cs]}
                       for J, cs in items]}


def cmd_relations(args):
    J = _set(args)
    from .plucker import enumerate_relations

    return {"relations": [format_relation(rel) for rel in enumerate_relations(J, args.kind)]}


COMMANDS = {
    "check": (cmd_check, "test the exchange axiom"),
    "info": (cmd_info, "invariants of an M-convex set"),
    "dual": (cmd_dual, "dual M-convex set"),
    "minor": (cmd_minor, "embedded minor J\\nu/mu + tau"),
    "sum": (cmd_sum, "direct sum of two sets"),
    "decompose": (cmd_decompose, "indecomposable components"),
    "canon": (cmd_canon, "canonical form up to combinatorial equivalence"),
    "equiv": (cmd_equiv, "combinatorial equivalence of two sets"),
    "enumerate": (cmd_enumerate, "all M-convex subsets of a simplex, one per line"),
    "verify-rep": (cmd_verify_rep, "verify a representation over a tract"),
    "foundation": (cmd_foundation, "presentation and foundation unit group"),
    "tutte-rank": (cmd_tutte_rank, "Tutte rank"),
    "cross-ratios": (cmd_cross_ratios, "cross ratios and their exponent vectors"),
    "bijection-check": (cmd_bijection_check, "3-term versus all degenerate relations"),
    "hive-count": (cmd_hive_count, "Littlewood-Richardson coefficient via hives"),
    "polygr": (cmd_polygr, "Polygrassmannian strata over K"),
    "dressian": (cmd_dressian, "tropical constraints per stratum"),
    "relations": (cmd_relations, "bounded Plücker relations as text"),
}


def _global_options(p: argparse.ArgumentParser, suppress: bool) -> None:
    # on subparsers the defaults are suppressed so that options given before
    # the subcommand are not overwritten
    def d(value):
        return argparse.SUPPRESS if suppress else value

    p.add_argument("--in", dest="inputs", action="append", metavar="FILE", default=d(None),
                   help="input JSON file ('-' for stdin); repeat for two-set commands")
    p.add_argument("--out", metavar="FILE", default=d(None), help="write output here instead of stdout")
    p.add_argument("--tract", default=d(None), help="tract id (k, fpm, f2, f3, s, t0, t0z, t1, tinf)")
    p.add_argument("--mode", choices=("strong", "weak"), default=d("strong"))
    p.add_argument("--seed", type=int, default=d(0), help="seed for randomized steps (default 0)")
    p.add_argument("--guard", type=int, default=d(None),
                   help="cap on lattice points for enumeration (default POLYTRACT_GUARD or 22)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="polytract",
                                     description="Discrete polymatroids and their representations over tracts.")
    _global_options(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        _global_options(p, suppress=True)
        if name == "minor":
            p.add_argument("--nu")
            p.add_argument("--mu")
            p.add_argument("--tau")
        elif name in ("enumerate", "polygr", "dressian"):
            p.add_argument("--n", type=int, required=name == "enumerate", default=2)
            p.add_argument("--r", type=int, required=name == "enumerate", default=2)
        elif name == "hive-count":
            p.add_argument("--lambda", dest="lam", required=True)
            p.add_argument("--mu", required=True)
            p.add_argument("--nu", required=True)
            p.add_argument("--r", type=int, default=None)
            p.add_argument("--list", action="store_true")
        elif name == "relations":
            p.add_argument("--kind", choices=("full", "three_term"), default="full")
    return parser


def _emit(lines: list[str], out: str | None) -> None:
    text = "".join(line + "\n" for line in lines)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    random.seed(args.seed)
    if args.guard is not None:
        os.environ["POLYTRACT_GUARD"] = str(args.guard)
    fn = COMMANDS[args.command][0]
    try:
        result = fn(args)
        if args.command == "enumerate":
            lines = [jsonio.dumps(d) for d in result]
        else:
            lines = [jsonio.dumps(result)]
    except MalformedInputError as exc:
        _emit([jsonio.dumps({"error": str(exc), "kind": type(exc).__name__})], None)
        return 2
    except PolytractError as exc:
        _emit([jsonio.dumps({"error": str(exc), "kind": type(exc).__name__})], None)
        return exc.exit_code
    _emit(lines, args.out)
    return 0


def main(argv: Sequence[str] | None = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()

"""Command-line front end.

Every subcommand prints one JSON report on stdout.  Exit status is 0 when
checks pass, 1 when a check fails and 2 on usage errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import degeneration as dg
from . import mirror
from .fan import Fan, face_fan, invariant_report
from .polynomial import Polynomial
from .polytope import (LatticePolytope, build_delta_star, is_reflexive,
                       is_terminal_fano, lattice_points)


class UsageError(Exception):
    pass


def _report(command: str, inputs: dict, results: dict, passed: bool = True) -> tuple[dict, int]:
    return ({"command": command, "inputs": inputs, "results": results,
             "status": "pass" if passed else "fail"}, 0 if passed else 1)


def _load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _write(path: str, payload: dict) -> None:
    with open(path, "w") as fh:
        json.dump(payload, fh, sort_keys=True, indent=2)
        fh.write("\n")


def cmd_polytope_build(args):
    p = build_delta_star(args.d)
    if args.out:
        _write(args.out, p.to_json())
    return _report("polytope build-vdn", {"d": args.d, "out": args.out}, p.to_json())


def cmd_polytope_check(args):
    p = LatticePolytope.from_json(_load_json(args.file))
    refl = is_reflexive(p)
    term = is_terminal_fano(p) if refl else False
    pts = lattice_points(p)
    results = {"reflexive": refl, "terminal": term, "n_vertices": len(p.vertices),
               "n_facets": len(p.facets), "n_lattice_points": len(pts),
               "lattice_points": [list(x) for x in pts],
               "sublattice_index": p.sublattice_index}
    return _report("polytope check", {"file": args.file}, results, refl and term)


def _load_fan(path: str) -> Fan:
    data = _load_json(path)
    if "max_cones" in data:
        return Fan.from_json(data)
    return face_fan(LatticePolytope.from_json(data))


def cmd_fan_invariants(args):
    f = _load_fan(args.file)
    if args.out:
        _write(args.out, f.to_json())
    return _report("fan invariants", {"file": args.file}, invariant_report(f))


def _label(lbl) -> str:
    return "".join(str(x) for x in lbl) if isinstance(lbl, tuple) else str(lbl)


def cmd_degen_grassmann(args):
    ok = dg.initial_terms_diagonal_check(args.r, args.s)
    g = dg.plucker_minors(args.r, args.s)
    w = dg.sturmfels_weights(args.r, args.s)
    rels = []
    for u, v in dg.initial_algebra_relations(g, w):
        rels.append({"lhs": {_label(l): e for l, e in zip(g.labels, u) if e},
                     "rhs": {_label(l): e for l, e in zip(g.labels, v) if e}})
    results = {"weights": list(w.weights), "n_minors": len(g.generators),
               "diagonal_initial_terms": ok, "relations": rels}
    return _report("degen grassmann", {"r": args.r, "s": args.s}, results, ok)


def _parse_weights(text: str) -> dg.WeightOrder:
    try:
        return dg.WeightOrder(tuple(int(x) for x in text.split(",") if x.strip()))
    except ValueError as exc:
        raise UsageError(f"bad weight list {text!r}") from exc


def cmd_degen_family(args):
    f = Polynomial.from_json(_load_json(args.poly))
    w = _parse_weights(args.weights)
    fm = dg.degenerate(f, w)
    results = {"family": fm.family_polynomial().to_json(), "limit": fm.limit().to_json()}
    inputs = {"poly": args.poly, "weights": list(w.weights)}
    if args.t is not None:
        try:
            t = Fraction(args.t)
        except ValueError as exc:
            raise UsageError(f"bad parameter value {args.t!r}") from exc
        results["specialization"] = dg.specialize(fm, t).to_json()
        results["limit_member"] = t == 0
        inputs["t"] = str(t)
    return _report("degen family", inputs, results)


def cmd_period_main(args):
    s = mirror.vdn_main_period(args.d, args.order)
    return _report("period main", {"d": args.d, "order": args.order}, s.to_json())


def cmd_period_residue(args):
    s = mirror.residue_period(args.d, args.order, method=args.method)
    return _report("period residue", {"d": args.d, "order": args.order, "method": args.method},
                   s.to_json())


def cmd_period_closed(args):
    c = mirror.closed_form_coefficient(args.d, args.m)
    return _report("period closed-form", {"d": args.d, "m": args.m}, {"coefficient": str(c)})


def cmd_tables(args):
    tabs = mirror.contingency_tables(args.d, args.m)
    results = {"count": len(tabs), "tables": [[list(r) for r in t.entries] for t in tabs]}
    passed = True
    if args.verify:
        lhs, rhs = mirror.table_identity_check(args.d, args.m)
        results["lhs"] = str(lhs)
        results["rhs"] = str(rhs)
        passed = lhs == rhs
    return _report("tables", {"d": args.d, "m": args.m, "verify": args.verify}, results, passed)


def cmd_mirror_family(args):
    fam = mirror.vdn_mirror_family(args.d)
    return _report("mirror family", {"d": args.d}, fam.to_json())


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="toridegen", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="group", required=True)

    pp = sub.add_parser("polytope").add_subparsers(dest="action", required=True)
    b = pp.add_parser("build-vdn")
    b.add_argument("--d", type=int, required=True)
    b.add_argument("--out")
    b.set_defaults(func=cmd_polytope_build)
    c = pp.add_parser("check")
    c.add_argument("file")
    c.set_defaults(func=cmd_polytope_check)

    fp = sub.add_parser("fan").add_subparsers(dest="action", required=True)
    i = fp.add_parser("invariants")
    i.add_argument("file", help="fan JSON, or polytope JSON to take the face fan of")
    i.add_argument("--out", help="write the fan JSON here")
    i.set_defaults(func=cmd_fan_invariants)

    dp = sub.add_parser("degen").add_subparsers(dest="action", required=True)
    g = dp.add_parser("grassmann")
    g.add_argument("--r", type=int, required=True)
    g.add_argument("--s", type=int, required=True)
    g.set_defaults(func=cmd_degen_grassmann)
    fam = dp.add_parser("family")
    fam.add_argument("--poly", required=True)
    fam.add_argument("--weights", required=True, help="comma-separated integers")
    fam.add_argument("--t", help="rational parameter value to specialize at")
    fam.set_defaults(func=cmd_degen_family)

    per = sub.add_parser("period").add_subparsers(dest="action", required=True)
    m = per.add_parser("main")
    m.add_argument("--d", type=int, required=True)
    m.add_argument("--order", type=int, required=True)
    m.set_defaults(func=cmd_period_main)
    r = per.add_parser("residue")
    r.add_argument("--d", type=int, required=True)
    r.add_argument("--order", type=int, required=True)
    r.add_argument("--method", choices=["laurent", "tables"], default="laurent")
    r.set_defaults(func=cmd_period_residue)
    cf = per.add_parser("closed-form")
    cf.add_argument("--d", type=int, required=True)
    cf.add_argument("--m", type=int, required=True)
    cf.set_defaults(func=cmd_period_closed)

    t = sub.add_parser("tables")
    t.add_argument("--d", type=int, required=True)
    t.add_argument("--m", type=int, required=True)
    t.add_argument("--verify", action="store_true")
    t.set_defaults(func=cmd_tables)

    mp = sub.add_parser("mirror").add_subparsers(dest="action", required=True)
    mf = mp.add_parser("family")
    mf.add_argument("--d", type=int, required=True)
    mf.set_defaults(func=cmd_mirror_family)
    return parser


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    try:
        report, code = args.func(args)
    except (UsageError, ValueError) as exc:
        # library argument errors (bad d, malformed files) count as usage errors
        print(f"toridegen: error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 2
    stdout.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

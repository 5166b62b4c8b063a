"""Command line front end: ``pickpoly <command> ...``.

Exit codes: 0 feasible / verified / true, 3 unknown / false, 2 usage or I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from .cjson import complex_to_json, point_from_json
from .engine import DecideConfig, FEASIBLE, Interpolant, ProblemData, decide, verify
from .moebius import polydisc_rho, rho
from .mpoly import factor, format_poly, is_irreducible, parse_poly, zero_free_on_polydisc
from .mpoly.irreducible import IRREDUCIBLE
from .mpoly.text import poly_to_json
from .mpoly.zerofree import VERIFIED
from .pick import two_point_feasible
from .rif import RationalInner, canonicalize, factor_inner, find_zero, slice

EXIT_OK, EXIT_USAGE, EXIT_NO = 0, 2, 3


class UsageError(Exception):
    pass


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _emit(obj, out: Optional[str] = None) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def cmd_decide(args) -> int:
    data = ProblemData.from_json(_load_json(args.data))
    cfg = DecideConfig(
        n=data.n,
        candidates_file=args.candidates,
        gen_count=args.gen_count,
        gen_degree=args.gen_degree,
        seed=args.seed,
        tol=args.tol,
        expand=args.expand,
        selection=args.selection,
    )
    try:
        report = decide(data, cfg)
    except OSError as exc:
        raise UsageError(str(exc)) from exc
    _emit(report.to_dict(include_time=args.timing), args.output)
    return EXIT_OK if report.status == FEASIBLE else EXIT_NO


def cmd_verify(args) -> int:
    data = ProblemData.from_json(_load_json(args.data))
    obj = _load_json(args.interpolant)
    if "interpolant" in obj:
        obj = obj["interpolant"]
    if not obj:
        raise UsageError("the file holds no interpolant")
    F = Interpolant.from_json(obj)
    rep = verify(F, data, samples=args.samples, tol=args.tol)
    _emit(rep.to_json())
    return EXIT_OK if rep.passed else EXIT_NO


def cmd_twopoint(args) -> int:
    data = ProblemData.from_json(_load_json(args.data))
    rows = []
    ok = True
    for j, k in ((0, 1), (0, 2), (1, 2)):
        top, arg = polydisc_rho(data.X[j], data.X[k])
        feasible = two_point_feasible(data.X[j], data.X[k], data.w[j], data.w[k])
        ok = ok and feasible
        rows.append(
            {
                "pair": [j + 1, k + 1],
                "rho_nodes": top,
                "argmax": sorted(arg),
                "rho_values": rho(data.w[j], data.w[k]),
                "feasible": feasible,
            }
        )
    _emit({"pairs": rows, "all_feasible": ok})
    return EXIT_OK if ok else EXIT_NO


def cmd_poly(args) -> int:
    Q = parse_poly(args.text, args.n)
    op = args.op
    if op == "reflect":
        R = Q.reflect()
        print(format_poly(R))
        return EXIT_OK
    if op == "nu":
        print(json.dumps(list(Q.nu())))
        return EXIT_OK
    if op == "deficient":
        val = Q.is_deficient()
        print(json.dumps(val))
        return EXIT_OK if val else EXIT_NO
    if op == "irreducible":
        v = is_irreducible(Q, trials=args.trials, seed=args.seed)
        out = {"status": v.status, "confidence": v.confidence}
        if v.witness:
            out["witness"] = [format_poly(w) for w in v.witness]
        _emit(out)
        return EXIT_OK if v.status == IRREDUCIBLE else EXIT_NO
    if op == "zerofree":
        v = zero_free_on_polydisc(Q, budget=args.budget, margin=args.margin)
        out = {"status": v.status, "cells_examined": v.cells_examined}
        if v.point is not None:
            out["point"] = [complex_to_json(c) for c in v.point]
        _emit(out)
        return EXIT_OK if v.status == VERIFIED else EXIT_NO
    if op == "factor":
        F = factor(Q, seed=args.seed)
        _emit(
            {
                "status": F.status,
                "constant": str(F.constant),
                "factors": [{"factor": format_poly(f), "multiplicity": k} for f, k in F.factors],
                "unresolved": [format_poly(f) for f in F.unresolved],
            }
        )
        return EXIT_OK if F.complete else EXIT_NO
    raise UsageError(f"unknown poly operation {op}")


def _inner_summary(f: RationalInner) -> dict:
    return {"Q_text": format_poly(f.Q), **f.to_json()}


def cmd_inner(args) -> int:
    f = RationalInner.from_json(_load_json(args.input))
    op = args.op
    if op == "canon":
        can = canonicalize(f, seed=args.seed)
        C = can.C
        _emit(
            {
                "C": complex_to_json(complex(C)),
                "gamma": list(can.gamma),
                "Qhat": poly_to_json(can.Qhat),
                "Qhat_text": format_poly(can.Qhat),
                "absorbed": [format_poly(q) for q, _, _ in can.absorbed],
            }
        )
    elif op == "factor":
        F = factor_inner(f, seed=args.seed)
        _emit({"constant": complex_to_json(complex(F.constant)), "factors": [_inner_summary(g) for g in F.factors]})
    elif op == "findzero":
        pt = find_zero(f, seed=args.seed, max_directions=args.directions)
        _emit({"point": [complex_to_json(c) for c in pt]})
    elif op == "slice":
        w = point_from_json(json.loads(args.direction)) if args.direction else (1 + 0j,) * f.n
        _emit(slice(f, w).to_json())
    else:
        raise UsageError(f"unknown inner operation {op}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pickpoly", description="Three-point interpolation on the polydisc.")
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("decide", help="search for a verified interpolant")
    d.add_argument("--data", required=True)
    d.add_argument("--candidates", help="file with one denominator polynomial per line")
    d.add_argument("--gen-count", type=int, default=8)
    d.add_argument("--gen-degree", type=int, default=2)
    d.add_argument("--seed", type=int, default=0)
    d.add_argument("--tol", type=float, default=1e-9)
    d.add_argument("--expand", action="store_true", help="also store the expanded rational form")
    d.add_argument("--selection", choices=("min-rank", "first"), default="min-rank")
    d.add_argument("--timing", action="store_true", help="include wall time (breaks byte-identical output)")
    d.add_argument("--output", help="write the report here instead of stdout")
    d.set_defaults(func=cmd_decide)

    v = sub.add_parser("verify", help="check an interpolant against data")
    v.add_argument("--data", required=True)
    v.add_argument("--interpolant", required=True, help="interpolant JSON or a decide report")
    v.add_argument("--samples", type=int, default=256)
    v.add_argument("--tol", type=float, default=1e-9)
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("twopoint", help="pairwise two-point condition")
    t.add_argument("--data", required=True)
    t.set_defaults(func=cmd_twopoint)

    q = sub.add_parser("poly", help="polynomial utilities")
    q.add_argument("op", choices=("reflect", "nu", "deficient", "irreducible", "zerofree", "factor"))
    q.add_argument("text")
    q.add_argument("--n", type=int, default=None)
    q.add_argument("--trials", type=int, default=8)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--budget", type=int, default=100_000)
    q.add_argument("--margin", type=float, default=1e-3)
    q.set_defaults(func=cmd_poly)

    i = sub.add_parser("inner", help="rational inner function utilities")
    i.add_argument("op", choices=("canon", "factor", "findzero", "slice"))
    i.add_argument("--input", required=True)
    i.add_argument("--seed", type=int, default=0)
    i.add_argument("--directions", type=int, default=64)
    i.add_argument("--direction", help='torus point for slice, e.g. \'[{"re":1,"im":0},{"re":0,"im":1}]\'')
    i.set_defaults(func=cmd_inner)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError, KeyError, TypeError) as exc:
        print(f"pickpoly: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

"""Command-line driver: ``mopforge verify``, ``mopforge show`` and ``mopforge solve``."""
from __future__ import annotations

import argparse
import json
import sys

from .dwalgebra import build_generators, eigenvalue_poly, module_decompose, solve_DW_detailed
from .orthopoly import (
    eigenvalue_formula,
    eval_symbolic,
    explicit_Qn,
    recurrence_comparison,
)
from .report import RunConfig, run_suite, to_json
from .scalar import Params
from .weight import make_weight

SHOW_OBJECTS = ("weight", "D1", "D2", "Qn", "recurrence", "eigenvalues")


def _params(text: str) -> Params:
    try:
        return Params.parse(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--params", type=_params, default=Params(1, 1, 1),
                        help='a,b,c as rationals, e.g. "2,1/2,3" (default 1,1,1)')
    common.add_argument("--n-max", type=int, default=8)
    common.add_argument("--order", type=int, default=4, help="maximum operator order for solver checks")
    common.add_argument("--degree-bound", type=int, default=3)
    common.add_argument("--mode", choices=("exact", "numeric", "both"), default="both")
    common.add_argument("--json", action="store_true", help="emit JSON instead of text")
    common.add_argument("--out", help="write the output to this file")
    common.add_argument("--seed", type=int, default=0)

    parser = argparse.ArgumentParser(prog="mopforge", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("verify", parents=[common], help="run the full verification suite")
    show = sub.add_parser("show", parents=[common], help="print an exact object")
    show.add_argument("object", choices=SHOW_OBJECTS)
    show.add_argument("--n", type=int, default=None, help="degree index for Qn, recurrence, eigenvalues")
    sub.add_parser("solve", parents=[common], help="compute a basis of D(W) up to --order")
    return parser


def _config(args) -> RunConfig:
    return RunConfig(params=args.params, n_max=args.n_max, order_max=args.order,
                     degree_bound=args.degree_bound, mode=args.mode, output=args.out, seed=args.seed)


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, default=str) + "\n"


def _matrix(M) -> list:
    return [[str(e) for e in r] for r in M]


def cmd_verify(args) -> int:
    cfg = _config(args)

    def progress(rec, secs):
        if not args.json:
            print(f"[{rec.status:>7}] {rec.id} ({secs:.2f}s)", file=sys.stderr)

    report = run_suite(cfg, progress=progress)
    if args.json:
        _emit(to_json(report), args.out)
    else:
        lines = [f"mopforge verify  params={cfg.params}  mode={cfg.mode}"]
        for rec in report["checks"]:
            lines.append(f"  {rec['status']:<8} {rec['id']:<28} {rec['paper_ref']}")
        s = report["summary"]
        lines.append(f"pass={s['pass']} fail={s['fail']} skipped={s['skipped']}")
        _emit("\n".join(lines) + "\n", args.out)
    return 1 if report["summary"]["fail"] else 0


def _show_operator(D) -> tuple[str, dict]:
    return D.pretty() + "\n", D.to_json()


def cmd_show(args) -> int:
    params = args.params
    n = args.n
    if args.object == "weight":
        W = make_weight(params)
        text = "\n".join(
            f"exp({a} x^2 + {g} x) *\n{P.pretty()}" for (a, g), P in W.W.terms.items()) + "\n"
        data = {"terms": [{"alpha": str(a), "gamma": str(g), "payload": P.to_json()}
                          for (a, g), P in W.W.terms.items()]}
    elif args.object in ("D1", "D2"):
        g = build_generators(params)
        text, data = _show_operator(getattr(g, args.object))
    elif args.object == "Qn":
        Q = explicit_Qn(n or 0, params)
        text, data = Q.pretty() + "\n", Q.to_json()
    elif args.object == "recurrence":
        k = 1 if n is None else n
        seq = [explicit_Qn(j, params) for j in range(k + 2)]
        rows = recurrence_comparison(k, params, seq)
        text = f"x Q_{k} = A Q_{k + 1} + B Q_{k} + C Q_{k - 1}\n"
        text += f"{'entry':<6} {'extracted':<40} {'printed':<40} verdict\n"
        for r in rows:
            tag = f"{r['matrix']}{r['entry'][0]}{r['entry'][1]}"
            text += f"{tag:<6} {str(r['extracted']):<40} {str(r['printed']):<40} {r['verdict']}\n"
        data = [{"entry": f"{r['matrix']}{r['entry'][0]}{r['entry'][1]}", "extracted": str(r["extracted"]),
                 "printed": str(r["printed"]), "verdict": r["verdict"]} for r in rows]
    else:
        g = build_generators(params)
        data, text = {}, ""
        for name in ("D1", "D2"):
            L = eigenvalue_formula(getattr(g, name))
            if n is None:
                text += f"Lambda_n({name}) =\n{L.pretty('n')}\n"
                data[name] = L.to_json()
            else:
                M = eval_symbolic(L, n)
                text += f"Lambda_{n}({name}) = {_matrix(M)}\n"
                data[name] = _matrix(M)
    _emit(_dump(data) if args.json else text, args.out)
    return 0


def cmd_solve(args) -> int:
    if args.order < 0:
        print("error: --order must be >= 0", file=sys.stderr)
        return 2
    W = make_weight(args.params)
    g = build_generators(args.params)
    res = solve_DW_detailed(args.order, W, seed=args.seed)
    entries = []
    for D in res.basis:
        m = module_decompose(D, g)
        entries.append({"operator": D, "module": m, "eigenvalue": eigenvalue_poly(m, g)})
    if args.json:
        data = {
            "order": res.order,
            "dimension": len(res.basis),
            "method": res.method,
            "n_fit": res.n_fit,
            "n_check": res.n_check,
            "basis": [{"operator": e["operator"].to_json(), "module": e["module"].to_json(),
                       "eigenvalue": e["eigenvalue"].to_json()} for e in entries],
        }
        _emit(_dump(data), args.out)
    else:
        out = [f"order {res.order}: dimension {len(res.basis)} "
               f"(fit n <= {res.n_fit}, checked n <= {res.n_check}, {res.method})"]
        for i, e in enumerate(entries, 1):
            out.append(f"\n-- basis element {i}: {e['module']}")
            out.append(e["operator"].pretty())
            out.append(f"Lambda_n =\n{e['eigenvalue'].pretty('n')}")
        _emit("\n".join(out) + "\n", args.out)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _config(args)
    except ValueError as exc:
        parser.error(str(exc))
    return {"verify": cmd_verify, "show": cmd_show, "solve": cmd_solve}[args.command](args)


if __name__ == "__main__":
    sys.exit(main())

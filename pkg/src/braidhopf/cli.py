"""Command line: evaluate structure maps of a presented algebra, run the
check catalog, the positivity checker, and the braiding obstruction."""

from __future__ import annotations

import argparse
import json
import sys

from .algebra import Algebra, Tensor, tensor_product
from .braidtensor import comul
from .deform import Deformation, conv_exp, eval_functional
from .presentation import PresentationError, parse_presentation
from .scalars import Scalar, parse_rational
from .verify import (SchoenbergError, parse_psi, q_presentation, qnogo_eval,
                     run_catalog, schoenberg_check)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_ERROR = 2

_BINARY_OPS = ("mul", "mu_t", "expL")
_UNARY_OPS = ("comul", "antipode", "s_t", "sigma")


def _load(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_presentation(fh.read())


def _print_reports(reports, fmt: str):
    if fmt == "json":
        print(json.dumps([r.to_dict() for r in reports], indent=2))
        return
    for r in reports:
        tag = {"pass": "pass", "fail": "FAIL", "skipped": "skip"}[r.status]
        line = f"[{tag}] {r.id} (degree {r.degree})"
        if r.witness:
            line += " -- " + "; ".join(
                f"{k}: {v}" for k, v in r.witness.items())
        print(line)


def cmd_verify(args) -> int:
    pres = _load(args.presentation)
    ids = None
    if args.checks is not None:
        ids = [s.strip() for s in args.checks.split(",") if s.strip()]
    reports = run_catalog(pres, ids, args.max_degree)
    _print_reports(reports, args.format)
    return EXIT_FAIL if any(r.status == "fail" for r in reports) else EXIT_OK


def cmd_eval(args) -> int:
    pres = _load(args.presentation)
    alg = Algebra(pres)
    defm = Deformation(alg)
    lhs = alg.parse_element(args.lhs)
    if args.op in _BINARY_OPS:
        if args.rhs is None:
            raise ValueError(f"--op {args.op} needs --rhs")
        rhs = alg.parse_element(args.rhs)
    elif args.rhs is not None:
        raise ValueError(f"--op {args.op} takes no --rhs")

    if args.op == "mul":
        out = alg.mul(lhs, rhs)
    elif args.op == "mu_t":
        out = defm.mu_t(lhs, rhs)
    elif args.op == "expL":
        out = conv_exp(defm.L, tensor_product(lhs, rhs))
    elif args.op == "comul":
        out = comul(alg, lhs)
    elif args.op == "antipode":
        out = alg.antipode(lhs)
    elif args.op == "s_t":
        out = defm.st(lhs)
    else:
        out = eval_functional(defm.sigma_functional(), lhs)

    if args.t is not None:
        t0 = parse_rational(args.t)
        out = out.substitute(t0) if isinstance(out, Tensor) else out.eval(t0)
    print(alg.format(out) if isinstance(out, Tensor) else str(out))
    return EXIT_OK


def cmd_schoenberg(args) -> int:
    pres = _load(args.presentation)
    psi = None
    if args.psi is not None:
        with open(args.psi, "r", encoding="utf-8") as fh:
            psi = parse_psi(fh.read(), pres)
    t_samples = [parse_rational(s) for s in args.t.split(",") if s.strip()]
    result = schoenberg_check(pres, psi, args.max_degree, t_samples)
    if args.format == "json":
        print(json.dumps({
            "conditional": result.conditional.to_dict(),
            "states": [r.to_dict() for r in result.states],
            "equivalence_observed": result.equivalence_observed,
        }, indent=2))
    else:
        _print_reports(result.reports(), "text")
        print("equivalence observed: "
              + ("yes" if result.equivalence_observed else "no"))
    return EXIT_OK if result.ok() else EXIT_FAIL


def cmd_qnogo(args) -> int:
    q = Scalar.parse(args.q)
    t0 = parse_rational(args.t)
    lhs, rhs = qnogo_eval(q, t0)
    alg = Algebra(q_presentation(q))
    equal = lhs == rhs
    if args.format == "json":
        print(json.dumps({"q": str(q), "t": str(t0),
                          "lhs": alg.format(lhs), "rhs": alg.format(rhs),
                          "equal": equal}, indent=2))
    else:
        print(f"lhs = {alg.format(lhs)}")
        print(f"rhs = {alg.format(rhs)}")
        print("equal" if equal else "unequal")
    return EXIT_OK if equal else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="braidhopf",
        description="exact additive deformations of presented braided "
                    "Hopf *-algebras")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run the check catalog")
    v.add_argument("presentation", help="presentation file (.alg)")
    v.add_argument("--checks", help="comma-separated check ids (default all)")
    v.add_argument("--max-degree", type=int, default=4)
    v.add_argument("--format", choices=("text", "json"), default="text")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("eval", help="evaluate one structure map")
    e.add_argument("presentation", help="presentation file (.alg)")
    e.add_argument("--op", required=True, choices=_BINARY_OPS + _UNARY_OPS)
    e.add_argument("--lhs", required=True, help="element expression")
    e.add_argument("--rhs", help="second element (binary ops)")
    e.add_argument("--t", help="substitute a rational for t")
    e.set_defaults(func=cmd_eval)

    s = sub.add_parser("schoenberg",
                       help="conditional positivity and the state family")
    s.add_argument("presentation", help="presentation file (.alg)")
    s.add_argument("--psi", help="support table file (.psi); default zero")
    s.add_argument("--max-degree", type=int, default=4)
    s.add_argument("--t", default="0,1/2,1,2",
                   help="comma-separated rational sample points")
    s.add_argument("--format", choices=("text", "json"), default="text")
    s.set_defaults(func=cmd_schoenberg)

    n = sub.add_parser("qnogo",
                       help="both sides of the diagonal-braiding obstruction")
    n.add_argument("--q", required=True, help="nonzero scalar")
    n.add_argument("--t", default="1", help="rational value for t")
    n.add_argument("--format", choices=("text", "json"), default="text")
    n.set_defaults(func=cmd_qnogo)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SchoenbergError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (PresentationError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Subcommands:

    commutator A B      bracket of two operator expressions
    kdv-verify          check the flow identity of the shipped order-2/3 pair
    lax-solve FILE      solve a problem file and verify the residual
    symmetry FILE       transport S0 and verify all three symmetry checks
    convergence FILE    truncation-error study (matrix backend)

Exit codes: 0 all checks passed, 1 checks ran and failed, 2 input error.
The QLAX_FORMAT environment variable overrides --format.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import List, Optional

from .algebra import rational
from .diffpoly import DiffPoly
from .errors import QlaxError
from .laxflow import lax_residual, lax_solve
from .matrix import convergence_study
from .psdo import PsdoSymbol, commutator, kdv_pair
from .problemfile import load_probes, load_problem_file
from .render import convergence_json, dumps, json_value, residual_report
from .symops import (
    default_probes,
    residual_vanishes,
    symmetry2_residual,
    symmetry3_residual,
    transport,
    transported_solution_check,
)
from . import expr

PASS = "PASS"
FAIL = "FAIL"


def _resolve_format(args: argparse.Namespace) -> str:
    env = os.environ.get("QLAX_FORMAT")
    if env in ("json", "text"):
        return env
    return args.format


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _series_lines(label: str, series) -> List[str]:
    lines = [f"{label}:"]
    for k, c in enumerate(series.coeffs):
        lines.append(f"  q^{k}: {c}")
    return lines


def cmd_commutator(args: argparse.Namespace) -> int:
    a = expr.parse_operator(args.a)
    b = expr.parse_operator(args.b)
    result = commutator(a, b)
    if _resolve_format(args) == "json":
        _emit(dumps({"schema": "qlax/commutator/1", "commutator": json_value(result)}))
    else:
        _emit(f"[{args.a}, {args.b}] = {expr.render_operator(result)}")
    return 0


def cmd_kdv_verify(args: argparse.Namespace) -> int:
    l_op, p_op = kdv_pair()
    if args.perturb is not None:
        p_op = p_op + PsdoSymbol.from_dp(DiffPoly.u(0).scale(rational(args.perturb)))
    bracket = commutator(p_op, l_op)
    expected = PsdoSymbol.from_dp(expr.parse_diffpoly("6*u*u_1 - u_3"))
    difference = bracket - expected
    ok = difference.is_zero()
    if _resolve_format(args) == "json":
        doc = {
            "schema": "qlax/kdv-verify/1",
            "pass": ok,
            "commutator": json_value(bracket),
            "expected": json_value(expected),
            "difference": json_value(difference),
        }
        _emit(dumps(doc))
    else:
        lines = [
            f"L = {expr.render_operator(l_op)}",
            f"P = {expr.render_operator(p_op)}",
            f"[P, L] = {expr.render_operator(bracket)}",
            f"expected = {expr.render_operator(expected)}",
        ]
        if ok:
            lines.append(f"{PASS}: [P, L] equals the flow right-hand side exactly")
        else:
            lines.append(f"difference = {expr.render_operator(difference)}")
            lines.append(f"{FAIL}: [P, L] does not match")
        _emit("\n".join(lines))
    return 0 if ok else 1


def cmd_lax_solve(args: argparse.Namespace) -> int:
    pf = load_problem_file(args.problem, default_n=args.qorder)
    prob = pf.lax_problem()
    sol = lax_solve(prob)
    residual = lax_residual(sol.lq, sol.pq)
    report = residual_report(residual, lossy=sol.lossy)
    ok = report["zero"]
    if _resolve_format(args) == "json":
        doc = {
            "schema": "qlax/laxsolve-report/1",
            "backend": pf.backend,
            "N": prob.n,
            "W": json_value(sol.w),
            "Lq": json_value(sol.lq),
            "residual": report,
        }
        _emit(dumps(doc))
    else:
        lines = [f"backend: {pf.backend}, N = {prob.n}"]
        lines += _series_lines("W", sol.w)
        lines += _series_lines("Lq", sol.lq)
        lines.append(
            f"residual: {'zero (exact)' if ok else 'NONZERO'}"
            + (" [lossy deformation]" if sol.lossy else "")
        )
        lines.append(PASS if ok else FAIL)
        _emit("\n".join(lines))
    return 0 if ok else 1


def _symmetry_probes(args: argparse.Namespace, pf) -> list:
    probes = default_probes(pf.alg)
    probes.append(pf.l0)
    for c in pf.p.coeffs:
        if not pf.alg.is_zero(c) and c not in probes:
            probes.append(c)
    if args.probe_set:
        probes.extend(load_probes(args.probe_set, pf.backend))
    return probes


def cmd_symmetry(args: argparse.Namespace) -> int:
    pf = load_problem_file(args.problem, default_n=args.qorder)
    if pf.s0 is None:
        from .errors import ProblemFileError

        raise ProblemFileError("S0", "missing (the symmetry command needs an initial symmetry)")
    prob = pf.lax_problem()
    sol = lax_solve(prob)
    sq = transport(pf.s0, sol.pq)
    probes = _symmetry_probes(args, pf)
    r3_zero = residual_vanishes(symmetry3_residual(sq, sol.pq), probes)
    r2_zero = symmetry2_residual(sq, sol.pq, sol.lq).is_zero()
    carried = transported_solution_check(pf.s0, prob)
    ok = r3_zero and r2_zero and carried
    if _resolve_format(args) == "json":
        doc = {
            "schema": "qlax/symmetry-report/1",
            "pass": ok,
            "symmetry3_zero": r3_zero,
            "symmetry2_zero": r2_zero,
            "transported_solution": carried,
            "probes": len(probes),
        }
        _emit(dumps(doc))
    else:
        lines = [
            f"symmetry3 residual: {PASS if r3_zero else FAIL} (checked on {len(probes)} probes)",
            f"symmetry2 residual: {PASS if r2_zero else FAIL} (exact)",
            f"transported solution: {PASS if carried else FAIL}",
            PASS if ok else FAIL,
        ]
        _emit("\n".join(lines))
    return 0 if ok else 1


def cmd_convergence(args: argparse.Namespace) -> int:
    pf = load_problem_file(args.problem, default_n=args.qorder)
    if pf.backend != "matrix":
        from .errors import ProblemFileError

        raise ProblemFileError("backend", "the convergence study needs the matrix backend")
    prob = pf.lax_problem()
    ref_n = args.refN if args.refN is not None else prob.n + 6
    qs = [rational(q) for q in (args.q or ["1/8", "1/16"])]
    report = convergence_study(prob, qs, ref_n)
    if _resolve_format(args) == "json":
        _emit(dumps(convergence_json(report)))
    else:
        lines = [f"N = {report.n}, refN = {report.ref_n}"]
        for p in report.points:
            ratio = "-" if p.ratio_to_prev is None else f"{float(p.ratio_to_prev):.4g}"
            lines.append(f"q = {p.q}: error = {float(p.error):.6g}, ratio_to_prev = {ratio}")
        _emit("\n".join(lines))
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format", choices=("text", "json"), default="text",
        help="output format (QLAX_FORMAT overrides)",
    )
    common.add_argument(
        "--qorder", type=int, default=2, metavar="N",
        help="default q-truncation order for problem files without N",
    )
    common.add_argument(
        "--depth", type=int, default=None, metavar="M",
        help="working precision floor for pseudo-differential composition "
        "(reserved; the DSL denotes differential operators, which stay exact)",
    )
    common.add_argument(
        "--seed", type=int, default=0,
        help="seed for commands that draw random data (reserved)",
    )
    common.add_argument(
        "--probe-set", metavar="PATH", default=None,
        help="JSON file with extra probe elements for symmetry checks",
    )

    parser = argparse.ArgumentParser(
        prog="qlax",
        description="Exact verification toolkit for time-scaled operator flows.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("commutator", parents=[common], help="bracket of two operator expressions")
    p.add_argument("a", help="left operator expression, e.g. 'd'")
    p.add_argument("b", help="right operator expression, e.g. 'u'")
    p.set_defaults(func=cmd_commutator)

    p = sub.add_parser("kdv-verify", parents=[common], help="verify the shipped Lax-pair identity")
    p.add_argument(
        "--perturb", metavar="EPS", default=None,
        help="add EPS*u to P before checking (demonstrates failure detection)",
    )
    p.set_defaults(func=cmd_kdv_verify)

    p = sub.add_parser("lax-solve", parents=[common], help="solve a problem file and check the residual")
    p.add_argument("problem", help="path to a problem JSON file")
    p.set_defaults(func=cmd_lax_solve)

    p = sub.add_parser("symmetry", parents=[common], help="transport S0 and run the symmetry checks")
    p.add_argument("problem", help="path to a problem JSON file with S0")
    p.set_defaults(func=cmd_symmetry)

    p = sub.add_parser("convergence", parents=[common], help="truncation-error study (matrix backend)")
    p.add_argument("problem", help="path to a matrix problem JSON file")
    p.add_argument("--q", action="append", metavar="Q", help="evaluation point (repeatable; default 1/8, 1/16)")
    p.add_argument("--refN", type=int, default=None, help="reference truncation order (default N+6)")
    p.set_defaults(func=cmd_convergence)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except QlaxError as e:
        sys.stderr.write(f"error: {e}\n")
        return 2
    except OSError as e:
        sys.stderr.write(f"error: {e}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Exit codes: 0 success, 1 a check failed, 2 usage or parse error.  Every
failure also writes one JSON object per line to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from typing import Sequence

from . import __version__
from .algebra import equals, format_poly, is_central, normal_form
from .dynamics import TruncationWarning, default_time_grid, divergence_experiment
from .matrixrep import to_matrix
from .parser import ModeError, ParseError, parse_classical, parse_nc
from .quantize import RULES, ClassicalPoly, ExpansionSizeError, Monomial, quantize
from .verify import (MAX_SCAN_BOUND, bj_weyl_difference, check_eq7, eq7_sides, eq11_residuals,
                     ordering_solution_space, rule_vector, smallest_noncentral_difference)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

CONSERVATION_TOL = 1e-9


class UsageError(Exception):
    pass


def diagnostic(status: str, kind: str, message: str, **extra) -> None:
    record = {"status": status, "kind": kind, "message": message, **extra}
    print(json.dumps(record, sort_keys=True), file=sys.stderr)


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        diagnostic("error", "usage", message, prog=self.prog)
        raise SystemExit(EXIT_USAGE)


def _fmt_fraction_map(weights) -> str:
    return ", ".join(f"{w}: {c}" for w, c in sorted(weights.items())) or "(zero)"


def cmd_quantize(args) -> int:
    h = parse_classical(args.expr)
    op = quantize(h, args.rule)
    print(format_poly(op if args.unreduced else normal_form(op)))
    return EXIT_OK


def cmd_normal_form(args) -> int:
    print(format_poly(normal_form(parse_nc(args.expr))))
    return EXIT_OK


def cmd_equal(args) -> int:
    lhs, rhs = parse_nc(args.lhs), parse_nc(args.rhs)
    if equals(lhs, rhs):
        print("equal")
        return EXIT_OK
    diff = format_poly(normal_form(lhs - rhs))
    print(diff)
    diagnostic("fail", "check", "operators differ", check="equal", difference=diff)
    return EXIT_FAIL


def cmd_check_eq7(args) -> int:
    failed = []
    for m in range(1, args.max_m + 1):
        for n in range(1, args.max_n + 1):
            if check_eq7(m, n):
                print(f"PASS m={m} n={n}")
            else:
                lhs, rhs = eq7_sides(m, n)
                print(f"FAIL m={m} n={n} lhs={format_poly(lhs)} rhs={format_poly(rhs)}")
                failed.append([m, n])
    if failed:
        diagnostic("fail", "check", "commutation formula failed", check="eq7", cases=failed)
        return EXIT_FAIL
    return EXIT_OK


def cmd_check_eq11(args) -> int:
    h = parse_classical(args.expr)
    r_q, r_p = eq11_residuals(quantize(h, args.rule))
    labels = ("Hq - qH = -i*hbar*dH/dp", "Hp - pH = i*hbar*dH/dq")
    ok = True
    for label, residual in zip(labels, (r_q, r_p)):
        if residual:
            ok = False
            print(f"FAIL {label}  residual={format_poly(residual)}")
        else:
            print(f"PASS {label}")
    if not ok:
        diagnostic("fail", "check", "energy condition failed", check="eq11", rule=args.rule,
                   expr=str(h))
        return EXIT_FAIL
    return EXIT_OK


def cmd_solve_orderings(args) -> int:
    m = Monomial(args.s, args.r)
    space = ordering_solution_space(m, bound=args.bound)
    print(f"monomial: {m}")
    print(f"orderings: {len(space.words)}")
    print(f"dimension: {space.dimension}")
    print(f"particular: {_fmt_fraction_map(space.particular.weights)}")
    for k, v in enumerate(space.nullspace_basis):
        print(f"basis[{k}]: {_fmt_fraction_map(v)}")
    status = EXIT_OK
    for rule in RULES:
        member = space.contains(rule_vector(rule, m))
        print(f"{rule}: {'member' if member else 'not a member'}")
        if rule == "bj" and not member:
            status = EXIT_FAIL
    print(f"resubstitution: {'exact' if space.resubstitution_ok() else 'FAILED'}")
    if not space.resubstitution_ok():
        status = EXIT_FAIL
    if status:
        diagnostic("fail", "check", "solution space inconsistent", check="solve-orderings",
                   monomial=str(m))
    return status


def cmd_bj_weyl_diff(args) -> int:
    h = parse_classical(args.expr)
    diff = bj_weyl_difference(h)
    print(format_poly(diff))
    print(f"central: {'yes' if is_central(diff) else 'no'}")
    return EXIT_OK


def cmd_find_noncentral(args) -> int:
    if not 1 <= args.bound <= MAX_SCAN_BOUND:
        raise UsageError(f"--bound must be in 1..{MAX_SCAN_BOUND}")
    m = smallest_noncentral_difference(args.bound)
    if m is None:
        print("none")
    else:
        print(f"{m}  difference={format_poly(bj_weyl_difference(m))}")
    return EXIT_OK


def cmd_simulate(args) -> int:
    h: ClassicalPoly = parse_classical(args.expr)
    if args.N < 1 or args.steps < 1 or not args.hbar > 0:
        raise UsageError("--N and --steps must be positive and --hbar > 0")
    A = to_matrix(parse_nc(args.observable), args.N, args.hbar)
    grid = default_time_grid(args.t_max, args.steps)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", TruncationWarning)
        report = divergence_experiment(h, A=A, t_grid=grid, N=args.N, hbar=args.hbar,
                                       observable=args.observable)
    for w in caught:
        diagnostic("warning", "truncation", str(w.message))
    report.to_csv(args.out)
    if args.json:
        report.to_json(args.json)
    print(f"hamiltonian: {h}")
    print(f"max_divergence: {report.max_divergence:.6e}")
    print(f"energy_drift_bj: {report.energy_drifts['bj']:.3e}")
    print(f"energy_drift_weyl: {report.energy_drifts['weyl']:.3e}")
    print(f"picture_delta: {report.picture_delta:.3e}")
    print(f"edge_population: {report.edge_population:.3e}")
    print(f"wrote: {args.out}")
    if report.energy_drift > CONSERVATION_TOL or report.picture_delta > CONSERVATION_TOL:
        diagnostic("fail", "check", "conservation or picture check exceeded tolerance",
                   check="simulate", energy_drift=report.energy_drift,
                   picture_delta=report.picture_delta)
        return EXIT_FAIL
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="bornjordan", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    sp = sub.add_parser("quantize", help="quantize a classical polynomial; prints its normal form")
    sp.add_argument("--rule", choices=RULES, required=True)
    sp.add_argument("--expr", required=True)
    sp.add_argument("--unreduced", action="store_true", help="print the rule's word sum instead")
    sp.set_defaults(func=cmd_quantize)

    sp = sub.add_parser("normal-form", help="standard-ordered form of an operator expression")
    sp.add_argument("--expr", required=True)
    sp.set_defaults(func=cmd_normal_form)

    sp = sub.add_parser("equal", help="operator equality modulo [q,p] = i*hbar")
    sp.add_argument("--lhs", required=True)
    sp.add_argument("--rhs", required=True)
    sp.set_defaults(func=cmd_equal)

    sp = sub.add_parser("check-eq7", help="verify the p^m q^n commutation formula")
    sp.add_argument("--max-m", type=int, default=6)
    sp.add_argument("--max-n", type=int, default=6)
    sp.set_defaults(func=cmd_check_eq7)

    sp = sub.add_parser("check-eq11", help="check the energy-conservation conditions")
    sp.add_argument("--rule", choices=RULES, required=True)
    sp.add_argument("--expr", required=True)
    sp.set_defaults(func=cmd_check_eq11)

    sp = sub.add_parser("solve-orderings", help="exact solution space of ordering weights")
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--bound", type=int, default=8)
    sp.set_defaults(func=cmd_solve_orderings)

    sp = sub.add_parser("bj-weyl-diff", help="normal form of BJ(H) - Weyl(H)")
    sp.add_argument("--expr", required=True)
    sp.set_defaults(func=cmd_bj_weyl_diff)

    sp = sub.add_parser("find-noncentral", help="smallest monomial with non-central BJ-Weyl difference")
    sp.add_argument("--bound", type=int, default=8)
    sp.set_defaults(func=cmd_find_noncentral)

    sp = sub.add_parser("simulate", help="evolve under BJ and Weyl quantizations and compare")
    sp.add_argument("--expr", required=True)
    sp.add_argument("--observable", default="q")
    sp.add_argument("--N", type=int, default=64)
    sp.add_argument("--hbar", type=float, default=1.0)
    sp.add_argument("--t-max", type=float, default=1.0)
    sp.add_argument("--steps", type=int, default=200)
    sp.add_argument("--out", default="report.csv")
    sp.add_argument("--json", default=None, help="also write a JSON report here")
    sp.set_defaults(func=cmd_simulate)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ParseError as exc:
        diagnostic("error", "mode" if isinstance(exc, ModeError) else "parse",
                   exc.message, position=exc.position)
    except (UsageError, ExpansionSizeError, ValueError) as exc:
        diagnostic("error", "usage", str(exc))
    except OSError as exc:
        diagnostic("error", "io", str(exc))
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())


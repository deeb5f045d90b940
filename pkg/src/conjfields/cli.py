"""Command-line entry point: ``verify`` runs suites, ``apply`` reconstructs one output."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .class_algebra import BASES, DegreeOverflow, NotSymmetric, WeightMismatch, \
    reconstruct_borel, restrict_to_torus
from .expr import ParseError, TypeMismatch, parse_function, parse_operator
from .report import InternalCheckError, Report, run_tasks
from .suites import SUITES, Context, SuiteOptions, build, execute

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _nonnegative(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be a nonnegative integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="conjfields",
                                description="Exact checks for conjugation-invariant vector fields.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=("all",) + SUITES)
    v.add_argument("--n", type=int, choices=range(2, 9), metavar="N",
                   help="matrix size for SL(n) suites (default: 2, 3 and 4)")
    v.add_argument("--max-k", type=_positive, help="largest field index")
    v.add_argument("--max-m", type=_nonnegative, help="largest trace degree")
    v.add_argument("--max-n", type=_nonnegative, help="largest beta weight")
    v.add_argument("--samples", type=_positive, default=10, help="random points per identity")
    v.add_argument("--seed", type=int, default=42)
    v.add_argument("--height", type=_positive, default=5, help="height bound of random rationals")
    v.add_argument("--json", type=Path, metavar="PATH", help="write the JSON report here")
    v.add_argument("--jobs", type=_positive, default=1, help="worker processes")

    a = sub.add_parser("apply", help="apply a field or operator to a function")
    a.add_argument("operator", help='e.g. "Psi(1)", "D", "Delta", "J(1)*Psi(1)^2"')
    a.add_argument("function", help='e.g. "I(2)", "beta^2*J(3)"')
    a.add_argument("--basis", choices=BASES, default="I", help="basis for class functions")
    a.add_argument("--max-degree", type=_positive, default=64,
                   help="largest degree bound tried during reconstruction")
    return p


def cmd_verify(args) -> int:
    opt = SuiteOptions(n=args.n, max_k=args.max_k, max_m=args.max_m, max_n=args.max_n)
    ctx = Context(seed=args.seed, samples=args.samples, height=args.height)
    tasks = build(args.suite, opt)
    try:
        results = run_tasks(tasks, ctx, execute, args.jobs)
    except InternalCheckError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_INTERNAL
    report = Report(seed=args.seed, checks=results)
    print(report.text())
    if args.json:
        args.json.write_text(report.dumps())
    return report.exit_code()


def reconstruct(out, weight: int | None, basis: str = "I", max_degree: int = 64) -> str:
    """Canonical form of ``out`` with adaptively doubled degree bounds."""
    if weight is None:
        return "0"
    bound = 4
    while True:
        try:
            if weight == 0:
                return restrict_to_torus(out, min(bound, max_degree)).format(basis)
            return reconstruct_borel(out, weight, min(bound, max_degree)).format()
        except DegreeOverflow as exc:
            if bound >= max_degree:
                raise DegreeOverflow(
                    f"result exceeds degree {max_degree}; "
                    f"rerun with --max-degree {2 * max_degree}", max_degree) from exc
            bound *= 2


def apply_expression(op_text: str, fn_text: str, basis: str = "I", max_degree: int = 64) -> str:
    op = parse_operator(op_text)
    fn = parse_function(fn_text)
    if fn.weight is None:
        return "0"
    return reconstruct(op(fn.f), fn.weight, basis, max_degree)


def cmd_apply(args) -> int:
    try:
        print(apply_expression(args.operator, args.function, args.basis, args.max_degree))
    except ParseError as exc:
        print(f"{exc}\n{exc.caret()}", file=sys.stderr)
        return EXIT_USAGE
    except TypeMismatch as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DegreeOverflow, NotSymmetric, WeightMismatch) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except ArithmeticError as exc:
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command == "verify":
        return cmd_verify(args)
    return cmd_apply(args)


if __name__ == "__main__":
    sys.exit(main())

"""Command-line surface.

Subcommands: ``build`` (write a named construction), ``eval`` (run a
program file on one input), ``verify`` (exhaustively check a program
file against a named function), ``compose`` (union / intersect two
program files), ``bound`` (emit width certificates), ``report`` (emit
the width hierarchy table).

Exit codes: 0 success / verification passed, 1 verification failed,
2 usage or parameter error.  The enumeration cap can be overridden via
the ``OBDDKIT_ENUM_CAP`` environment variable.
"""

from __future__ import annotations

import argparse
import sys

from . import io as pio
from .bounds import bound_certificates, hierarchy_report
from .config import EnumerationCapExceeded
from .constructions import FAMILIES, build_family, family_function
from .scalars import ExactProbability
from .semantics import accepts_nondeterministically, computes_function, validate

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_USAGE = 2


def _family_args(parser, families):
    parser.add_argument("family", choices=families)
    parser.add_argument("--n", type=int, help="input length")
    parser.add_argument("--k", type=int, help="target count (exact/notexact)")
    parser.add_argument("--p", type=int, help="modulus (mod)")
    parser.add_argument("--m", type=int, help="matrix side (notperm)")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="obddkit",
        description="Build, run, verify, compose, and certify width-bounded "
        "branching programs (deterministic, nondeterministic, probabilistic, "
        "unitary).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_build = sub.add_parser("build", help="write a named construction")
    _family_args(p_build, FAMILIES)
    p_build.add_argument("--literal", action="store_true",
                         help="use the uncorrected parameter variant "
                         "(notperm exponents / notexact step angle); for "
                         "regression testing")
    p_build.add_argument("--out", required=True, help="output program file")

    p_eval = sub.add_parser("eval", help="run a program file on one input")
    p_eval.add_argument("program", help="program file")
    p_eval.add_argument("input", help="input bits, e.g. 1001")
    p_eval.add_argument("--backend", choices=("exact", "float"),
                        default="exact")

    p_verify = sub.add_parser(
        "verify", help="exhaustively check a program against a function"
    )
    p_verify.add_argument("program", help="program file")
    _family_args(p_verify, FAMILIES + ("exact", "and"))
    p_verify.add_argument(
        "--mode", choices=("nondeterministic", "exact", "deterministic"),
        default="nondeterministic",
    )

    p_compose = sub.add_parser("compose", help="union or intersect two programs")
    p_compose.add_argument("op", choices=("union", "intersect"))
    p_compose.add_argument("left", help="program file")
    p_compose.add_argument("right", help="program file")
    p_compose.add_argument("--out", required=True)

    p_bound = sub.add_parser("bound", help="emit width certificates")
    _family_args(p_bound, ("mod", "exact", "notexact", "and", "notperm"))
    p_bound.add_argument("--orders", choices=("natural", "all"),
                         default="natural")
    p_bound.add_argument("--out", help="report file (optional)")

    p_report = sub.add_parser("report", help="emit the width hierarchy table")
    p_report.add_argument("--n", type=int, required=True)
    p_report.add_argument("--d", required=True,
                          help="width range, e.g. 2..6 or a single width")
    p_report.add_argument("--out", help="report file (optional)")
    return parser


def _params(args) -> dict:
    return {"n": args.n, "k": args.k, "p": args.p, "m": args.m}


def _parse_d_range(text: str):
    if ".." in text:
        lo, hi = text.split("..", 1)
        return int(lo), int(hi)
    d = int(text)
    return d, d


def _render_probability(prob) -> str:
    if isinstance(prob, ExactProbability):
        if prob.is_zero():
            return "0 (exactly)"
        return f"{prob.render()} ~= {float(prob):.12f}"
    return f"{prob:.12f} (float backend, uncertified)"


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _dispatch(args)
    except (pio.ProgramFileError, EnumerationCapExceeded, ValueError,
            OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def _dispatch(args) -> int:
    if args.command == "build":
        program = build_family(args.family, literal=args.literal,
                               **_params(args))
        problems = validate(program)
        if problems:
            print("error: built program failed validation: "
                  + "; ".join(problems), file=sys.stderr)
            return EXIT_USAGE
        pio.save_program(program, args.out)
        print(f"wrote {args.out}: {program.describe()}")
        return EXIT_OK

    if args.command == "eval":
        program = pio.load_program(args.program)
        verdict = accepts_nondeterministically(
            program, args.input, backend=args.backend
        )
        verdict_word = "accept" if verdict.accepts else "reject"
        print(f"{_render_probability(verdict.probability)}; {verdict_word}")
        return EXIT_OK

    if args.command == "verify":
        program = pio.load_program(args.program)
        family = "exact-u" if args.family == "exact" else (
            "and-nobdd" if args.family == "and" else args.family
        )
        f = family_function(family, **_params(args))
        report = computes_function(program, f, args.mode)
        if report.passed:
            print(f"pass: program computes {f.name()} in {args.mode} mode "
                  f"({report.checked} inputs)")
            return EXIT_OK
        print(f"FAIL: counterexample {report.counterexample}: {report.detail}")
        return EXIT_VERIFICATION_FAILED

    if args.command == "compose":
        from .compose import intersection, union

        left = pio.load_program(args.left)
        right = pio.load_program(args.right)
        composed = union(left, right) if args.op == "union" else \
            intersection(left, right)
        pio.save_program(composed, args.out)
        rec = composed.provenance
        symbol = "+" if args.op == "union" else "*"
        print(f"{args.op}: {rec.left_width} {symbol} {rec.right_width} "
              f"-> width {rec.result_width}; wrote {args.out}")
        return EXIT_OK

    if args.command == "bound":
        certificates = bound_certificates(
            args.family, orders=args.orders, **_params(args)
        )
        for cert in certificates:
            note = f"  [{cert.note}]" if cert.note else ""
            print(f"{cert.function:>16}  {cert.model:<11} {cert.bound:<5} "
                  f"{cert.value:>3}  {cert.evidence_kind:<17} "
                  f"verified={cert.verified}{note}")
        if args.out:
            pio.save_report(certificates, args.out,
                            title=f"bounds for {args.family}")
            print(f"wrote {args.out}")
        return EXIT_OK

    if args.command == "report":
        d_min, d_max = _parse_d_range(args.d)
        report = hierarchy_report(args.n, d_min, d_max)
        for row in report.rows:
            status = "verified" if row.verified_fully() else "degraded"
            values = ", ".join(
                f"{c.model} {c.bound} {c.value} ({c.verified})"
                for c in row.certificates
            )
            print(f"d={row.d}: {row.function}  [{status}]  {values}")
        for cert in report.incomparability:
            print(f"incomparability: {cert.function} {cert.model} "
                  f"{cert.bound} {cert.value} ({cert.verified})")
        if args.out:
            pio.save_report(
                report.all_certificates(), args.out,
                title=f"width hierarchy n={report.n} "
                f"d={report.d_range[0]}..{report.d_range[1]}",
            )
            print(f"wrote {args.out}")
        return EXIT_OK

    raise AssertionError(args.command)


if __name__ == "__main__":
    raise SystemExit(main())

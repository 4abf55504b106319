"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 invalid curve, 3 precision cap hit,
4 theorem or consistency violation.
"""
from __future__ import annotations

import argparse
import csv
import io
import sys

from .analysis import (
    CSV_FIELDS,
    analyze_curve,
    csv_rows,
    load_spec_file,
    spotcheck,
    to_json,
    verify_curve,
)
from .curve import CurveParams, validate
from .errors import (
    ConsistencyFailure,
    InvalidCurve,
    PrecisionCapExceeded,
    TheoremViolation,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INVALID = 2
EXIT_PRECISION = 3
EXIT_VIOLATION = 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="genfermat", description="Hyperosculating points and Weierstrass weights of generalized Fermat curves.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("analyze", help="full report for every curve in a spec file")
    p.add_argument("spec_file")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--truncation", type=int, default=None)

    p = sub.add_parser("verify", help="run the invariant suites on every curve in a spec file")
    p.add_argument("spec_file")
    p.add_argument("--corrupt-b-totals", action="store_true", help=argparse.SUPPRESS)

    p = sub.add_parser("spotcheck", help="check random non-branch points are not hyperosculating")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--lambdas", default="", help="comma-separated p/q values")
    p.add_argument("--samples", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    return parser


def _cmd_analyze(args, out) -> int:
    spec = load_spec_file(args.spec_file)
    truncation = args.truncation if args.truncation is not None else spec.truncation
    if truncation is not None and truncation < 1:
        raise UsageError("--truncation must be positive")
    reports = [analyze_curve(c, truncation) for c in spec.curves]
    if args.format == "json":
        out.write(to_json({"reports": reports}))
    else:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
        writer.writeheader()
        for rep in reports:
            writer.writerows(csv_rows(rep))
        out.write(buf.getvalue())
    return EXIT_OK


def _cmd_verify(args, out) -> int:
    spec = load_spec_file(args.spec_file)
    first_failure = None
    total = passed = 0
    for curve in spec.curves:
        for res in verify_curve(curve, spec.samples, spec.seed, spec.truncation, args.corrupt_b_totals):
            out.write(res.line(curve) + "\n")
            total += 1
            passed += res.passed
            if not res.passed and first_failure is None:
                first_failure = f"{res.name} on {curve}"
    out.write(f"{passed}/{total} checks passed\n")
    if first_failure is not None:
        out.write(f"first failing check: {first_failure}\n")
        return EXIT_VIOLATION
    return EXIT_OK


def _cmd_spotcheck(args, out) -> int:
    if args.samples < 1:
        raise UsageError("--samples must be at least 1")
    lambdas = [x for x in args.lambdas.split(",") if x.strip()]
    curve = CurveParams.from_record({"k": args.k, "n": args.n, "lambdas": lambdas})
    validate(curve)
    summary = spotcheck(curve, args.samples, args.seed)
    out.write(to_json(summary))
    if summary["witnesses"]:
        return EXIT_VIOLATION
    return EXIT_OK


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        handler = {"analyze": _cmd_analyze, "verify": _cmd_verify, "spotcheck": _cmd_spotcheck}[args.command]
        return handler(args, out)
    except UsageError as exc:
        err.write(f"{exc}\n")
        return EXIT_USAGE
    except InvalidCurve as exc:
        err.write(f"invalid curve: {exc}\n")
        return EXIT_INVALID
    except OSError as exc:
        err.write(f"cannot read input: {exc}\n")
        return EXIT_USAGE
    except PrecisionCapExceeded as exc:
        err.write(f"precision cap exceeded: {exc}\n")
        return EXIT_PRECISION
    except (TheoremViolation, ConsistencyFailure) as exc:
        err.write(f"{type(exc).__name__}: {exc}\n")
        return EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())

"""
cli.py — akschur command line

- Subcommands: compute, enumerate, verify, semisimple, identities
- Global flags: --json, --jobs (fallback SCHUR_JOBS), --log-level, --metrics-out
- Exit codes: 0 success/agreement, 1 mathematical disagreement, 2 usage/input error
- stdout carries results only; logs go to stderr
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Any, Optional, Sequence

from pydantic import ValidationError

from combinatorics import enumerate_multipartitions
from config import get_settings
from errors import AkSchurError, InvalidInputError
from observability import configure_logging, write_metrics
from polynomial import fraction_to_json
from schemas import parse_multipartition, parse_param_spec
from schur import (
    FORMULAS,
    expand_factored,
    factored_to_json,
    factored_to_text,
    schur_factored,
    semisimple_at,
    semisimplicity_value,
    vanishing_report,
)
from sweeps import SUITES, run_identity_suite, verify_formulas

logger = logging.getLogger("akschur")

GLOBAL_DEFAULTS = {"json": False, "jobs": None, "log_level": None, "metrics_out": None}

# suite -> (d, r_max)
SUITE_DEFAULTS = {
    "lemma21": (1, 0),
    "lemma52": (3, 8),
    "eq3": (3, 6),
    "exchange": (2, 5),
    "lshift": (2, 4),
    "unity": (2, 4),
}


def _dump(obj: Any) -> str:
    return json.dumps(obj, ensure_ascii=False)


def _compact(lists: Any) -> str:
    return json.dumps(lists, separators=(",", ":"))


def _fraction_text(x) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _comma_list(text: str) -> list[str]:
    return [item.strip() for item in text.split(",") if item.strip()]


# ======================
# Commands
# ======================
def cmd_compute(args: argparse.Namespace) -> int:
    lam = parse_multipartition(args.lam)
    spec = parse_param_spec(args.q, args.Q, lam.d) if args.q is not None else None
    if args.q is None and args.Q is not None:
        raise InvalidInputError("--Q needs --q")

    sf = schur_factored(lam)
    want_factored = args.format in ("factored", "both")
    want_expanded = args.format in ("expanded", "both", "sympy")
    expanded = expand_factored(sf) if want_expanded else None
    report = vanishing_report(lam, spec) if spec is not None else None

    if args.json:
        out: dict[str, Any] = {"lambda": lam.to_lists()}
        if want_factored:
            out["factored"] = factored_to_json(sf)
        if expanded is not None:
            out["expanded"] = expanded.to_json()
        if report is not None:
            out["spec"] = spec.to_dict()
            out["report"] = report.to_dict()
        print(_dump(out))
        return 0

    if args.format == "factored":
        print(factored_to_text(sf))
    elif args.format == "expanded":
        print(str(expanded))
    elif args.format == "sympy":
        print(str(expanded.to_sympy()))
    else:
        print(f"factored: {factored_to_text(sf)}")
        print(f"expanded: {expanded}")
    if report is not None:
        value = "0" if report.value == 0 else _fraction_text(report.value)
        print(f"value: {value}")
        if report.vanishing_factors:
            print("vanishing factors: " + ", ".join(f"(h={f.h}, s={f.s}, t={f.t})" for f in report.vanishing_factors))
        print(f"irreducible: {'yes' if report.irreducible_flag else 'no'}")
    return 0


def cmd_enumerate(args: argparse.Namespace) -> int:
    if args.d < 1 or args.r < 0:
        raise InvalidInputError("need --d >= 1 and --r >= 0")
    items = [lam.to_lists() for lam in enumerate_multipartitions(args.d, args.r)]
    if args.json:
        print(_dump(items))
    else:
        for lists in items:
            print(_compact(lists))
    return 0


def cmd_verify(args: argparse.Namespace, jobs: int) -> int:
    if args.d < 1:
        raise InvalidInputError("--d must be >= 1")
    if args.r_max < 0:
        raise InvalidInputError("--r-max must be >= 0")
    formulas = _comma_list(args.formulas)
    unknown = [f for f in formulas if f not in FORMULAS]
    if unknown or not formulas:
        raise InvalidInputError(f"--formulas must be a subset of {','.join(FORMULAS)}")

    summary = verify_formulas(args.d, args.r_max, formulas, jobs=jobs)
    if args.json:
        print(_dump(summary.to_dict()))
    else:
        for row in summary.per_r:
            print(f"r={row['r']}: {row['agree']}/{row['count']} agree")
        counts = "+".join(str(row["count"]) for row in summary.per_r)
        if summary.all_agree:
            extra = " (and the hook formula)" if args.d == 1 else ""
            print(f"all {counts} agree across {','.join(summary.formulas)}{extra}")
        else:
            if summary.first_counterexample:
                ce = summary.first_counterexample
                print(f"MISMATCH: {_compact(ce['lambda'])} between {ce['formulas'][0]} and {ce['formulas'][1]}")
            if summary.invariant_violations:
                print(f"factored-form invariant violations: {summary.invariant_violations}")
    return 0 if summary.all_agree else 1


def cmd_semisimple(args: argparse.Namespace) -> int:
    if args.d < 1 or args.r < 0:
        raise InvalidInputError("need --d >= 1 and --r >= 0")
    spec = parse_param_spec(args.q, args.Q, args.d)
    result = semisimple_at(args.d, args.r, spec)
    p_value = semisimplicity_value(args.d, args.r, spec)

    if args.json:
        print(
            _dump(
                {
                    "d": args.d,
                    "r": args.r,
                    "spec": spec.to_dict(),
                    "P_value": fraction_to_json(p_value),
                    "semisimple": result.semisimple,
                    "witness": result.witness.to_lists() if result.witness else None,
                    "table": [{"lambda": lam.to_lists(), **rep.to_dict()} for lam, rep in result.reports],
                }
            )
        )
        return 0

    print(f"P(q) = {_fraction_text(p_value)}")
    for lam, rep in result.reports:
        value = "0" if rep.value == 0 else _fraction_text(rep.value)
        status = "irreducible" if rep.irreducible_flag else "s_lambda = 0"
        print(f"  {_compact(lam.to_lists()):<24} {value:>16}  {status}")
    if result.semisimple:
        print("semisimple")
    else:
        print(f"NOT semisimple; witness {_compact(result.witness.to_lists())}")
    return 0


def cmd_identities(args: argparse.Namespace, jobs: int) -> int:
    suites = list(SUITES) if args.suite == "all" else [args.suite]
    if args.d is not None and args.d < 1:
        raise InvalidInputError("--d must be >= 1")
    for flag in ("r_max", "max_size", "samples"):
        value = getattr(args, flag)
        if value is not None and value < 0:
            raise InvalidInputError(f"--{flag.replace('_', '-')} must be >= 0")
    samples = args.samples if args.samples is not None else 20
    summaries = []
    for suite in suites:
        d_default, r_default = SUITE_DEFAULTS[suite]
        d = args.d if args.d is not None else d_default
        r_max = args.r_max if args.r_max is not None else r_default
        summaries.append(run_identity_suite(suite, d, r_max, args.max_size, jobs=jobs, samples=samples))

    if args.json:
        print(_dump([s.to_dict() for s in summaries]))
    else:
        for s in summaries:
            verdict = "pass" if s.passed else "FAIL"
            line = f"{s.suite}: {verdict} (checked {s.checked}"
            line += f", skipped {s.skipped})" if s.skipped else ")"
            print(line)
            if s.first_failure is not None:
                print(f"  first failure: {_dump(s.first_failure)}")
    return 0 if all(s.passed for s in summaries) else 1


# ======================
# Parser
# ======================
def build_parser() -> argparse.ArgumentParser:
    # SUPPRESS keeps a subcommand from resetting a flag given before it
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--jobs", type=int, help="sweep workers (default: SCHUR_JOBS or core count)")
    common.add_argument("--log-level", help="log level for stderr logs")
    common.add_argument("--metrics-out", help="write Prometheus text metrics to this path")

    parser = argparse.ArgumentParser(
        prog="akschur",
        description="Exact Schur elements of Ariki-Koike algebras",
        parents=[common],
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", parents=[common], help="Schur element of one multipartition")
    p.add_argument("--lambda", dest="lam", required=True, help="multipartition JSON, e.g. '[[4,1],[],[2,1]]'")
    p.add_argument("--format", choices=("factored", "expanded", "both", "sympy"), default="both")
    p.add_argument("--q", default=None, help="exact rational q for a vanishing report")
    p.add_argument("--Q", default=None, help="comma-separated exact rationals Q0,...,Q{d-1}")

    p = sub.add_parser("enumerate", parents=[common], help="list the d-partitions of r")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--r", type=int, required=True)

    p = sub.add_parser("verify", parents=[common], help="cross-check the Schur element formulas")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--r-max", type=int, required=True)
    p.add_argument("--formulas", default=",".join(FORMULAS), help="subset of cf,mathas,gim")

    p = sub.add_parser("semisimple", parents=[common], help="semisimplicity at an exact specialization")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--q", required=True)
    p.add_argument("--Q", default=None, help="comma-separated exact rationals (defaults to 1 when d = 1)")

    p = sub.add_parser("identities", parents=[common], help="run the combinatorial identity suites")
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--r-max", type=int, default=None)
    p.add_argument("--max-size", type=int, default=8)
    p.add_argument("--samples", type=int, default=None, help="random specializations per (d, r) for 'unity'")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    for name, default in GLOBAL_DEFAULTS.items():
        if not hasattr(args, name):
            setattr(args, name, default)

    try:
        settings = get_settings()
    except ValidationError as e:
        print(f"error: invalid SCHUR_* environment: {e.errors()[0].get('msg')}", file=sys.stderr)
        return 2

    level = (args.log_level or settings.log_level).strip().upper()
    if level not in logging.getLevelNamesMapping():
        print(f"error: unknown log level: {args.log_level}", file=sys.stderr)
        return 2
    configure_logging(level, settings.log_json)
    jobs = args.jobs if args.jobs is not None else settings.jobs
    if jobs < 1:
        print("error: --jobs must be >= 1", file=sys.stderr)
        return 2

    try:
        if args.command == "compute":
            code = cmd_compute(args)
        elif args.command == "enumerate":
            code = cmd_enumerate(args)
        elif args.command == "verify":
            code = cmd_verify(args, jobs)
        elif args.command == "semisimple":
            code = cmd_semisimple(args)
        else:
            code = cmd_identities(args, jobs)
    except AkSchurError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    finally:
        write_metrics(args.metrics_out or settings.metrics_path)
    logger.info(f"Command finished | Command={args.command} | Exit={code}")
    return code


if __name__ == "__main__":
    sys.exit(main())

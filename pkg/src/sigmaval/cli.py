"""Command-line entry point.

Exit codes: 0 clean, 2 usage error, 3 I/O error, 4 a mathematical
counterexample (bound violation, formula/oracle mismatch, failed identity).
Data goes to stdout or ``--output``; progress goes to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from typing import Any, Sequence

from .bounds import (
    bound_report_p,
    classify_conditions,
    relation_of,
)
from .core_arith import factorize, int_log, is_prime
from .harness import FORMATS, ScanReport, ln_report, render, scan_bound, sigma_sequence
from .quadform import DEFAULT_DEGREE, audit_theorem71, verify_identities
from .valuation import nup_sigma, oracle_nu_sigma

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_COUNTEREXAMPLE = 0, 2, 3, 4
DEFAULT_END = 10**6

log = logging.getLogger("sigmaval")


def _natural(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0: {value}")
    return value


def _positive(text: str) -> int:
    value = _natural(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="text")
    common.add_argument("--output", metavar="PATH", help="write data here instead of stdout")
    common.add_argument("-v", "--verbose", action="store_true", help="progress on stderr")

    parser = argparse.ArgumentParser(
        prog="sigmaval",
        description="p-adic valuations of the sum-of-divisors function",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("valuate", parents=[common], help="nu_p(sigma(n)) with its bound")
    p.add_argument("-p", "--prime", type=_natural, required=True)
    p.add_argument("-n", type=_positive, required=True)

    p = sub.add_parser("scan-bound", parents=[common], help="bound audit over a range")
    p.add_argument("-p", "--prime", type=_natural, required=True)
    p.add_argument("--start", type=_natural, default=1)
    p.add_argument("--end", type=_natural, default=DEFAULT_END)
    p.add_argument("--workers", type=_positive, default=1)
    p.add_argument("--all-records", action="store_true", help="one record per n, not just notable ones")

    p = sub.add_parser("search-ln", parents=[common], help="(q^k-1)/(q-1) = p^s with q prime")
    p.add_argument("--q-max", type=_natural, required=True)
    p.add_argument("--k-max", type=_natural, required=True)

    p = sub.add_parser("sequence", parents=[common], help="r <= end with sigma(r) = 0 mod m")
    p.add_argument("--modulus", type=_natural, required=True)
    p.add_argument("--end", type=_natural, default=100)

    p = sub.add_parser("series-verify", parents=[common], help="q-series identities to a degree")
    p.add_argument("--degree", type=_positive, default=DEFAULT_DEGREE)

    p = sub.add_parser("audit-theorem71", parents=[common],
                       help="nu_3(sigma(n)) = 0 against representability by b^2+bc+c^2")
    p.add_argument("--start", type=_positive, default=1)
    p.add_argument("--end", type=_positive, default=10**4)
    return parser


# ---------------------------------------------------------------------------
# commands: each returns (text to emit, exit code)
# ---------------------------------------------------------------------------

def _rows_csv(columns: Sequence[str], rows: list[dict[str, Any]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow(["" if row.get(c) is None else row.get(c) for c in columns])
    return buf.getvalue()


def cmd_valuate(args, parser) -> tuple[str, int]:
    p, n = args.prime, args.n
    if not is_prime(p):
        parser.error(f"-p/--prime must be prime, got {p}")
    f = factorize(n)
    report = nup_sigma(p, f)
    report.oracle = oracle_nu_sigma(p, n)
    if n >= 2:
        bound = bound_report_p(p, f)
        lo, hi, rel, eq = bound.floor_log, bound.ceil_log, bound.relation, bound.equality_class
    else:
        lo, hi, _ = int_log(p, n)
        rel, eq = relation_of(report.total, lo, hi), None
    cond = classify_conditions(p, f).label.value if p != 2 and n >= 2 else None
    data = report.to_dict()
    data.update(
        oracle_agrees=report.oracle_agrees,
        floor_log=lo,
        ceil_log=hi,
        relation=rel.value,
        equality_class=str(eq) if eq else None,
        condition=cond,
    )
    bad = not report.oracle_agrees or rel.value == "VIOLATION"
    code = EXIT_COUNTEREXAMPLE if bad else EXIT_OK

    if args.format == "json":
        return json.dumps(data, indent=1, ensure_ascii=False) + "\n", code
    if args.format == "csv":
        rows = [dict(n=n, p=p, **c) for c in data["contributions"]]
        return _rows_csv(("n", "p", "q", "k", "branch", "value"), rows), code
    lines = [f"n = {n} = {f}", f"p = {p}", f"{'q':>12} {'k':>4}  {'branch':<20} value"]
    for c in data["contributions"]:
        lines.append(f"{c['q']:>12} {c['k']:>4}  {c['branch']:<20} {c['value']}")
    lines += [
        f"total: {report.total}",
        f"oracle: {report.oracle} ({'agrees' if report.oracle_agrees else 'MISMATCH'})",
        f"floor_log: {lo}",
        f"ceil_log: {hi}",
        f"relation: {rel.value}",
    ]
    if eq:
        lines.append(f"equality_class: {eq}")
    if cond:
        lines.append(f"condition: {cond}")
    return "\n".join(lines) + "\n", code


def cmd_scan_bound(args, parser) -> tuple[str, int]:
    if not is_prime(args.prime):
        parser.error(f"-p/--prime must be prime, got {args.prime}")
    if args.start > args.end:
        parser.error(f"--start {args.start} exceeds --end {args.end}")
    report = scan_bound(args.prime, args.start, args.end, args.workers, args.all_records)
    log.info("scan-bound finished in %.2fs", report.duration)
    return render(report, args.format), EXIT_COUNTEREXAMPLE if report.counterexample else EXIT_OK


def cmd_search_ln(args, parser) -> tuple[str, int]:
    report = ln_report(args.q_max, args.k_max)
    log.info("search-ln finished in %.2fs", report.duration)
    return render(report, args.format), EXIT_OK


def cmd_sequence(args, parser) -> tuple[str, int]:
    if args.modulus < 2:
        parser.error("--modulus must be >= 2")
    seq = sigma_sequence(args.modulus, args.end)
    if args.format == "json":
        return json.dumps(seq) + "\n", EXIT_OK
    if args.format == "csv":
        return _rows_csv(("r",), [{"r": r} for r in seq]), EXIT_OK
    return "".join(f"{r}\n" for r in seq), EXIT_OK


def cmd_series_verify(args, parser) -> tuple[str, int]:
    checks = verify_identities(args.degree)
    rows = []
    for c in checks:
        row = {"identity": c.name, "degree": c.degree, "passed": c.passed,
               "first_mismatch": None, "lhs": None, "rhs": None}
        if c.mismatch:
            row["first_mismatch"], row["lhs"], row["rhs"] = c.mismatch
        rows.append(row)
    code = EXIT_OK if all(c.passed for c in checks) else EXIT_COUNTEREXAMPLE
    if args.format == "json":
        return json.dumps(rows, indent=1) + "\n", code
    if args.format == "csv":
        return _rows_csv(("identity", "degree", "passed", "first_mismatch", "lhs", "rhs"), rows), code
    lines = []
    for r in rows:
        status = "PASS" if r["passed"] else (
            f"FAIL at degree {r['first_mismatch']}: {r['lhs']} != {r['rhs']}")
        lines.append(f"{status:<6} {r['identity']} (degree {r['degree']})")
    return "\n".join(lines) + "\n", code


def cmd_audit_theorem71(args, parser) -> tuple[str, int]:
    if args.start > args.end:
        parser.error(f"--start {args.start} exceeds --end {args.end}")
    failures = audit_theorem71(args.end, args.start)
    report = ScanReport(
        config={"command": "audit-theorem71", "start": args.start, "end": args.end},
        records=[{"n": n, "direction": d} for n, d in failures],
        summary={"failures": len(failures),
                 "by_direction": {d: sum(1 for _, x in failures if x == d)
                                  for d in ("forward", "converse", "congruence", "representation")}},
        columns=("n", "direction"),
    )
    return render(report, args.format), EXIT_COUNTEREXAMPLE if failures else EXIT_OK


COMMANDS = {
    "valuate": cmd_valuate,
    "scan-bound": cmd_scan_bound,
    "search-ln": cmd_search_ln,
    "sequence": cmd_sequence,
    "series-verify": cmd_series_verify,
    "audit-theorem71": cmd_audit_theorem71,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(levelname)s %(message)s",
    )
    try:
        text, code = COMMANDS[args.command](args, parser)
    except SystemExit as exc:
        return int(exc.code or 0)
    except MemoryError as exc:
        print(f"sigmaval: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        if args.output:
            with open(args.output, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
            sys.stdout.flush()
    except OSError as exc:
        print(f"sigmaval: cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO
    return code


if __name__ == "__main__":
    sys.exit(main())

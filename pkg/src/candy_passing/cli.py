"""Command-line front end.

    candy simulate --counts 3,1,3,3 [--trace]
    candy sweep    --n 3..5 --c 3n-2..3n [--canonical]
    candy verify   theorem|subcritical|endgame --n 3..6 [--c 3n-2..3n+4]
    candy scan     --n 3 --c 1..9

Exit codes: 0 success, 1 claim refuted, 2 invalid input, 3 resource cap hit.
"""

from __future__ import annotations

import argparse
import datetime
import os
import platform
import re
import sys
from typing import List, Optional, Tuple

from . import __version__
from .compositions import composition_count, validate_parameters
from .dynamics import new_configuration
from .errors import CapExceeded, CompositionOverflow, InvalidConfiguration, PreconditionError
from .report import (
    SCHEMA_VERSION,
    CsvWriter,
    JsonLinesWriter,
    scan_record,
    summary_record,
    sweep_record,
    verdict_record,
)
from .exhaustive import sweep, tightness_scan, verify_endgame_shapes, verify_subcritical, verify_theorem
from .trajectory import DEFAULT_MAX_ROUNDS, analyze, trace

EXIT_OK = 0
EXIT_REFUTED = 1
EXIT_INVALID = 2
EXIT_CAP = 3

FEASIBILITY_LIMIT = 2**31
MAX_ROUNDS_ENV = "CANDY_MAX_ROUNDS"

_TERM = re.compile(r"^\s*(?:(\d*)\s*n)?\s*([+-]?\s*\d+)?\s*$")


class UsageError(Exception):
    pass


def parse_term(text: str, n: Optional[int]) -> int:
    """Evaluate ``12``, ``n``, ``3n``, ``3n-2`` or ``2n+1`` at the given n."""
    m = _TERM.match(text)
    if not m or text.strip() == "" or (m.group(1) is None and m.group(2) is None):
        raise UsageError(f"cannot parse {text!r}")
    coef, offset = m.group(1), m.group(2)
    value = int(offset.replace(" ", "")) if offset else 0
    if "n" in text:
        if n is None:
            raise UsageError(f"{text!r} refers to n, which is not allowed here")
        value += (int(coef) if coef else 1) * n
    return value


def parse_range(text: str, n: Optional[int] = None) -> List[int]:
    """Comma-separated items, each a term or an inclusive ``lo..hi`` range."""
    values: List[int] = []
    for item in text.split(","):
        if ".." in item:
            lo_text, hi_text = item.split("..", 1)
            lo, hi = parse_term(lo_text, n), parse_term(hi_text, n)
            if lo > hi:
                raise UsageError(f"empty range {item!r}")
            values.extend(range(lo, hi + 1))
        else:
            values.append(parse_term(item, n))
    return values


def parse_counts(text: str) -> List[int]:
    try:
        counts = [int(tok) for tok in text.split(",")]
    except ValueError:
        raise UsageError(f"--counts must be comma-separated integers, got {text!r}") from None
    return counts


def resolve_max_rounds(flag: Optional[int]) -> int:
    if flag is not None:
        value = flag
    elif os.environ.get(MAX_ROUNDS_ENV):
        raw = os.environ[MAX_ROUNDS_ENV]
        try:
            value = int(raw)
        except ValueError:
            raise UsageError(f"{MAX_ROUNDS_ENV} must be an integer, got {raw!r}") from None
    else:
        value = DEFAULT_MAX_ROUNDS
    if value < 1:
        raise UsageError("max rounds must be positive")
    return value


def _pairs(args, c_default: Optional[str] = None) -> List[Tuple[int, int]]:
    c_text = args.c if args.c is not None else c_default
    if c_text is None:
        raise UsageError("--c is required")
    pairs = []
    for n in parse_range(args.n):
        for c in parse_range(c_text, n):
            pairs.append((n, c))
    return pairs


def _check_feasible(pairs, force: bool) -> None:
    for n, c in pairs:
        validate_parameters(n, c)
    for n, c in pairs:
        total = composition_count(n, c)
        if total > FEASIBILITY_LIMIT and not force:
            raise CompositionOverflow(
                f"(n={n}, c={c}) has {total} distributions, above {FEASIBILITY_LIMIT}; use --force"
            )


def _header(args) -> dict:
    header = {"schema": SCHEMA_VERSION, "command": args.command}
    if args.meta:
        header["version"] = __version__
        header["python"] = platform.python_version()
        header["generated_at"] = datetime.datetime.now(datetime.timezone.utc).isoformat()
    return header


def _writer(args, stream):
    cls = CsvWriter if args.format == "csv" else JsonLinesWriter
    return cls(stream, _header(args))


def cmd_simulate(args, stream) -> int:
    max_rounds = resolve_max_rounds(args.max_rounds)
    x = new_configuration(parse_counts(args.counts))
    summary = analyze(x, max_rounds)
    states = trace(x, summary.transient + summary.period) if args.trace else None
    _writer(args, stream).write(summary_record(summary, states))
    return EXIT_OK


def cmd_sweep(args, stream) -> int:
    max_rounds = resolve_max_rounds(args.max_rounds)
    pairs = _pairs(args)
    _check_feasible(pairs, args.force)
    out = _writer(args, stream)
    for n, c in pairs:
        report = sweep(n, c, args.canonical, max_rounds, args.parallelism, args.witnesses)
        out.write(sweep_record(report))
    return EXIT_OK


def cmd_scan(args, stream) -> int:
    max_rounds = resolve_max_rounds(args.max_rounds)
    pairs = _pairs(args)
    _check_feasible(pairs, args.force)
    out = _writer(args, stream)
    for n, c in pairs:
        record = tightness_scan(n, c, c, max_rounds, args.parallelism)[c]
        out.write(scan_record(record))
    return EXIT_OK


def cmd_verify(args, stream) -> int:
    max_rounds = resolve_max_rounds(args.max_rounds)
    if args.claim == "endgame":
        if args.c is not None:
            raise UsageError("endgame takes no --c; it checks c = 3n-2, 3n-1 and 3n")
        ns = parse_range(args.n)
        pairs = [(n, c) for n in ns for c in (3 * n - 2, 3 * n - 1, 3 * n)]
    else:
        default = "3n-2..3n+4" if args.claim == "theorem" else "1..n-1"
        pairs = _pairs(args, default)
        for n, c in pairs:
            validate_parameters(n, c)
            if args.claim == "theorem" and c < 3 * n - 2:
                raise PreconditionError(f"theorem needs c >= 3n-2 = {3 * n - 2}; got n={n}, c={c}")
            if args.claim == "subcritical" and not c < n:
                raise PreconditionError(f"subcritical needs c < n; got n={n}, c={c}")
    _check_feasible(pairs, args.force)

    out = _writer(args, stream)
    all_passed = True
    if args.claim == "endgame":
        for n in ns:
            verdict = verify_endgame_shapes(n, max_rounds, args.parallelism)
            all_passed &= verdict.passed
            out.write(verdict_record(verdict))
    else:
        check = verify_theorem if args.claim == "theorem" else verify_subcritical
        for n, c in pairs:
            verdict = check(n, c, max_rounds, args.parallelism)
            all_passed &= verdict.passed
            out.write(verdict_record(verdict))
    return EXIT_OK if all_passed else EXIT_REFUTED


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="candy", description="Candy-passing game simulator and verifier.")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-rounds", type=_positive, default=None,
                        help=f"trajectory cap (default {DEFAULT_MAX_ROUNDS}, or ${MAX_ROUNDS_ENV})")
    common.add_argument("--output", "-o", default=None, help="write the report here instead of stdout")
    common.add_argument("--format", choices=("jsonl", "csv"), default="jsonl")
    common.add_argument("--meta", action="store_true", help="add provenance fields to the header")

    family = argparse.ArgumentParser(add_help=False)
    family.add_argument("--n", required=True, help="students, e.g. 3 or 3..6")
    family.add_argument("--parallelism", "-j", type=_positive, default=os.cpu_count() or 1)
    family.add_argument("--force", action="store_true", help=f"allow families above {FEASIBILITY_LIMIT} states")

    p = sub.add_parser("simulate", parents=[common], help="follow one distribution to its attractor")
    p.add_argument("--counts", required=True, help="comma-separated candy counts, e.g. 3,1,3,3")
    p.add_argument("--trace", action="store_true", help="include every state up to one full attractor period")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("sweep", parents=[common, family], help="analyze every distribution")
    p.add_argument("--c", required=True, help="total candy, e.g. 9, 1..9 or 3n-2..3n+4")
    p.add_argument("--canonical", action="store_true", help="one representative per rotation/reflection class")
    p.add_argument("--witnesses", type=_positive, default=16, help="periodic witnesses to keep")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", parents=[common, family], help="check a claim exhaustively")
    p.add_argument("claim", choices=("theorem", "subcritical", "endgame"))
    p.add_argument("--c", default=None, help="defaults: theorem 3n-2..3n+4, subcritical 1..n-1")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("scan", parents=[common, family], help="does every distribution reach a fixed point?")
    p.add_argument("--c", required=True, help="e.g. 1..9 or n..3n-3")
    p.set_defaults(func=cmd_scan)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    stream = None
    try:
        stream = open(args.output, "w", newline="") if args.output else sys.stdout
        return args.func(args, stream)
    except (UsageError, InvalidConfiguration, PreconditionError, ValueError) as exc:
        print(f"candy: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (CapExceeded, CompositionOverflow) as exc:
        print(f"candy: resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    finally:
        if stream is not None and stream is not sys.stdout:
            stream.close()


if __name__ == "__main__":
    sys.exit(main())

"""Plain-dict records with a fixed field order, and their line-delimited / CSV writers."""

from __future__ import annotations

import csv
import json
from typing import IO, Iterable, List, Optional

from .dynamics import Configuration
from .exhaustive import LemmaAudit, ScanRecord, SweepReport, Verdict
from .trajectory import TrajectorySummary

SCHEMA_VERSION = 1


def _counts(x: Optional[Configuration]):
    return None if x is None else list(x.counts)


def summary_record(s: TrajectorySummary, states: Optional[List[Configuration]] = None) -> dict:
    rec = {
        "n": s.initial.n,
        "c": s.initial.c,
        "counts": _counts(s.initial),
        "transient": s.transient,
        "period": s.period,
        "outcome": s.outcome.value,
        "attractor": _counts(s.attractor_canonical),
        "rounds_computed": s.rounds_computed,
        "abundant_fix_round": s.abundant_fix_round,
    }
    if states is not None:
        rec["trace"] = [list(x.counts) for x in states]
    return rec


def sweep_record(r: SweepReport) -> dict:
    return {
        "n": r.n,
        "c": r.c,
        "canonical": r.canonical_mode,
        "total_enumerated": r.total_enumerated,
        "counts_by_outcome": {k.value: v for k, v in r.counts_by_outcome.items()},
        "max_transient": r.max_transient,
        "max_transient_witness": _counts(r.max_transient_witness),
        "period_histogram": {str(p): k for p, k in r.period_histogram.items()},
        "witnesses": [list(w.counts) for w in r.periodic_witnesses],
    }


def verdict_record(v: Verdict) -> dict:
    cx = None
    if v.counterexample is not None:
        s = v.counterexample
        cx = {
            "counts": _counts(s.initial),
            "transient": s.transient,
            "period": s.period,
            "outcome": s.outcome.value,
            "attractor": _counts(s.attractor_canonical),
        }
    return {"claim": v.claim, "n": v.n, "c": v.c, "passed": v.passed, "counterexample": cx}


def scan_record(r: ScanRecord) -> dict:
    return {"n": r.n, "c": r.c, "all_stabilize": r.all_stabilize, "witness": _counts(r.witness)}


def lemma_record(a: LemmaAudit) -> dict:
    return {
        "n": a.n,
        "c": a.c,
        "total": a.total,
        "violations": a.violations,
        "first_violation": _counts(a.first_violation),
        "max_fix_round": a.max_fix_round,
    }


def dumps(rec: dict) -> str:
    return json.dumps(rec, separators=(",", ":"))


class JsonLinesWriter:
    def __init__(self, stream: IO[str], header: dict):
        self.stream = stream
        self.stream.write(dumps(header) + "\n")

    def write(self, rec: dict) -> None:
        self.stream.write(dumps(rec) + "\n")
        self.stream.flush()


class CsvWriter:
    """Same column names as the JSON records; nested values are JSON-encoded cells."""

    def __init__(self, stream: IO[str], header: dict):
        self.stream = stream
        self.schema = header["schema"]
        self._writer = None

    def write(self, rec: dict) -> None:
        row = {"schema": self.schema}
        for k, v in rec.items():
            plain = isinstance(v, (int, str)) and not isinstance(v, bool)
            row[k] = v if plain else dumps(v)
        if self._writer is None:
            self._writer = csv.DictWriter(self.stream, fieldnames=list(row), lineterminator="\n")
            self._writer.writeheader()
        self._writer.writerow(row)
        self.stream.flush()


def read_records(lines: Iterable[str]) -> List[dict]:
    """Parse a line-delimited report, dropping the schema header."""
    out = [json.loads(line) for line in lines if line.strip()]
    if out and "schema" in out[0]:
        out = out[1:]
    return out

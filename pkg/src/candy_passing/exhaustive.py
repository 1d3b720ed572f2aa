"""Exhaustive sweeps over all candy distributions and the claim verifiers built on them."""

from __future__ import annotations

import multiprocessing
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np

from . import _kernels
from .compositions import composition_count, unrank_counts, validate_parameters
from .dynamics import Configuration, _trusted, abundant_indices
from .errors import CapExceeded, PreconditionError
from .trajectory import DEFAULT_MAX_ROUNDS, Outcome, TrajectorySummary, analyze

DEFAULT_WITNESS_LIMIT = 16
_MAX_CHUNK = 1 << 20

OUTCOMES = (Outcome.FROZEN, Outcome.ACTIVE_FIXED, Outcome.PERIODIC)


@dataclass
class _Partial:
    """Aggregate over one rank range. Ranks are lexicographic, so smaller rank means lex-smaller state."""

    total: int = 0
    by_outcome: Dict[Outcome, int] = field(default_factory=lambda: dict.fromkeys(OUTCOMES, 0))
    max_transient: int = -1
    max_transient_rank: int = -1
    period_hist: Dict[int, int] = field(default_factory=dict)
    periodic_ranks: List[int] = field(default_factory=list)
    first_nonfrozen_rank: int = -1
    lemma_violations: int = 0
    first_lemma_violation_rank: int = -1
    max_fix_round: int = 0
    cap_rank: int = -1
    attractors: Dict[int, int] = field(default_factory=dict)

    def merge(self, other: "_Partial", witness_limit: int) -> "_Partial":
        out = _Partial()
        out.total = self.total + other.total
        out.by_outcome = {k: self.by_outcome[k] + other.by_outcome[k] for k in OUTCOMES}
        out.max_transient, out.max_transient_rank = max(
            (self.max_transient, -self.max_transient_rank),
            (other.max_transient, -other.max_transient_rank),
        )
        out.max_transient_rank = -out.max_transient_rank
        hist = dict(self.period_hist)
        for p, k in other.period_hist.items():
            hist[p] = hist.get(p, 0) + k
        out.period_hist = hist
        out.periodic_ranks = sorted(self.periodic_ranks + other.periodic_ranks)[:witness_limit]
        out.first_nonfrozen_rank = _min_rank(self.first_nonfrozen_rank, other.first_nonfrozen_rank)
        out.lemma_violations = self.lemma_violations + other.lemma_violations
        out.first_lemma_violation_rank = _min_rank(
            self.first_lemma_violation_rank, other.first_lemma_violation_rank
        )
        out.max_fix_round = max(self.max_fix_round, other.max_fix_round)
        out.cap_rank = _min_rank(self.cap_rank, other.cap_rank)
        attractors = dict(self.attractors)
        for a, r in other.attractors.items():
            attractors[a] = min(r, attractors.get(a, r))
        out.attractors = attractors
        return out


def _min_rank(a: int, b: int) -> int:
    if a < 0:
        return b
    if b < 0:
        return a
    return min(a, b)


def _run_chunk(n, c, start, stop, max_rounds, canonical_only, witness_limit, want_attractors):
    count = stop - start
    comp = _kernels.binomial_table(n, c)
    first = np.array(unrank_counts(n, c, start), dtype=np.int64)
    transient = np.zeros(count, np.int64)
    period = np.zeros(count, np.int64)
    status = np.zeros(count, np.int8)
    frozen = np.zeros(count, np.bool_)
    lemma_ok = np.zeros(count, np.bool_)
    fix_round = np.zeros(count, np.int64)
    attractor = np.zeros(count, np.int64)
    _kernels.analyze_range(first, count, max_rounds, canonical_only, comp,
                           transient, period, status, frozen, lemma_ok, fix_round, attractor)

    part = _Partial()
    ranks = np.arange(start, stop, dtype=np.int64)
    capped = np.nonzero(status == _kernels.STATUS_CAP)[0]
    if capped.size:
        part.cap_rank = int(ranks[capped[0]])
        return part
    keep = status == _kernels.STATUS_OK
    ranks, transient, period = ranks[keep], transient[keep], period[keep]
    frozen, lemma_ok, fix_round, attractor = frozen[keep], lemma_ok[keep], fix_round[keep], attractor[keep]
    part.total = int(ranks.size)
    if not part.total:
        return part

    periodic = period > 1
    n_frozen = int(frozen.sum())
    n_periodic = int(periodic.sum())
    part.by_outcome = {
        Outcome.FROZEN: n_frozen,
        Outcome.ACTIVE_FIXED: part.total - n_frozen - n_periodic,
        Outcome.PERIODIC: n_periodic,
    }
    # argmax returns the first maximizer, which is the lex-least one.
    i = int(np.argmax(transient))
    part.max_transient = int(transient[i])
    part.max_transient_rank = int(ranks[i])
    values, counts = np.unique(period, return_counts=True)
    part.period_hist = {int(p): int(k) for p, k in zip(values, counts)}
    part.periodic_ranks = [int(r) for r in ranks[periodic][:witness_limit]]
    nonfrozen = np.nonzero(~frozen)[0]
    if nonfrozen.size:
        part.first_nonfrozen_rank = int(ranks[nonfrozen[0]])
    bad = np.nonzero(~lemma_ok)[0]
    part.lemma_violations = int(bad.size)
    if bad.size:
        part.first_lemma_violation_rank = int(ranks[bad[0]])
    part.max_fix_round = int(fix_round.max())
    if want_attractors:
        values, first_idx = np.unique(attractor, return_index=True)
        part.attractors = {int(a): int(ranks[j]) for a, j in zip(values, first_idx)}
    return part


def _chunks(total: int, parallelism: int):
    pieces = max(1, parallelism * 4) if parallelism > 1 else 1
    size = max(1, -(-total // pieces))
    size = min(size, _MAX_CHUNK)
    return [(lo, min(lo + size, total)) for lo in range(0, total, size)]


def warm_up() -> None:
    """Compile (or load from cache) the kernels in this process."""
    _run_chunk(3, 1, 0, 3, 10, False, 1, True)


def _aggregate(n, c, canonical_only, max_rounds, parallelism, witness_limit, want_attractors=False):
    validate_parameters(n, c)
    if max_rounds < 1:
        raise ValueError("max_rounds must be positive")
    if parallelism < 1:
        raise ValueError("parallelism must be positive")
    total = composition_count(n, c)
    jobs = [
        (n, c, lo, hi, max_rounds, canonical_only, witness_limit, want_attractors)
        for lo, hi in _chunks(total, parallelism)
    ]
    if parallelism == 1 or len(jobs) == 1:
        parts = [_run_chunk(*job) for job in jobs]
    else:
        warm_up()
        ctx = multiprocessing.get_context("fork")
        with ProcessPoolExecutor(max_workers=parallelism, mp_context=ctx) as pool:
            parts = list(pool.map(_run_chunk, *zip(*jobs)))
    result = _Partial()
    for part in parts:
        result = result.merge(part, witness_limit)
    if result.cap_rank >= 0:
        raise CapExceeded(unrank_counts(n, c, result.cap_rank), max_rounds)
    return result


@dataclass(frozen=True)
class SweepReport:
    n: int
    c: int
    canonical_mode: bool
    total_enumerated: int
    counts_by_outcome: Dict[Outcome, int]
    max_transient: int
    max_transient_witness: Optional[Configuration]
    period_histogram: Dict[int, int]
    periodic_witnesses: List[Configuration]


def sweep(
    n: int,
    c: int,
    canonical_only: bool = False,
    max_rounds: int = DEFAULT_MAX_ROUNDS,
    parallelism: int = 1,
    witness_limit: int = DEFAULT_WITNESS_LIMIT,
) -> SweepReport:
    """Analyze every distribution of ``c`` candies among ``n`` students.

    With ``canonical_only`` only one representative per rotation/reflection
    class is analyzed. The report does not depend on ``parallelism``.
    """
    agg = _aggregate(n, c, canonical_only, max_rounds, parallelism, witness_limit)
    witness = None
    if agg.max_transient_rank >= 0:
        witness = _trusted(unrank_counts(n, c, agg.max_transient_rank))
    return SweepReport(
        n=n,
        c=c,
        canonical_mode=canonical_only,
        total_enumerated=agg.total,
        counts_by_outcome=dict(agg.by_outcome),
        max_transient=max(agg.max_transient, 0),
        max_transient_witness=witness,
        period_histogram=dict(sorted(agg.period_hist.items())),
        periodic_witnesses=[_trusted(unrank_counts(n, c, r)) for r in agg.periodic_ranks],
    )


@dataclass(frozen=True)
class Verdict:
    claim: str
    n: int
    c: Optional[int]
    passed: bool
    counterexample: Optional[TrajectorySummary] = None


def _counterexample(n, c, rank, max_rounds) -> Optional[TrajectorySummary]:
    if rank < 0:
        return None
    return analyze(_trusted(unrank_counts(n, c, rank)), max_rounds)


def verify_theorem(n: int, c: int, max_rounds: int = DEFAULT_MAX_ROUNDS, parallelism: int = 1) -> Verdict:
    """Every distribution with ``c >= 3n - 2`` must end at a fixed point."""
    validate_parameters(n, c)
    if c < 3 * n - 2:
        raise PreconditionError(f"claim requires c >= 3n-2 = {3 * n - 2}, got c={c}")
    agg = _aggregate(n, c, False, max_rounds, parallelism, 1)
    bad = agg.periodic_ranks[0] if agg.periodic_ranks else -1
    return Verdict("theorem_3n_minus_2", n, c, bad < 0, _counterexample(n, c, bad, max_rounds))


def verify_subcritical(n: int, c: int, max_rounds: int = DEFAULT_MAX_ROUNDS, parallelism: int = 1) -> Verdict:
    """With fewer candies than students every game must freeze."""
    validate_parameters(n, c)
    if not 1 <= c < n:
        raise PreconditionError(f"claim requires 1 <= c < n = {n}, got c={c}")
    agg = _aggregate(n, c, False, max_rounds, parallelism, 1)
    bad = agg.first_nonfrozen_rank
    return Verdict("subcritical_termination", n, c, bad < 0, _counterexample(n, c, bad, max_rounds))


def expected_endgame(n: int, c: int) -> Optional[List[int]]:
    """Sorted multiset a fixed point without abundant piles must have, for c in {3n-2, 3n-1, 3n}."""
    deficit = 3 * n - c
    if deficit == 0:
        return [3] * n
    if deficit == 1:
        return [2] + [3] * (n - 1)
    if deficit == 2:
        return [2, 2] + [3] * (n - 2)
    return None


def endgame_shape_ok(attractor: Configuration, period: int = 1) -> Optional[bool]:
    """Shape check for one attractor state; None when exempt (some pile is abundant)."""
    if abundant_indices(attractor.counts):
        return None
    expected = expected_endgame(attractor.n, attractor.c)
    if expected is None:
        raise PreconditionError(f"no endgame shape is prescribed for c={attractor.c}, n={attractor.n}")
    return period == 1 and sorted(attractor.counts) == expected


def verify_endgame_shapes(n: int, max_rounds: int = DEFAULT_MAX_ROUNDS, parallelism: int = 1) -> Verdict:
    """At c = 3n, 3n-1, 3n-2, attractors without abundant piles have the prescribed multiset."""
    for c in (3 * n, 3 * n - 1, 3 * n - 2):
        agg = _aggregate(n, c, False, max_rounds, parallelism, 1, want_attractors=True)
        for attractor_rank, initial_rank in sorted(agg.attractors.items()):
            state = _trusted(unrank_counts(n, c, attractor_rank))
            period = analyze(state, max_rounds).period
            if endgame_shape_ok(state, period) is False:
                return Verdict("endgame_shape", n, None, False,
                               _counterexample(n, c, initial_rank, max_rounds))
    return Verdict("endgame_shape", n, None, True)


@dataclass(frozen=True)
class ScanRecord:
    n: int
    c: int
    all_stabilize: bool
    witness: Optional[Configuration] = None


def tightness_scan(
    n: int,
    c_min: int,
    c_max: int,
    max_rounds: int = DEFAULT_MAX_ROUNDS,
    parallelism: int = 1,
) -> Dict[int, ScanRecord]:
    """For each c in ``[c_min, c_max]``, report whether every distribution reaches a fixed point."""
    if c_min < 1 or c_max < c_min:
        raise ValueError(f"need 1 <= c_min <= c_max, got {c_min}..{c_max}")
    out = {}
    for c in range(c_min, c_max + 1):
        agg = _aggregate(n, c, False, max_rounds, parallelism, 1)
        witness = _trusted(unrank_counts(n, c, agg.periodic_ranks[0])) if agg.periodic_ranks else None
        out[c] = ScanRecord(n, c, witness is None, witness)
    return out


@dataclass(frozen=True)
class LemmaAudit:
    n: int
    c: int
    total: int
    violations: int
    first_violation: Optional[Configuration]
    max_fix_round: int


def audit_lemma_one(n: int, c: int, max_rounds: int = DEFAULT_MAX_ROUNDS, parallelism: int = 1) -> LemmaAudit:
    """Abundant-pile audit of every trajectory for (n, c), done inside the compiled sweep."""
    agg = _aggregate(n, c, False, max_rounds, parallelism, 1)
    first = None
    if agg.first_lemma_violation_rank >= 0:
        first = _trusted(unrank_counts(n, c, agg.first_lemma_violation_rank))
    return LemmaAudit(n, c, agg.total, agg.lemma_violations, first, agg.max_fix_round)

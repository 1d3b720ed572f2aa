"""Follow one starting distribution to its fixed point or limit cycle."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from .dynamics import (
    ABUNDANT,
    Configuration,
    _trusted,
    abundant_indices,
    canonical_counts,
    step_counts,
)
from .errors import CapExceeded

DEFAULT_MAX_ROUNDS = 1_000_000


class Outcome(str, enum.Enum):
    FROZEN = "Frozen"
    ACTIVE_FIXED = "ActiveFixed"
    PERIODIC = "Periodic"


@dataclass(frozen=True)
class TrajectorySummary:
    initial: Configuration
    transient: int
    period: int
    attractor_canonical: Configuration
    rounds_computed: int
    abundant_fix_round: int
    outcome: Outcome
    # attractor_canonical is the least dihedral image of any cycle state, so
    # rotated or reflected starts report the same attractor.
    # cycle holds the raw states in visiting order starting at round `transient`.
    cycle: Tuple[Tuple[int, ...], ...] = field(repr=False, compare=False, default=())


@dataclass(frozen=True)
class LemmaOneReport:
    holds: bool
    fix_round: int
    set_shrink_rounds: List[int]
    violation: Optional[Tuple[int, str]] = None


def _profile(counts: Sequence[int]):
    return tuple((i, v) for i, v in enumerate(counts) if v >= ABUNDANT)


def _fix_round(states: Sequence[Sequence[int]]) -> int:
    """Earliest round from which abundant indices and their counts never change."""
    final = _profile(states[-1])
    t = len(states) - 1
    while t > 0 and _profile(states[t - 1]) == final:
        t -= 1
    return t


def _run(counts: Tuple[int, ...], max_rounds: int):
    seen = {counts: 0}
    states = [counts]
    state = counts
    for t in range(1, max_rounds + 1):
        state = step_counts(state)
        first = seen.get(state)
        if first is not None:
            states.append(state)
            return states, first, t - first
        seen[state] = t
        states.append(state)
    raise CapExceeded(counts, max_rounds)


def _classify(cycle) -> Outcome:
    if len(cycle) > 1:
        return Outcome.PERIODIC
    if all(v <= 1 for v in cycle[0]):
        return Outcome.FROZEN
    return Outcome.ACTIVE_FIXED


def _summarize(x: Configuration, states, transient, period) -> TrajectorySummary:
    cycle = tuple(states[transient : transient + period])
    return TrajectorySummary(
        initial=x,
        transient=transient,
        period=period,
        attractor_canonical=_trusted(min(canonical_counts(state) for state in cycle)),
        rounds_computed=transient + period,
        abundant_fix_round=_fix_round(states),
        outcome=_classify(cycle),
        cycle=cycle,
    )


def analyze(x: Configuration, max_rounds: int = DEFAULT_MAX_ROUNDS) -> TrajectorySummary:
    """Iterate ``step`` until a state repeats and measure transient and period.

    The recorded trajectory holds rounds ``0..transient+period``; the last
    entry equals the entry at ``transient``. Raises CapExceeded when no
    state recurs within ``max_rounds`` rounds.
    """
    if max_rounds < 1:
        raise ValueError("max_rounds must be positive")
    states, transient, period = _run(x.counts, max_rounds)
    return _summarize(x, states, transient, period)


def verify_lemma_one(x: Configuration, max_rounds: int = DEFAULT_MAX_ROUNDS) -> LemmaOneReport:
    """Audit a trajectory for the abundant-pile structure.

    Checks that no student ever becomes newly abundant, and that from some
    round on the abundant set and its counts stay constant through one
    full attractor cycle.
    """
    if max_rounds < 1:
        raise ValueError("max_rounds must be positive")
    states, transient, period = _run(x.counts, max_rounds)
    shrinks = []
    prev = set(abundant_indices(states[0]))
    for t in range(1, len(states)):
        cur = set(abundant_indices(states[t]))
        if not cur <= prev:
            gained = sorted(cur - prev)
            return LemmaOneReport(
                holds=False,
                fix_round=_fix_round(states),
                set_shrink_rounds=shrinks,
                violation=(t, f"students {gained} became abundant"),
            )
        if cur < prev:
            shrinks.append(t)
        prev = cur
    fix = _fix_round(states)
    if fix > transient:
        return LemmaOneReport(
            holds=False,
            fix_round=fix,
            set_shrink_rounds=shrinks,
            violation=(fix - 1, "abundant piles vary along the attractor cycle"),
        )
    return LemmaOneReport(holds=True, fix_round=fix, set_shrink_rounds=shrinks)


def trace(x: Configuration, rounds: int) -> List[Configuration]:
    if rounds < 0:
        raise ValueError("rounds must be non-negative")
    out = [x]
    state = x.counts
    for _ in range(rounds):
        state = step_counts(state)
        out.append(_trusted(state))
    return out

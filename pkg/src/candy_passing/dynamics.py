"""Update rule and structural predicates for the candy-passing game on a cycle.

Students sit at indices ``0..n-1``; student ``i`` neighbours ``i-1`` and
``i+1`` (mod n). Every round, each student holding two or more candies
passes one to each neighbour, all decisions taken from the round-start
snapshot.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence, Tuple

from .errors import InvalidConfiguration

MIN_STUDENTS = 3
MAX_TOTAL = 2**32
ABUNDANT = 4

Counts = Tuple[int, ...]


@dataclass(frozen=True)
class Configuration:
    counts: Counts
    c: int = field(init=False, compare=False)

    def __post_init__(self):
        counts = tuple(self.counts)
        if len(counts) < MIN_STUDENTS:
            raise InvalidConfiguration(
                f"too few students: need n >= {MIN_STUDENTS}, got {len(counts)}"
            )
        for v in counts:
            if isinstance(v, bool) or not isinstance(v, int):
                raise InvalidConfiguration(f"candy counts must be integers, got {v!r}")
            if v < 0:
                raise InvalidConfiguration(f"candy counts must be non-negative, got {v}")
        total = sum(counts)
        if total == 0:
            raise InvalidConfiguration("no candy: need c >= 1")
        if total > MAX_TOTAL:
            raise InvalidConfiguration(f"total candy {total} exceeds cap {MAX_TOTAL}")
        object.__setattr__(self, "counts", counts)
        object.__setattr__(self, "c", total)

    @property
    def n(self) -> int:
        return len(self.counts)

    def __len__(self):
        return len(self.counts)

    def __iter__(self):
        return iter(self.counts)

    def __getitem__(self, i):
        return self.counts[i]

    def __repr__(self):
        return f"Configuration({list(self.counts)})"

    def as_list(self) -> list:
        return list(self.counts)


@dataclass(frozen=True)
class AbundanceView:
    abundant_indices: Tuple[int, ...]

    @property
    def m(self) -> int:
        return len(self.abundant_indices)


def new_configuration(counts: Iterable[int]) -> Configuration:
    return Configuration(tuple(counts))


def _trusted(counts: Counts) -> Configuration:
    # Skips validation; only for states derived from an already valid one.
    x = object.__new__(Configuration)
    object.__setattr__(x, "counts", counts)
    object.__setattr__(x, "c", sum(counts))
    return x


def step_counts(counts: Sequence[int]) -> Counts:
    """One synchronous round on a raw count tuple."""
    n = len(counts)
    give = [1 if v >= 2 else 0 for v in counts]
    return tuple(
        counts[i] - 2 * give[i] + give[i - 1] + give[(i + 1) % n] for i in range(n)
    )


def step(x: Configuration) -> Configuration:
    return _trusted(step_counts(x.counts))


def is_fixed_point(x: Configuration) -> bool:
    # Everyone passes-and-receives two, or nobody passes at all.
    counts = x.counts
    return all(v >= 2 for v in counts) or all(v <= 1 for v in counts)


def abundant_indices(counts: Sequence[int]) -> Tuple[int, ...]:
    return tuple(i for i, v in enumerate(counts) if v >= ABUNDANT)


def abundance(x: Configuration) -> AbundanceView:
    return AbundanceView(abundant_indices(x.counts))


def rotate(x: Configuration, r: int) -> Configuration:
    """Shift so that student ``i`` of the result holds what ``i + r`` held."""
    counts = x.counts
    r %= len(counts)
    return _trusted(counts[r:] + counts[:r])


def reverse(x: Configuration) -> Configuration:
    return _trusted(x.counts[::-1])


def canonical_counts(counts: Sequence[int]) -> Counts:
    """Lexicographically least sequence among the 2n rotations/reflections."""
    counts = tuple(counts)
    n = len(counts)
    backwards = counts[::-1]
    best = counts
    for r in range(n):
        for seq in (counts, backwards):
            image = seq[r:] + seq[:r]
            if image < best:
                best = image
    return best


def canonical_form(x: Configuration) -> Configuration:
    return _trusted(canonical_counts(x.counts))

"""Lexicographic enumeration, counting, ranking and unranking of compositions.

A composition of ``c`` into ``n`` parts is an ordered tuple of ``n``
non-negative integers summing to ``c``. Order is plain lexicographic, so
``(0, ..., 0, c)`` comes first and ``(c, 0, ..., 0)`` last.
"""

from __future__ import annotations

from math import comb
from typing import Iterator, Tuple

from .dynamics import MAX_TOTAL, MIN_STUDENTS, Configuration, _trusted, canonical_counts
from .errors import CompositionOverflow, IndexOutOfRange, InvalidConfiguration

INT64_MAX = 2**63 - 1


def _comp(r: int, parts: int) -> int:
    if parts == 0:
        return 1 if r == 0 else 0
    if r < 0:
        return 0
    return comb(r + parts - 1, parts - 1)


def composition_count(n: int, c: int) -> int:
    if n < 1 or c < 0:
        raise ValueError(f"need n >= 1 and c >= 0, got n={n}, c={c}")
    total = comb(c + n - 1, n - 1)
    if total > INT64_MAX:
        raise CompositionOverflow(f"C({c + n - 1}, {n - 1}) does not fit in 64 bits")
    return total


def validate_parameters(n: int, c: int) -> None:
    """Reject (n, c) pairs no valid configuration can have."""
    if n < MIN_STUDENTS:
        raise InvalidConfiguration(f"too few students: need n >= {MIN_STUDENTS}, got {n}")
    if c < 1:
        raise InvalidConfiguration("no candy: need c >= 1")
    if c > MAX_TOTAL:
        raise InvalidConfiguration(f"total candy {c} exceeds cap {MAX_TOTAL}")


def _successor(x: list) -> bool:
    """Advance ``x`` in place to the next composition; False past the last one."""
    n = len(x)
    j = n - 1
    while j > 0 and x[j] == 0:
        j -= 1
    if j == 0:
        return False
    tail = x[j]
    x[j] = 0
    x[j - 1] += 1
    x[n - 1] = tail - 1
    return True


def iter_counts(n: int, c: int, start: int = 0) -> Iterator[Tuple[int, ...]]:
    x = list(unrank_counts(n, c, start))
    while True:
        yield tuple(x)
        if not _successor(x):
            return


def enumerate_compositions(n: int, c: int, canonical_only: bool = False) -> Iterator[Configuration]:
    validate_parameters(n, c)
    for counts in iter_counts(n, c):
        if canonical_only and canonical_counts(counts) != counts:
            continue
        yield _trusted(counts)


def unrank_counts(n: int, c: int, index: int) -> Tuple[int, ...]:
    total = composition_count(n, c)
    if not 0 <= index < total:
        raise IndexOutOfRange(f"index {index} outside [0, {total})")
    out = []
    r = c
    for i in range(n - 1):
        parts = n - i
        # Compositions with this part equal to v occupy _comp(r - v, parts - 1) ranks.
        v = 0
        while True:
            block = _comp(r - v, parts - 1)
            if index < block:
                break
            index -= block
            v += 1
        out.append(v)
        r -= v
    out.append(r)
    return tuple(out)


def unrank_composition(n: int, c: int, index: int) -> Configuration:
    validate_parameters(n, c)
    return _trusted(unrank_counts(n, c, index))


def rank_composition(counts) -> int:
    counts = tuple(counts)
    n = len(counts)
    r = sum(counts)
    rank = 0
    for i in range(n - 1):
        parts = n - i
        v = counts[i]
        rank += _comp(r, parts) - _comp(r - v, parts)
        r -= v
    return rank

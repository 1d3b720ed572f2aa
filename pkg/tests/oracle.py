"""Naive reference implementations, written independently of the package."""

from itertools import product


def naive_step(counts):
    n = len(counts)
    out = list(counts)
    for i in range(n):
        if counts[i] >= 2:
            out[i] -= 2
            out[(i - 1) % n] += 1
            out[(i + 1) % n] += 1
    return out


def naive_orbit(counts):
    """(transient, period, cycle states) by storing the whole trajectory in a list."""
    history = [list(counts)]
    while True:
        nxt = naive_step(history[-1])
        if nxt in history:
            first = history.index(nxt)
            return first, len(history) - first, history[first:]
        history.append(nxt)


def naive_compositions(n, c):
    return [list(p) for p in product(range(c + 1), repeat=n) if sum(p) == c]


def dihedral_images(counts):
    n = len(counts)
    out = []
    for seq in (list(counts), list(reversed(counts))):
        for r in range(n):
            out.append(seq[r:] + seq[:r])
    return out

"""Compiled per-state orbit analysis over contiguous rank ranges.

Cycle detection here is Brent's method followed by a replay of the
trajectory, so it shares no code with the hash-map path in
``trajectory``. The two are cross-checked in the test suite.
"""

import numpy as np
from numba import njit

STATUS_OK = 0
STATUS_CAP = 1
STATUS_SKIPPED = 2


@njit(cache=True)
def binomial_table(n, c):
    # comp[r, p] = number of compositions of r into p parts
    comp = np.zeros((c + 1, n + 1), dtype=np.int64)
    comp[0, 0] = 1
    for r in range(c + 1):
        comp[r, 1] = 1
    for p in range(2, n + 1):
        acc = 0
        for r in range(c + 1):
            acc += comp[r, p - 1]
            comp[r, p] = acc
    return comp


@njit(cache=True)
def _rank(x, comp):
    n = x.shape[0]
    r = 0
    for i in range(n):
        r += x[i]
    rank = 0
    for i in range(n - 1):
        parts = n - i
        rank += comp[r, parts] - comp[r - x[i], parts]
        r -= x[i]
    return rank


@njit(cache=True)
def _successor(x):
    n = x.shape[0]
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


@njit(cache=True)
def _step_into(src, dst, give):
    n = src.shape[0]
    for i in range(n):
        give[i] = 1 if src[i] >= 2 else 0
    for i in range(n):
        dst[i] = src[i] - 2 * give[i] + give[i - 1] + give[(i + 1) % n]


@njit(cache=True)
def _equal(a, b):
    for i in range(a.shape[0]):
        if a[i] != b[i]:
            return False
    return True


@njit(cache=True)
def _less(a, b):
    for i in range(a.shape[0]):
        if a[i] != b[i]:
            return a[i] < b[i]
    return False


@njit(cache=True)
def _is_canonical(x):
    n = x.shape[0]
    for r in range(n):
        for direction in (1, -1):
            if r == 0 and direction == 1:
                continue
            # Compare image[k] = x[(r + direction*k) mod n] against x.
            for k in range(n):
                v = x[(r + direction * k) % n]
                if v != x[k]:
                    if v < x[k]:
                        return False
                    break
    return True


@njit(cache=True)
def _same_profile(a, b):
    for i in range(a.shape[0]):
        if (a[i] >= 4) != (b[i] >= 4):
            return False
        if b[i] >= 4 and a[i] != b[i]:
            return False
    return True


@njit(cache=True)
def analyze_range(start_state, count, max_rounds, canonical_only, comp,
                  transient, period, status, frozen, lemma_ok, fix_round,
                  attractor_rank):
    """Analyze ``count`` consecutive compositions beginning at ``start_state``."""
    n = start_state.shape[0]
    x = start_state.copy()
    tort = np.empty(n, np.int64)
    hare = np.empty(n, np.int64)
    tmp = np.empty(n, np.int64)
    give = np.empty(n, np.int64)
    cur = np.empty(n, np.int64)
    prev = np.empty(n, np.int64)
    best = np.empty(n, np.int64)
    budget = 4 * max_rounds + 4
    for k in range(count):
        if k > 0:
            _successor(x)
        if canonical_only and not _is_canonical(x):
            status[k] = STATUS_SKIPPED
            continue

        # Brent: find the period.
        power = 1
        lam = 1
        tort[:] = x
        _step_into(x, hare, give)
        steps = 1
        capped = False
        while not _equal(tort, hare):
            if power == lam:
                tort[:] = hare
                power *= 2
                lam = 0
            _step_into(hare, tmp, give)
            hare[:] = tmp
            lam += 1
            steps += 1
            if steps > budget:
                capped = True
                break
        if capped:
            status[k] = STATUS_CAP
            continue

        # Find the transient with two pointers lam apart.
        tort[:] = x
        hare[:] = x
        for _ in range(lam):
            _step_into(hare, tmp, give)
            hare[:] = tmp
        mu = 0
        while not _equal(tort, hare):
            _step_into(tort, tmp, give)
            tort[:] = tmp
            _step_into(hare, tmp, give)
            hare[:] = tmp
            mu += 1
        if mu + lam > max_rounds:
            status[k] = STATUS_CAP
            continue

        # Replay rounds 0..mu+lam for the abundance audit and the cycle minimum.
        # tort holds the state at round mu, equal to the final recorded state.
        ok = True
        last_diff = -1
        cur[:] = x
        for t in range(mu + lam + 1):
            if t > 0:
                for i in range(n):
                    if cur[i] >= 4 and prev[i] < 4:
                        ok = False
            if not _same_profile(cur, tort):
                last_diff = t
            if t == mu or (t > mu and t < mu + lam and _less(cur, best)):
                best[:] = cur
            prev[:] = cur
            _step_into(prev, cur, give)
        fix = last_diff + 1
        if fix > mu:
            ok = False

        is_frozen = False
        if lam == 1:
            is_frozen = True
            for i in range(n):
                if tort[i] > 1:
                    is_frozen = False
                    break
        status[k] = STATUS_OK
        transient[k] = mu
        period[k] = lam
        frozen[k] = is_frozen
        lemma_ok[k] = ok
        fix_round[k] = fix
        attractor_rank[k] = _rank(best, comp)

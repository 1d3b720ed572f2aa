"""Exit criteria. Each test prints one ``ACCEPTANCE`` line with its verdict.

Run with ``pytest tests/test_acceptance.py -v`` to see the lines.
"""

import random
import time

import pytest

from candy_passing import (
    Outcome,
    abundance,
    analyze,
    audit_lemma_one,
    enumerate_compositions,
    is_fixed_point,
    new_configuration,
    reverse,
    rotate,
    step,
    sweep,
    tightness_scan,
    verify_endgame_shapes,
    verify_lemma_one,
    verify_subcritical,
    verify_theorem,
)
from candy_passing.report import dumps, sweep_record

from oracle import naive_orbit, naive_step

THEOREM_FAMILIES = [(n, c) for n in range(3, 8) for c in range(3 * n - 2, 3 * n + 5)]
SUBCRITICAL_FAMILIES = [(n, c) for n in range(3, 11) for c in range(1, n)]


def report(capsys, number, title, ok, detail, elapsed, budget):
    verdict = "PASS" if ok else "FAIL"
    with capsys.disabled():
        print(f"\nACCEPTANCE {number} [{verdict}] {title}: {detail} ({elapsed:.1f}s, budget {budget}s)")


def random_counts(rng, max_n, max_c):
    n = rng.randint(3, max_n)
    c = rng.randint(1, max_c)
    counts = [0] * n
    for _ in range(c):
        counts[rng.randrange(n)] += 1
    return counts


def test_criterion_1_theorem(capsys):
    start = time.perf_counter()
    failed = []
    states = 0
    for n, c in THEOREM_FAMILIES:
        verdict = verify_theorem(n, c, parallelism=1)
        r = sweep(n, c, parallelism=1)
        states += r.total_enumerated
        if not verdict.passed or r.counts_by_outcome[Outcome.PERIODIC]:
            failed.append((n, c, verdict.counterexample))
    elapsed = time.perf_counter() - start
    ok = not failed and elapsed < 300
    report(capsys, 1, "c >= 3n-2 always reaches a fixed point", ok,
           f"{len(THEOREM_FAMILIES)} families, {states} states, refuted={failed[:3]}", elapsed, 300)
    assert not failed
    assert elapsed < 300


def test_criterion_2_subcritical(capsys):
    start = time.perf_counter()
    failed = []
    for n, c in SUBCRITICAL_FAMILIES:
        verdict = verify_subcritical(n, c, parallelism=1)
        r = sweep(n, c, parallelism=1)
        if not verdict.passed or r.counts_by_outcome[Outcome.FROZEN] != r.total_enumerated:
            failed.append((n, c))
    elapsed = time.perf_counter() - start
    ok = not failed and elapsed < 60
    report(capsys, 2, "c < n always freezes", ok,
           f"{len(SUBCRITICAL_FAMILIES)} families, non-frozen in {failed}", elapsed, 60)
    assert not failed
    assert elapsed < 60


def test_criterion_3_lemma_one(capsys):
    start = time.perf_counter()
    failures = []
    audited = 0
    # Every trajectory of criteria 1-2, audited inside the compiled sweep.
    for n, c in THEOREM_FAMILIES + SUBCRITICAL_FAMILIES:
        audit = audit_lemma_one(n, c, parallelism=1)
        audited += audit.total
        if audit.violations:
            failures.append(("compiled", n, c, audit.first_violation))
    # The same trajectories through the pure-Python audit wherever that is cheap enough.
    python_checked = 0
    for n, c in THEOREM_FAMILIES + SUBCRITICAL_FAMILIES:
        if n > 6 and (n, c) not in SUBCRITICAL_FAMILIES:
            continue
        for x in enumerate_compositions(n, c):
            python_checked += 1
            if not verify_lemma_one(x).holds:
                failures.append(("python", x))
    rng = random.Random(20070601)
    for _ in range(10_000):
        x = new_configuration(random_counts(rng, 12, 60))
        lemma = verify_lemma_one(x)
        if not lemma.holds:
            failures.append(("random", x, lemma.violation))
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 120
    report(capsys, 3, "abundant set and piles eventually fixed", ok,
           f"{audited} compiled audits, {python_checked} python audits, 10000 random; "
           f"violations={failures[:3]}", elapsed, 120)
    assert not failures
    assert elapsed < 120


def test_criterion_4_endgame_shapes(capsys):
    start = time.perf_counter()
    verdicts = {n: verify_endgame_shapes(n, parallelism=1) for n in (3, 4, 5)}
    bad = {n: v.counterexample for n, v in verdicts.items() if not v.passed}
    # Second route: hash-map trajectories, shapes compared against literal multisets.
    shapes = {0: lambda n: [3] * n, 1: lambda n: [2] + [3] * (n - 1), 2: lambda n: [2, 2] + [3] * (n - 2)}
    seen_m0 = {}
    for n in (3, 4, 5):
        for deficit, shape in shapes.items():
            c = 3 * n - deficit
            for x in enumerate_compositions(n, c):
                s = analyze(x)
                if abundance(s.attractor_canonical).m:
                    continue
                seen_m0[(n, c)] = seen_m0.get((n, c), 0) + 1
                if s.period != 1 or sorted(s.attractor_canonical.counts) != shape(n):
                    bad.setdefault(n, s)
    elapsed = time.perf_counter() - start
    covered = len(seen_m0) == 9
    ok = not bad and covered and elapsed < 60
    report(capsys, 4, "m=0 attractors at c in {3n-2, 3n-1, 3n} have the expected shape", ok,
           f"n in 3..5, m=0 trajectories per family {seen_m0}, failures={bad}", elapsed, 60)
    assert not bad
    assert covered
    assert elapsed < 60


def test_criterion_5_tightness_witness(capsys):
    start = time.perf_counter()
    scan = tightness_scan(3, 1, 9, parallelism=1)
    band_failures = [c for c in range(3, 7) if not scan[c].all_stabilize]
    replay_ok = True
    for c, rec in scan.items():
        if rec.witness is None:
            continue
        # Independent re-simulation with the naive list-based oracle.
        _, period, _ = naive_orbit(list(rec.witness.counts))
        replay_ok &= period >= 2 and sum(rec.witness.counts) == c
    has_c6 = scan[6].witness is not None
    elapsed = time.perf_counter() - start
    ok = bool(band_failures) and replay_ok and has_c6
    report(capsys, 5, "a periodic distribution exists below 3n-2", ok,
           f"non-stabilizing c in 3..6: {band_failures}, c=6 witness {scan[6].witness}, "
           f"replayed={replay_ok}", elapsed, "-")
    assert band_failures
    assert has_c6
    assert replay_ok


def _check_properties(counts):
    x = new_configuration(counts)
    y = step(x)
    after = y.counts
    problems = []
    if sum(after) != sum(counts):
        problems.append("conservation")
    if list(after) != naive_step(counts):
        problems.append("rule")
    for before_i, after_i in zip(counts, after):
        if before_i >= 2 and after_i > before_i:
            problems.append("monotone-at-2")
        if after_i > max(before_i, 3):
            problems.append("bounded growth")
    if not set(abundance(y).abundant_indices) <= set(abundance(x).abundant_indices):
        problems.append("abundant shrinkage")
    if max(after) > max(max(counts), 3):
        problems.append("max bound")
    if step(reverse(x)) != reverse(y):
        problems.append("reflection")
    if is_fixed_point(x) != (y == x):
        problems.append("fixed-point characterization")
    return problems


def test_criterion_6_property_suite(capsys):
    start = time.perf_counter()
    failures = []
    exhaustive = 0
    for n in range(3, 6):
        for c in range(1, 11):
            for x in enumerate_compositions(n, c):
                exhaustive += 1
                counts = list(x.counts)
                problems = _check_properties(counts)
                y = step(x)
                for r in range(n):
                    if step(rotate(x, r)) != rotate(y, r):
                        problems.append(f"rotation {r}")
                if problems:
                    failures.append((counts, problems))
    rng = random.Random(3 * 2007 - 2)
    for _ in range(100_000):
        counts = random_counts(rng, 16, 100)
        problems = _check_properties(counts)
        x = new_configuration(counts)
        r = rng.randrange(len(counts))
        if step(rotate(x, r)) != rotate(step(x), r):
            problems.append(f"rotation {r}")
        if problems:
            failures.append((counts, problems))
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 120
    report(capsys, 6, "step properties", ok,
           f"{exhaustive} exhaustive + 100000 random, failures={failures[:3]}", elapsed, 120)
    assert not failures
    assert elapsed < 120


def test_criterion_7_determinism(capsys):
    start = time.perf_counter()
    outputs = {p: dumps(sweep_record(sweep(5, 13, parallelism=p))).encode() for p in (1, 2, 8)}
    elapsed = time.perf_counter() - start
    ok = len(set(outputs.values())) == 1
    report(capsys, 7, "sweep(5, 13) identical at parallelism 1, 2, 8", ok,
           f"{len(outputs[1])} bytes each", elapsed, "-")
    assert ok

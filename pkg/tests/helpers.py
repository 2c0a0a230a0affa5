"""Shared randomized generators and brute-force oracles for the test suite.

The oracles here deliberately re-derive results by a different route than
the library (grid sampling instead of endpoint analysis, class-minimum
dynamic programming instead of per-tree sums) so agreement is evidence, not
tautology.
"""

from __future__ import annotations

import random
from fractions import Fraction

from statfrac import IntervalSet, Schedule, Similitude, SimilitudeSystem, leaf_count


def rand_fraction(rng: random.Random, lo: int, hi: int, max_den: int = 12) -> Fraction:
    den = rng.randint(1, max_den)
    return Fraction(rng.randint(lo * den, hi * den), den)


def rand_interval_set(rng: random.Random, max_intervals: int = 3, lo: int = -2, hi: int = 3) -> IntervalSet:
    n = rng.randint(1, max_intervals)
    pairs = []
    for _ in range(n):
        a = rand_fraction(rng, lo, hi)
        b = rand_fraction(rng, lo, hi)
        pairs.append((min(a, b), max(a, b)))
    return IntervalSet(pairs)


def rand_system(rng: random.Random, max_maps: int = 3) -> SimilitudeSystem:
    m = rng.randint(1, max_maps)
    maps = []
    for _ in range(m):
        den = rng.randint(2, 6)
        num = rng.randint(1, den - 1)
        maps.append(
            Similitude(
                Fraction(num, den),
                rand_fraction(rng, -1, 2, max_den=6),
                rng.choice((1, -1)),
            )
        )
    return SimilitudeSystem(maps)


def rand_schedule(rng: random.Random, m: int, max_leaves: int = 2048, depth: int = 8) -> Schedule:
    """A random periodic schedule whose depth-``depth`` branch count stays small."""
    while True:
        period = rng.randint(1, 4)
        sets = []
        for _ in range(period):
            size = rng.randint(1, m)
            sets.append(sorted(rng.sample(range(1, m + 1), size)))
        schedule = Schedule.periodic(sets)
        if leaf_count(schedule, depth) <= max_leaves:
            return schedule


def grid_directed_distance(e: IntervalSet, f: IntervalSet, steps: int = 10_000) -> float:
    """Brute-force sup over sampled x in e of dist(x, f), in floats.

    Samples every interval of e on a grid whose step is the joint span over
    ``steps``; accuracy is one grid step, which is all the tests assume.
    """
    flo = [(float(a), float(b)) for a, b in f]

    def dist(x: float) -> float:
        best = None
        for a, b in flo:
            d = 0.0 if a <= x <= b else min(abs(x - a), abs(x - b))
            best = d if best is None else min(best, d)
        return best

    lo = min(min(float(a) for a, _ in e), min(float(a) for a, _ in f))
    hi = max(max(float(b) for _, b in e), max(float(b) for _, b in f))
    step = (hi - lo) / steps if hi > lo else 0.0
    best = 0.0
    for a, b in e:
        fa, fb = float(a), float(b)
        x = fa
        while x < fb:
            best = max(best, dist(x))
            x += step if step > 0 else (fb - fa or 1.0)
        best = max(best, dist(fb))
    return best


def grid_hausdorff(e: IntervalSet, f: IntervalSet, steps: int = 10_000) -> float:
    return max(grid_directed_distance(e, f, steps), grid_directed_distance(f, e, steps))


def min_tree_sum_exact_bounds(schedule: Schedule, weights, p: int, q: int):
    """Exact minimum of the branch-product sum over every valid tree whose
    shortest branch is exactly p and longest exactly q.

    Dynamic programming over (depth, needs-a-leaf-at-p, needs-a-leaf-at-q):
    a node either stops (allowed at depths p..q) or expands all children of
    the next level, with each required flag delegated to one child.  Covers
    the complete tree class without materializing a single tree, so it stays
    exact even where enumeration is astronomically large.  Returns None when
    the class is empty (e.g. p < q with single-child levels only).
    """
    ws = [Fraction(w) for w in weights]
    memo: dict = {}

    def best(depth: int, need_p: bool, need_q: bool):
        key = (depth, need_p, need_q)
        if key in memo:
            return memo[key]
        options = []
        leaf_ok = p <= depth <= q and (not need_p or depth == p) and (not need_q or depth == q)
        if leaf_ok:
            options.append(Fraction(1))
        if depth < q:
            children = sorted(schedule.select(depth + 1))
            p_slots = range(len(children)) if need_p else (-1,)
            q_slots = range(len(children)) if need_q else (-1,)
            for ps in p_slots:
                for qs in q_slots:
                    total = Fraction(0)
                    feasible = True
                    for idx, j in enumerate(children):
                        sub = best(depth + 1, idx == ps, idx == qs)
                        if sub is None:
                            feasible = False
                            break
                        total += ws[j - 1] * sub
                    if feasible:
                        options.append(total)
        result = min(options) if options else None
        memo[key] = result
        return result

    return best(0, True, True)

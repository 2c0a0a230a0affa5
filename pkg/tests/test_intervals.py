"""Interval set operations: frozen examples plus metric-space properties."""

import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from statfrac import EmptySetError, IntervalSet, InvalidIntervalError

from helpers import grid_hausdorff, rand_interval_set

fractions = st.fractions(min_value=-4, max_value=4, max_denominator=12)
pairs = st.tuples(fractions, fractions).map(lambda t: (min(t), max(t)))
interval_sets = st.lists(pairs, max_size=5).map(IntervalSet)
nonempty_sets = st.lists(pairs, min_size=1, max_size=5).map(IntervalSet)


class TestNormalize:
    def test_touching_intervals_merge(self):
        assert IntervalSet([(0, F(1, 3)), (F(1, 3), 1)]) == IntervalSet([(0, 1)])

    def test_empty_input(self):
        assert IntervalSet([]).is_empty

    def test_sorts_and_keeps_disjoint(self):
        e = IntervalSet([(F(2, 3), 1), (0, F(1, 3))])
        assert e.intervals == ((F(0), F(1, 3)), (F(2, 3), F(1)))

    def test_rejects_inverted_interval(self):
        with pytest.raises(InvalidIntervalError):
            IntervalSet([(1, 0)])

    @given(st.lists(pairs, max_size=6))
    def test_idempotent(self, raw):
        once = IntervalSet(raw)
        assert IntervalSet(once.intervals) == once

    @given(st.lists(pairs, max_size=6))
    def test_canonical_invariants(self, raw):
        e = IntervalSet(raw)
        for lo, hi in e:
            assert lo <= hi
        for (_, hi1), (lo2, _) in zip(e.intervals, e.intervals[1:]):
            assert hi1 < lo2


class TestIntersect:
    def test_simple_overlap(self):
        got = IntervalSet([(0, 1)]).intersect(IntervalSet([(F(1, 2), 2)]))
        assert got == IntervalSet([(F(1, 2), 1)])

    def test_cantor_level_with_shift(self):
        k1 = IntervalSet([(0, F(1, 3)), (F(2, 3), 1)])
        got = k1.intersect(k1.translate(F(1, 4)))
        assert got == IntervalSet([(F(1, 4), F(1, 3)), (F(11, 12), 1)])

    def test_with_empty(self):
        assert IntervalSet([(0, 1)]).intersect(IntervalSet()).is_empty

    @given(nonempty_sets, nonempty_sets, fractions)
    def test_commutes_with_translation(self, a, b, c):
        assert a.translate(c).intersect(b.translate(c)) == a.intersect(b).translate(c)


class TestParallelBody:
    def test_two_points(self):
        e = IntervalSet([(0, 0), (1, 1)])
        assert e.parallel_body(F(1, 4)) == IntervalSet([(F(-1, 4), F(1, 4)), (F(3, 4), F(5, 4))])

    def test_widened_intervals_merge(self):
        e = IntervalSet([(0, 0), (1, 1)])
        assert e.parallel_body(F(1, 2)) == IntervalSet([(F(-1, 2), F(3, 2))])

    def test_zero_is_identity(self):
        e = IntervalSet([(0, F(1, 3)), (F(2, 3), 1)])
        assert e.parallel_body(0) == e

    def test_empty_rejected(self):
        with pytest.raises(EmptySetError):
            IntervalSet().parallel_body(F(1, 2))

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            IntervalSet([(0, 1)]).parallel_body(F(-1, 2))

    @given(nonempty_sets, fractions.filter(lambda c: c >= 0), fractions)
    def test_commutes_with_translation(self, e, delta, c):
        assert e.translate(c).parallel_body(delta) == e.parallel_body(delta).translate(c)


class TestDiameter:
    def test_spans_gap(self):
        assert IntervalSet([(0, F(1, 3)), (F(2, 3), 1)]).diameter() == 1

    def test_single_interval(self):
        assert IntervalSet([(F(1, 9), F(2, 9))]).diameter() == F(1, 9)

    def test_singleton(self):
        assert IntervalSet([(5, 5)]).diameter() == 0

    def test_empty_rejected(self):
        with pytest.raises(EmptySetError):
            IntervalSet().diameter()


class TestHausdorffDistance:
    def test_unit_vs_cantor_level(self):
        k1 = IntervalSet([(0, F(1, 3)), (F(2, 3), 1)])
        assert IntervalSet([(0, 1)]).hausdorff_distance(k1) == F(1, 6)

    def test_self_distance_zero(self):
        e = IntervalSet([(0, F(1, 3)), (F(2, 3), 1)])
        assert e.hausdorff_distance(e) == 0

    def test_two_points(self):
        assert IntervalSet([(0, 0)]).hausdorff_distance(IntervalSet([(1, 1)])) == 1

    def test_empty_rejected(self):
        with pytest.raises(EmptySetError):
            IntervalSet([(0, 1)]).hausdorff_distance(IntervalSet())

    @settings(max_examples=60)
    @given(nonempty_sets, nonempty_sets)
    def test_symmetric(self, e, f):
        assert e.hausdorff_distance(f) == f.hausdorff_distance(e)

    @settings(max_examples=60)
    @given(nonempty_sets, nonempty_sets)
    def test_zero_iff_equal(self, e, f):
        d = e.hausdorff_distance(f)
        assert (d == 0) == (e == f)

    @settings(max_examples=40)
    @given(nonempty_sets, nonempty_sets, nonempty_sets)
    def test_triangle_inequality(self, e, f, g):
        assert e.hausdorff_distance(g) <= e.hausdorff_distance(f) + f.hausdorff_distance(g)

    @settings(max_examples=60)
    @given(nonempty_sets, nonempty_sets)
    def test_defining_inclusions(self, e, f):
        # d is the least delta with mutual inclusion in parallel bodies; the
        # parallel body grows with delta, so failing just below d certifies
        # failure for every smaller delta as well
        d = e.hausdorff_distance(f)
        assert e.is_subset_of(f.parallel_body(d))
        assert f.is_subset_of(e.parallel_body(d))
        if d > 0:
            just_below = d * F(2 ** 20 - 1, 2 ** 20)
            assert not (
                e.is_subset_of(f.parallel_body(just_below))
                and f.is_subset_of(e.parallel_body(just_below))
            )

    def test_agrees_with_grid_oracle(self):
        rng = random.Random(1805)
        for _ in range(25):
            e = rand_interval_set(rng)
            f = rand_interval_set(rng)
            exact = float(e.hausdorff_distance(f))
            lo = min(float(e.bounds()[0]), float(f.bounds()[0]))
            hi = max(float(e.bounds()[1]), float(f.bounds()[1]))
            step = (hi - lo) / 10_000 if hi > lo else 1e-4
            assert abs(exact - grid_hausdorff(e, f)) <= step + 1e-12


class TestJson:
    def test_round_trip_examples(self):
        e = IntervalSet([(F(1, 4), F(1, 3)), (F(11, 12), 1)])
        data = e.to_json()
        assert data == {"intervals": [["1/4", "1/3"], ["11/12", "1"]]}
        assert IntervalSet.from_json(data) == e

    @given(interval_sets)
    def test_round_trip_is_bit_exact(self, e):
        once = e.to_json()
        again = IntervalSet.from_json(once).to_json()
        assert once == again

"""Dimension estimator and its box-counting cross-check."""

import math
import random
from fractions import Fraction as F

import pytest

from statfrac import (
    CANTOR_SYSTEM,
    DigitStream,
    EmptySetError,
    HorizonTooSmallError,
    IntervalSet,
    LN2_OVER_LN3,
    Schedule,
    Similitude,
    SimilitudeSystem,
    TooFewScalesError,
    UNIT_INTERVAL,
    box_count,
    box_counting_dimension,
    cantor_prefractal,
    digit_schedule,
    estimate_dimension,
    iterate,
    leaf_count,
    partial_sum_log,
)

FULL2 = Schedule.full(2)


class TestPartialSumLog:
    def test_cantor_at_its_own_dimension_is_flat(self):
        for k in (1, 5, 50):
            assert partial_sum_log(CANTOR_SYSTEM, FULL2, k, LN2_OVER_LN3) == pytest.approx(0.0, abs=1e-12)

    def test_exponent_zero_counts_leaves(self):
        assert partial_sum_log(CANTOR_SYSTEM, FULL2, 3, 0.0) == pytest.approx(math.log(8))

    def test_singleton_schedule(self):
        sched = Schedule.periodic([[1]])
        got = partial_sum_log(CANTOR_SYSTEM, sched, 2, 1.0)
        assert got == pytest.approx(math.log(1 / 9))

    def test_strictly_decreasing_in_exponent(self):
        rng = random.Random(51)
        for _ in range(50):
            den = rng.randint(2, 6)
            system = SimilitudeSystem(
                [Similitude(F(rng.randint(1, den - 1), den), 0) for _ in range(rng.randint(1, 3))]
            )
            sched = Schedule.full(system.m)
            k = rng.randint(1, 10)
            t = rng.uniform(0.0, 1.5)
            dt = rng.uniform(0.05, 0.5)
            assert partial_sum_log(system, sched, k, t) > partial_sum_log(system, sched, k, t + dt)

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            partial_sum_log(CANTOR_SYSTEM, FULL2, 0, 0.5)
        with pytest.raises(ValueError):
            partial_sum_log(CANTOR_SYSTEM, FULL2, 3, -0.1)


class TestEstimateDimension:
    def test_cantor_full_schedule(self):
        est = estimate_dimension(CANTOR_SYSTEM, FULL2, 200, tol=1e-9)
        assert est.s_hat == pytest.approx(LN2_OVER_LN3, abs=1e-6)
        assert est.window == (100, 200)
        assert est.method == "formula"
        assert abs(est.residual) <= 1e-9 * math.log(3) * 1.01

    def test_single_branch_gives_zero(self):
        est = estimate_dimension(CANTOR_SYSTEM, Schedule.periodic([[1]]), 50)
        assert est.s_hat == 0.0
        assert est.residual == pytest.approx(0.0, abs=1e-12)

    def test_digit_driven_quarter(self):
        sched = digit_schedule(DigitStream.from_rational(1, 4))
        est = estimate_dimension(CANTOR_SYSTEM, sched, 200)
        assert est.s_hat == pytest.approx(LN2_OVER_LN3 / 2, abs=1e-6)

    def test_mixed_ratio_root_solves_moran_equation(self):
        # the window-min collapses to the depth-free Moran sum for full
        # schedules, so the root must satisfy sum r_j^s = 1
        system = SimilitudeSystem([Similitude(F(1, 2), 0), Similitude(F(1, 4), F(3, 4))])
        est = estimate_dimension(system, Schedule.full(2), 60)
        assert 0.5 ** est.s_hat + 0.25 ** est.s_hat == pytest.approx(1.0, abs=1e-7)
        # coarse bracket: the root never exceeds log(m) / log(1/max ratio)
        assert 0.0 <= est.s_hat <= math.log(system.m) / math.log(1 / float(system.ratio_max))

    def test_equal_ratio_closed_form(self):
        rng = random.Random(52)
        for _ in range(10):
            sets = [sorted(rng.sample([1, 2], rng.randint(1, 2))) for _ in range(rng.randint(1, 3))]
            sched = Schedule.periodic(sets)
            est = estimate_dimension(CANTOR_SYSTEM, sched, 120)
            window_min = min(
                math.log(leaf_count(sched, k)) / k for k in range(est.window[0], est.window[1] + 1)
            )
            assert est.s_hat == pytest.approx(window_min / math.log(3), abs=1e-7)

    def test_horizon_too_small(self):
        with pytest.raises(HorizonTooSmallError):
            estimate_dimension(CANTOR_SYSTEM, FULL2, 9)


class TestBoxCount:
    def test_unit_interval(self):
        assert box_count(UNIT_INTERVAL, F(1, 3)) == 3
        assert box_count(UNIT_INTERVAL, F(2, 5)) == 3

    def test_prefractal_counts_match_construction(self):
        k10 = cantor_prefractal(10)
        for j in range(1, 9):
            assert box_count(k10, F(1, 3) ** j) == 2 ** j

    def test_point_on_grid_line(self):
        assert box_count(IntervalSet([(0, 0)]), F(1, 3)) == 1
        assert box_count(IntervalSet([(1, 1)]), F(1, 3)) == 1

    def test_shared_cell_not_double_counted(self):
        e = IntervalSet([(0, F(1, 10)), (F(2, 10), F(3, 10))])
        assert box_count(e, 1) == 1


class TestBoxCountingDimension:
    SCALES6 = [F(1, 3) ** j for j in range(1, 7)]

    def test_unit_interval_slope_one(self):
        est = box_counting_dimension(UNIT_INTERVAL, self.SCALES6)
        assert est.s_hat == pytest.approx(1.0, abs=0.01)
        assert est.method == "box_counting"

    def test_prefractal_slope(self):
        est = box_counting_dimension(cantor_prefractal(10), [F(1, 3) ** j for j in range(1, 9)])
        assert est.s_hat == pytest.approx(0.631, abs=0.02)

    def test_singleton_slope_zero(self):
        est = box_counting_dimension(IntervalSet([(0, 0)]), self.SCALES6)
        assert est.s_hat == pytest.approx(0.0, abs=0.01)

    def test_errors(self):
        with pytest.raises(EmptySetError):
            box_counting_dimension(IntervalSet(), self.SCALES6)
        with pytest.raises(TooFewScalesError):
            box_counting_dimension(UNIT_INTERVAL, self.SCALES6[:2])
        with pytest.raises(ValueError):
            box_counting_dimension(UNIT_INTERVAL, [F(1, 3), F(1, 3), F(1, 9)])

    def test_agrees_with_formula_estimator(self):
        quarter = SimilitudeSystem([Similitude(F(1, 4), 0), Similitude(F(1, 4), F(3, 4))])
        for system, scales in (
            (CANTOR_SYSTEM, [F(1, 3) ** j for j in range(1, 9)]),
            (quarter, [F(1, 4) ** j for j in range(1, 7)]),
        ):
            sched = Schedule.full(2)
            deep = iterate(system, sched, 10, UNIT_INTERVAL)
            box = box_counting_dimension(deep, scales)
            formula = estimate_dimension(system, sched, 100)
            assert abs(box.s_hat - formula.s_hat) <= 0.05


class TestJson:
    def test_estimate_serialization(self):
        est = estimate_dimension(CANTOR_SYSTEM, FULL2, 50)
        data = est.to_json()
        assert set(data) == {"s_hat", "K", "window", "residual", "method"}
        assert data["K"] == 50 and data["window"] == [25, 50]

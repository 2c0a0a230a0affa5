"""Dimension threshold estimation and an independent box-counting check.

The similarity dimension of a scheduled system is the unique t at which the
liminf over depth k of the branch-product sums  sum (r_{j_1}...r_{j_k})^t
switches from infinite to zero.  At a finite horizon the tail infimum is
approximated by the minimum of the normalized log-sums over a trailing
window of depths; the root in t of that window minimum is the estimate.

Floating point is used here only: t is a continuous parameter, and working
in the log domain keeps depth-10^5 products from underflowing.  All exact
identities live in the interval and IFS modules.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import EmptySetError, HorizonTooSmallError, TooFewScalesError
from .ifs import Schedule, SimilitudeSystem
from .intervals import IntervalSet, RationalLike, as_fraction

_MAX_BRACKET_DOUBLINGS = 64


@dataclass(frozen=True)
class DimensionEstimate:
    """A dimension value with the provenance needed to judge it."""

    s_hat: float
    horizon: int
    window: tuple[int, int]
    residual: float
    method: str  # "formula" or "box_counting"

    def to_json(self) -> dict:
        return {
            "s_hat": self.s_hat,
            "K": self.horizon,
            "window": list(self.window),
            "residual": self.residual,
            "method": self.method,
        }


def partial_sum_log(system: SimilitudeSystem, schedule: Schedule, k: int, t: float) -> float:
    """log of the depth-k branch-product sum at exponent t.

    The sum factors over levels: sum over branches of (prod r)^t equals the
    product over levels i <= k of sum_{j in N_i} r_j^t.  That makes this
    O(k * m) instead of O(|branches|).
    """
    if k < 1:
        raise ValueError("depth must be at least 1")
    if t < 0:
        raise ValueError("exponent must be non-negative")
    total = 0.0
    for i in range(1, k + 1):
        total += math.log(sum(float(system.maps[j - 1].ratio) ** t for j in schedule.select(i)))
    return total


def _window_min_log(
    level_ratios: list[list[float]], t: float, window_lo: int
) -> float:
    best = math.inf
    acc = 0.0
    for idx, ratios in enumerate(level_ratios, start=1):
        acc += math.log(sum(r ** t for r in ratios))
        if idx >= window_lo:
            best = min(best, acc / idx)
    return best


def estimate_dimension(
    system: SimilitudeSystem,
    schedule: Schedule,
    horizon: int,
    window_fraction: float = 0.5,
    tol: float = 1e-9,
) -> DimensionEstimate:
    """Bisect for the root of the window-min normalized log-sum.

    Each level factor sum_{j} r_j^t is strictly decreasing in t, hence so is
    the window minimum g(t); the root is unique.  Bisection stops when the
    bracket is narrower than ``tol``; the reported residual is g at the
    returned point and is bounded by tol * log(1/min ratio).
    """
    if horizon < 10:
        raise HorizonTooSmallError(f"horizon must be at least 10, got {horizon}")
    if not 0 < window_fraction <= 1:
        raise ValueError("window fraction must lie in (0, 1]")
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    window_lo = max(1, math.ceil((1 - window_fraction) * horizon))
    window = (window_lo, horizon)
    level_ratios = [
        [float(system.maps[j - 1].ratio) for j in sorted(schedule.select(i))]
        for i in range(1, horizon + 1)
    ]

    def g(t: float) -> float:
        return _window_min_log(level_ratios, t, window_lo)

    if g(0.0) <= 0.0:
        # no branching anywhere in the window: the threshold is zero
        return DimensionEstimate(0.0, horizon, window, g(0.0), "formula")

    hi = math.log(system.m) / math.log(1 / float(system.ratio_max))
    for _ in range(_MAX_BRACKET_DOUBLINGS):
        if g(hi) <= 0.0:
            break
        hi *= 2.0
    else:
        raise ValueError("failed to bracket the dimension root")
    lo = 0.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if g(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    s_hat = 0.5 * (lo + hi)
    return DimensionEstimate(s_hat, horizon, window, g(s_hat), "formula")


def box_count(e: IntervalSet, scale: RationalLike) -> int:
    """Exact number of size-``scale`` grid cells the set occupies.

    Cells are attributed half-open ([i*eps, (i+1)*eps)), so an interval whose
    endpoint lands exactly on a grid line does not spill into the next cell;
    isolated points always occupy the cell they fall in.
    """
    if e.is_empty:
        raise EmptySetError("box counting needs a non-empty set")
    eps = as_fraction(scale)
    if eps <= 0:
        raise ValueError("scale must be positive")
    ranges = []
    for lo, hi in e:
        first = math.floor(lo / eps)
        last = first if hi == lo else max(first, math.ceil(hi / eps) - 1)
        ranges.append((first, last))
    ranges.sort()
    total = 0
    cur_lo, cur_hi = ranges[0]
    for a, b in ranges[1:]:
        if a <= cur_hi:
            cur_hi = max(cur_hi, b)
        else:
            total += cur_hi - cur_lo + 1
            cur_lo, cur_hi = a, b
    return total + cur_hi - cur_lo + 1


def box_counting_dimension(e: IntervalSet, scales: Sequence[RationalLike]) -> DimensionEstimate:
    """Least-squares slope of log N(eps) against log(1/eps).

    Serves as an oracle for the formula-based estimator: the two routes share
    no code beyond the interval representation.
    """
    if e.is_empty:
        raise EmptySetError("box counting needs a non-empty set")
    eps = [as_fraction(s) for s in scales]
    if len(eps) < 3:
        raise TooFewScalesError(f"need at least 3 scales, got {len(eps)}")
    if any(b >= a for a, b in zip(eps, eps[1:])) or eps[-1] <= 0:
        raise ValueError("scales must be positive and strictly decreasing")
    xs = np.array([math.log(1 / float(s)) for s in eps])
    ys = np.array([math.log(box_count(e, s)) for s in eps])
    slope, intercept = np.polyfit(xs, ys, 1)
    residual = float(np.sqrt(np.mean((ys - (slope * xs + intercept)) ** 2)))
    return DimensionEstimate(float(slope), len(eps), (1, len(eps)), residual, "box_counting")

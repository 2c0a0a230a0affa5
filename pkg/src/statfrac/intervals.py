"""Exact unions of closed intervals on the real line.

Endpoints are ``fractions.Fraction`` throughout, so set algebra, parallel
bodies and the Hausdorff metric are computed without any rounding.  The
canonical form -- sorted, pairwise disjoint, touching intervals merged --
makes structural equality coincide with point-set equality, which the rest
of the package relies on for exact assertions.
"""

from __future__ import annotations

from bisect import bisect_right
from fractions import Fraction
from typing import Iterable, Iterator, Tuple, Union

from .errors import EmptySetError, InvalidIntervalError

Rational = Fraction
RationalLike = Union[Fraction, int, str]

Pair = Tuple[Fraction, Fraction]


def as_fraction(value: RationalLike) -> Fraction:
    """Coerce an int, an exact string like ``"2/3"``, or a Fraction.

    Floats are rejected on purpose: silently converting binary floats would
    defeat the exactness guarantees of this module.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(
        f"expected an exact rational (int, str or Fraction), got {type(value).__name__}"
    )


class IntervalSet:
    """A compact subset of R stored as disjoint closed rational intervals.

    The constructor normalizes arbitrary input: intervals are sorted,
    overlapping or touching ones are merged, and degenerate points are kept.
    The empty set is a valid value; metric operations reject it.
    """

    __slots__ = ("_intervals", "_lowers")

    def __init__(self, intervals: Iterable[Tuple[RationalLike, RationalLike]] = ()):
        pairs = []
        for lo, hi in intervals:
            lo, hi = as_fraction(lo), as_fraction(hi)
            if lo > hi:
                raise InvalidIntervalError(f"lower endpoint {lo} exceeds upper endpoint {hi}")
            pairs.append((lo, hi))
        pairs.sort()
        merged: list[Pair] = []
        for lo, hi in pairs:
            if merged and lo <= merged[-1][1]:
                if hi > merged[-1][1]:
                    merged[-1] = (merged[-1][0], hi)
            else:
                merged.append((lo, hi))
        self._intervals: Tuple[Pair, ...] = tuple(merged)
        self._lowers: Tuple[Fraction, ...] = tuple(lo for lo, _ in merged)

    # -- basic structure ----------------------------------------------------

    @property
    def intervals(self) -> Tuple[Pair, ...]:
        return self._intervals

    @property
    def is_empty(self) -> bool:
        return not self._intervals

    def __bool__(self) -> bool:
        return bool(self._intervals)

    def __len__(self) -> int:
        return len(self._intervals)

    def __iter__(self) -> Iterator[Pair]:
        return iter(self._intervals)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntervalSet):
            return NotImplemented
        return self._intervals == other._intervals

    def __hash__(self) -> int:
        return hash(self._intervals)

    def __repr__(self) -> str:
        body = ", ".join(f"[{lo}, {hi}]" for lo, hi in self._intervals)
        return f"IntervalSet({body or 'empty'})"

    def _require_nonempty(self, op: str) -> None:
        if not self._intervals:
            raise EmptySetError(f"{op} requires a non-empty set")

    # -- geometry -----------------------------------------------------------

    def bounds(self) -> Pair:
        """Smallest and largest point of the set."""
        self._require_nonempty("bounds")
        return self._intervals[0][0], self._intervals[-1][1]

    def diameter(self) -> Fraction:
        """sup |x - y| over points of the set: the span of its hull."""
        lo, hi = self.bounds()
        return hi - lo

    def translate(self, offset: RationalLike) -> "IntervalSet":
        c = as_fraction(offset)
        return IntervalSet((lo + c, hi + c) for lo, hi in self._intervals)

    def parallel_body(self, delta: RationalLike) -> "IntervalSet":
        """All points within distance ``delta`` of the set (closed)."""
        self._require_nonempty("parallel_body")
        d = as_fraction(delta)
        if d < 0:
            raise ValueError("parallel body radius must be non-negative")
        return IntervalSet((lo - d, hi + d) for lo, hi in self._intervals)

    def intersect(self, other: "IntervalSet") -> "IntervalSet":
        """Exact point-set intersection (possibly empty)."""
        out = []
        a, b = self._intervals, other._intervals
        i = j = 0
        while i < len(a) and j < len(b):
            lo = max(a[i][0], b[j][0])
            hi = min(a[i][1], b[j][1])
            if lo <= hi:
                out.append((lo, hi))
            if a[i][1] < b[j][1]:
                i += 1
            else:
                j += 1
        return IntervalSet(out)

    def contains_point(self, x: RationalLike) -> bool:
        x = as_fraction(x)
        idx = bisect_right(self._lowers, x) - 1
        return idx >= 0 and x <= self._intervals[idx][1]

    def distance_to_point(self, x: RationalLike) -> Fraction:
        """Exact distance from ``x`` to the set."""
        self._require_nonempty("distance_to_point")
        x = as_fraction(x)
        idx = bisect_right(self._lowers, x) - 1
        if idx >= 0 and x <= self._intervals[idx][1]:
            return Fraction(0)
        best = None
        if idx >= 0:
            best = x - self._intervals[idx][1]
        if idx + 1 < len(self._intervals):
            gap = self._intervals[idx + 1][0] - x
            best = gap if best is None else min(best, gap)
        assert best is not None
        return best

    def is_subset_of(self, other: "IntervalSet") -> bool:
        """Point-set inclusion; the empty set is a subset of everything."""
        if not self._intervals:
            return True
        if not other._intervals:
            return False
        for lo, hi in self._intervals:
            idx = bisect_right(other._lowers, lo) - 1
            if idx < 0 or other._intervals[idx][1] < hi:
                return False
        return True

    def _directed_distance(self, other: "IntervalSet") -> Fraction:
        # sup over x in self of dist(x, other).  The supremum of the piecewise
        # linear distance function over a closed interval is attained either at
        # one of self's endpoints or at a gap midpoint of other inside self.
        best = Fraction(0)
        for lo, hi in self._intervals:
            best = max(best, other.distance_to_point(lo), other.distance_to_point(hi))
        for (_, prev_hi), (next_lo, _) in zip(other._intervals, other._intervals[1:]):
            mid = (prev_hi + next_lo) / 2
            if self.contains_point(mid):
                best = max(best, (next_lo - prev_hi) / 2)
        return best

    def hausdorff_distance(self, other: "IntervalSet") -> Fraction:
        """Exact Hausdorff distance between two non-empty sets.

        This is the least delta such that each set lies inside the other's
        delta-parallel body.
        """
        self._require_nonempty("hausdorff_distance")
        other._require_nonempty("hausdorff_distance")
        return max(self._directed_distance(other), other._directed_distance(self))

    def measure(self) -> Fraction:
        """Total length of the set (zero for finite point sets)."""
        return sum((hi - lo for lo, hi in self._intervals), Fraction(0))

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict:
        """JSON form with exact endpoint strings; round-trips bit-exactly."""
        return {"intervals": [[str(lo), str(hi)] for lo, hi in self._intervals]}

    @classmethod
    def from_json(cls, data: dict) -> "IntervalSet":
        return cls((lo, hi) for lo, hi in data["intervals"])

"""Similitude systems, per-level selection schedules, and set iteration.

A similitude is the 1D contraction x -> sign * ratio * x + translation.
A schedule picks, for every level k >= 1, a non-empty subset of map indices;
iterating the system unions the compositions allowed by the schedule.  With
the full schedule this reproduces classical self-similar constructions; with
level-dependent subsets it produces their statistically self-similar
generalization.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, NamedTuple, Sequence

from .errors import DepthOverflowError, EmptySetError
from .intervals import IntervalSet, RationalLike, as_fraction

DEFAULT_LEAF_BUDGET = 2 ** 24


@dataclass(frozen=True)
class Similitude:
    """x -> orientation * ratio * x + translation with 0 < ratio < 1."""

    ratio: Fraction
    translation: Fraction
    orientation: int = 1

    def __post_init__(self):
        object.__setattr__(self, "ratio", as_fraction(self.ratio))
        object.__setattr__(self, "translation", as_fraction(self.translation))
        if not 0 < self.ratio < 1:
            raise ValueError(f"contraction ratio must lie in (0, 1), got {self.ratio}")
        if self.orientation not in (1, -1):
            raise ValueError(f"orientation must be +1 or -1, got {self.orientation}")

    @property
    def signed_ratio(self) -> Fraction:
        return self.ratio if self.orientation == 1 else -self.ratio

    def __call__(self, x: RationalLike) -> Fraction:
        return self.signed_ratio * as_fraction(x) + self.translation

    def compose(self, inner: "Similitude") -> "Similitude":
        """self after inner; ratios multiply, so the result contracts too."""
        return Similitude(
            self.ratio * inner.ratio,
            self.signed_ratio * inner.translation + self.translation,
            self.orientation * inner.orientation,
        )

    def apply(self, e: IntervalSet) -> IntervalSet:
        """Exact image of an interval set; a flip reverses endpoint order."""
        if e.is_empty:
            raise EmptySetError("cannot apply a similitude to the empty set")
        s, t = self.signed_ratio, self.translation
        if s > 0:
            return IntervalSet((s * lo + t, s * hi + t) for lo, hi in e)
        return IntervalSet((s * hi + t, s * lo + t) for lo, hi in e)

    def to_json(self) -> dict:
        return {"r": str(self.ratio), "b": str(self.translation), "sigma": self.orientation}

    @classmethod
    def from_json(cls, data: dict) -> "Similitude":
        return cls(data["r"], data["b"], int(data.get("sigma", 1)))


class SimilitudeSystem:
    """A finite family of similitudes, indexed 1..m."""

    __slots__ = ("maps",)

    def __init__(self, maps: Iterable[Similitude]):
        self.maps = tuple(maps)
        if not self.maps:
            raise ValueError("a similitude system needs at least one map")

    @property
    def m(self) -> int:
        return len(self.maps)

    @property
    def ratio_max(self) -> Fraction:
        return max(s.ratio for s in self.maps)

    @property
    def ratio_min(self) -> Fraction:
        return min(s.ratio for s in self.maps)

    def __repr__(self) -> str:
        return f"SimilitudeSystem({list(self.maps)!r})"

    def satisfies_open_set_condition(self, lo: RationalLike, hi: RationalLike) -> bool:
        """Check the open interval (lo, hi): every image must sit inside it
        and the images must be pairwise disjoint as open intervals."""
        lo, hi = as_fraction(lo), as_fraction(hi)
        if lo >= hi:
            raise ValueError("open set condition needs a non-degenerate interval")
        images = []
        for sim in self.maps:
            a, b = sim(lo), sim(hi)
            if a > b:
                a, b = b, a
            if a < lo or b > hi:
                return False
            images.append((a, b))
        images.sort()
        return all(prev_b <= next_a for (_, prev_b), (next_a, _) in zip(images, images[1:]))

    def to_json(self) -> dict:
        return {"maps": [s.to_json() for s in self.maps]}

    @classmethod
    def from_json(cls, data: dict) -> "SimilitudeSystem":
        return cls(Similitude.from_json(m) for m in data["maps"])


class Schedule:
    """Deterministic per-level selection sets N_k over map indices 1..m.

    Levels are 1-based.  A rule callable produces each level's set once; the
    result is cached, so querying a level twice always agrees.
    """

    def __init__(
        self,
        m: int,
        rule: Callable[[int], Iterable[int]],
        kind: str = "custom",
        source: dict | None = None,
    ):
        if m < 1:
            raise ValueError("schedule needs m >= 1 map indices")
        self.m = m
        self.kind = kind
        self._rule = rule
        self._source = source
        self._cache: list[frozenset[int]] = []

    @classmethod
    def full(cls, m: int) -> "Schedule":
        """Every level selects all of 1..m (classical self-similar case)."""
        return cls(m, lambda k: range(1, m + 1), kind="full")

    @classmethod
    def periodic(cls, sets: Sequence[Iterable[int]]) -> "Schedule":
        """Cycle through an explicit finite list of selection sets."""
        parsed = [tuple(sorted(set(int(j) for j in s))) for s in sets]
        if not parsed or any(not s for s in parsed):
            raise ValueError("periodic schedule needs non-empty selection sets")
        m = max(max(s) for s in parsed)
        return cls(
            m,
            lambda k: parsed[(k - 1) % len(parsed)],
            kind="periodic",
            source={"sets": [list(s) for s in parsed]},
        )

    def select(self, k: int) -> frozenset[int]:
        """The selection set for level k (1-based)."""
        if k < 1:
            raise ValueError("schedule levels are 1-based")
        while len(self._cache) < k:
            level = len(self._cache) + 1
            chosen = frozenset(int(j) for j in self._rule(level))
            if not chosen:
                raise ValueError(f"schedule produced an empty selection at level {level}")
            if not all(1 <= j <= self.m for j in chosen):
                raise ValueError(f"selection {sorted(chosen)} at level {level} outside 1..{self.m}")
            self._cache.append(chosen)
        return self._cache[k - 1]

    def sets(self, k: int) -> tuple[frozenset[int], ...]:
        """The first k selection sets."""
        return tuple(self.select(i) for i in range(1, k + 1))

    def to_json(self) -> dict:
        if self.kind == "full":
            return {"kind": "full"}
        if self.kind in ("periodic", "digits") and self._source is not None:
            return {"kind": self.kind, **self._source}
        raise ValueError(f"schedule of kind {self.kind!r} has no JSON form")


def schedule_from_json(data: dict, m: int) -> Schedule:
    """Build a schedule from its wire form; ``m`` comes from the map list."""
    kind = data.get("kind", "full")
    if kind == "full":
        return Schedule.full(m)
    if kind == "periodic":
        return Schedule.periodic(data["sets"])
    if kind == "digits":
        from . import cantor  # local import: cantor builds on this module

        return cantor.digit_schedule(cantor.DigitStream.from_json(data["source"]))
    raise ValueError(f"unknown schedule kind {kind!r}")


def system_to_json(system: SimilitudeSystem, schedule: Schedule) -> dict:
    return {**system.to_json(), "schedule": schedule.to_json()}


def system_from_json(data: dict) -> tuple[SimilitudeSystem, Schedule]:
    system = SimilitudeSystem.from_json(data)
    schedule = schedule_from_json(data.get("schedule", {"kind": "full"}), system.m)
    return system, schedule


def apply(sim: Similitude, e: IntervalSet) -> IntervalSet:
    return sim.apply(e)


def leaf_count(schedule: Schedule, k: int) -> int:
    """Number of branches at depth k: the product of the selection sizes."""
    if k < 0:
        raise ValueError("depth must be non-negative")
    return math.prod(len(schedule.select(i)) for i in range(1, k + 1))


def iterate(
    system: SimilitudeSystem,
    schedule: Schedule,
    depth: int,
    start: IntervalSet,
    *,
    leaf_budget: int = DEFAULT_LEAF_BUDGET,
) -> IntervalSet:
    """Union of all depth-``depth`` compositions allowed by the schedule.

    Walks the branch space depth-first, carrying the composed affine map, so
    branch tuples are never materialized.  Index j_1 is the outermost map.
    """
    if start.is_empty:
        raise EmptySetError("iteration needs a non-empty starting set")
    if depth < 0:
        raise ValueError("depth must be non-negative")
    if leaf_count(schedule, depth) > leaf_budget:
        raise DepthOverflowError(
            f"depth {depth} yields {leaf_count(schedule, depth)} branches, over budget {leaf_budget}"
        )
    selections = [sorted(schedule.select(i)) for i in range(1, depth + 1)]
    maps = system.maps
    out = []
    stack: list[tuple[int, Fraction, Fraction]] = [(0, Fraction(1), Fraction(0))]
    while stack:
        level, s, b = stack.pop()
        if level == depth:
            if s > 0:
                out.extend((s * lo + b, s * hi + b) for lo, hi in start)
            else:
                out.extend((s * hi + b, s * lo + b) for lo, hi in start)
            continue
        for j in selections[level]:
            sim = maps[j - 1]
            stack.append((level + 1, s * sim.signed_ratio, s * sim.translation + b))
    return IntervalSet(out)


class ConvergenceResult(NamedTuple):
    depth: int
    approx: IntervalSet
    bound: Fraction


def converge(
    system: SimilitudeSystem,
    schedule: Schedule,
    start: IntervalSet,
    tol: RationalLike,
    *,
    leaf_budget: int = DEFAULT_LEAF_BUDGET,
) -> ConvergenceResult:
    """Iterate until the contraction bound certifies distance <= tol.

    The completeness argument for the limit set gives the a-priori bound
    d(psi^k(F), E) <= r^k * M / (1 - r) with M = max_j d(F, psi_j(F)) and
    r the largest ratio, so the returned depth carries a certificate rather
    than a heuristic fixed-point check.
    """
    tol = as_fraction(tol)
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    if start.is_empty:
        raise EmptySetError("convergence needs a non-empty starting set")
    m_const = max(start.hausdorff_distance(sim.apply(start)) for sim in system.maps)
    r = system.ratio_max
    bound = m_const / (1 - r)
    depth = 0
    while bound > tol:
        depth += 1
        bound *= r
    return ConvergenceResult(depth, iterate(system, schedule, depth, start, leaf_budget=leaf_budget), bound)

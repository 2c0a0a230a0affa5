"""Cantor set intersections driven by base-3 digit streams.

For an offset a in [0, 1] with digits a_1 a_2 ... (base 3), the translate
intersection K meet (K + a) is produced by the two Cantor maps x/3 and
x/3 + 2/3 under a digit-driven selection schedule.  The rule reads, for each
level k, the digit a_k together with the parity of a_0 + ... + a_{k-1}
(a_0 = 0): even parity keeps level k in class A, odd parity in the
complementary class.  Encoding (digit, class) as a state 0..5 gives

    state 0 (digit 0, even)  -> select {1, 2}
    state 1 (digit 1, even)  -> select {2}
    state 2 (digit 2, even)  -> select {2}
    state 3 (digit 0, odd)   -> select {1}
    state 4 (digit 1, odd)   -> select {1}
    state 5 (digit 2, odd)   -> select {1, 2}

The branch count after k levels is 2^f(k) where f counts states 0 and 5.
For i.i.d. uniform digits the states form a 6-state Markov chain whose
stationary law is uniform, f(k)/k tends to 1/3 almost surely, and the
resulting dimension of the intersection is ln 2 / (3 ln 3) for almost every
offset -- strictly below the ln 4 / ln 3 - 1 that a codimension-additivity
heuristic would predict.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import IO, Optional, Sequence

import numpy as np

from .errors import AmbiguousExpansionError, OutOfRangeError
from .ifs import Schedule, Similitude, SimilitudeSystem, iterate
from .intervals import IntervalSet

LN2_OVER_LN3 = math.log(2) / math.log(3)
TYPICAL_INTERSECTION_DIMENSION = math.log(2) / (3 * math.log(3))
MANDELBROT_CODIMENSION = math.log(4) / math.log(3) - 1

CANTOR_SYSTEM = SimilitudeSystem(
    [Similitude(Fraction(1, 3), Fraction(0)), Similitude(Fraction(1, 3), Fraction(2, 3))]
)
UNIT_INTERVAL = IntervalSet([(0, 1)])

# selection set per digit state; map indices are 1-based
_SELECTION_BY_STATE = (
    frozenset({1, 2}),
    frozenset({2}),
    frozenset({2}),
    frozenset({1}),
    frozenset({1}),
    frozenset({1, 2}),
)
_BRANCHING_STATES = (0, 5)

_RANDOM_BLOCK = 4096


def _is_power_of_three(n: int) -> bool:
    while n % 3 == 0:
        n //= 3
    return n == 1


def _random_block(seed: int, index: int, block: int) -> np.ndarray:
    # counter-based: each block depends only on (seed, stream index, block
    # number), so prefixes never change when the stream is extended and
    # samples can be generated in any order or thread layout
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(index, block))
    return np.random.Generator(np.random.Philox(ss)).integers(0, 3, size=_RANDOM_BLOCK, dtype=np.int64)


class DigitStream:
    """A deterministic base-3 digit source with cached prefixes.

    Sources: an exact rational (digits by long division; numbers with two
    expansions are rejected), an explicit digit list, or seeded uniform
    random digits.  The endpoints 0 and 1 are admitted with their canonical
    all-zeros / all-twos streams.
    """

    __slots__ = ("kind", "_digits", "_value", "_rem", "_den", "_all_twos", "seed", "index")

    def __init__(self):
        raise TypeError("use DigitStream.from_rational / from_digits / from_seed")

    @classmethod
    def _blank(cls, kind: str) -> "DigitStream":
        stream = object.__new__(cls)
        stream.kind = kind
        stream._digits = np.empty(0, dtype=np.int64)
        stream._value = None
        stream._rem = 0
        stream._den = 1
        stream._all_twos = False
        stream.seed = None
        stream.index = None
        return stream

    @classmethod
    def from_rational(cls, p: int, q: int) -> "DigitStream":
        value = Fraction(p, q)
        if not 0 <= value <= 1:
            raise OutOfRangeError(f"offset {value} lies outside [0, 1]")
        if 0 < value < 1 and _is_power_of_three(value.denominator):
            raise AmbiguousExpansionError(
                f"{value} has two base-3 expansions; its digit stream is undefined"
            )
        stream = cls._blank("rational")
        stream._value = value
        stream._rem = value.numerator
        stream._den = value.denominator
        stream._all_twos = value == 1
        return stream

    @classmethod
    def from_digits(cls, digits: Sequence[int]) -> "DigitStream":
        arr = np.asarray(list(digits), dtype=np.int64)
        if arr.size and (arr.min() < 0 or arr.max() > 2):
            raise ValueError("digits must be 0, 1 or 2")
        stream = cls._blank("digits")
        stream._digits = arr
        return stream

    @classmethod
    def from_seed(cls, seed: int, index: int = 0) -> "DigitStream":
        if seed < 0 or index < 0:
            raise ValueError("seed and stream index must be non-negative")
        stream = cls._blank("random")
        stream.seed = int(seed)
        stream.index = int(index)
        return stream

    def _extend(self, k: int) -> None:
        if self._digits.size >= k:
            return
        if self.kind == "digits":
            raise ValueError(f"explicit digit stream has only {self._digits.size} digits, {k} requested")
        if self.kind == "rational":
            new = []
            rem = self._rem
            for _ in range(k - self._digits.size):
                if self._all_twos:
                    new.append(2)
                    continue
                rem *= 3
                digit, rem = divmod(rem, self._den)
                new.append(digit)
            self._rem = rem
            self._digits = np.concatenate([self._digits, np.array(new, dtype=np.int64)])
            return
        blocks_have = self._digits.size // _RANDOM_BLOCK
        blocks_need = -(-k // _RANDOM_BLOCK)
        fresh = [_random_block(self.seed, self.index, b) for b in range(blocks_have, blocks_need)]
        self._digits = np.concatenate([self._digits[: blocks_have * _RANDOM_BLOCK]] + fresh)

    def digits(self, k: int) -> np.ndarray:
        """First k digits a_1..a_k (do not mutate the returned array)."""
        if k < 0:
            raise ValueError("digit count must be non-negative")
        self._extend(k)
        return self._digits[:k]

    def parities(self, k: int) -> np.ndarray:
        """Parity prefix s_i = (a_0 + ... + a_{i-1}) mod 2 with a_0 = 0."""
        d = self.digits(k)
        s = np.zeros(k, dtype=np.int64)
        if k > 1:
            s[1:] = np.cumsum(d[:-1], dtype=np.int64) & 1
        return s

    def states(self, k: int) -> np.ndarray:
        """Digit states 0..5: digit + 3 * parity class."""
        return self.digits(k) + 3 * self.parities(k)

    def exact_value(self) -> Optional[Fraction]:
        """The exact offset when one is determined by the source."""
        if self.kind == "rational":
            return self._value
        if self.kind == "digits":
            return self.truncated_value(int(self._digits.size))
        return None

    def truncated_value(self, k: int) -> Fraction:
        """sum of a_i * 3^-i over i <= k, exact."""
        num = 0
        for d in self.digits(k):
            num = 3 * num + int(d)
        return Fraction(num, 3 ** k)

    def to_json(self) -> dict:
        if self.kind == "rational":
            return {"kind": "rational", "value": str(self._value)}
        if self.kind == "digits":
            return {"kind": "digits", "digits": [int(d) for d in self._digits]}
        return {"kind": "random", "seed": self.seed, "index": self.index}

    @classmethod
    def from_json(cls, data: dict) -> "DigitStream":
        kind = data["kind"]
        if kind == "rational":
            value = Fraction(str(data["value"]))
            return cls.from_rational(value.numerator, value.denominator)
        if kind == "digits":
            return cls.from_digits(data["digits"])
        if kind == "random":
            return cls.from_seed(int(data["seed"]), int(data.get("index", 0)))
        raise ValueError(f"unknown digit stream kind {kind!r}")


def digits_of_rational(p: int, q: int, k: int) -> list[int]:
    """First k base-3 digits of p/q by long division.

    Rejects offsets in (0, 1) whose expansion terminates, since those have a
    second, all-twos expansion and the digit stream would be ambiguous.
    """
    return [int(d) for d in DigitStream.from_rational(p, q).digits(k)]


def classify(stream: DigitStream, k: int) -> list[int]:
    """Digit states of the first k levels (0..5, see module docstring)."""
    if k < 1:
        raise ValueError("classification needs k >= 1")
    return [int(s) for s in stream.states(k)]


def selection_sets(stream: DigitStream, k: int) -> list[frozenset[int]]:
    """The first k selection sets induced by the stream's digit states."""
    return [_SELECTION_BY_STATE[s] for s in classify(stream, k)]


def digit_schedule(stream: DigitStream) -> Schedule:
    """A schedule over the two Cantor maps driven by the stream."""
    def rule(k: int) -> frozenset[int]:
        return _SELECTION_BY_STATE[int(stream.states(k)[k - 1])]

    return Schedule(2, rule, kind="digits", source={"source": stream.to_json()})


def f_count(stream: DigitStream, k: int) -> int:
    """Number of branching levels among the first k (states 0 and 5).

    The depth-k branch count of the digit schedule is exactly 2^f_count.
    """
    if k < 1:
        raise ValueError("f_count needs k >= 1")
    states = stream.states(k)
    return int(np.count_nonzero((states == _BRANCHING_STATES[0]) | (states == _BRANCHING_STATES[1])))


def cantor_prefractal(k: int) -> IntervalSet:
    """Level-k middle-thirds set, built by direct deletion.

    Deliberately independent of the similitude machinery so it can serve as
    an oracle for the iterated construction.
    """
    if k < 0:
        raise ValueError("level must be non-negative")
    intervals = [(Fraction(0), Fraction(1))]
    for _ in range(k):
        nxt = []
        for lo, hi in intervals:
            w = (hi - lo) / 3
            nxt.append((lo, lo + w))
            nxt.append((hi - w, hi))
        intervals = nxt
    return IntervalSet(intervals)


def intersection_oracle(stream: DigitStream, k: int, precision: Optional[int] = None) -> IntervalSet:
    """Exact K_k intersect (K_k + a), bypassing the schedule machinery.

    For rational or explicit streams the exact offset is used; for random
    streams the offset is the digit sum truncated at max(k, precision),
    which keeps the truncation error inside the 3^-k slack the level-k
    comparison tolerates.
    """
    if k < 0:
        raise ValueError("level must be non-negative")
    a = stream.exact_value()
    if a is None:
        a = stream.truncated_value(max(k, precision or k))
    level = cantor_prefractal(k)
    return level.intersect(level.translate(a))


@dataclass(frozen=True)
class SandwichCheck:
    """Result of the two inclusions tying the oracle to the iteration."""

    lower: bool  # oracle set inside the scheduled iteration
    upper: bool  # scheduled iteration inside the oracle's 3^-k parallel body

    @property
    def holds(self) -> bool:
        return self.lower and self.upper


def sandwich_check(stream: DigitStream, k: int, precision: Optional[int] = None) -> SandwichCheck:
    """Verify S_k subset of psi^k([0,1]) subset of [S_k]_{3^-k} exactly."""
    oracle = intersection_oracle(stream, k, precision)
    iterated = iterate(CANTOR_SYSTEM, digit_schedule(stream), k, UNIT_INTERVAL)
    lower = oracle.is_subset_of(iterated)
    if oracle.is_empty:
        upper = iterated.is_empty
    else:
        upper = iterated.is_subset_of(oracle.parallel_body(Fraction(1, 3 ** k)))
    return SandwichCheck(lower, upper)


def markov_empirical(stream: DigitStream, k: int) -> tuple[np.ndarray, np.ndarray]:
    """Empirical 6x6 transition frequencies and state frequencies.

    Rows of states never visited before the last step are left at zero.
    """
    if k < 2:
        raise ValueError("transition counting needs k >= 2")
    states = stream.states(k)
    counts = np.zeros((6, 6), dtype=np.int64)
    np.add.at(counts, (states[:-1], states[1:]), 1)
    matrix = np.zeros((6, 6), dtype=float)
    row_totals = counts.sum(axis=1)
    visited = row_totals > 0
    matrix[visited] = counts[visited] / row_totals[visited, None]
    freqs = np.bincount(states, minlength=6) / k
    return matrix, freqs


def sample_dimension(stream: DigitStream, k: int) -> tuple[int, float, float]:
    """(f, f/k, s_hat) for one stream at depth k.

    With both ratios equal to 1/3 the window-min criterion collapses to the
    closed form s = (f/k) * ln2/ln3, which is exact and O(k).
    """
    f = f_count(stream, k)
    ratio = f / k
    return f, ratio, ratio * LN2_OVER_LN3


_CSV_HEADER = "sample_index,seed,k,f,f_over_k,s_hat"


@dataclass(frozen=True)
class MonteCarloResult:
    """Per-sample rows plus summary statistics for a seeded run."""

    n_samples: int
    k: int
    seed: int
    f_counts: tuple[int, ...]
    f_over_k: tuple[float, ...]
    s_hat: tuple[float, ...]

    @staticmethod
    def _stats(values: Sequence[float]) -> dict:
        arr = np.asarray(values, dtype=float)
        return {
            "mean": float(arr.mean()),
            "stddev": float(arr.std()),
            "min": float(arr.min()),
            "max": float(arr.max()),
        }

    def summary(self) -> dict:
        reference = {
            "intersection_dimension": TYPICAL_INTERSECTION_DIMENSION,
            "mandelbrot_codimension": MANDELBROT_CODIMENSION,
            "difference": MANDELBROT_CODIMENSION - TYPICAL_INTERSECTION_DIMENSION,
            "equal": math.isclose(
                TYPICAL_INTERSECTION_DIMENSION, MANDELBROT_CODIMENSION, abs_tol=1e-12
            ),
        }
        return {
            "n_samples": self.n_samples,
            "k": self.k,
            "seed": self.seed,
            "f_over_k": self._stats(self.f_over_k),
            "s_hat": self._stats(self.s_hat),
            "reference": reference,
        }

    def write_csv(self, fh: IO[str]) -> None:
        fh.write(_CSV_HEADER + "\n")
        for i in range(self.n_samples):
            fh.write(
                f"{i},{self.seed},{self.k},{self.f_counts[i]},"
                f"{self.f_over_k[i]:.9g},{self.s_hat[i]:.9g}\n"
            )


def monte_carlo_dimension(n_samples: int, k: int, seed: int) -> MonteCarloResult:
    """Estimate the typical intersection dimension from random offsets.

    Every sample draws its own digit stream from (seed, sample index), so the
    run is reproducible bit-for-bit regardless of evaluation order.
    """
    if n_samples < 1:
        raise ValueError("need at least one sample")
    if k < 1000:
        raise ValueError("depth must be at least 1000 for a meaningful frequency")
    fs, ratios, dims = [], [], []
    for i in range(n_samples):
        f, ratio, s_hat = sample_dimension(DigitStream.from_seed(seed, i), k)
        fs.append(f)
        ratios.append(ratio)
        dims.append(s_hat)
    return MonteCarloResult(n_samples, k, seed, tuple(fs), tuple(ratios), tuple(dims))

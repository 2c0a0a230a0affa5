"""Finite index trees over a schedule.

A tree is a finite set of branches (j_1, ..., j_k) forming a complete
antichain: every infinite index sequence allowed by the schedule has exactly
one of its prefixes in the set.  Trees are the combinatorial backbone of the
covering arguments, so they are exposed here as first-class, testable values.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Iterable, Iterator, Sequence

from .errors import DepthOverflowError, IndexOutOfScheduleError, NegativeWeightError
from .ifs import Schedule, SimilitudeSystem
from .intervals import RationalLike, as_fraction

Branch = tuple[int, ...]

MAX_VALIDATION_DEPTH = 16
DEFAULT_STOPPING_DEPTH = 1024
DEFAULT_STOPPING_LEAVES = 2 ** 24


class IndexTree:
    """An immutable set of branches; validity is checked separately."""

    __slots__ = ("branches",)

    def __init__(self, branches: Iterable[Sequence[int]]):
        self.branches: tuple[Branch, ...] = tuple(sorted(tuple(int(j) for j in b) for b in branches))

    def __len__(self) -> int:
        return len(self.branches)

    def __iter__(self) -> Iterator[Branch]:
        return iter(self.branches)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IndexTree):
            return NotImplemented
        return self.branches == other.branches

    def __hash__(self) -> int:
        return hash(self.branches)

    def __repr__(self) -> str:
        return f"IndexTree({list(self.branches)!r})"

    def branch_bounds(self) -> tuple[int, int]:
        """(shortest, longest) branch length."""
        if not self.branches:
            raise ValueError("an empty tree has no branch bounds")
        lengths = [len(b) for b in self.branches]
        return min(lengths), max(lengths)

    def to_json(self) -> dict:
        return {"branches": [list(b) for b in self.branches]}

    @classmethod
    def from_json(cls, data: dict) -> "IndexTree":
        return cls(data["branches"])


def branch_bounds(tree: IndexTree) -> tuple[int, int]:
    return tree.branch_bounds()


def full_tree(schedule: Schedule, k: int) -> IndexTree:
    """All depth-k branches of the schedule (always a valid tree)."""
    if k < 1:
        raise ValueError("full trees need depth >= 1")
    levels = [sorted(schedule.select(i)) for i in range(1, k + 1)]
    return IndexTree(product(*levels))


def validate_tree(
    branches: Iterable[Sequence[int]],
    schedule: Schedule,
    *,
    max_depth: int = MAX_VALIDATION_DEPTH,
) -> bool:
    """True iff the branches form a complete antichain over the schedule.

    Raises IndexOutOfScheduleError when a branch uses an index the schedule
    never offers at that level; structural failures (uncovered or doubly
    covered sequences) just return False.
    """
    tree = [tuple(int(j) for j in b) for b in branches]
    if not tree or any(len(b) == 0 for b in tree):
        return False
    depth = max(len(b) for b in tree)
    if depth > max_depth:
        raise DepthOverflowError(f"validation capped at depth {max_depth}, tree reaches {depth}")
    for branch in tree:
        for level, j in enumerate(branch, start=1):
            if j not in schedule.select(level):
                raise IndexOutOfScheduleError(
                    f"branch {branch} uses index {j} at level {level}, allowed: {sorted(schedule.select(level))}"
                )

    def covered(level: int, candidates: list[Branch]) -> bool:
        exact = [b for b in candidates if len(b) == level]
        if exact:
            # the node itself is a branch: it must be the only candidate left
            return len(candidates) == 1
        if not candidates:
            return False
        for j in schedule.select(level + 1):
            if not covered(level + 1, [b for b in candidates if b[level] == j]):
                return False
        return True

    return covered(0, tree)


def stopping_tree(
    system: SimilitudeSystem,
    schedule: Schedule,
    rho: RationalLike,
    *,
    max_depth: int = DEFAULT_STOPPING_DEPTH,
    leaf_budget: int = DEFAULT_STOPPING_LEAVES,
) -> IndexTree:
    """Cut every branch at the first depth where its ratio product <= rho.

    Because each step multiplies by some ratio r_j < 1, every branch ends by
    depth log(rho)/log(max ratio), and the product on a cut branch lies in
    [min_ratio * rho, rho].
    """
    rho = as_fraction(rho)
    if not 0 < rho < 1:
        raise ValueError("rho must lie strictly between 0 and 1")
    ratios = [sim.ratio for sim in system.maps]
    branches: list[Branch] = []
    stack: list[tuple[Branch, Fraction]] = [((), Fraction(1))]
    while stack:
        prefix, prod = stack.pop()
        if len(prefix) >= max_depth:
            raise DepthOverflowError(f"stopping rule exceeded depth budget {max_depth}")
        for j in sorted(schedule.select(len(prefix) + 1), reverse=True):
            new_prod = prod * ratios[j - 1]
            branch = prefix + (j,)
            if new_prod <= rho:
                branches.append(branch)
                if len(branches) > leaf_budget:
                    raise DepthOverflowError(f"stopping tree exceeded leaf budget {leaf_budget}")
            else:
                stack.append((branch, new_prod))
    return IndexTree(branches)


def tree_sum(tree: IndexTree, weights: Sequence[RationalLike]) -> Fraction:
    """Sum over branches of the products of the branch's weights, exact."""
    ws = [as_fraction(w) for w in weights]
    if any(w < 0 for w in ws):
        raise NegativeWeightError("tree weights must be non-negative")
    total = Fraction(0)
    for branch in tree:
        prod = Fraction(1)
        for j in branch:
            if not 1 <= j <= len(ws):
                raise IndexOutOfScheduleError(f"branch index {j} has no weight (got {len(ws)} weights)")
            prod *= ws[j - 1]
        total += prod
    return total


def level_sum(schedule: Schedule, k: int, weights: Sequence[RationalLike]) -> Fraction:
    """tree_sum of the full depth-k tree, via the per-level factorization.

    The sum over all depth-k branches of weight products factors into the
    product over levels of the selected weights' sums, so no enumeration of
    the (possibly huge) branch set is needed.
    """
    ws = [as_fraction(w) for w in weights]
    if any(w < 0 for w in ws):
        raise NegativeWeightError("tree weights must be non-negative")
    if k < 0:
        raise ValueError("depth must be non-negative")
    total = Fraction(1)
    for i in range(1, k + 1):
        total *= sum((ws[j - 1] for j in schedule.select(i)), Fraction(0))
    return total


def min_level_sum(
    schedule: Schedule, p: int, q: int, weights: Sequence[RationalLike]
) -> Fraction:
    """min over p <= k <= q of the full-tree sums at depth k."""
    if not 1 <= p <= q:
        raise ValueError("need 1 <= p <= q")
    return min(level_sum(schedule, k, weights) for k in range(p, q + 1))


def enumerate_trees(schedule: Schedule, max_depth: int) -> Iterator[IndexTree]:
    """Yield every valid tree whose longest branch is at most max_depth.

    The count grows doubly exponentially in max_depth; callers keep it small.
    """
    if max_depth < 1:
        return

    def grow(depth: int) -> list[tuple[Branch, ...]]:
        forests: list[tuple[Branch, ...]] = []
        if depth >= 1:
            forests.append(((),))
        if depth < max_depth:
            subs = grow(depth + 1)
            children = sorted(schedule.select(depth + 1))
            for combo in product(subs, repeat=len(children)):
                forests.append(
                    tuple((j,) + suffix for j, sub in zip(children, combo) for suffix in sub)
                )
        return forests

    for branches in grow(0):
        yield IndexTree(branches)

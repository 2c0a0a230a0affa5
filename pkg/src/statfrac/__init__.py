"""statfrac: statistically self-similar sets with exact interval arithmetic.

Construct attractor approximations of 1D similitude systems under per-level
selection schedules, estimate their dimension threshold, and reproduce the
typical dimension ln2/(3 ln3) of Cantor-set translate intersections by exact
digit arithmetic and seeded Monte Carlo.
"""

from .cantor import (
    CANTOR_SYSTEM,
    LN2_OVER_LN3,
    MANDELBROT_CODIMENSION,
    TYPICAL_INTERSECTION_DIMENSION,
    UNIT_INTERVAL,
    DigitStream,
    MonteCarloResult,
    SandwichCheck,
    cantor_prefractal,
    classify,
    digit_schedule,
    digits_of_rational,
    f_count,
    intersection_oracle,
    markov_empirical,
    monte_carlo_dimension,
    sample_dimension,
    sandwich_check,
    selection_sets,
)
from .dimension import (
    DimensionEstimate,
    box_count,
    box_counting_dimension,
    estimate_dimension,
    partial_sum_log,
)
from .errors import (
    AmbiguousExpansionError,
    DepthOverflowError,
    EmptySetError,
    HorizonTooSmallError,
    IndexOutOfScheduleError,
    InvalidIntervalError,
    NegativeWeightError,
    OutOfRangeError,
    StatFracError,
    TooFewScalesError,
)
from .ifs import (
    DEFAULT_LEAF_BUDGET,
    ConvergenceResult,
    Schedule,
    Similitude,
    SimilitudeSystem,
    apply,
    converge,
    iterate,
    leaf_count,
    schedule_from_json,
    system_from_json,
    system_to_json,
)
from .intervals import IntervalSet, Rational, as_fraction
from .trees import (
    IndexTree,
    branch_bounds,
    enumerate_trees,
    full_tree,
    level_sum,
    min_level_sum,
    stopping_tree,
    tree_sum,
    validate_tree,
)

__version__ = "0.1.0"

__all__ = [
    "AmbiguousExpansionError",
    "CANTOR_SYSTEM",
    "ConvergenceResult",
    "DEFAULT_LEAF_BUDGET",
    "DepthOverflowError",
    "DigitStream",
    "DimensionEstimate",
    "EmptySetError",
    "HorizonTooSmallError",
    "IndexOutOfScheduleError",
    "IndexTree",
    "IntervalSet",
    "InvalidIntervalError",
    "LN2_OVER_LN3",
    "MANDELBROT_CODIMENSION",
    "MonteCarloResult",
    "NegativeWeightError",
    "OutOfRangeError",
    "Rational",
    "SandwichCheck",
    "Schedule",
    "Similitude",
    "SimilitudeSystem",
    "StatFracError",
    "TYPICAL_INTERSECTION_DIMENSION",
    "TooFewScalesError",
    "UNIT_INTERVAL",
    "apply",
    "as_fraction",
    "box_count",
    "box_counting_dimension",
    "branch_bounds",
    "cantor_prefractal",
    "classify",
    "converge",
    "digit_schedule",
    "digits_of_rational",
    "enumerate_trees",
    "estimate_dimension",
    "f_count",
    "full_tree",
    "intersection_oracle",
    "iterate",
    "leaf_count",
    "level_sum",
    "markov_empirical",
    "min_level_sum",
    "monte_carlo_dimension",
    "partial_sum_log",
    "sample_dimension",
    "sandwich_check",
    "schedule_from_json",
    "selection_sets",
    "stopping_tree",
    "system_from_json",
    "system_to_json",
    "tree_sum",
    "validate_tree",
]

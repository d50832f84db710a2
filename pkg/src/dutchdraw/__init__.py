"""Dutch Draw baselines for binary classification.

A Dutch Draw classifier predicts a uniform random subset of a fixed size as
positive, ignoring all features.  Optimizing the expected score over the
subset-size grid yields a universal, training-free baseline for any
confusion-matrix measure.  This package provides the measure catalog, the
exact distribution machinery, closed-form and exact expectations, the
optimal baselines with their optimizing classifier sets, score rescaling,
a brute-force enumeration oracle, and a CLI.
"""

__version__ = "0.1.0"

from .baselines import (
    ARGOPT_TOL,
    BaselineResult,
    RescaleSpec,
    ThetaStarSet,
    baseline,
    baseline_exhaustive,
    build_rescale_spec,
    preferred_direction,
    rescale,
)
from .dd_core import (
    DiscreteTheta,
    LinearForm,
    ProblemShape,
    TpDistribution,
    discretize_theta,
    feasible_k_bounds,
    linear_form,
    measure_range,
    sample_dd,
    theta_star_grid,
    tp_pmf,
    tp_support,
)
from .errors import (
    DegenerateScale,
    DutchDrawError,
    LengthMismatch,
    NonBinaryValue,
    NonlinearMeasure,
    PtDenominatorZero,
    ShapeMismatch,
    ThetaOutOfRange,
    TooLarge,
    UndefinedMeasure,
    UnsupportedMeasure,
)
from .expectations import (
    ExpectationResult,
    expectation_closed,
    expectation_exact,
    expectation_mc,
    g2_second_moment,
)
from .measures import (
    ConfusionCounts,
    DefinednessRule,
    MeasureId,
    MeasureSpec,
    all_measures,
    check_definedness,
    confusion_counts,
    evaluate_measure,
    measure,
)
from .oracle import (
    OracleReport,
    enumerate_expectation,
    enumerate_tp_histogram,
    validate_all,
)
from ._engine import backend_name as engine_backend

__all__ = [
    "ARGOPT_TOL",
    "BaselineResult",
    "ConfusionCounts",
    "DefinednessRule",
    "DegenerateScale",
    "DiscreteTheta",
    "DutchDrawError",
    "ExpectationResult",
    "LengthMismatch",
    "LinearForm",
    "MeasureId",
    "MeasureSpec",
    "NonBinaryValue",
    "NonlinearMeasure",
    "OracleReport",
    "ProblemShape",
    "PtDenominatorZero",
    "RescaleSpec",
    "ShapeMismatch",
    "ThetaOutOfRange",
    "ThetaStarSet",
    "TooLarge",
    "TpDistribution",
    "UndefinedMeasure",
    "UnsupportedMeasure",
    "all_measures",
    "baseline",
    "baseline_exhaustive",
    "build_rescale_spec",
    "check_definedness",
    "confusion_counts",
    "discretize_theta",
    "engine_backend",
    "enumerate_expectation",
    "enumerate_tp_histogram",
    "evaluate_measure",
    "expectation_closed",
    "expectation_exact",
    "expectation_mc",
    "feasible_k_bounds",
    "g2_second_moment",
    "linear_form",
    "measure",
    "measure_range",
    "preferred_direction",
    "rescale",
    "sample_dd",
    "theta_star_grid",
    "tp_pmf",
    "tp_support",
    "validate_all",
]

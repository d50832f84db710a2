"""Brute-force ground truth by enumerating every prediction subset.

For small m, every one of the C(m, k) Dutch Draw predictions is generated
explicitly and scored through the ordinary point-evaluation path.  Nothing
here touches the pmf, the linear forms, or the closed expectations, so
agreement with those certifies them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import numpy as np

from .baselines import baseline, baseline_exhaustive
from .dd_core import ProblemShape, dd_definedness_violations, tp_pmf
from .errors import TooLarge, UndefinedMeasure
from .expectations import counts_at, expectation_closed, expectation_exact
from .measures import (
    MeasureId,
    MeasureSpec,
    all_measures,
    confusion_counts,
    evaluate_measure,
    measure,
)

ENUMERATION_LIMIT = 20


@dataclass
class OracleReport:
    """Outcome of a validation sweep: cell count, worst error, failures."""

    checked: int = 0
    max_abs_error: float = 0.0
    failures: list[tuple[str, float, float]] = field(default_factory=list)

    def record(self, cell: str, expected: float, got: float,
               tolerance: float) -> None:
        self.checked += 1
        err = abs(expected - got)
        if err > self.max_abs_error:
            self.max_abs_error = err
        if err > tolerance:
            self.failures.append((cell, expected, got))

    def record_mismatch(self, cell: str, note: str) -> None:
        self.checked += 1
        self.failures.append((f"{cell} ({note})", math.nan, math.nan))

    @property
    def ok(self) -> bool:
        return not self.failures

    def sorted_failures(self) -> list[tuple[str, float, float]]:
        return sorted(self.failures, key=lambda f: f[0])


def _canonical_y_true(shape: ProblemShape) -> np.ndarray:
    y = np.zeros(shape.m, dtype=np.int64)
    y[:shape.p] = 1
    return y


def _check_size(shape: ProblemShape) -> None:
    if shape.m > ENUMERATION_LIMIT:
        raise TooLarge(
            f"enumeration supports m <= {ENUMERATION_LIMIT}, got m={shape.m}"
        )


def enumerate_tp_histogram(shape: ProblemShape, k: int) -> dict[int, Fraction]:
    """Exact law of TP over all C(m, k) subsets, as rationals."""
    _check_size(shape)
    if not 0 <= k <= shape.m:
        raise ValueError(f"k must lie in [0, m]; got k={k}, m={shape.m}")
    total = math.comb(shape.m, k)
    tallies: dict[int, int] = {}
    for chosen in combinations(range(shape.m), k):
        tp = sum(1 for i in chosen if i < shape.p)
        tallies[tp] = tallies.get(tp, 0) + 1
    return {tp: Fraction(c, total) for tp, c in sorted(tallies.items())}


def enumerate_expectation(spec: MeasureSpec, shape: ProblemShape, k: int,
                          y_true: np.ndarray | None = None) -> float:
    """Mean measure value over every possible DD prediction, literally.

    Each subset becomes a 0/1 vector, goes through confusion_counts and
    evaluate_measure, and the values are averaged.  y_true defaults to the
    canonical vector (p ones, then zeros); any permutation gives the same
    answer because subsets are position-blind.
    """
    _check_size(shape)
    if not 0 <= k <= shape.m:
        raise ValueError(f"k must lie in [0, m]; got k={k}, m={shape.m}")
    if y_true is None:
        y_true = _canonical_y_true(shape)
    else:
        y_true = np.asarray(y_true)
        if y_true.size != shape.m or int(y_true.sum()) != shape.p:
            raise ValueError("y_true does not match the problem shape")
    values = []
    pred = np.zeros(shape.m, dtype=np.int64)
    for chosen in combinations(range(shape.m), k):
        pred[:] = 0
        pred[list(chosen)] = 1
        values.append(evaluate_measure(spec, confusion_counts(y_true, pred)))
    return math.fsum(values) / math.comb(shape.m, k)


def _expectation_from_histogram(spec: MeasureSpec, shape: ProblemShape, k: int,
                                hist: dict[int, Fraction]) -> float:
    """enumerate_expectation with the subset pass grouped by TP value."""
    return math.fsum(
        float(w) * evaluate_measure(spec, counts_at(shape, k, s))
        for s, w in hist.items()
    )


def _sweep_specs() -> list[MeasureSpec]:
    specs = all_measures(beta=1.0, include_pt=False)
    specs.append(measure(MeasureId.FBETA, beta=0.5))
    specs.append(measure(MeasureId.FBETA, beta=2.0))
    return specs


def validate_all(max_m: int, tolerance: float = 1e-10) -> OracleReport:
    """Sweep every (m <= max_m, p, k, measure) cell against the enumeration.

    Checks, per cell: pmf vs subset histogram, exact summation vs subset
    mean, closed form vs subset mean (linear measures), and the closed
    baseline vs the exhaustive scan (values and argopt sets).  Failures are
    collected, never raised.
    """
    if not 1 <= max_m <= ENUMERATION_LIMIT:
        raise ValueError(f"max_m must lie in [1, {ENUMERATION_LIMIT}], got {max_m}")
    report = OracleReport()
    specs = _sweep_specs()
    for m in range(1, max_m + 1):
        for p in range(0, m + 1):
            shape = ProblemShape(m=m, p=p)
            for k in range(0, m + 1):
                hist = enumerate_tp_histogram(shape, k)
                dist = tp_pmf(shape, k)
                cell = f"pmf m={m} p={p} k={k}"
                if list(hist) != list(dist.support):
                    report.record_mismatch(cell, "support mismatch")
                else:
                    for s, frac in hist.items():
                        report.record(f"{cell} s={s}", float(frac),
                                      dist.pmf(s), tolerance)
                for spec in specs:
                    if dd_definedness_violations(spec, shape, k):
                        continue
                    name = f"{spec.display_name} m={m} p={p} k={k}"
                    want = _expectation_from_histogram(spec, shape, k, hist)
                    got = expectation_exact(spec, shape, k).value
                    report.record(f"exact {name}", want, got, tolerance)
                    if spec.is_linear_in_tp:
                        closed = expectation_closed(spec, shape, k).value
                        report.record(f"closed {name}", want, closed, tolerance)
            for spec in specs:
                for direction in ("min", "max"):
                    name = f"baseline {spec.display_name} {direction} m={m} p={p}"
                    try:
                        fast = baseline(spec, shape, direction)
                    except UndefinedMeasure:
                        continue
                    scan = baseline_exhaustive(spec, shape, direction)
                    report.record(name, scan.value, fast.value, tolerance)
                    if fast.argopt.as_set() != scan.argopt.as_set():
                        report.record_mismatch(name, "argopt sets differ")
    report.failures = report.sorted_failures()
    return report

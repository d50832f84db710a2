"""The Dutch Draw classifier family.

A Dutch Draw classifier ignores the features entirely: it predicts a uniform
random subset of exactly round(M*theta) observations as positive.  That makes
the true-positive count hypergeometric, every linear measure a slope/intercept
transform of it, and expectations available in closed form.  This module
holds the discretized theta grid, the TP law, the per-measure linear forms,
attainable-value ranges, and the subset sampler.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import (
    NonBinaryValue,
    NonlinearMeasure,
    ShapeMismatch,
    ThetaOutOfRange,
    UndefinedMeasure,
)
from .measures import MeasureId, MeasureSpec


@dataclass(frozen=True)
class ProblemShape:
    """Dataset size and positive count (m, p); everything else follows."""

    m: int
    p: int

    def __post_init__(self) -> None:
        if not isinstance(self.m, (int, np.integer)) or isinstance(self.m, bool):
            raise ValueError(f"m must be an integer, got {self.m!r}")
        if not isinstance(self.p, (int, np.integer)) or isinstance(self.p, bool):
            raise ValueError(f"p must be an integer, got {self.p!r}")
        if self.m < 1:
            raise ValueError(f"m must be >= 1, got {self.m}")
        if not 0 <= self.p <= self.m:
            raise ValueError(f"p must lie in [0, m]; got p={self.p}, m={self.m}")

    @property
    def n(self) -> int:
        """Number of negatives."""
        return self.m - self.p


@dataclass(frozen=True)
class DiscreteTheta:
    """A grid point theta* = k/m: the classifier predicting k positives."""

    m: int
    k: int

    def __post_init__(self) -> None:
        if not 0 <= self.k <= self.m:
            raise ValueError(f"k must lie in [0, m]; got k={self.k}, m={self.m}")

    @property
    def theta_star(self) -> float:
        return self.k / self.m


@dataclass(frozen=True)
class LinearForm:
    """Slope/intercept pair: measure = a * TP + b for a fixed classifier."""

    a: float
    b: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise ValueError(f"linear form must be finite, got a={self.a}, b={self.b}")

    def value(self, tp: int | float) -> float:
        return self.a * tp + self.b


class TpDistribution:
    """Hypergeometric law of the true-positive count of one DD classifier.

    Probabilities are stored densely over the support [lo, hi] only.
    """

    def __init__(self, shape: ProblemShape, k: int, lo: int, probs: np.ndarray):
        self.shape = shape
        self.k = k
        self.lo = lo
        self.probs = probs

    @property
    def hi(self) -> int:
        return self.lo + len(self.probs) - 1

    @property
    def support(self) -> range:
        return range(self.lo, self.hi + 1)

    def pmf(self, s: int) -> float:
        if self.lo <= s <= self.hi:
            return float(self.probs[s - self.lo])
        return 0.0

    def items(self) -> Iterator[tuple[int, float]]:
        for i, w in enumerate(self.probs):
            yield self.lo + i, float(w)

    def mean(self) -> float:
        return float(np.dot(self.probs, np.arange(self.lo, self.hi + 1)))

    def __repr__(self) -> str:
        return (f"TpDistribution(m={self.shape.m}, p={self.shape.p}, "
                f"k={self.k}, support=[{self.lo}, {self.hi}])")


def discretize_theta(theta: float, m: int) -> DiscreteTheta:
    """Round m*theta to the nearest integer, ties away from zero.

    Half-up resolution is forced by the optimizer intervals being half-open
    at multiples of 1/(2m): theta = 1/(2m) must land on k = 1.
    """
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    if not (isinstance(theta, (int, float, np.floating, np.integer))
            and math.isfinite(theta)) or not 0.0 <= theta <= 1.0:
        raise ThetaOutOfRange(f"theta must lie in [0, 1], got {theta!r}")
    k = math.floor(m * theta + 0.5)
    return DiscreteTheta(m=m, k=min(k, m))


def theta_star_grid(m: int) -> list[DiscreteTheta]:
    """All m+1 distinct discretized classifiers: theta* in {0, 1/m, ..., 1}."""
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    return [DiscreteTheta(m=m, k=k) for k in range(m + 1)]


def tp_support(shape: ProblemShape, k: int) -> range:
    """Attainable TP values: max(0, k-n) .. min(p, k), inclusive."""
    if not 0 <= k <= shape.m:
        raise ValueError(f"k must lie in [0, m]; got k={k}, m={shape.m}")
    lo = max(0, k - shape.n)
    hi = min(shape.p, k)
    return range(lo, hi + 1)


def _log_factorials(upto: int) -> np.ndarray:
    return np.array([math.lgamma(x + 1.0) for x in range(upto + 1)])


def tp_pmf(shape: ProblemShape, k: int) -> TpDistribution:
    """Hypergeometric pmf of TP: C(p,s)*C(n,k-s)/C(m,k) on the support.

    Computed in log-gamma space with one exponentiation per support point,
    then divided by the accumulated total so the probabilities sum to
    exactly 1 (relative change <= ~1e-14).
    """
    sup = tp_support(shape, k)
    m, p, n = shape.m, shape.p, shape.n
    lgf = _log_factorials(m)
    log_cmk = lgf[m] - lgf[k] - lgf[m - k]
    logs = np.array([
        (lgf[p] - lgf[s] - lgf[p - s])
        + (lgf[n] - lgf[k - s] - lgf[n - k + s])
        - log_cmk
        for s in sup
    ])
    probs = np.exp(logs - logs.max())
    probs /= probs.sum()
    return TpDistribution(shape=shape, k=k, lo=sup.start, probs=probs)


def dd_definedness_violations(spec: MeasureSpec, shape: ProblemShape, k: int) -> list[str]:
    """Definedness of one (measure, shape, k) cell, with P-hat = k.

    Includes kappa's extra edge cases: chance agreement is exactly 1 at
    (p=m, k=m) and (p=0, k=0), so those cells are undefined.
    """
    viol = spec.definedness.violations(shape.m, shape.p, k)
    if spec.id is MeasureId.KAPPA:
        if (shape.p == shape.m and k == shape.m) or (shape.p == 0 and k == 0):
            viol = viol + ["P_e<1"]
    return viol


def feasible_k_bounds(spec: MeasureSpec, shape: ProblemShape) -> tuple[int, int]:
    """Contiguous range [kmin, kmax] of allowed classifiers for a measure.

    Raises UndefinedMeasure when the shape itself rules the measure out
    (e.g. TPR with p=0), or when no k survives the P-hat/N-hat requirements.
    Every per-k restriction trims an edge, so the feasible set is an interval.
    """
    shape_viol = [
        v for v in spec.definedness.violations(shape.m, shape.p, 1)
        if v in ("P>0", "N>0")
    ]
    if shape_viol:
        raise UndefinedMeasure(spec.display_name, shape_viol)
    kmin = 1 if spec.definedness.requires_phat_pos else 0
    kmax = shape.m - 1 if spec.definedness.requires_nhat_pos else shape.m
    if spec.id is MeasureId.KAPPA:
        if shape.p == shape.m:
            kmax = shape.m - 1
        if shape.p == 0:
            kmin = 1
    if kmin > kmax:
        raise UndefinedMeasure(spec.display_name, ["Phat>0", "Nhat>0"])
    return kmin, kmax


def linear_form(spec: MeasureSpec, shape: ProblemShape, k: int) -> LinearForm:
    """Slope/intercept of a linear measure under the classifier with P-hat = k."""
    if not spec.is_linear_in_tp:
        raise NonlinearMeasure(f"{spec.display_name} is not linear in TP")
    if not 0 <= k <= shape.m:
        raise ValueError(f"k must lie in [0, m]; got k={k}, m={shape.m}")
    viol = dd_definedness_violations(spec, shape, k)
    if viol:
        raise UndefinedMeasure(spec.display_name, viol)

    m, p, n = shape.m, shape.p, shape.n
    mid = spec.id
    if mid is MeasureId.TP:
        return LinearForm(1.0, 0.0)
    if mid is MeasureId.TN:
        return LinearForm(1.0, float(m - p - k))
    if mid is MeasureId.FN:
        return LinearForm(-1.0, float(p))
    if mid is MeasureId.FP:
        return LinearForm(-1.0, float(k))
    if mid is MeasureId.TPR:
        return LinearForm(1.0 / p, 0.0)
    if mid is MeasureId.TNR:
        return LinearForm(1.0 / n, 1.0 - k / n)
    if mid is MeasureId.FNR:
        return LinearForm(-1.0 / p, 1.0)
    if mid is MeasureId.FPR:
        return LinearForm(-1.0 / n, k / n)
    if mid is MeasureId.PPV:
        return LinearForm(1.0 / k, 0.0)
    if mid is MeasureId.NPV:
        return LinearForm(1.0 / (m - k), 1.0 - p / (m - k))
    if mid is MeasureId.FDR:
        return LinearForm(-1.0 / k, 1.0)
    if mid is MeasureId.FOR:
        return LinearForm(-1.0 / (m - k), p / (m - k))
    if mid is MeasureId.FBETA:
        b2 = spec.beta * spec.beta
        return LinearForm((1.0 + b2) / (b2 * p + k), 0.0)
    if mid is MeasureId.J:
        return LinearForm(m / (p * n), -k / n)
    if mid is MeasureId.MK:
        return LinearForm(m / (k * (m - k)), -p / (m - k))
    if mid is MeasureId.ACC:
        return LinearForm(2.0 / m, (m - p - k) / m)
    if mid is MeasureId.BACC:
        return LinearForm(m / (2.0 * p * n), (m - p - k) / (2.0 * n))
    if mid is MeasureId.MCC:
        c = math.sqrt(k * (m - k) * p * n)
        return LinearForm(m / c, -(p * k) / c)
    if mid is MeasureId.KAPPA:
        d = p * (m - k) + n * k
        return LinearForm(2.0 * m / d, -2.0 * k * p / d)
    if mid is MeasureId.FM:
        return LinearForm(1.0 / math.sqrt(p * k), 0.0)
    raise AssertionError(f"unhandled linear measure {mid}")  # pragma: no cover


def measure_range(spec: MeasureSpec, shape: ProblemShape, k: int) -> list[float]:
    """Attainable values of a linear measure under one classifier, ascending."""
    form = linear_form(spec, shape, k)
    vals = [form.value(s) for s in tp_support(shape, k)]
    return sorted(vals)


def sample_dd(rng_seed: int, shape: ProblemShape, k: int,
              y_true: np.ndarray) -> np.ndarray:
    """One draw: a 0/1 prediction vector with exactly k ones, uniform over
    all C(m, k) subsets; deterministic for a fixed seed."""
    if not 0 <= k <= shape.m:
        raise ValueError(f"k must lie in [0, m]; got k={k}, m={shape.m}")
    t = np.asarray(y_true)
    if t.ndim != 1 or t.size != shape.m:
        raise ShapeMismatch(f"y_true has length {t.size}, shape has m={shape.m}")
    if not np.isin(t, (0, 1)).all():
        raise NonBinaryValue("y_true contains non-binary values")
    if int(t.sum()) != shape.p:
        raise ShapeMismatch(
            f"y_true has {int(t.sum())} ones, shape has p={shape.p}"
        )
    rng = np.random.default_rng(rng_seed)
    pred = np.zeros(shape.m, dtype=np.int64)
    if k > 0:
        pred[rng.choice(shape.m, size=k, replace=False)] = 1
    return pred

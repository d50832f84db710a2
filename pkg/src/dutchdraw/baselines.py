"""Dutch Draw baselines: optimal expected scores over the theta* grid.

The baseline of a measure is the extreme (min or max) expected value over
all allowed DD classifiers.  Closed forms cover every measure except the
G2 maximum, which falls back to an exhaustive scan; the exhaustive scan is
also exposed on its own as the independent check of every closed form.
Also implements the [-1, 1] rescaling of a raw score against the baseline
band.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _engine
from .dd_core import ProblemShape, feasible_k_bounds
from .errors import DegenerateScale, UndefinedMeasure, UnsupportedMeasure
from .measures import MeasureId, MeasureSpec

ARGOPT_TOL = 1e-10

# measures one usually wants small; everything else is maximized
_MINIMIZED = {MeasureId.FN, MeasureId.FP, MeasureId.FNR, MeasureId.FPR,
              MeasureId.FDR, MeasureId.FOR}


def preferred_direction(mid: MeasureId) -> str:
    """Direction in which a model is conventionally judged on this measure."""
    return "min" if mid in _MINIMIZED else "max"


@dataclass(frozen=True)
class ThetaStarSet:
    """A subset of the classifier grid {0, ..., m}, stored compactly.

    kind is one of "only", "all", "all_except"; ks lists the named k values
    (for "all" it is empty).  "all" means every feasible k for the measure
    at hand, which for unstricted measures is the whole grid.
    """

    kind: str
    ks: tuple[int, ...]
    shape: ProblemShape

    def __post_init__(self) -> None:
        if self.kind not in ("only", "all", "all_except"):
            raise ValueError(f"bad ThetaStarSet kind {self.kind!r}")
        ks = tuple(sorted(set(self.ks)))
        object.__setattr__(self, "ks", ks)
        if any(not 0 <= k <= self.shape.m for k in ks):
            raise ValueError(f"k values must lie in [0, {self.shape.m}]: {ks}")
        if self.kind == "only" and not ks:
            raise ValueError("empty argopt set")
        if self.kind == "all_except" and len(ks) > self.shape.m:
            raise ValueError("all_except removes the whole grid")

    def materialize(self) -> list[int]:
        if self.kind == "only":
            return list(self.ks)
        if self.kind == "all":
            return list(range(self.shape.m + 1))
        excluded = set(self.ks)
        return [k for k in range(self.shape.m + 1) if k not in excluded]

    def contains(self, k: int) -> bool:
        if self.kind == "only":
            return k in self.ks
        if not 0 <= k <= self.shape.m:
            return False
        if self.kind == "all":
            return True
        return k not in self.ks

    def as_set(self) -> frozenset[int]:
        return frozenset(self.materialize())

    def theta_stars(self) -> list[float]:
        return [k / self.shape.m for k in self.materialize()]

    def to_dict(self) -> dict:
        return {"kind": self.kind, "ks": list(self.ks)}


@dataclass(frozen=True)
class BaselineResult:
    measure: MeasureId
    direction: str  # min | max
    value: float
    argopt: ThetaStarSet
    method: str  # closed_form | exhaustive
    beta: float | None = None


def _only(shape: ProblemShape, *ks: int) -> ThetaStarSet:
    return ThetaStarSet("only", tuple(ks), shape)


def _feasible_set(spec: MeasureSpec, shape: ProblemShape) -> ThetaStarSet:
    """Every feasible k, compressed to all/all_except."""
    kmin, kmax = feasible_k_bounds(spec, shape)
    excluded = tuple(range(0, kmin)) + tuple(range(kmax + 1, shape.m + 1))
    if not excluded:
        return ThetaStarSet("all", (), shape)
    return ThetaStarSet("all_except", excluded, shape)


def baseline(spec: MeasureSpec, shape: ProblemShape,
             direction: str) -> BaselineResult:
    """Optimal expected score over the allowed grid, by closed form.

    The G2 maximum has no closed form and silently delegates to the
    exhaustive scan.  Raises UndefinedMeasure when no classifier is
    feasible for the measure on this shape.
    """
    if direction not in ("min", "max"):
        raise ValueError(f"direction must be 'min' or 'max', got {direction!r}")
    if not spec.eligible_for_dd:
        raise UnsupportedMeasure(f"{spec.display_name} has no DD baseline")
    feasible_k_bounds(spec, shape)  # raises UndefinedMeasure on empty

    m, p, n = shape.m, shape.p, shape.n
    mid = spec.id
    want_max = direction == "max"

    def res(value: float, argopt: ThetaStarSet, method: str = "closed_form"):
        return BaselineResult(measure=mid, direction=direction, value=value,
                              argopt=argopt, method=method, beta=spec.beta)

    if mid is MeasureId.TP:
        if p == 0:  # expectation is 0 for every k
            return res(0.0, _feasible_set(spec, shape))
        return res(float(p), _only(shape, m)) if want_max \
            else res(0.0, _only(shape, 0))
    if mid is MeasureId.TN:
        if n == 0:
            return res(0.0, _feasible_set(spec, shape))
        return res(float(n), _only(shape, 0)) if want_max \
            else res(0.0, _only(shape, m))
    if mid is MeasureId.FN:
        if p == 0:
            return res(0.0, _feasible_set(spec, shape))
        return res(float(p), _only(shape, 0)) if want_max \
            else res(0.0, _only(shape, m))
    if mid is MeasureId.FP:
        if n == 0:
            return res(0.0, _feasible_set(spec, shape))
        return res(float(n), _only(shape, m)) if want_max \
            else res(0.0, _only(shape, 0))
    if mid is MeasureId.TPR:
        return res(1.0, _only(shape, m)) if want_max else res(0.0, _only(shape, 0))
    if mid is MeasureId.TNR:
        return res(1.0, _only(shape, 0)) if want_max else res(0.0, _only(shape, m))
    if mid is MeasureId.FNR:
        return res(1.0, _only(shape, 0)) if want_max else res(0.0, _only(shape, m))
    if mid is MeasureId.FPR:
        return res(1.0, _only(shape, m)) if want_max else res(0.0, _only(shape, 0))
    if mid in (MeasureId.PPV, MeasureId.FOR):
        return res(p / m, _feasible_set(spec, shape))
    if mid in (MeasureId.NPV, MeasureId.FDR):
        return res((m - p) / m, _feasible_set(spec, shape))
    if mid is MeasureId.FBETA:
        b2 = spec.beta * spec.beta
        if want_max:
            return res((1.0 + b2) * p / (b2 * p + m), _only(shape, m))
        return res((1.0 + b2) * p / (m * (b2 * p + 1.0)), _only(shape, 1))
    if mid in (MeasureId.J, MeasureId.MK, MeasureId.MCC, MeasureId.KAPPA):
        return res(0.0, _feasible_set(spec, shape))
    if mid is MeasureId.ACC:
        if 2 * p == m:
            return res(0.5, _feasible_set(spec, shape))
        lopsided = max(p, n) / m
        scarce = min(p, n) / m
        # all-negative wins when positives are the minority, and vice versa
        k_major = 0 if p < n else m
        k_minor = m - k_major
        if want_max:
            return res(lopsided, _only(shape, k_major))
        return res(scarce, _only(shape, k_minor))
    if mid is MeasureId.BACC:
        return res(0.5, _feasible_set(spec, shape))
    if mid is MeasureId.FM:
        if want_max:
            return res(math.sqrt(p / m), _only(shape, m))
        return res(math.sqrt(p) / m, _only(shape, 1))
    if mid is MeasureId.G2:
        if not want_max:
            return res(0.0, _only(shape, 0, m))
        return baseline_exhaustive(spec, shape, direction)
    if mid is MeasureId.TS:
        if not want_max:
            return res(0.0, _only(shape, 0))
        if p == 1:
            return res(p / m, _feasible_set_without_zero(shape))
        return res(p / m, _only(shape, m))
    raise AssertionError(f"unhandled measure {mid}")  # pragma: no cover


def _feasible_set_without_zero(shape: ProblemShape) -> ThetaStarSet:
    return ThetaStarSet("all_except", (0,), shape)


def baseline_exhaustive(spec: MeasureSpec, shape: ProblemShape,
                        direction: str) -> BaselineResult:
    """Scan every feasible k, compare exact expectations, collect ties.

    The scan computes the same support sum as expectation_exact (the engine
    backends are pinned to it by tests); ties within ARGOPT_TOL of the
    optimum form the argopt set.
    """
    if direction not in ("min", "max"):
        raise ValueError(f"direction must be 'min' or 'max', got {direction!r}")
    if not spec.eligible_for_dd:
        raise UnsupportedMeasure(f"{spec.display_name} has no DD baseline")
    kmin, kmax = feasible_k_bounds(spec, shape)  # raises when empty

    values = _engine.scan_expectations(spec, shape)
    feas = values[kmin:kmax + 1]
    opt = float(np.max(feas) if direction == "max" else np.min(feas))
    ties = kmin + np.flatnonzero(np.abs(feas - opt) <= ARGOPT_TOL)

    a, b = int(ties[0]), int(ties[-1])
    contiguous = len(ties) == b - a + 1
    n_excluded = a + (shape.m - b)
    if len(ties) == kmax - kmin + 1:
        argopt = _feasible_set(spec, shape)
    elif contiguous and 0 < n_excluded <= min(8, len(ties) - 1):
        # optimum everywhere but a few edge classifiers
        excluded = tuple(range(0, a)) + tuple(range(b + 1, shape.m + 1))
        argopt = ThetaStarSet("all_except", excluded, shape)
    else:
        argopt = ThetaStarSet("only", tuple(int(k) for k in ties), shape)
    return BaselineResult(measure=spec.id, direction=direction, value=opt,
                          argopt=argopt, method="exhaustive", beta=spec.beta)


@dataclass(frozen=True)
class RescaleSpec:
    """The anchors of the [-1, 1] rescaling: the DD baseline band
    [delta_min, delta_max] inside the measure codomain [mu_min, mu_max]."""

    delta_min: float
    delta_max: float
    mu_min: float
    mu_max: float

    def __post_init__(self) -> None:
        if not (self.mu_min <= self.delta_min <= self.delta_max <= self.mu_max):
            raise ValueError(
                "need mu_min <= delta_min <= delta_max <= mu_max, got "
                f"{self.mu_min}, {self.delta_min}, {self.delta_max}, {self.mu_max}"
            )


def rescale(mu: float, spec: RescaleSpec) -> float:
    """Map a raw score onto [-1, 1] anchored at the DD baseline band.

    Anything at or below delta_min maps to -1; [delta_min, delta_max] maps
    to [-1, 0]; (delta_max, mu_max] maps to (0, 1].  Callers must supply mu
    inside the codomain; a mu above a delta_max that already equals mu_max
    has no branch to land in and raises DegenerateScale.
    """
    if mu <= spec.delta_min:
        return -1.0
    if mu <= spec.delta_max:
        width = spec.delta_max - spec.delta_min
        if width == 0.0:
            raise DegenerateScale("delta_max == delta_min")
        return (mu - spec.delta_max) / width
    top = spec.mu_max - spec.delta_max
    if top == 0.0:
        raise DegenerateScale("mu_max == delta_max")
    return (mu - spec.delta_max) / top


def build_rescale_spec(spec: MeasureSpec, shape: ProblemShape) -> RescaleSpec:
    """Rescaling anchors for a measure on a shape, from its DD baselines.

    Only defined for measures with a bounded codomain.
    """
    lo, hi = spec.codomain
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise DegenerateScale(
            f"{spec.display_name} has an unbounded codomain; nothing to rescale"
        )
    dmin = baseline(spec, shape, "min").value
    dmax = baseline(spec, shape, "max").value
    return RescaleSpec(delta_min=dmin, delta_max=dmax, mu_min=lo, mu_max=hi)

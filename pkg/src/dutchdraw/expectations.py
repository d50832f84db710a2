"""Expected measure values under a Dutch Draw classifier.

Three routes: closed forms for the linear measures, exact finite summation
over the TP support for anything DD-eligible (the only route for G2 and TS),
and a seeded Monte Carlo cross-check.  The exact route reconstructs the
confusion counts per support point and reuses evaluate_measure, so there is
one value code path for all measures.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dd_core import (
    ProblemShape,
    dd_definedness_violations,
    tp_pmf,
    tp_support,
)
from .errors import NonlinearMeasure, UndefinedMeasure, UnsupportedMeasure
from .measures import ConfusionCounts, MeasureId, MeasureSpec, evaluate_measure


@dataclass(frozen=True)
class ExpectationResult:
    value: float
    method: str  # closed_form | exact_summation | monte_carlo
    stderr: float | None = None

    def __post_init__(self) -> None:
        if not math.isfinite(self.value):
            raise ValueError(f"expectation must be finite, got {self.value}")
        if (self.stderr is not None) != (self.method == "monte_carlo"):
            raise ValueError("stderr is present exactly for monte_carlo results")
        if self.stderr is not None and self.stderr < 0:
            raise ValueError("stderr must be >= 0")


def counts_at(shape: ProblemShape, k: int, s: int) -> ConfusionCounts:
    """Confusion counts forced by (shape, k) once TP = s."""
    return ConfusionCounts(tp=s, fp=k - s, fn=shape.p - s,
                           tn=shape.m - shape.p - k + s)


def _check_dd_cell(spec: MeasureSpec, shape: ProblemShape, k: int) -> None:
    if not spec.eligible_for_dd:
        raise UnsupportedMeasure(
            f"{spec.display_name} is excluded from DD expectations"
        )
    if not 0 <= k <= shape.m:
        raise ValueError(f"k must lie in [0, m]; got k={k}, m={shape.m}")
    viol = dd_definedness_violations(spec, shape, k)
    if viol:
        raise UndefinedMeasure(spec.display_name, viol)


def expectation_closed(spec: MeasureSpec, shape: ProblemShape,
                       k: int) -> ExpectationResult:
    """Closed-form expectation of a linear measure with theta* = k/m."""
    _check_dd_cell(spec, shape, k)
    if not spec.is_linear_in_tp:
        raise NonlinearMeasure(
            f"{spec.display_name} has no closed-form expectation"
        )
    m, p = shape.m, shape.p
    mid = spec.id
    if mid is MeasureId.TP:
        v = k * p / m
    elif mid is MeasureId.TN:
        v = (m - k) * (m - p) / m
    elif mid is MeasureId.FN:
        v = (m - k) * p / m
    elif mid is MeasureId.FP:
        v = k * (m - p) / m
    elif mid in (MeasureId.TPR, MeasureId.FPR):
        v = k / m
    elif mid in (MeasureId.TNR, MeasureId.FNR):
        v = (m - k) / m
    elif mid in (MeasureId.PPV, MeasureId.FOR):
        v = p / m
    elif mid in (MeasureId.NPV, MeasureId.FDR):
        v = (m - p) / m
    elif mid is MeasureId.FBETA:
        b2 = spec.beta * spec.beta
        v = (1.0 + b2) * k * p / (m * (b2 * p + k))
    elif mid in (MeasureId.J, MeasureId.MK, MeasureId.MCC, MeasureId.KAPPA):
        v = 0.0
    elif mid is MeasureId.ACC:
        v = ((m - k) * (m - p) + k * p) / (m * m)
    elif mid is MeasureId.BACC:
        v = 0.5
    elif mid is MeasureId.FM:
        v = math.sqrt(p * k) / m
    else:  # pragma: no cover
        raise AssertionError(f"unhandled linear measure {mid}")
    return ExpectationResult(value=v, method="closed_form")


def expectation_exact(spec: MeasureSpec, shape: ProblemShape,
                      k: int) -> ExpectationResult:
    """Exact expectation by summing value(s) * pmf(s) over the TP support.

    Summed in ascending support order with math.fsum; for linear measures
    this must agree with expectation_closed to 1e-10.
    """
    _check_dd_cell(spec, shape, k)
    dist = tp_pmf(shape, k)
    terms = [
        w * evaluate_measure(spec, counts_at(shape, k, s))
        for s, w in dist.items()
    ]
    return ExpectationResult(value=math.fsum(terms), method="exact_summation")


def _sample_tp_batch(shape: ProblemShape, k: int, samples: int,
                     rng: np.random.Generator) -> np.ndarray:
    """TP counts of `samples` independent uniform k-subset draws.

    Vectorized equivalent of repeated sample_dd calls against the canonical
    truth vector (p ones then zeros): pick the k smallest of m iid uniforms
    per row and count how many land among the first p positions.
    """
    m, p = shape.m, shape.p
    if k == 0:
        return np.zeros(samples, dtype=np.int64)
    if k == m:
        return np.full(samples, p, dtype=np.int64)
    out = np.empty(samples, dtype=np.int64)
    chunk = max(1, min(samples, 20_000_000 // m))
    done = 0
    while done < samples:
        rows = min(chunk, samples - done)
        u = rng.random((rows, m))
        chosen = np.argpartition(u, k - 1, axis=1)[:, :k]
        out[done:done + rows] = (chosen < p).sum(axis=1)
        done += rows
    return out


def expectation_mc(spec: MeasureSpec, shape: ProblemShape, k: int,
                   samples: int = 100_000, *, seed: int) -> ExpectationResult:
    """Monte Carlo estimate over `samples` DD draws; deterministic per seed."""
    _check_dd_cell(spec, shape, k)
    if samples < 1:
        raise ValueError(f"samples must be >= 1, got {samples}")
    rng = np.random.default_rng(seed)
    tps = _sample_tp_batch(shape, k, samples, rng)
    sup = tp_support(shape, k)
    value_by_tp = np.empty(len(sup))
    for i, s in enumerate(sup):
        value_by_tp[i] = evaluate_measure(spec, counts_at(shape, k, s))
    vals = value_by_tp[tps - sup.start]
    mean = float(vals.mean())
    if samples > 1:
        stderr = float(vals.std(ddof=1) / math.sqrt(samples))
    else:
        stderr = 0.0
    return ExpectationResult(value=mean, method="monte_carlo", stderr=stderr)


def mc_panel(n_cells: int = 50, samples: int = 100_000,
             seed: int = 0) -> list[dict]:
    """Monte Carlo consistency panel over randomized feasible cells.

    Each cell draws `samples` DD predictions and checks the empirical mean
    against the exact summation within 4 standard errors (plus a 1e-12
    absolute floor for degenerate cells whose stderr is exactly 0).
    """
    from .measures import all_measures  # local to avoid import cycle noise

    rng = np.random.default_rng(seed)
    specs = all_measures(beta=1.0, include_pt=False)
    cells = []
    while len(cells) < n_cells:
        spec = specs[rng.integers(len(specs))]
        m = int(rng.integers(2, 101))
        p = int(rng.integers(0, m + 1))
        shape = ProblemShape(m=m, p=p)
        k = int(rng.integers(0, m + 1))
        if dd_definedness_violations(spec, shape, k):
            continue
        exact = expectation_exact(spec, shape, k).value
        mc = expectation_mc(spec, shape, k, samples=samples,
                            seed=int(rng.integers(2 ** 63)))
        ok = abs(mc.value - exact) <= 4.0 * mc.stderr + 1e-12
        cells.append({
            "measure": spec.display_name, "m": m, "p": p, "k": k,
            "mc": mc.value, "exact": exact, "stderr": mc.stderr, "ok": ok,
        })
    return cells


def g2_second_moment(shape: ProblemShape, k: int) -> float:
    """Second moment of the geometric mean of TPR and TNR:
    theta*(1-theta*) * m/(m-1)."""
    if shape.p < 1 or shape.n < 1:
        raise UndefinedMeasure("G2", ["P>0"] if shape.p < 1 else ["N>0"])
    if not 0 <= k <= shape.m:
        raise ValueError(f"k must lie in [0, m]; got k={k}, m={shape.m}")
    m = shape.m
    ts = k / m
    return ts * (1.0 - ts) * m / (m - 1)

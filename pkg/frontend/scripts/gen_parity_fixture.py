#!/usr/bin/env python3
"""Generate the binding parity fixture from direct core-library calls.

The TypeScript client is required to return bit-identical doubles to the
library itself, including error propagation, across a 200-case randomized
panel.  This script computes the expected side by importing the library
directly (no CLI involved) and freezing the results to JSON.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from dutchdraw import (
    ProblemShape,
    baseline,
    build_rescale_spec,
    confusion_counts,
    expectation_closed,
    expectation_exact,
    measure,
    rescale,
)
from dutchdraw.errors import DutchDrawError
from dutchdraw.report import build_score_report

SEED = 20260809
MEASURES = ["tp", "tn", "fn", "fp", "tpr", "tnr", "fnr", "fpr", "ppv", "npv",
            "fdr", "for", "f1", "fbeta", "j", "mk", "acc", "bacc", "mcc",
            "kappa", "fm", "g2", "ts"]


def pick_shape(rng, max_m=400):
    m = int(rng.integers(1, max_m + 1))
    # bias towards edge shapes so Undefined paths get exercised
    roll = rng.random()
    if roll < 0.1:
        p = 0
    elif roll < 0.2:
        p = m
    else:
        p = int(rng.integers(0, m + 1))
    return m, p


def catch(fn):
    try:
        return {"value": fn()}, None
    except DutchDrawError as exc:
        return None, {"error": type(exc).__name__}


def baseline_case(rng):
    name = MEASURES[rng.integers(len(MEASURES))]
    if rng.random() < 0.05:
        name = "pt"  # UnsupportedMeasure path
    beta = float(np.round(rng.uniform(0.3, 3.0), 6)) if name == "fbeta" else 1.0
    m, p = pick_shape(rng)
    direction = "max" if rng.random() < 0.5 else "min"
    spec = measure(name, beta=beta)
    args = {"measure": name, "m": m, "p": p, "direction": direction,
            "beta": beta}
    try:
        res = baseline(spec, ProblemShape(m, p), direction)
        expect = {"value": res.value, "argopt": res.argopt.materialize(),
                  "method": res.method}
    except DutchDrawError as exc:
        expect = {"error": type(exc).__name__}
    return {"op": "baseline", "args": args, "expect": expect}


def expectation_case(rng):
    name = MEASURES[rng.integers(len(MEASURES))]
    if rng.random() < 0.05:
        name = "pt"
    beta = float(np.round(rng.uniform(0.3, 3.0), 6)) if name == "fbeta" else 1.0
    m, p = pick_shape(rng)
    k = int(rng.integers(0, m + 1))
    method = "closed" if rng.random() < 0.5 else "exact"
    spec = measure(name, beta=beta)
    fn = expectation_closed if method == "closed" else expectation_exact
    args = {"measure": name, "m": m, "p": p, "k": k, "method": method,
            "beta": beta}
    try:
        expect = {"value": fn(spec, ProblemShape(m, p), k).value}
    except DutchDrawError as exc:
        expect = {"error": type(exc).__name__}
    return {"op": "expectation", "args": args, "expect": expect}


def score_case(rng):
    m = int(rng.integers(1, 41))
    y_true = (rng.random(m) < rng.uniform(0.0, 1.0)).astype(int)
    if rng.random() < 0.15:
        y_pred = y_true.copy()  # TPR == FPR degenerate PT rows, perfect scores
    else:
        y_pred = (rng.random(m) < rng.uniform(0.0, 1.0)).astype(int)
    with_rescale = bool(rng.random() < 0.5)
    names = ["all"] if rng.random() < 0.5 else \
        sorted({MEASURES[rng.integers(len(MEASURES))] for _ in range(4)})
    beta = float(np.round(rng.uniform(0.3, 3.0), 6))

    from dutchdraw.measures import parse_measure_list
    specs = parse_measure_list(",".join(names), beta=beta, include_pt=True)
    counts = confusion_counts(y_true, y_pred)
    shape = ProblemShape(counts.total, counts.positives)
    report = build_score_report([(s, counts) for s in specs], shape,
                                with_rescale=with_rescale)
    rows = [{
        "measure": r["measure"],
        "display": r["display"],
        "model_score": r.get("model_score"),
        "score_error": r.get("score_error"),
        "baseline_min": r.get("baseline_min"),
        "baseline_max": r.get("baseline_max"),
        "verdict": r.get("verdict"),
        "rescaled": r.get("rescaled") if with_rescale else None,
    } for r in report["rows"]]
    return {"op": "score",
            "args": {"y_true": y_true.tolist(), "y_pred": y_pred.tolist(),
                     "measures": names, "beta": beta,
                     "rescale": with_rescale},
            "expect": {"rows": rows}}


def rescale_case(rng):
    bounded = ["tpr", "tnr", "fnr", "fpr", "ppv", "npv", "fdr", "for", "f1",
               "j", "mk", "acc", "bacc", "mcc", "kappa", "fm", "g2", "ts"]
    name = bounded[rng.integers(len(bounded))]
    if rng.random() < 0.1:
        name = "tp"  # unbounded codomain: DegenerateScale path
    m, p = pick_shape(rng, max_m=300)
    spec = measure(name)
    lo, hi = spec.codomain
    score = float(np.round(rng.uniform(lo if np.isfinite(lo) else 0.0,
                                       hi if np.isfinite(hi) else 1.0), 9))
    args = {"measure": name, "m": m, "p": p, "score": score, "beta": 1.0}
    try:
        rspec = build_rescale_spec(spec, ProblemShape(m, p))
        expect = {"value": rescale(score, rspec)}
    except DutchDrawError as exc:
        expect = {"error": type(exc).__name__}
    return {"op": "rescale", "args": args, "expect": expect}


def main() -> None:
    rng = np.random.default_rng(SEED)
    makers = [baseline_case, expectation_case, score_case, rescale_case]
    cases = [makers[i % 4](rng) for i in range(200)]
    out = Path(__file__).resolve().parent.parent / "fixtures" / "parity.json"
    out.parent.mkdir(exist_ok=True)
    out.write_text(json.dumps({"seed": SEED, "cases": cases}, indent=1))
    errors = sum(1 for c in cases if "error" in c["expect"])
    print(f"wrote {out} ({len(cases)} cases, {errors} error cases)")


if __name__ == "__main__":
    main()

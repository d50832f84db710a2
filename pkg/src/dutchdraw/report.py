"""Report assembly and rendering for the CLI.

A report is a plain JSON-shaped dict:

    {"shape": {"m": .., "p": ..},
     "rows": [{"measure", "display", "beta"?, "baseline_min", "baseline_max",
               "argopt_min": {"kind", "ks"}, "argopt_max": {...},
               "method_min", "method_max", "undefined"?,
               "model_score"?, "score_error"?, "verdict"?, "rescaled"?}, ...],
     "meta": {"tool", "version", "seed", "generated_at"}}

Tables are rendered purely from this dict, so JSON output parsed back in
re-renders to the identical table.
"""

from __future__ import annotations

import datetime as _dt
import json
import math
from decimal import ROUND_HALF_UP, Decimal

from . import __version__
from .baselines import (
    BaselineResult,
    baseline,
    build_rescale_spec,
    preferred_direction,
    rescale,
)
from .dd_core import ProblemShape
from .errors import (
    DegenerateScale,
    DutchDrawError,
    PtDenominatorZero,
    UndefinedMeasure,
    UnsupportedMeasure,
)
from .measures import ConfusionCounts, MeasureSpec, evaluate_measure

SCAN_WARN_CELLS = 10 ** 8


def _meta(seed: int | None) -> dict:
    return {
        "tool": "dutchdraw",
        "version": __version__,
        "seed": seed,
        "generated_at": _dt.datetime.now(_dt.timezone.utc).isoformat(),
    }


def _baseline_or_reasons(spec: MeasureSpec, shape: ProblemShape,
                         direction: str) -> tuple[BaselineResult | None, list[str]]:
    try:
        return baseline(spec, shape, direction), []
    except UndefinedMeasure as exc:
        return None, exc.violations
    except UnsupportedMeasure:
        return None, ["not a DD measure"]


def _attach_baselines(row: dict, spec: MeasureSpec, shape: ProblemShape,
                      direction: str) -> None:
    reasons: list[str] = []
    for d in ("min", "max"):
        if direction in (d, "both"):
            res, why = _baseline_or_reasons(spec, shape, d)
            reasons.extend(why)
        else:
            res = None
        if res is not None:
            row[f"baseline_{d}"] = res.value
            row[f"argopt_{d}"] = res.argopt.to_dict()
            row[f"method_{d}"] = res.method
        else:
            row[f"baseline_{d}"] = None
            row[f"argopt_{d}"] = None
            row[f"method_{d}"] = None
    if reasons:
        row["undefined"] = sorted(set(reasons))


def _base_row(spec: MeasureSpec) -> dict:
    row = {"measure": spec.id.value, "display": spec.display_name}
    if spec.beta is not None:
        row["beta"] = spec.beta
    return row


def build_baseline_report(shape: ProblemShape, specs: list[MeasureSpec],
                          direction: str = "both",
                          seed: int | None = None) -> dict:
    rows = []
    for spec in specs:
        row = _base_row(spec)
        _attach_baselines(row, spec, shape, direction)
        rows.append(row)
    return {"shape": {"m": shape.m, "p": shape.p}, "rows": rows,
            "meta": _meta(seed)}


def build_score_report(counts_by_spec: list[tuple[MeasureSpec, ConfusionCounts]],
                       shape: ProblemShape, with_rescale: bool = False,
                       seed: int | None = None) -> dict:
    rows = []
    for spec, counts in counts_by_spec:
        row = _base_row(spec)
        try:
            row["model_score"] = evaluate_measure(spec, counts)
        except (UndefinedMeasure, PtDenominatorZero) as exc:
            row["model_score"] = None
            row["score_error"] = f"{type(exc).__name__}: {exc}"
        if spec.eligible_for_dd:
            _attach_baselines(row, spec, shape, "both")
        else:  # PT: point score only, never a baseline
            row["baseline_min"] = row["baseline_max"] = None
            row["argopt_min"] = row["argopt_max"] = None
            row["method_min"] = row["method_max"] = None
        row["verdict"] = _verdict(spec, row)
        if with_rescale:
            row["rescaled"] = _rescaled(spec, shape, row)
        rows.append(row)
    return {"shape": {"m": shape.m, "p": shape.p}, "rows": rows,
            "meta": _meta(seed)}


def _verdict(spec: MeasureSpec, row: dict) -> str | None:
    score = row.get("model_score")
    if score is None:
        return None
    direction = preferred_direction(spec.id)
    anchor = row.get("baseline_max" if direction == "max" else "baseline_min")
    if anchor is None:
        return None
    better = score > anchor if direction == "max" else score < anchor
    return "beats_baseline" if better else "does_not_beat"


def _rescaled(spec: MeasureSpec, shape: ProblemShape, row: dict) -> float | None:
    score = row.get("model_score")
    if score is None or row.get("baseline_min") is None \
            or row.get("baseline_max") is None:
        return None
    try:
        return rescale(score, build_rescale_spec(spec, shape))
    except (DegenerateScale, DutchDrawError):
        return None


def report_to_json(report: dict) -> str:
    return json.dumps(report, indent=2, allow_nan=False)


def _fmt_value(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, str):
        return v
    f = float(v)
    if math.isclose(f, round(f), abs_tol=1e-9) and abs(f) < 1e15:
        return str(int(round(f)))
    return str(Decimal(repr(f)).quantize(Decimal("0.001"), rounding=ROUND_HALF_UP))


def _fmt_argopt(a) -> str:
    if a is None:
        return "-"
    kind, ks = a["kind"], a["ks"]
    if kind == "all":
        return "any k"
    body = "{" + ",".join(str(k) for k in ks) + "}"
    if kind == "all_except":
        return f"any k except {body}"
    return f"k={body}" if len(ks) == 1 else f"k in {body}"


def render_table(report: dict) -> str:
    """Fixed-width table of a report dict; 3-decimal, half-up display."""
    shape = report["shape"]
    rows = report["rows"]
    score_mode = any("model_score" in r for r in rows)
    if score_mode:
        header = ["measure", "score", "baseline_min", "baseline_max", "verdict"]
        if any("rescaled" in r for r in rows):
            header.append("rescaled")
    else:
        header = ["measure", "baseline_min", "argopt_min",
                  "baseline_max", "argopt_max"]

    table = [header]
    for r in rows:
        if r.get("undefined") and r.get("model_score") is None \
                and r.get("baseline_min") is None and r.get("baseline_max") is None:
            note = "undefined (" + ", ".join(r["undefined"]) + ")"
            table.append([r["display"], note] + ["-"] * (len(header) - 2))
            continue
        cells = [r["display"]]
        if score_mode:
            if r.get("model_score") is None and r.get("score_error"):
                cells.append(r["score_error"].split(":")[0])
            else:
                cells.append(_fmt_value(r.get("model_score")))
            cells.append(_fmt_value(r.get("baseline_min")))
            cells.append(_fmt_value(r.get("baseline_max")))
            cells.append(r.get("verdict") or "-")
            if "rescaled" in header:
                cells.append(_fmt_value(r.get("rescaled")))
        else:
            cells.append(_fmt_value(r.get("baseline_min")))
            cells.append(_fmt_argopt(r.get("argopt_min")))
            cells.append(_fmt_value(r.get("baseline_max")))
            cells.append(_fmt_argopt(r.get("argopt_max")))
        table.append(cells)

    widths = [max(len(row[i]) for row in table) for i in range(len(header))]
    lines = [f"shape: M={shape['m']} P={shape['p']}"]
    for row in table:
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
    return "\n".join(lines)

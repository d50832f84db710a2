"""Command-line front end.

Subcommands: baseline, score, verify, rescale, expectation.  Exit codes:
0 success, 1 verification failure (verify only), 2 usage/validation error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .baselines import build_rescale_spec, rescale
from .dd_core import ProblemShape
from .errors import DutchDrawError, UnsupportedMeasure
from .expectations import expectation_closed, expectation_exact, mc_panel
from .measures import MeasureId, confusion_counts, measure, parse_measure_list
from .oracle import ENUMERATION_LIMIT, validate_all
from .report import build_baseline_report, build_score_report, render_table, report_to_json

SCAN_WARN_CELLS = 10 ** 8


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dutchdraw",
        description="Dutch Draw baselines for binary classification measures",
    )
    parser.add_argument("--version", action="version",
                        version=f"dutchdraw {__version__}")
    sub = parser.add_subparsers(dest="cmd", required=True)

    def add_shape_flags(p, with_labels=True):
        p.add_argument("--positives", "-p", type=_positive_int,
                       help="number of positive observations P")
        p.add_argument("--total", "-m", type=_positive_int,
                       help="number of observations M")
        if with_labels:
            p.add_argument("--labels", help="CSV or JSON-lines label file")
            p.add_argument("--true-col", default="y_true",
                           help="column with the true labels")

    def add_common_flags(p):
        p.add_argument("--measures", default="all",
                       help="comma-separated list, or 'all'")
        p.add_argument("--beta", type=float, default=1.0,
                       help="beta for the F-beta score (default 1.0)")
        p.add_argument("--format", choices=("table", "json"), default="table")
        p.add_argument("--seed", type=int, default=None)

    b = sub.add_parser("baseline", help="DD baselines from a dataset shape")
    add_shape_flags(b)
    add_common_flags(b)
    b.add_argument("--direction", choices=("min", "max", "both"), default="both")
    b.set_defaults(func=cmd_baseline)

    s = sub.add_parser("score", help="score predictions against DD baselines")
    s.add_argument("--labels", required=True,
                   help="CSV or JSON-lines file with truth and predictions")
    s.add_argument("--true-col", default="y_true")
    s.add_argument("--pred-col", default="y_pred")
    add_common_flags(s)
    s.add_argument("--rescale", action="store_true",
                   help="also report scores rescaled to [-1, 1]")
    s.set_defaults(func=cmd_score)

    v = sub.add_parser("verify", help="run the brute-force oracle sweep")
    v.add_argument("--max-m", type=int, default=8,
                   help=f"enumerate all datasets up to this size (<= {ENUMERATION_LIMIT})")
    v.add_argument("--tolerance", type=float, default=1e-10)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--mc-cells", type=int, default=50,
                   help="Monte Carlo consistency panel size")
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("rescale", help="rescale a raw score against the DD band")
    add_shape_flags(r, with_labels=False)
    r.add_argument("--measures", required=True, help="a single measure name")
    r.add_argument("--beta", type=float, default=1.0)
    r.add_argument("--score", type=float, required=True,
                   help="the raw model score to rescale")
    r.add_argument("--format", choices=("table", "json"), default="json")
    r.set_defaults(func=cmd_rescale)

    e = sub.add_parser("expectation",
                       help="expected value of one measure for one classifier")
    e.add_argument("--measures", required=True, help="a single measure name")
    e.add_argument("--positives", "-p", type=_positive_int, required=True)
    e.add_argument("--total", "-m", type=_positive_int, required=True)
    e.add_argument("-k", type=_positive_int, required=True,
                   help="number of predicted positives")
    e.add_argument("--method", choices=("closed", "exact"), default="exact")
    e.add_argument("--beta", type=float, default=1.0)
    e.add_argument("--format", choices=("table", "json"), default="json")
    e.set_defaults(func=cmd_expectation)

    return parser


def load_labels(path: str, true_col: str,
                pred_col: str | None = None) -> tuple[np.ndarray, np.ndarray | None]:
    """Read 0/1 label columns from a CSV (header required) or JSON-lines file."""
    file = Path(path)
    if not file.exists():
        raise ValueError(f"labels file not found: {path}")
    rows: list[dict]
    if file.suffix.lower() in (".jsonl", ".ndjson"):
        rows = []
        with file.open() as fh:
            for lineno, line in enumerate(fh, 1):
                if line.strip():
                    rec = json.loads(line)
                    if not isinstance(rec, dict):
                        raise ValueError(f"{path}:{lineno}: expected an object")
                    rows.append(rec)
    else:
        with file.open(newline="") as fh:
            reader = csv.DictReader(fh)
            if reader.fieldnames is None:
                raise ValueError(f"{path}: missing header row")
            rows = list(reader)
    if not rows:
        raise ValueError(f"{path}: no data rows")

    def column(name: str) -> np.ndarray:
        out = np.empty(len(rows), dtype=np.int64)
        for i, rec in enumerate(rows):
            if name not in rec or rec[name] is None:
                raise ValueError(f"{path}: row {i + 1} is missing column {name!r}")
            raw = rec[name]
            text = raw.strip() if isinstance(raw, str) else raw
            # integers 0/1 only: no booleans, floats, or truthy strings
            if not isinstance(text, bool) and text in ("0", "1", 0, 1):
                out[i] = int(text)
            else:
                raise ValueError(
                    f"{path}: column {name!r}, row {i + 1}: "
                    f"expected 0 or 1, got {raw!r}"
                )
        return out

    y_true = column(true_col)
    y_pred = column(pred_col) if pred_col is not None else None
    return y_true, y_pred


def _shape_from_args(args) -> ProblemShape:
    if getattr(args, "labels", None) is not None:
        if args.positives is not None or args.total is not None:
            raise ValueError("give either --labels or --positives/--total, not both")
        y_true, _ = load_labels(args.labels, args.true_col)
        return ProblemShape(m=int(y_true.size), p=int(y_true.sum()))
    if args.positives is None or args.total is None:
        raise ValueError("need --positives and --total (or --labels)")
    if args.total < 1:
        raise ValueError("--total must be >= 1")
    if args.positives > args.total:
        raise ValueError("--positives cannot exceed --total")
    return ProblemShape(m=args.total, p=args.positives)


def _emit(report: dict, fmt: str) -> None:
    if fmt == "json":
        print(report_to_json(report))
    else:
        print(render_table(report))


def cmd_baseline(args) -> int:
    shape = _shape_from_args(args)
    specs = parse_measure_list(args.measures, beta=args.beta, include_pt=False)
    for s in specs:
        if not s.eligible_for_dd:
            raise UnsupportedMeasure(f"{s.display_name} has no DD baseline")
    if any(s.id is MeasureId.G2 for s in specs) \
            and shape.m * shape.p > SCAN_WARN_CELLS:
        print(f"warning: G2 maximum needs an exhaustive scan "
              f"(~{shape.m * shape.p:.1e} support cells); this may be slow",
              file=sys.stderr)
    report = build_baseline_report(shape, specs, direction=args.direction,
                                   seed=args.seed)
    _emit(report, args.format)
    return 0


def cmd_score(args) -> int:
    y_true, y_pred = load_labels(args.labels, args.true_col, args.pred_col)
    if y_pred is None:
        raise ValueError(f"--pred-col {args.pred_col!r} not found")
    counts = confusion_counts(y_true, y_pred)
    shape = ProblemShape(m=counts.total, p=counts.positives)
    specs = parse_measure_list(args.measures, beta=args.beta, include_pt=True)
    report = build_score_report([(s, counts) for s in specs], shape,
                                with_rescale=args.rescale, seed=args.seed)
    _emit(report, args.format)
    return 0


def cmd_verify(args) -> int:
    if not 1 <= args.max_m <= ENUMERATION_LIMIT:
        raise ValueError(f"--max-m must lie in [1, {ENUMERATION_LIMIT}]")
    if not args.tolerance > 0:
        raise ValueError("--tolerance must be positive")
    report = validate_all(args.max_m, tolerance=args.tolerance)
    print(f"oracle: checked={report.checked} cells, "
          f"max_abs_error={report.max_abs_error:.3e}, "
          f"failures={len(report.failures)}")
    for cell, want, got in report.failures[:20]:
        print(f"  FAIL {cell}: expected {want!r}, got {got!r}")
    if len(report.failures) > 20:
        print(f"  ... and {len(report.failures) - 20} more")

    cells = mc_panel(n_cells=args.mc_cells, seed=args.seed)
    need = args.mc_cells - 3  # binomial slack on the 4-sigma rule
    hits = sum(1 for c in cells if c["ok"])
    print(f"monte carlo: {hits}/{len(cells)} cells within "
          f"4 standard errors (need >= {need})")
    for c in cells:
        if not c["ok"]:
            print(f"  MC OUTLIER {c['measure']} m={c['m']} p={c['p']} "
                  f"k={c['k']}: mc={c['mc']:.6g} exact={c['exact']:.6g} "
                  f"stderr={c['stderr']:.3g}")

    ok = report.ok and hits >= need
    print("verification PASSED" if ok else "verification FAILED")
    return 0 if ok else 1


def cmd_rescale(args) -> int:
    shape = _shape_from_args(args)
    spec = measure(args.measures, beta=args.beta)
    rspec = build_rescale_spec(spec, shape)
    lo, hi = spec.codomain
    if not lo <= args.score <= hi:
        raise ValueError(
            f"--score must lie in the {spec.display_name} codomain [{lo}, {hi}]"
        )
    value = rescale(args.score, rspec)
    payload = {
        "measure": spec.id.value,
        "display": spec.display_name,
        "shape": {"m": shape.m, "p": shape.p},
        "score": args.score,
        "rescaled": value,
        "delta_min": rspec.delta_min,
        "delta_max": rspec.delta_max,
        "mu_min": rspec.mu_min,
        "mu_max": rspec.mu_max,
    }
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(f"{spec.display_name} on M={shape.m} P={shape.p}: "
              f"score {args.score:g} -> rescaled {value:.6f} "
              f"(band [{rspec.delta_min:.6f}, {rspec.delta_max:.6f}])")
    return 0


def cmd_expectation(args) -> int:
    shape = ProblemShape(m=args.total, p=args.positives)
    if args.k > shape.m:
        raise ValueError("-k cannot exceed --total")
    spec = measure(args.measures, beta=args.beta)
    fn = expectation_closed if args.method == "closed" else expectation_exact
    res = fn(spec, shape, args.k)
    payload = {
        "measure": spec.id.value,
        "display": spec.display_name,
        "shape": {"m": shape.m, "p": shape.p},
        "k": args.k,
        "method": res.method,
        "value": res.value,
    }
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(f"E[{spec.display_name}] at k={args.k} on M={shape.m} "
              f"P={shape.p}: {res.value!r} ({res.method})")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DutchDrawError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

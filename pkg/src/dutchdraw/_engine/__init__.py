"""Engine layer: exact-expectation scans over every classifier size.

Selects the compiled Cython kernel when the extension built, otherwise the
numpy fallback.  Set DUTCHDRAW_ENGINE=python to force the fallback.  Both
backends implement the same ``scan`` contract and are pinned against the
scalar reference path (expectations.expectation_exact) by the test suite.
"""

from __future__ import annotations

import importlib
import os
from functools import lru_cache

import numpy as np

from ..dd_core import ProblemShape, feasible_k_bounds
from ..errors import UndefinedMeasure, UnsupportedMeasure
from ..measures import MeasureSpec
from . import _scan_py
from ._codes import CODE_BY_ID

_FORCED = os.environ.get("DUTCHDRAW_ENGINE", "").strip().lower()

_kernel = None
if _FORCED != "python":
    try:
        _kernel = importlib.import_module("._kernel", __name__)
    except ImportError:
        _kernel = None

_backend = _kernel if _kernel is not None else _scan_py


def backend_name() -> str:
    """"compiled" when the Cython kernel is active, else "python"."""
    return "compiled" if _backend is not _scan_py else "python"


def available_backends() -> dict[str, object]:
    out: dict[str, object] = {"python": _scan_py}
    if _kernel is not None:
        out["compiled"] = _kernel
    return out


def scan_expectations_with(backend, spec: MeasureSpec,
                           shape: ProblemShape) -> np.ndarray:
    """Uncached scan on an explicit backend (used by tests and benchmarks)."""
    if not spec.eligible_for_dd:
        raise UnsupportedMeasure(f"{spec.display_name} has no DD expectation")
    out = np.full(shape.m + 1, np.nan)
    try:
        kmin, kmax = feasible_k_bounds(spec, shape)
    except UndefinedMeasure:
        return out
    backend.scan(shape.m, shape.p, CODE_BY_ID[spec.id],
                 spec.beta if spec.beta is not None else 1.0,
                 kmin, kmax, out)
    return out


@lru_cache(maxsize=256)
def _scan_cached(spec: MeasureSpec, shape: ProblemShape) -> np.ndarray:
    out = scan_expectations_with(_backend, spec, shape)
    out.flags.writeable = False
    return out


def scan_expectations(spec: MeasureSpec, shape: ProblemShape) -> np.ndarray:
    """Exact expectation of ``spec`` for every k in 0..m (NaN = infeasible).

    The returned array is cached and read-only.
    """
    return _scan_cached(spec, shape)

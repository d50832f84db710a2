"""Catalog of binary-classification evaluation measures.

Each measure is defined on the four confusion counts (tp, fp, fn, tn) and
carries its codomain plus the positivity requirements on P, N, P-hat, N-hat
that keep its denominators nonzero.  Point evaluation lives here; everything
distributional is built on top in dd_core / expectations / baselines.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    LengthMismatch,
    NonBinaryValue,
    PtDenominatorZero,
    UndefinedMeasure,
)

INF = math.inf


class MeasureId(Enum):
    """Measure identifiers, in catalog (presentation) order."""

    TP = "TP"
    TN = "TN"
    FN = "FN"
    FP = "FP"
    TPR = "TPR"
    TNR = "TNR"
    FNR = "FNR"
    FPR = "FPR"
    PPV = "PPV"
    NPV = "NPV"
    FDR = "FDR"
    FOR = "FOR"
    FBETA = "FBETA"
    J = "J"
    MK = "MK"
    ACC = "ACC"
    BACC = "BACC"
    MCC = "MCC"
    KAPPA = "KAPPA"
    FM = "FM"
    G2 = "G2"
    PT = "PT"
    TS = "TS"


@dataclass(frozen=True)
class ConfusionCounts:
    """The four confusion-matrix cells of a binary prediction."""

    tp: int
    fp: int
    fn: int
    tn: int

    def __post_init__(self) -> None:
        for name in ("tp", "fp", "fn", "tn"):
            v = getattr(self, name)
            if not isinstance(v, (int, np.integer)) or isinstance(v, bool) or v < 0:
                raise ValueError(f"{name} must be a non-negative integer, got {v!r}")
        if self.total < 1:
            raise ValueError("confusion counts must cover at least one observation")

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.fn + self.tn

    @property
    def positives(self) -> int:
        return self.tp + self.fn

    @property
    def negatives(self) -> int:
        return self.tn + self.fp

    @property
    def predicted_positives(self) -> int:
        return self.tp + self.fp

    @property
    def predicted_negatives(self) -> int:
        return self.tn + self.fn


@dataclass(frozen=True)
class DefinednessRule:
    """Positivity requirements keeping a measure's denominators nonzero."""

    requires_p_pos: bool = False
    requires_n_pos: bool = False
    requires_phat_pos: bool = False
    requires_nhat_pos: bool = False

    def violations(self, m: int, p: int, phat: int) -> list[str]:
        out = []
        if self.requires_p_pos and p == 0:
            out.append("P>0")
        if self.requires_n_pos and m - p == 0:
            out.append("N>0")
        if self.requires_phat_pos and phat == 0:
            out.append("Phat>0")
        if self.requires_nhat_pos and m - phat == 0:
            out.append("Nhat>0")
        return out


@dataclass(frozen=True)
class MeasureSpec:
    """One catalog entry: identity, definedness, codomain, linearity."""

    id: MeasureId
    definedness: DefinednessRule
    codomain: tuple[float, float]
    is_linear_in_tp: bool
    eligible_for_dd: bool
    beta: float | None = None

    def __post_init__(self) -> None:
        if self.id is MeasureId.FBETA:
            b = self.beta
            if b is None or not math.isfinite(b) or b <= 0:
                raise ValueError(f"FBETA needs a finite beta > 0, got {b!r}")
        elif self.beta is not None:
            raise ValueError(f"{self.id.value} does not take a beta parameter")

    @property
    def display_name(self) -> str:
        if self.id is MeasureId.FBETA:
            return "F1" if self.beta == 1.0 else f"F(beta={self.beta:g})"
        return self.id.value


_NONE = DefinednessRule()
_P = DefinednessRule(requires_p_pos=True)
_N = DefinednessRule(requires_n_pos=True)
_PHAT = DefinednessRule(requires_phat_pos=True)
_NHAT = DefinednessRule(requires_nhat_pos=True)
_P_PHAT = DefinednessRule(requires_p_pos=True, requires_phat_pos=True)
_P_N = DefinednessRule(requires_p_pos=True, requires_n_pos=True)
_PHAT_NHAT = DefinednessRule(requires_phat_pos=True, requires_nhat_pos=True)
_ALL = DefinednessRule(True, True, True, True)

# (definedness, codomain, linear_in_tp, dd_eligible) per measure.
_CATALOG: dict[MeasureId, tuple[DefinednessRule, tuple[float, float], bool, bool]] = {
    MeasureId.TP: (_NONE, (0.0, INF), True, True),
    MeasureId.TN: (_NONE, (0.0, INF), True, True),
    MeasureId.FN: (_NONE, (0.0, INF), True, True),
    MeasureId.FP: (_NONE, (0.0, INF), True, True),
    MeasureId.TPR: (_P, (0.0, 1.0), True, True),
    MeasureId.TNR: (_N, (0.0, 1.0), True, True),
    MeasureId.FNR: (_P, (0.0, 1.0), True, True),
    MeasureId.FPR: (_N, (0.0, 1.0), True, True),
    MeasureId.PPV: (_PHAT, (0.0, 1.0), True, True),
    MeasureId.NPV: (_NHAT, (0.0, 1.0), True, True),
    MeasureId.FDR: (_PHAT, (0.0, 1.0), True, True),
    MeasureId.FOR: (_NHAT, (0.0, 1.0), True, True),
    MeasureId.FBETA: (_P_PHAT, (0.0, 1.0), True, True),
    MeasureId.J: (_P_N, (-1.0, 1.0), True, True),
    MeasureId.MK: (_PHAT_NHAT, (-1.0, 1.0), True, True),
    MeasureId.ACC: (_NONE, (0.0, 1.0), True, True),
    MeasureId.BACC: (_P_N, (0.0, 1.0), True, True),
    MeasureId.MCC: (_ALL, (-1.0, 1.0), True, True),
    MeasureId.KAPPA: (_NONE, (-1.0, 1.0), True, True),
    MeasureId.FM: (_P_PHAT, (0.0, 1.0), True, True),
    MeasureId.G2: (_P_N, (0.0, 1.0), False, True),
    MeasureId.PT: (_P_N, (0.0, 1.0), False, False),
    MeasureId.TS: (_P, (0.0, 1.0), False, True),
}

_ALIASES = {
    "f1": (MeasureId.FBETA, 1.0),
    "fbeta": (MeasureId.FBETA, None),
    "kappa": (MeasureId.KAPPA, None),
    "for": (MeasureId.FOR, None),
}


def measure(name: str | MeasureId, beta: float = 1.0) -> MeasureSpec:
    """Resolve a measure name (case-insensitive) to its catalog spec.

    ``beta`` is only consulted for the F-beta score; the alias "f1" pins
    beta to 1 regardless.
    """
    forced_beta = None
    if isinstance(name, MeasureId):
        mid = name
    else:
        key = str(name).strip().lower()
        if key in _ALIASES:
            mid, forced_beta = _ALIASES[key]
        else:
            try:
                mid = MeasureId(key.upper())
            except ValueError:
                raise ValueError(f"unknown measure {name!r}") from None
    rule, codomain, linear, eligible = _CATALOG[mid]
    b = None
    if mid is MeasureId.FBETA:
        b = float(forced_beta if forced_beta is not None else beta)
    return MeasureSpec(mid, rule, codomain, linear, eligible, b)


def all_measures(beta: float = 1.0, include_pt: bool = True) -> list[MeasureSpec]:
    """Every catalog measure in presentation order, optionally without PT."""
    out = [measure(mid, beta=beta) for mid in MeasureId]
    if not include_pt:
        out = [s for s in out if s.id is not MeasureId.PT]
    return out


def confusion_counts(y_true: Sequence[int], y_pred: Sequence[int]) -> ConfusionCounts:
    """Tally the four confusion cells of a prediction against the truth."""
    t = np.asarray(y_true)
    q = np.asarray(y_pred)
    if t.ndim != 1 or q.ndim != 1 or t.shape != q.shape:
        raise LengthMismatch(
            f"y_true has length {t.shape}, y_pred has length {q.shape}"
        )
    if t.size < 1:
        raise LengthMismatch("need at least one observation")
    for name, v in (("y_true", t), ("y_pred", q)):
        if not np.isin(v, (0, 1)).all():
            bad = v[~np.isin(v, (0, 1))][0]
            raise NonBinaryValue(f"{name} contains non-binary value {bad!r}")
    t = t.astype(np.int64)
    q = q.astype(np.int64)
    tp = int((t & q).sum())
    fp = int(((1 - t) & q).sum())
    fn = int((t & (1 - q)).sum())
    tn = int(((1 - t) & (1 - q)).sum())
    return ConfusionCounts(tp=tp, fp=fp, fn=fn, tn=tn)


def check_definedness(spec: MeasureSpec, m: int, p: int, phat: int) -> list[str]:
    """Violated domain requirements for the given population/prediction split.

    Returns an empty list when the measure is defined; never raises.
    """
    if not (0 <= p <= m and 0 <= phat <= m and m >= 1):
        raise ValueError(f"invalid shape: m={m}, p={p}, phat={phat}")
    return spec.definedness.violations(m, p, phat)


def evaluate_measure(spec: MeasureSpec, counts: ConfusionCounts) -> float:
    """Point value of a measure on raw confusion counts.

    Raises UndefinedMeasure when a domain requirement fails (and for
    kappa's chance-agreement-one case), PtDenominatorZero when PT hits
    TPR == FPR.
    """
    tp, fp, fn, tn = counts.tp, counts.fp, counts.fn, counts.tn
    m = counts.total
    p = counts.positives
    n = counts.negatives
    phat = counts.predicted_positives
    nhat = counts.predicted_negatives

    viol = spec.definedness.violations(m, p, phat)
    if viol:
        raise UndefinedMeasure(spec.display_name, viol)

    mid = spec.id
    if mid is MeasureId.TP:
        return float(tp)
    if mid is MeasureId.TN:
        return float(tn)
    if mid is MeasureId.FN:
        return float(fn)
    if mid is MeasureId.FP:
        return float(fp)
    if mid is MeasureId.TPR:
        return tp / p
    if mid is MeasureId.TNR:
        return tn / n
    if mid is MeasureId.FNR:
        return fn / p
    if mid is MeasureId.FPR:
        return fp / n
    if mid is MeasureId.PPV:
        return tp / phat
    if mid is MeasureId.NPV:
        return tn / nhat
    if mid is MeasureId.FDR:
        return fp / phat
    if mid is MeasureId.FOR:
        return fn / nhat
    if mid is MeasureId.FBETA:
        b2 = spec.beta * spec.beta
        return (1.0 + b2) * tp / (b2 * p + phat)
    if mid is MeasureId.J:
        return tp / p + tn / n - 1.0
    if mid is MeasureId.MK:
        return tp / phat + tn / nhat - 1.0
    if mid is MeasureId.ACC:
        return (tp + tn) / m
    if mid is MeasureId.BACC:
        return (tp / p + tn / n) / 2.0
    if mid is MeasureId.MCC:
        return (tp * tn - fp * fn) / math.sqrt(phat * nhat * p * n)
    if mid is MeasureId.KAPPA:
        # chance agreement P_e hits 1 exactly when phat*p + nhat*n == m^2
        if phat * p + nhat * n == m * m:
            raise UndefinedMeasure(spec.display_name, ["P_e<1"])
        po = (tp + tn) / m
        pe = (phat * p + nhat * n) / (m * m)
        return (po - pe) / (1.0 - pe)
    if mid is MeasureId.FM:
        return math.sqrt((tp / p) * (tp / phat))
    if mid is MeasureId.G2:
        return math.sqrt((tp / p) * (tn / n))
    if mid is MeasureId.PT:
        # degenerate exactly when tp/p == fp/n, i.e. tp*n == fp*p
        if tp * n == fp * p:
            raise PtDenominatorZero(
                f"PT undefined: TPR == FPR == {tp / p:.6g} (0/0)"
            )
        tpr = tp / p
        fpr = fp / n
        return (math.sqrt(tpr * fpr) - fpr) / (tpr - fpr)
    if mid is MeasureId.TS:
        return tp / (tp + fp + fn)
    raise AssertionError(f"unhandled measure {mid}")  # pragma: no cover


def parse_measure_list(text: str | Iterable[str], beta: float = 1.0,
                       include_pt: bool = True) -> list[MeasureSpec]:
    """Parse a comma-separated measure list; "all" expands to the catalog."""
    if isinstance(text, str):
        items = [t for t in (s.strip() for s in text.split(",")) if t]
    else:
        items = list(text)
    if not items:
        raise ValueError("empty measure list")
    if len(items) == 1 and items[0].lower() == "all":
        return all_measures(beta=beta, include_pt=include_pt)
    return [measure(t, beta=beta) for t in items]

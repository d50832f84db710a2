"""Integer codes for the scan kernels (mirrored in _kernel.pyx)."""

from __future__ import annotations

from ..measures import MeasureId

CODE_BY_ID = {
    MeasureId.TP: 0,
    MeasureId.TN: 1,
    MeasureId.FN: 2,
    MeasureId.FP: 3,
    MeasureId.TPR: 4,
    MeasureId.TNR: 5,
    MeasureId.FNR: 6,
    MeasureId.FPR: 7,
    MeasureId.PPV: 8,
    MeasureId.NPV: 9,
    MeasureId.FDR: 10,
    MeasureId.FOR: 11,
    MeasureId.FBETA: 12,
    MeasureId.J: 13,
    MeasureId.MK: 14,
    MeasureId.ACC: 15,
    MeasureId.BACC: 16,
    MeasureId.MCC: 17,
    MeasureId.KAPPA: 18,
    MeasureId.FM: 19,
    MeasureId.G2: 20,
    MeasureId.TS: 21,
}

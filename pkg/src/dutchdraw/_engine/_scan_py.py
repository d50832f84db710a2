"""Pure-Python (numpy) scan engine.

Computes the exact DD expectation of one measure for every classifier size
k in [kmin, kmax] by summing value(s) * pmf(s) over the TP support.  Rows
are processed in blocks; each row's support is restricted to a 14-sigma
window around the hypergeometric mode (neglected relative mass below
~1e-25, far under every tolerance used in this package) and weights are
renormalized per row, which also guards against underflow at large m.
"""

from __future__ import annotations

import math

import numpy as np

_ROWS_PER_BLOCK = 512


def _values(code: int, s, k, m: float, p: float, n: float, b2: float):
    fp = k - s
    fn = p - s
    tn = n - k + s
    if code == 0:
        return s + 0.0
    if code == 1:
        return tn + 0.0
    if code == 2:
        return fn + 0.0
    if code == 3:
        return fp + 0.0
    if code == 4:
        return s / p
    if code == 5:
        return tn / n
    if code == 6:
        return fn / p
    if code == 7:
        return fp / n
    if code == 8:
        return s / k
    if code == 9:
        return tn / (m - k)
    if code == 10:
        return fp / k
    if code == 11:
        return fn / (m - k)
    if code == 12:
        return (1.0 + b2) * s / (b2 * p + k)
    if code == 13:
        return s / p + tn / n - 1.0
    if code == 14:
        return s / k + tn / (m - k) - 1.0
    if code == 15:
        return (s + tn) / m
    if code == 16:
        return (s / p + tn / n) / 2.0
    if code == 17:
        return (s * tn - fp * fn) / np.sqrt(k * (m - k) * p * n)
    if code == 18:
        po = (s + tn) / m
        pe = (k * p + (m - k) * n) / (m * m)
        return (po - pe) / (1.0 - pe)
    if code == 19:
        return np.sqrt((s / p) * (s / k))
    if code == 20:
        return np.sqrt((s / p) * (tn / n))
    if code == 21:
        return s / (p + k - s)
    raise ValueError(f"unknown measure code {code}")


def scan(m: int, p: int, code: int, beta: float,
         kmin: int, kmax: int, out: np.ndarray) -> None:
    n = m - p
    b2 = beta * beta
    lgf = np.array([math.lgamma(x + 1.0) for x in range(m + 2)])
    ks = np.arange(kmin, kmax + 1, dtype=np.int64)
    for a in range(0, len(ks), _ROWS_PER_BLOCK):
        k = ks[a:a + _ROWS_PER_BLOCK][:, None]
        lo = np.maximum(0, k - n)
        hi = np.minimum(p, k)
        mode = np.clip((k + 1) * (p + 1) // (m + 2), lo, hi)
        sigma = np.sqrt(k * (m - k) * p * n / (float(m) * m * max(m - 1, 1)))
        win = np.ceil(14.0 * sigma).astype(np.int64) + 8
        lo_eff = np.maximum(lo, mode - win)
        hi_eff = np.minimum(hi, mode + win)
        width = int((hi_eff - lo_eff).max()) + 1
        s = lo_eff + np.arange(width, dtype=np.int64)[None, :]
        valid = s <= hi_eff
        sc = np.where(valid, s, 0)
        logw = ((lgf[p] - lgf[sc] - lgf[p - sc])
                + (lgf[n] - lgf[np.clip(k - sc, 0, m)]
                   - lgf[np.clip(n - k + sc, 0, m)])
                - (lgf[m] - lgf[k] - lgf[m - k]))
        logw = np.where(valid, logw, -np.inf)
        w = np.exp(logw - logw.max(axis=1, keepdims=True))
        with np.errstate(divide="ignore", invalid="ignore"):
            v = _values(code, sc.astype(np.float64), k.astype(np.float64),
                        float(m), float(p), float(n), b2)
        v = np.where(valid, v, 0.0)
        out[kmin + a:kmin + a + k.shape[0]] = (w * v).sum(axis=1) / w.sum(axis=1)

# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled scan kernel.

Same contract as _scan_py.scan: exact DD expectation of one measure for
every classifier size k in [kmin, kmax], written into ``out``.  Each row
anchors the hypergeometric recurrence at the pmf mode and walks outward
until the relative weight drops below 1e-30, then divides by the
accumulated mass (neglected relative mass below ~1e-25).

Measure codes mirror _codes.py.
"""

import numpy as np

from libc.math cimport exp, lgamma, sqrt


cdef double _value(int code, double s, double k, double m, double p,
                   double n, double b2) noexcept nogil:
    cdef double fp = k - s
    cdef double fn = p - s
    cdef double tn = n - k + s
    cdef double po, pe
    if code == 0:
        return s
    elif code == 1:
        return tn
    elif code == 2:
        return fn
    elif code == 3:
        return fp
    elif code == 4:
        return s / p
    elif code == 5:
        return tn / n
    elif code == 6:
        return fn / p
    elif code == 7:
        return fp / n
    elif code == 8:
        return s / k
    elif code == 9:
        return tn / (m - k)
    elif code == 10:
        return fp / k
    elif code == 11:
        return fn / (m - k)
    elif code == 12:
        return (1.0 + b2) * s / (b2 * p + k)
    elif code == 13:
        return s / p + tn / n - 1.0
    elif code == 14:
        return s / k + tn / (m - k) - 1.0
    elif code == 15:
        return (s + tn) / m
    elif code == 16:
        return (s / p + tn / n) / 2.0
    elif code == 17:
        return (s * tn - fp * fn) / sqrt(k * (m - k) * p * n)
    elif code == 18:
        po = (s + tn) / m
        pe = (k * p + (m - k) * n) / (m * m)
        return (po - pe) / (1.0 - pe)
    elif code == 19:
        return sqrt((s / p) * (s / k))
    elif code == 20:
        return sqrt((s / p) * (tn / n))
    else:
        return s / (p + k - s)


def scan(int m, int p, int code, double beta,
         int kmin, int kmax, double[::1] out):
    cdef int n = m - p
    cdef double b2 = beta * beta
    cdef double dm = m, dp = p, dn = n
    cdef int k, lo, hi, mode, s
    cdef long long num
    cdef double dk, w0, w, acc, z, cut, lcmk

    lgf_arr = np.empty(m + 2, dtype=np.float64)
    cdef double[::1] lgf = lgf_arr
    for k in range(m + 2):
        lgf[k] = lgamma(k + 1.0)

    with nogil:
        for k in range(kmin, kmax + 1):
            lo = k - n
            if lo < 0:
                lo = 0
            hi = p if p < k else k
            num = (<long long> (k + 1)) * (p + 1)
            mode = <int> (num // (m + 2))
            if mode < lo:
                mode = lo
            if mode > hi:
                mode = hi
            dk = k
            lcmk = lgf[m] - lgf[k] - lgf[m - k]
            w0 = exp(lgf[p] - lgf[mode] - lgf[p - mode]
                     + lgf[n] - lgf[k - mode] - lgf[n - k + mode]
                     - lcmk)
            cut = w0 * 1e-30
            acc = 0.0
            z = 0.0
            w = w0
            s = mode
            while True:
                acc += w * _value(code, <double> s, dk, dm, dp, dn, b2)
                z += w
                if s >= hi or w < cut:
                    break
                w *= (dp - s) * (dk - s) / ((s + 1.0) * (dn - dk + s + 1.0))
                s += 1
            s = mode - 1
            if s >= lo:
                w = w0 * (mode * (dn - dk + mode)) / \
                    ((dp - mode + 1.0) * (dk - mode + 1.0))
                while True:
                    acc += w * _value(code, <double> s, dk, dm, dp, dn, b2)
                    z += w
                    if s <= lo or w < cut:
                        break
                    w *= (s * (dn - dk + s)) / ((dp - s + 1.0) * (dk - s + 1.0))
                    s -= 1
            out[k] = acc / z

# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled grid kernels.  Same contracts as ``_kernels_py``."""

import numpy as np
cimport numpy as cnp
from cython.parallel cimport prange
from libc.math cimport sqrt, fabs, INFINITY

cnp.import_array()

cdef enum:
    MAXD = 8


cdef double _det(double* a, int n) noexcept nogil:
    # in-place Gaussian elimination with partial pivoting
    cdef int i, j, r, piv
    cdef double det = 1.0
    cdef double f, t
    for i in range(n):
        piv = i
        for r in range(i + 1, n):
            if fabs(a[r * n + i]) > fabs(a[piv * n + i]):
                piv = r
        if a[piv * n + i] == 0.0:
            return 0.0
        if piv != i:
            for j in range(n):
                t = a[i * n + j]
                a[i * n + j] = a[piv * n + j]
                a[piv * n + j] = t
            det = -det
        det *= a[i * n + i]
        for r in range(i + 1, n):
            f = a[r * n + i] / a[i * n + i]
            for j in range(i, n):
                a[r * n + j] -= f * a[i * n + j]
    return det


cdef double _degree_slice(const double* c, const double* s, int n, int d,
                          double m, int i0) noexcept nogil:
    cdef int idx[MAXD]
    cdef double ph[MAXD + 1]
    cdef double mat[(MAXD + 1) * (MAXD + 1)]
    cdef int dd = d + 1
    cdef long count = 1
    cdef long t, rem
    cdef int j, r, q
    cdef double r2, nr, nr3, dot, acc = 0.0
    for j in range(d - 1):
        count *= n
    for t in range(count):
        idx[0] = i0
        rem = t
        for j in range(d - 1, 0, -1):
            idx[j] = rem % n
            rem = rem // n
        ph[0] = m
        for j in range(d):
            ph[0] += c[idx[j]]
            ph[j + 1] = s[idx[j]]
        r2 = 0.0
        for j in range(dd):
            r2 += ph[j] * ph[j]
        nr = sqrt(r2)
        nr3 = nr * r2
        for r in range(dd):
            mat[r * dd] = ph[r] / nr
        for j in range(d):
            # derivative of the unnormalised map along axis j
            dot = -ph[0] * s[idx[j]] + ph[j + 1] * c[idx[j]]
            for r in range(dd):
                mat[r * dd + j + 1] = -ph[r] * dot / nr3
            mat[j + 1] += -s[idx[j]] / nr
            mat[(j + 1) * dd + j + 1] += c[idx[j]] / nr
        acc += _det(mat, dd)
    return acc


def degree_partials(double[::1] cos_t, double[::1] sin_t, int d, double m, int threads=1):
    """Per-slice sums of det[phi, d_1 phi, ..., d_d phi] over the grid."""
    cdef int n = cos_t.shape[0]
    if d < 1 or d >= MAXD:
        raise ValueError("dimension out of kernel range")
    out = np.zeros(n, dtype=np.float64)
    cdef double[::1] o = out
    cdef int i0
    cdef const double* cp = &cos_t[0]
    cdef const double* sp = &sin_t[0]
    for i0 in prange(n, nogil=True, num_threads=max(threads, 1), schedule="static"):
        o[i0] = _degree_slice(cp, sp, n, d, m, i0)
    return out


cdef void _rest_sums(const double* c, const double* s, int n, int dims,
                     double* csum, double* ssum) noexcept nogil:
    # sums of cos and sin^2 over every point of the (dims)-dimensional subgrid
    cdef long count = 1
    cdef long t, rem
    cdef int j, i
    for j in range(dims):
        count *= n
    for t in range(count):
        rem = t
        csum[t] = 0.0
        ssum[t] = 0.0
        for j in range(dims):
            i = rem % n
            rem = rem // n
            csum[t] += c[i]
            ssum[t] += s[i] * s[i]


cdef double _norm_slice(const double* c, const double* s, const double* csum,
                        const double* ssum, long count, double m, int i0) noexcept nogil:
    cdef long t
    cdef double x, v, base = m + c[i0], s2 = s[i0] * s[i0], best = INFINITY
    for t in range(count):
        x = base + csum[t]
        v = x * x + s2 + ssum[t]
        if v < best:
            best = v
    return best


def min_norm_sq(double[::1] cos_t, double[::1] sin_t, int k, double m, int threads=1):
    """Minimum over the k-dimensional grid of |phi_tilde|^2."""
    cdef int n = cos_t.shape[0]
    if k < 1 or k >= MAXD:
        raise ValueError("dimension out of kernel range")
    cdef long count = n ** (k - 1)
    csum_arr = np.empty(count, dtype=np.float64)
    ssum_arr = np.empty(count, dtype=np.float64)
    cdef double[::1] cs = csum_arr
    cdef double[::1] ss = ssum_arr
    cdef const double* cp = &cos_t[0]
    cdef const double* sp = &sin_t[0]
    with nogil:
        _rest_sums(cp, sp, n, k - 1, &cs[0], &ss[0])
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] o = out
    cdef int i0
    for i0 in prange(n, nogil=True, num_threads=max(threads, 1), schedule="static"):
        o[i0] = _norm_slice(cp, sp, &cs[0], &ss[0], count, m, i0)
    return float(out.min())

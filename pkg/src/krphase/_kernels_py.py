"""Pure numpy versions of the grid kernels in ``_kernels.pyx``."""

import numpy as np

MAXD = 8


def _slice_grid(n, dims):
    if dims == 0:
        return np.zeros((1, 0), dtype=np.intp)
    axes = np.indices((n,) * dims).reshape(dims, -1).T
    return axes


def degree_partials(cos_t, sin_t, d, m, threads=1):
    cos_t = np.ascontiguousarray(cos_t, dtype=float)
    sin_t = np.ascontiguousarray(sin_t, dtype=float)
    n = cos_t.shape[0]
    if not 1 <= d < MAXD:
        raise ValueError("dimension out of kernel range")
    rest = _slice_grid(n, d - 1)
    out = np.zeros(n)
    for i0 in range(n):
        idx = np.column_stack([np.full(len(rest), i0), rest])
        c = cos_t[idx]
        s = sin_t[idx]
        ph = np.concatenate([m + c.sum(axis=1, keepdims=True), s], axis=1)
        r2 = np.einsum("pi,pi->p", ph, ph)
        nr = np.sqrt(r2)[:, None]
        # derivative of the unnormalised map along each axis: rows p, cols j, comps r
        dph = np.zeros((len(rest), d, d + 1))
        dph[:, :, 0] = -s
        dph[:, np.arange(d), np.arange(d) + 1] = c
        dot = np.einsum("pjr,pr->pj", dph, ph)
        dphi = dph / nr[:, :, None] - ph[:, None, :] * (dot / nr**3)[:, :, None]
        mat = np.concatenate([(ph / nr)[:, None, :], dphi], axis=1)
        # rows of mat are the columns of the determinant; transpose is harmless
        out[i0] = np.linalg.det(mat).sum()
    return out


def min_norm_sq(cos_t, sin_t, k, m, threads=1):
    cos_t = np.ascontiguousarray(cos_t, dtype=float)
    sin_t = np.ascontiguousarray(sin_t, dtype=float)
    n = cos_t.shape[0]
    if not 1 <= k < MAXD:
        raise ValueError("dimension out of kernel range")
    rest = _slice_grid(n, k - 1)
    c_rest = cos_t[rest].sum(axis=1)
    s_rest = (sin_t[rest] ** 2).sum(axis=1)
    best = np.inf
    for i0 in range(n):
        x = m + cos_t[i0] + c_rest
        v = x * x + sin_t[i0] ** 2 + s_rest
        best = min(best, float(v.min()))
    return best

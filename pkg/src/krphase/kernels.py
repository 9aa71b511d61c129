"""Grid kernels with a compiled core and a numpy fallback.

The compiled extension is used when it was built and ``KRPHASE_PURE_PYTHON``
is unset.  ``KRPHASE_THREADS`` caps the OpenMP thread count.  Partial sums
are produced per leading grid index and then reduced pairwise in a fixed
order, so results do not depend on the thread count.
"""

import math
import os

import numpy as np

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py
if not os.environ.get("KRPHASE_PURE_PYTHON"):
    try:
        from . import _kernels as _compiled
    except ImportError:
        pass
    else:
        _impl = _compiled
        BACKEND = "cython"

_ZERO_SNAP = 1e-15


def backend(name=None):
    """Return the kernel module by name ("cython" or "python"), or the active one."""
    if name is None:
        return _impl
    if name == "python":
        return _kernels_py
    if name == "cython":
        from . import _kernels

        return _kernels
    raise ValueError(f"unknown backend {name!r}")


def threads():
    env = os.environ.get("KRPHASE_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def circle_table(n):
    """cos and sin of the uniform angles 2πj/n, exact at quarter turns."""
    k = 2 * np.pi * np.arange(n) / n
    c = np.cos(k)
    s = np.sin(k)
    c[np.abs(c) < _ZERO_SNAP] = 0.0
    s[np.abs(s) < _ZERO_SNAP] = 0.0
    return c, s


def pairwise_sum(values):
    v = [float(x) for x in values]
    if not v:
        return 0.0
    while len(v) > 1:
        nxt = [v[i] + v[i + 1] for i in range(0, len(v) - 1, 2)]
        if len(v) % 2:
            nxt.append(v[-1])
        v = nxt
    return v[0]


def sphere_volume(d):
    """Volume of the unit d-sphere in R^{d+1}."""
    return 2 * math.pi ** ((d + 1) / 2) / math.gamma((d + 1) / 2)


def degree_integral(d, m, grid_n, impl=None):
    """Riemann sum of the degree density of the normalised map over the d-torus."""
    impl = impl or _impl
    c, s = circle_table(grid_n)
    parts = impl.degree_partials(c, s, d, float(m), threads())
    cell = (2 * math.pi / grid_n) ** d
    return pairwise_sum(parts) * cell / sphere_volume(d)


def min_norm(k, m, grid_n, impl=None):
    impl = impl or _impl
    c, s = circle_table(grid_n)
    return math.sqrt(impl.min_norm_sq(c, s, k, float(m), threads()))

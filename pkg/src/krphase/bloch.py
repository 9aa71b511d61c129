"""Bloch Hamiltonians H_m(k) on the real d-torus.

A point of the torus is a vector of angles k in [0, 2π)^d, with circle
coordinates (x_j, y_j) = (cos k_j, sin k_j).  The real involution fixes x and
negates y, i.e. k -> -k.  With Clifford generators γ_0 (real) and γ_1..γ_k
(imaginary),

    H(k) = Σ_j sin(k_{i_j}) γ_j + (m + Σ_j cos(k_{i_j})) γ_0,

the sum running over the active axes i_1 < ... < i_k.
"""

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .clifford import CliffordRep, build_rep
from .errors import GapClosed, ZeroVector

ZERO_NORM = 1e-14
CLOSING_TOL = 1e-9
TWO_PI = 2 * np.pi


def closing_set(k):
    """Masses at which the gap of a k-axis model closes: {-k, -k+2, ..., k}."""
    return list(range(-k, k + 1, 2))


def near_closing(k, m, tol=CLOSING_TOL):
    return any(abs(m - c) < tol for c in closing_set(k))


@dataclass(frozen=True)
class ModelSpec:
    """Parameters of an H_m-type Hamiltonian on the d-torus.

    ``axes`` are 1-based and default to all of 1..d.  ``rep`` represents
    Cliff_{1, k+extra_b} with generators indexed from 0; generators beyond
    γ_k are carried along but not used by the Hamiltonian.
    """

    d: int
    m: float
    axes: tuple = None
    extra_b: int = 0
    rep: CliffordRep = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("d must be at least 1")
        axes = tuple(range(1, self.d + 1)) if self.axes is None else tuple(sorted(self.axes))
        if not axes:
            raise ValueError("need at least one active axis")
        if len(set(axes)) != len(axes) or axes[0] < 1 or axes[-1] > self.d:
            raise ValueError(f"axes {axes} are not a subset of 1..{self.d}")
        if self.extra_b not in (0, 1, 2):
            raise ValueError("extra_b must be 0, 1 or 2")
        object.__setattr__(self, "axes", axes)
        object.__setattr__(self, "m", float(self.m))
        if self.rep is None:
            object.__setattr__(self, "rep", build_rep(1, len(axes) + self.extra_b))
        elif (self.rep.a, self.rep.b) != (1, len(axes) + self.extra_b):
            raise ValueError("rep does not match Cliff_{1, k+extra_b}")

    @property
    def k(self):
        return len(self.axes)

    @property
    def full(self):
        return self.axes == tuple(range(1, self.d + 1))

    def with_mass(self, m):
        return ModelSpec(self.d, m, self.axes, self.extra_b, self.rep)

    def on_axes_torus(self):
        """The same model viewed on the k-torus of its active axes."""
        return ModelSpec(self.k, self.m, None, self.extra_b, self.rep)


class TorusPoint:
    """Angles on the d-torus, reduced to [0, 2π)."""

    __slots__ = ("k",)

    def __init__(self, k, d=None):
        k = np.atleast_1d(np.asarray(k, dtype=float))
        if k.ndim != 1:
            raise ValueError("a torus point is a 1-d vector of angles")
        if d is not None and k.shape[0] != d:
            raise ValueError(f"expected {d} angles, got {k.shape[0]}")
        k = np.mod(k, TWO_PI)
        k[k >= TWO_PI] = 0.0
        self.k = k

    def __neg__(self):
        return TorusPoint(-self.k)

    def __len__(self):
        return len(self.k)

    def __repr__(self):
        return f"TorusPoint({self.k.tolist()})"


def _point(spec, k):
    if isinstance(k, TorusPoint):
        if len(k) != spec.d:
            raise ValueError(f"expected {spec.d} angles, got {len(k)}")
        return k
    return TorusPoint(k, spec.d)


def _cos_sin(angles):
    c = np.cos(angles)
    s = np.sin(angles)
    # exact zeros at quarter turns keep fixed points exactly fixed
    c[np.abs(c) < 1e-15] = 0.0
    s[np.abs(s) < 1e-15] = 0.0
    return c, s


def phi_tilde(spec, k):
    """The unnormalised map to R^{1,k}: (Σ cos k_j + m, sin k_{i_1}, ..., sin k_{i_k})."""
    pt = _point(spec, k)
    active = pt.k[np.asarray(spec.axes) - 1]
    c, s = _cos_sin(active)
    return np.concatenate([[c.sum() + spec.m], s])


def phi(spec, k):
    """Normalised map to the sphere S^{1,k}."""
    v = phi_tilde(spec, k)
    r = np.linalg.norm(v)
    if r < ZERO_NORM:
        raise ZeroVector(f"phi_tilde vanishes at k={_point(spec, k).k.tolist()} (m={spec.m})")
    return v / r


def beta(rep, x):
    """Σ x_i γ_i.  Squares to |x|² times the identity."""
    x = np.asarray(x, dtype=float)
    if x.shape != (rep.n,):
        raise ValueError(f"need {rep.n} coordinates, got shape {x.shape}")
    out = np.zeros((rep.dim, rep.dim), dtype=complex)
    for xi, g in zip(x, rep.gammas):
        out += xi * g
    return out


def bounded_transform(rep, x):
    """β(x) (1 + |x|²)^{-1/2}; one minus its square is (1 + |x|²)^{-1}."""
    x = np.asarray(x, dtype=float)
    return beta(rep, x) / np.sqrt(1.0 + x @ x)


def _padded(spec, v):
    out = np.zeros(spec.rep.n)
    out[: len(v)] = v
    return out


def hamiltonian(spec, k):
    return beta(spec.rep, _padded(spec, phi_tilde(spec, k)))


def flatten(spec, k):
    """Spectral flattening H(k)/|H(k)|, a selfadjoint unitary."""
    v = phi_tilde(spec, k)
    r = np.linalg.norm(v)
    if r < ZERO_NORM:
        raise GapClosed(f"gap closed at k={_point(spec, k).k.tolist()} (m={spec.m})")
    return hamiltonian(spec, k) / r


def gap(spec, grid_n):
    """Spectral gap 2 min_k |phi_tilde(k)| on the uniform grid of size grid_n per axis.

    The grid must be even so that it contains the involution-fixed angles
    0 and π, where all gap closings happen.  Only the active axes matter.
    """
    if grid_n < 2 or grid_n % 2:
        raise ValueError("grid_n must be even and at least 2")
    return 2.0 * kernels.min_norm(spec.k, spec.m, grid_n)


def random_points(spec, count, rng=None):
    rng = np.random.default_rng(rng)
    return [TorusPoint(v) for v in rng.uniform(0, TWO_PI, size=(count, spec.d))]

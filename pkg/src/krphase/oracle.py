"""Numerical checks that do not use the enumeration or the binomial formulas.

``degree_numeric`` integrates det[φ, ∂_1φ, ..., ∂_dφ] over the torus.  At a
preimage z of S the columns are -e_0 and x_j e_j / |φ̃|, so each point
contributes -(-1)^{sign(z)} and the degree is minus the strong invariant in
every dimension.  DEGREE_ORIENTATION records that sign.
"""

from dataclasses import dataclass

import numpy as np

from . import kernels
from .bloch import ModelSpec, gap, near_closing
from .clifford import build_rep
from .errors import GapClosed, Inconclusive, NotOdd, NotReal, NotUnitary

DEGREE_ORIENTATION = -1
ROUND_TOL = 0.15
DETECTOR_TOL = 1e-10


@dataclass(frozen=True)
class DegreeResult:
    raw: float
    rounded: int
    residual: float
    grid_n: int

    @property
    def conclusive(self):
        return self.residual < ROUND_TOL


def degree_numeric(spec, grid_n, max_grid=None, impl=None):
    """Mapping degree of the normalised map, by a Riemann sum on the grid.

    With ``max_grid`` the grid is doubled until the result rounds cleanly or
    the cap is exceeded; otherwise an inconclusive result raises.
    """
    if not spec.full or spec.extra_b:
        raise ValueError("degree_numeric needs all axes active and extra_b = 0")
    if spec.d > 4:
        raise ValueError("degree_numeric is limited to d <= 4")
    if grid_n < 32:
        raise ValueError("grid_n must be at least 32")
    if near_closing(spec.d, spec.m):
        raise GapClosed(f"m={spec.m} is in the closing set")
    while True:
        raw = kernels.degree_integral(spec.d, spec.m, grid_n, impl)
        rounded = int(round(raw))
        res = DegreeResult(raw, rounded, abs(raw - rounded), grid_n)
        if res.conclusive:
            return res
        if max_grid is None or 2 * grid_n > max_grid:
            raise Inconclusive(
                f"degree {raw:.4f} is {res.residual:.3f} from an integer; raise grid_n", res
            )
        grid_n *= 2


def winding_d1(m, grid_n=256):
    """Winding number of q(k) = (m + cos k) - i sin k around 0."""
    if near_closing(1, m):
        raise GapClosed("winding undefined at |m| = 1")
    k = 2 * np.pi * np.arange(grid_n + 1) / grid_n
    q = (m + np.cos(k)) - 1j * np.sin(k)
    steps = np.angle(q[1:] / q[:-1])
    return int(round(steps.sum() / (2 * np.pi)))


def homotopy_gap_scan(d, m_from, m_to, steps, grid_n=16, axes=None):
    """Smallest gap along the straight path of masses from m_from to m_to."""
    if steps < 2:
        raise ValueError("steps must be at least 2")
    spec = ModelSpec(d, m_from, axes)
    return min(gap(spec.with_mass(s), grid_n) for s in np.linspace(m_from, m_to, steps))


def _check_11(rep):
    if (rep.a, rep.b) != (1, 1):
        raise ValueError("determinant_detector needs a Cliff_{1,1} representation")
    U = rep.real_structure.unitary_part
    G = rep.grading
    if np.linalg.norm(U - U[0, 0] * np.eye(2)) > DETECTOR_TOL or abs(abs(U[0, 0]) - 1) > DETECTOR_TOL:
        raise ValueError("real structure of the Cliff_{1,1} rep is not plain conjugation")
    if np.linalg.norm(G - np.diag(np.diag(G))) > DETECTOR_TOL:
        raise ValueError("grading of the Cliff_{1,1} rep is not diagonal")


def determinant_detector(M, rep=None):
    """Z/2 class of an odd selfadjoint real unitary in M_n(Cliff_{1,1}).

    M is a 2n x 2n matrix in the basis where the grading is
    diag(1_n, -1_n) and reality is entrywise conjugation.  Such an M is
    [[0, O], [O^T, 0]] with O orthogonal; the class is (1 - det O) / 2.
    """
    rep = rep or build_rep(1, 1)
    _check_11(rep)
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] % 2:
        raise ValueError("M must be a square matrix of even size")
    n = M.shape[0] // 2
    # order of diagonal entries decides which block is the +1 eigenspace
    plus = np.real(np.diag(rep.grading))[0] > 0
    G = np.kron(rep.grading, np.eye(n))
    if np.linalg.norm(G @ M @ G + M) > DETECTOR_TOL:
        raise NotOdd("M does not anticommute with the grading")
    if np.linalg.norm(M - M.conj().T) > DETECTOR_TOL:
        raise NotUnitary("M is not selfadjoint")
    if np.linalg.norm(M.imag) > DETECTOR_TOL:
        raise NotReal("M is not fixed by the real structure")
    block = (M[:n, n:] if plus else M[n:, :n]).real
    if np.linalg.norm(block @ block.T - np.eye(n)) > DETECTOR_TOL:
        raise NotUnitary("off-diagonal block is not orthogonal")
    return 0 if np.linalg.det(block) > 0 else 1

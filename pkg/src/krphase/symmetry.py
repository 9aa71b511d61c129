"""Symmetry type of Cliff_{a,b} and transfer of Hamiltonians to Hilbert space.

With j = b - a + 1 mod 8:

* a+b odd (j even): the algebra splits as two matrix blocks swapped by the
  grading, odd selfadjoint elements become (x, -x), and the real structure
  yields an antiunitary Θ on one block which commutes with x (time
  reversal, j = 0, 4) or anticommutes with it (particle-hole, j = 2, 6).
* a+b even (j odd): the algebra is a full matrix algebra; the grading is a
  chiral operator Ξ and the real structure a time reversal Θ.
"""

from dataclasses import dataclass, field

import numpy as np

from .bloch import ModelSpec, hamiltonian
from .clifford import AntiUnitary, build_rep
from .errors import BlockExtractionFailed

BLOCK_TOL = 1e-10

_R2 = "M_{2^k}ℝ⊕M_{2^k}ℝ"
_H2 = "M_{2^{k-1}}ℍ⊕M_{2^{k-1}}ℍ"
_C = "M_{2^k}ℂ"
_R = "M_{2^k}ℝ"
_H = "M_{2^{k-1}}ℍ"

# j -> (theta_sq, chiral, xi_theta_sq, theta_role, real subalgebra)
_TABLE = {
    0: (1, False, None, "time-reversal", _R2),
    1: (1, True, 1, "time-reversal", _R),
    2: (1, False, None, "particle-hole", _C),
    3: (-1, True, 1, "time-reversal", _H),
    4: (-1, False, None, "time-reversal", _H2),
    5: (-1, True, -1, "time-reversal", _H),
    6: (-1, False, None, "particle-hole", _C),
    7: (1, True, -1, "time-reversal", _R),
}

# Annotation only; the sign tuple is the ground truth.
CARTAN_LABELS = {0: "AI", 1: "BDI", 2: "D", 3: "DIII", 4: "AII", 5: "CII", 6: "C", 7: "CI"}

REPRESENTATIVES = [(1, 0), (1, 1), (0, 1), (0, 2), (0, 3), (0, 4), (3, 0), (2, 0)]


def j_index(a, b):
    return (b - a + 1) % 8


@dataclass(frozen=True)
class SymmetryClass:
    j: int
    theta_sq: int
    chiral_present: bool
    xi_theta_sq: int
    theta_role: str
    real_subalgebra: str
    cartan_label: str = None

    def to_dict(self, a=None, b=None):
        out = {}
        if a is not None:
            out.update(a=a, b=b)
        out.update(
            j=self.j,
            theta_sq=self.theta_sq,
            chiral=self.chiral_present,
            xi_theta_sq=self.xi_theta_sq,
            theta_role=self.theta_role,
            real_subalgebra=self.real_subalgebra,
        )
        if self.cartan_label is not None:
            out["cartan_label"] = self.cartan_label
        return out


def classify(a, b, cartan=None):
    """Symmetry class of Cliff_{a,b}; ``cartan`` optionally maps j to a label."""
    if a < 0 or b < 0 or a + b < 1:
        raise ValueError("need a, b >= 0 and a+b >= 1")
    j = j_index(a, b)
    theta_sq, chiral, xt, role, sub = _TABLE[j]
    label = cartan[j] if cartan else None
    return SymmetryClass(j, theta_sq, chiral, xt, role, sub, label)


@dataclass(frozen=True)
class SymmetryOps:
    """Θ (and Ξ when a+b is even) on the space where Hamiltonians act.

    ``basis`` has orthonormal columns; for odd a+b the first half spans the
    block carrying x and the grading swaps the halves.
    """

    rep: object
    theta: AntiUnitary
    xi: np.ndarray = None
    basis: np.ndarray = None
    theta_sign: int = 1

    @property
    def split(self):
        return self.rep.n % 2 == 1

    @property
    def half(self):
        return self.rep.dim // 2

    def to_block(self, M):
        """Restrict an element of the algebra to the block space."""
        if not self.split:
            return np.asarray(M)
        h = self.half
        W = self.basis
        Mb = W.conj().T @ M @ W
        off = max(np.linalg.norm(Mb[:h, h:]), np.linalg.norm(Mb[h:, :h]))
        if off > BLOCK_TOL:
            raise BlockExtractionFailed(f"off-diagonal block of norm {off:.3g}")
        return Mb[:h, :h], Mb[h:, h:]

    def odd_block(self, M):
        """x with M = (x, -x); for even a+b the matrix itself."""
        if not self.split:
            return np.asarray(M)
        x, y = self.to_block(M)
        if np.linalg.norm(x + y) > BLOCK_TOL:
            raise BlockExtractionFailed("element is not of the form (x, -x)")
        return x

    def theta_squared(self):
        return self.theta.square_sign()

    def xi_theta_squared(self):
        if self.xi is None:
            return None
        return self.theta.then_unitary(self.xi).square_sign()


def _central_element(rep):
    P = rep.product(range(rep.n))
    eye = np.eye(rep.dim)
    if np.linalg.norm(P @ P - eye) < BLOCK_TOL:
        return P
    return 1j * P


def _plus_eigenbasis(omega):
    """Orthonormal +1 eigenvectors of a monomial selfadjoint involution."""
    dim = omega.shape[0]
    seen = set()
    vecs = []
    for i in range(dim):
        if i in seen:
            continue
        col = omega[:, i]
        nz = np.flatnonzero(np.abs(col) > 0.5)
        if len(nz) != 1:
            raise BlockExtractionFailed("central element is not a signed permutation")
        r = int(nz[0])
        seen.update((i, r))
        v = np.zeros(dim, dtype=complex)
        if r == i:
            if abs(col[i] - 1) < BLOCK_TOL:
                v[i] = 1
                vecs.append(v)
            continue
        v[i] = 1 / np.sqrt(2)
        v[r] = col[r] / np.sqrt(2)
        vecs.append(v)
    if len(vecs) != dim // 2:
        raise BlockExtractionFailed("central element does not split the space in half")
    return np.column_stack(vecs)


def build_symmetry_ops(a, b, rep=None):
    """Concrete Θ and Ξ implementing the real structure and grading of Cliff_{a,b}."""
    rep = rep or build_rep(a, b)
    if (rep.a, rep.b) != (a, b):
        raise ValueError("rep does not represent Cliff_{a,b}")
    R = rep.real_structure
    G = rep.grading
    if rep.n % 2 == 0:
        return SymmetryOps(rep, R, np.array(G), None, 1)

    omega = _central_element(rep)
    Vp = _plus_eigenbasis(omega)
    W = np.column_stack([Vp, G @ Vp])
    h = rep.dim // 2
    Romega = rep.real(omega)
    if np.linalg.norm(Romega - omega) < BLOCK_TOL:
        U, sign = R.unitary_part, 1
    elif np.linalg.norm(Romega + omega) < BLOCK_TOL:
        # the real structure swaps the blocks; combine it with the grading
        U, sign = R.unitary_part @ G, -1
    else:
        raise BlockExtractionFailed("real structure does not map the central element to ±itself")
    Ub = W.conj().T @ U @ np.conj(W)
    if max(np.linalg.norm(Ub[:h, h:]), np.linalg.norm(Ub[h:, :h])) > BLOCK_TOL:
        raise BlockExtractionFailed("antiunitary is not block diagonal")
    return SymmetryOps(rep, AntiUnitary(Ub[:h, :h]), None, W, sign)


@dataclass
class HilbertTransfer:
    """k -> x(k) with its symmetry operators."""

    spec: ModelSpec
    ops: SymmetryOps
    symmetry: SymmetryClass = field(default=None)

    @property
    def theta(self):
        return self.ops.theta

    @property
    def xi(self):
        return self.ops.xi

    @property
    def theta_sign(self):
        """+1 if Θ x(k) Θ⁻¹ = x(-k), -1 if it equals -x(-k)."""
        return self.ops.theta_sign

    def block(self, k):
        return self.ops.odd_block(hamiltonian(self.spec, k))

    def chiral_block(self, k):
        """Off-diagonal block of H(k) between the ±1 eigenspaces of Ξ (even a+b)."""
        if self.xi is None:
            raise ValueError("no chiral operator for odd a+b")
        diag = np.real(np.diag(self.xi))
        plus = np.flatnonzero(diag > 0)
        minus = np.flatnonzero(diag < 0)
        H = hamiltonian(self.spec, k)
        return H[np.ix_(plus, minus)]

    def residuals(self, points):
        """Max residual of the symmetry relations over the given torus points."""
        worst = {"theta": 0.0, "xi": 0.0, "hermitian": 0.0}
        xi = self.xi
        if xi is not None:
            worst["xi"] = float(np.linalg.norm(xi @ xi - np.eye(len(xi))))
        for k in points:
            k = np.asarray(getattr(k, "k", k), dtype=float)
            x = self.block(k)
            xm = self.block(-k)
            lhs = self.theta.conjugate(x)
            worst["theta"] = max(worst["theta"], float(np.linalg.norm(lhs - self.theta_sign * xm)))
            worst["hermitian"] = max(worst["hermitian"], float(np.linalg.norm(x - x.conj().T)))
            if xi is not None:
                worst["xi"] = max(worst["xi"], float(np.linalg.norm(xi @ x @ xi + x)))
        return worst


def to_hilbert(spec):
    a, b = spec.rep.a, spec.rep.b
    ops = build_symmetry_ops(a, b, spec.rep)
    return HilbertTransfer(spec, ops, classify(a, b))

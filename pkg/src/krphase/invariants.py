"""KR-theory class of [H_m] - [γ_0] on the real torus.

The class is the signed sum of point classes z_! over the fixed points z
mapped to the south pole S = (-1, 0, ..., 0), with sign (-1)^{#(-1) in z}.
A point class contributes to the summand labelled I (|I| <= 2) exactly when
all coordinates of z indexed by I equal +1; summands with |I| >= 3 vanish.

Enumeration is the source of truth.  ``closed_form`` gives the binomial
expressions as an independent cross-check, indexed by p, the largest number
of +1 coordinates a preimage point may have.

For a stacked model (a strict subset of active axes) components are labelled
by subsets of the active axes; inactive axes always carry the unit class.
"""

import itertools
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .bloch import ModelSpec, near_closing, phi
from .errors import GapClosed, OutOfRange

SIGN_CONVENTION = "chi-undetermined"


@dataclass(frozen=True)
class FixedPoint:
    """A point (x, 0) of the torus with x in {+1, -1}^k."""

    x: tuple

    @property
    def sign_count(self):
        return sum(1 for v in self.x if v == -1)

    @property
    def angles(self):
        return np.array([0.0 if v == 1 else np.pi for v in self.x])


@dataclass(frozen=True)
class IntervalIndex:
    d: int
    m: float
    p: int

    @property
    def n(self):
        """The same interval labelled from below: m in (-d+2n, -d+2n+2)."""
        return self.d - 1 - self.p


def interval_index(d, m):
    """Return p with d-2p-2 < m < d-2p."""
    if near_closing(d, m):
        raise GapClosed(f"m={m} is in the closing set {{-{d},...,{d}}}")
    if not -d < m < d:
        raise OutOfRange(f"m={m} outside (-{d}, {d})")
    p = math.floor((d - m) / 2)
    return IntervalIndex(d, float(m), p)


def _pairs(d):
    return list(itertools.combinations(range(1, d + 1), 2))


@dataclass
class KRClassVector:
    """Strong (I = ∅) and weak (|I| = 1, 2) components of a KR class.

    The strong component is determined only up to the global orientation
    sign χ, which is never resolved.  With ``coefficient == "Z2"`` it is
    reduced mod 2.
    """

    d: int
    m: float
    strong: int
    weak1: dict = field(default_factory=dict)
    weak2: dict = field(default_factory=dict)
    p: int = None
    axes: tuple = None
    coefficient: str = "Z"
    chi_note: str = SIGN_CONVENTION

    def __post_init__(self):
        if self.axes is None:
            self.axes = tuple(range(1, self.d + 1))
        for i in range(1, self.d + 1):
            self.weak1.setdefault((i,), 0)
        for pair in _pairs(self.d):
            self.weak2.setdefault(pair, 0)
        self.weak1 = {key: int(v) % 2 for key, v in sorted(self.weak1.items())}
        self.weak2 = {key: int(v) % 2 for key, v in sorted(self.weak2.items())}
        if self.coefficient == "Z2":
            self.strong = int(self.strong) % 2

    def component(self, subset):
        subset = tuple(sorted(subset))
        if not subset:
            return self.strong
        if len(subset) == 1:
            return self.weak1[subset]
        if len(subset) == 2:
            return self.weak2[subset]
        return 0

    def magnitudes(self):
        return (abs(self.strong), dict(self.weak1), dict(self.weak2))

    def is_zero(self):
        return self.strong == 0 and not any(self.weak1.values()) and not any(self.weak2.values())

    def to_dict(self):
        return {
            "d": self.d,
            "m": repr(float(self.m)),
            "p": self.p,
            "axes": list(self.axes),
            "strong": int(self.strong),
            "weak1": {json.dumps(list(k), separators=(",", ":")): v for k, v in self.weak1.items()},
            "weak2": {json.dumps(list(k), separators=(",", ":")): v for k, v in self.weak2.items()},
            "coefficient": self.coefficient,
            "sign_convention": self.chi_note,
        }

    def to_json(self, **kw):
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, data):
        return cls(
            d=int(data["d"]),
            m=float(data["m"]),
            strong=int(data["strong"]),
            weak1={tuple(json.loads(k)): int(v) for k, v in data["weak1"].items()},
            weak2={tuple(json.loads(k)): int(v) for k, v in data["weak2"].items()},
            p=data.get("p"),
            axes=tuple(data.get("axes") or range(1, int(data["d"]) + 1)),
            coefficient=data.get("coefficient", "Z"),
            chi_note=data.get("sign_convention", SIGN_CONVENTION),
        )

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


def fixed_points(k):
    return [FixedPoint(x) for x in itertools.product((1, -1), repeat=k)]


def _check_mass(spec):
    if near_closing(spec.k, spec.m):
        raise GapClosed(f"m={spec.m} is in the closing set of a {spec.k}-axis model")


def preimage_of_south(spec):
    """Fixed points of the active-axes torus that the normalised map sends to S."""
    _check_mass(spec)
    south = np.zeros(spec.k + 1)
    south[0] = -1.0
    active = np.asarray(spec.axes) - 1
    out = []
    for z in fixed_points(spec.k):
        # inactive axes sit at angle 0; the map does not depend on them
        angles = np.zeros(spec.d)
        angles[active] = z.angles
        v = phi(spec, angles)
        if np.linalg.norm(v - south) < 1e-12:
            out.append(z)
        elif np.linalg.norm(v + south) >= 1e-12:
            raise AssertionError(f"fixed point {z.x} not mapped to a pole")
    return out


def _index_or_none(k, m):
    try:
        return interval_index(k, m).p
    except OutOfRange:
        return None


def kr_class(spec):
    """Invariant vector by direct enumeration of the south-pole preimage."""
    points = preimage_of_south(spec)
    strong = sum((-1) ** z.sign_count for z in points)
    weak1 = {}
    for pos, axis in enumerate(spec.axes):
        weak1[(axis,)] = sum(1 for z in points if z.x[pos] == 1) % 2
    weak2 = {}
    for (p1, a1), (p2, a2) in itertools.combinations(enumerate(spec.axes), 2):
        weak2[(a1, a2)] = sum(1 for z in points if z.x[p1] == 1 and z.x[p2] == 1) % 2
    return KRClassVector(
        d=spec.d,
        m=spec.m,
        strong=strong,
        weak1=weak1,
        weak2=weak2,
        p=_index_or_none(spec.k, spec.m),
        axes=spec.axes,
        coefficient="Z2" if spec.extra_b else "Z",
    )


def _comb(n, r):
    if r < 0 or n < 0 or r > n:
        return 0
    return math.comb(n, r)


def closed_form(d, m):
    """Binomial formulas for the invariant vector of the full d-axis model."""
    if near_closing(d, m):
        raise GapClosed(f"m={m} is in the closing set {{-{d},...,{d}}}")
    pairs = _pairs(d)
    if m > d:
        return KRClassVector(d, m, 0)
    if m < -d:
        # every fixed point maps to S: counts are 2^{d-1} and 2^{d-2}
        w1 = 1 if d == 1 else 0
        w2 = 1 if d == 2 else 0
        return KRClassVector(
            d, m, 0, {(i,): w1 for i in range(1, d + 1)}, {pr: w2 for pr in pairs}
        )
    p = interval_index(d, m).p
    strong = (-1) ** (d + p) * _comb(d - 1, p)
    w1 = _comb(d - 2, p - 1) % 2 if p >= 1 else 0
    w2 = _comb(d - 3, p - 2) % 2 if p >= 2 else 0
    return KRClassVector(
        d,
        m,
        strong,
        {(i,): w1 for i in range(1, d + 1)},
        {pr: w2 for pr in pairs},
        p=p,
    )


def pullback_stacked(base, axes, d):
    """Pull a class on the k-torus of ``axes`` back to the d-torus.

    Local axis j of ``base`` becomes global axis axes[j-1]; subsets that are
    not contained in ``axes`` get 0.
    """
    axes = tuple(sorted(axes))
    if not axes or len(set(axes)) != len(axes) or axes[0] < 1 or axes[-1] > d:
        raise ValueError(f"axes {axes} are not a subset of 1..{d}")
    if base.d != len(axes):
        raise ValueError(f"base lives on a {base.d}-torus but {len(axes)} axes given")
    weak1 = {(axes[i - 1],): v for (i,), v in base.weak1.items()}
    weak2 = {(axes[i - 1], axes[j - 1]): v for (i, j), v in base.weak2.items()}
    return KRClassVector(
        d=d,
        m=base.m,
        strong=base.strong,
        weak1=weak1,
        weak2=weak2,
        p=base.p,
        axes=axes,
        coefficient=base.coefficient,
        chi_note=base.chi_note,
    )


def alternating_binomial_sum(d, p):
    """Σ_{j=0}^{p} (-1)^j C(d, j), summed term by term."""
    return sum((-1) ** j * math.comb(d, j) for j in range(p + 1))

import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from krphase.bloch import ModelSpec
from krphase.errors import GapClosed, OutOfRange
from krphase.invariants import (
    FixedPoint,
    KRClassVector,
    alternating_binomial_sum,
    closed_form,
    fixed_points,
    interval_index,
    kr_class,
    preimage_of_south,
    pullback_stacked,
)


def oracle(d, m):
    """Invariant vector straight from the inequality Σx + m < 0, no geometry."""
    pts = [x for x in itertools.product((1, -1), repeat=d) if sum(x) + m < 0]
    strong = sum((-1) ** x.count(-1) for x in pts)
    w1 = {(i + 1,): sum(x[i] == 1 for x in pts) % 2 for i in range(d)}
    w2 = {
        (i + 1, j + 1): sum(x[i] == 1 and x[j] == 1 for x in pts) % 2
        for i, j in itertools.combinations(range(d), 2)
    }
    return strong, w1, w2


def masses(d):
    """One mass per open interval plus both outer regimes."""
    return [c + 1.0 for c in range(-d, d, 2)] + [d + 1.0, -d - 1.0]


CASES = [(d, m) for d in range(1, 9) for m in masses(d)]


def test_fixed_point():
    z = FixedPoint((1, -1, -1))
    assert z.sign_count == 2
    assert z.angles.tolist() == [0.0, math.pi, math.pi]
    assert len(fixed_points(3)) == 8


class TestPreimage:
    def test_highest_interval(self):
        assert [z.x for z in preimage_of_south(ModelSpec(2, 1))] == [(-1, -1)]

    def test_middle(self):
        got = {z.x for z in preimage_of_south(ModelSpec(2, -1))}
        assert got == {(-1, -1), (1, -1), (-1, 1)}

    def test_below(self):
        assert {z.x for z in preimage_of_south(ModelSpec(1, -5))} == {(1,), (-1,)}

    def test_gap_closed(self):
        with pytest.raises(GapClosed):
            preimage_of_south(ModelSpec(3, 1))

    @pytest.mark.parametrize("d,m", [(d, m) for d, m in CASES if d <= 6])
    def test_matches_inequality(self, d, m):
        got = {z.x for z in preimage_of_south(ModelSpec(d, m))}
        want = {x for x in itertools.product((1, -1), repeat=d) if sum(x) + m < 0}
        assert got == want


class TestKRClass:
    def test_d2_m1(self):
        v = kr_class(ModelSpec(2, 1))
        assert v.strong == 1
        assert not any(v.weak1.values()) and v.weak2 == {(1, 2): 0}

    def test_d3_m0(self):
        v = kr_class(ModelSpec(3, 0))
        assert v.strong == 2 and v.p == 1
        assert set(v.weak1.values()) == {1}
        assert set(v.weak2.values()) == {0}

    def test_d1_below(self):
        v = kr_class(ModelSpec(1, -5))
        assert v.strong == 0 and v.weak1 == {(1,): 1}

    def test_d4_distinguishes_conventions(self):
        v = kr_class(ModelSpec(4, -1))
        assert v.p == 2
        assert abs(v.strong) == 3
        assert set(v.weak1.values()) == {0}
        assert set(v.weak2.values()) == {1}

    def test_extra_generators_reduce_mod_2(self):
        v = kr_class(ModelSpec(3, 0, extra_b=1))
        assert v.coefficient == "Z2" and v.strong == 0
        w = kr_class(ModelSpec(2, 1, extra_b=2))
        assert w.strong == 1

    @pytest.mark.parametrize("d,m", CASES)
    def test_against_oracle(self, d, m):
        v = kr_class(ModelSpec(d, m))
        assert (v.strong, v.weak1, v.weak2) == oracle(d, m)

    @pytest.mark.parametrize("d", range(1, 9))
    def test_above_is_zero(self, d):
        assert kr_class(ModelSpec(d, d + 0.5)).is_zero()

    @pytest.mark.parametrize("d", range(2, 9))
    def test_below_has_no_strong(self, d):
        assert kr_class(ModelSpec(d, -d - 0.5)).strong == 0


class TestClosedForm:
    def test_d2(self):
        v = closed_form(2, 1)
        assert abs(v.strong) == 1 and not any(v.weak1.values())

    def test_d3(self):
        v = closed_form(3, 0)
        assert abs(v.strong) == 2
        assert set(v.weak1.values()) == {1} and set(v.weak2.values()) == {0}

    def test_d4(self):
        v = closed_form(4, -1)
        assert abs(v.strong) == 3
        assert set(v.weak1.values()) == {0} and set(v.weak2.values()) == {1}

    def test_gap_closed(self):
        with pytest.raises(GapClosed):
            closed_form(3, -1)

    @pytest.mark.parametrize("d,m", CASES)
    def test_agrees_with_enumeration(self, d, m):
        cf = closed_form(d, m)
        v = kr_class(ModelSpec(d, m))
        assert cf.magnitudes() == v.magnitudes()
        assert cf.strong == v.strong
        if cf.p is not None:
            assert cf.strong == (-1) ** (d + cf.p) * math.comb(d - 1, cf.p)


class TestIntervalIndex:
    @pytest.mark.parametrize("m,p", [(2.5, 0), (0, 1), (-2.5, 2)])
    def test_examples(self, m, p):
        idx = interval_index(3, m)
        assert idx.p == p
        assert idx.n == 2 - p

    def test_out_of_range(self):
        with pytest.raises(OutOfRange):
            interval_index(3, 3.5)

    def test_closing(self):
        with pytest.raises(GapClosed):
            interval_index(3, 1.0)

    @settings(max_examples=200, deadline=None)
    @given(st.integers(1, 10), st.floats(-10, 10, allow_nan=False))
    def test_bracket(self, d, m):
        if abs(m) >= d or min(abs(m - c) for c in range(-d, d + 1, 2)) < 1e-6:
            return
        p = interval_index(d, m).p
        assert 0 <= p <= d - 1
        assert d - 2 * p - 2 < m < d - 2 * p


class TestPullback:
    def test_identity(self):
        base = kr_class(ModelSpec(3, 0))
        assert pullback_stacked(base, (1, 2, 3), 3) == base

    def test_single_axis_strong(self):
        base = kr_class(ModelSpec(1, 0))
        assert base.strong == -1
        v = pullback_stacked(base, (2,), 3)
        assert v.strong == -1
        assert v.weak1 == {(1,): 0, (2,): 0, (3,): 0}
        assert kr_class(ModelSpec(3, 0, (2,))) == v

    def test_weak_moves_to_axis(self):
        v = pullback_stacked(kr_class(ModelSpec(1, -5)), (1,), 2)
        assert v.weak1 == {(1,): 1, (2,): 0}
        assert v.weak2 == {(1, 2): 0}

    def test_rejects(self):
        base = kr_class(ModelSpec(1, 0))
        with pytest.raises(ValueError):
            pullback_stacked(base, (4,), 3)
        with pytest.raises(ValueError):
            pullback_stacked(base, (1, 2), 3)

    @pytest.mark.parametrize("d", [1, 2, 3, 4])
    def test_agrees_with_direct(self, d):
        for r in range(1, d + 1):
            for axes in itertools.combinations(range(1, d + 1), r):
                for m in masses(r):
                    direct = kr_class(ModelSpec(d, m, axes))
                    pulled = pullback_stacked(kr_class(ModelSpec(r, m)), axes, d)
                    assert direct == pulled


@pytest.mark.parametrize("d", range(1, 13))
def test_alternating_sum(d):
    for p in range(d):
        assert alternating_binomial_sum(d, p) == (-1) ** p * math.comb(d - 1, p)


class TestSerialization:
    def test_schema(self):
        data = kr_class(ModelSpec(2, -1)).to_dict()
        assert set(data) == {
            "d", "m", "p", "axes", "strong", "weak1", "weak2", "coefficient", "sign_convention",
        }
        assert data["m"] == "-1.0"
        assert data["weak1"] == {"[1]": 1, "[2]": 1}
        assert data["weak2"] == {"[1,2]": 0}
        assert data["sign_convention"] == "chi-undetermined"

    @pytest.mark.parametrize("d,m", [c for c in CASES if c[0] <= 5])
    def test_round_trip(self, d, m):
        v = kr_class(ModelSpec(d, m))
        assert KRClassVector.from_json(v.to_json()) == v

    def test_round_trip_stacked_z2(self):
        v = kr_class(ModelSpec(4, 0.5, (2, 4), extra_b=1))
        assert KRClassVector.from_json(v.to_json()) == v

    def test_component_lookup(self):
        v = kr_class(ModelSpec(3, 0))
        assert v.component(()) == 2
        assert v.component((2,)) == 1
        assert v.component((3, 1)) == 0
        assert v.component((1, 2, 3)) == 0

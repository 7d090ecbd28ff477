import math

import pytest

from orlicz.errors import BadParameter
from orlicz.young import (
    custom_young,
    delta2_estimate,
    delta_young,
    exp_young,
    make_young,
    power_young,
    validate_young,
)

from oracle_values import Y0_EXP2

FAMILIES = [power_young(2.0), power_young(1.5), exp_young(1.0), exp_young(2.0),
            exp_young(3.0), delta_young(2.0), delta_young(3.0)]


class TestConstruction:
    def test_exp_values(self):
        N = exp_young(2.0)
        assert N(1.0) == pytest.approx(math.expm1(0.5), rel=1e-15)
        assert N(0.0) == 0.0

    def test_power_values(self):
        assert power_young(2.0)(3.0) == 9.0

    def test_exp_inverse_at_one(self):
        N = exp_young(2.0)
        assert N.inverse(1.0) == pytest.approx(Y0_EXP2, abs=1e-12)
        # closed form (m ln 2)^(1/m) across the family
        for m in (0.5, 1.0, 1.5, 2.0, 3.0, 5.0, 100.0):
            got = exp_young(m).inverse(1.0)
            assert got == pytest.approx((m * math.log(2.0)) ** (1.0 / m), rel=1e-12)

    def test_bad_parameters(self):
        for family, bad in [("power", 1.0), ("power", 0.5), ("exp_m", 0.0),
                            ("exp_m", -2.0), ("delta", 1.0), ("delta", 0.2)]:
            with pytest.raises(BadParameter):
                make_young(family, bad)
        with pytest.raises(BadParameter):
            make_young("gamma", 2.0)

    def test_evenness_exact(self):
        for N in FAMILIES:
            for u in (0.3, 1.0, 7.5):
                assert N(-u) == N(u)

    def test_inverse_roundtrip(self):
        for N in FAMILIES:
            for e in range(-4, 5):
                u = 10.0 ** e
                w = N(u)
                if not math.isfinite(w) or w == 0.0:
                    continue
                assert N.inverse(w) == pytest.approx(u, rel=1e-9)

    def test_overflow_saturates(self):
        assert exp_young(2.0)(1e6) == math.inf
        assert power_young(2.0)(1e200) == math.inf
        assert exp_young(2.0).inverse(math.inf) == math.inf

    def test_derivative_analytic_vs_difference(self):
        for N in FAMILIES:
            bare = custom_young(lambda u, N=N: N(u), lambda w, N=N: N.inverse(w))
            for u in (0.5, 1.0, 4.0):
                assert bare.derivative(u) == pytest.approx(N.derivative(u), rel=1e-6)

    def test_custom_requires_consistent_inverse(self):
        with pytest.raises(BadParameter):
            custom_young(lambda u: u * u, lambda w: w)  # wrong inverse
        with pytest.raises(BadParameter):
            custom_young(lambda u: u * u + 1.0, lambda w: math.sqrt(max(w - 1.0, 0.0)))


class TestValidation:
    def test_power_is_clean(self):
        assert validate_young(power_young(2.0)).ok

    def test_sqrt_fails_small_limit(self):
        N = custom_young(lambda u: math.sqrt(abs(u)), lambda w: w * w, label="sqrt")
        kinds = validate_young(N).kinds()
        assert "small_limit" in kinds
        assert "convexity" in kinds

    def test_exp_root_non_convex_near_zero(self):
        N = custom_young(
            lambda u: math.expm1(2.0 * math.sqrt(abs(u))),
            lambda w: (math.log1p(w) / 2.0) ** 2,
            label="exp-root",
        )
        assert "convexity" in validate_young(N).kinds()

    def test_exp_one_constructible(self):
        # exp_m(1) behaves like u near 0, so its small-argument limit is 1
        # rather than 0; a finite grid cannot observe that, and the family
        # is used down to m = 1, so construction and validation both admit it
        N = exp_young(1.0)
        assert validate_young(N).ok

    def test_bad_grid(self):
        with pytest.raises(ValueError):
            validate_young(power_young(2.0), grid=[])
        with pytest.raises(ValueError):
            validate_young(power_young(2.0), grid=[-1.0, 1.0])


class TestDelta2:
    def test_power_two_exact(self):
        est = delta2_estimate(power_young(2.0))
        assert est.supremum == 4.0
        assert not est.unbounded

    def test_power_three(self):
        assert delta2_estimate(power_young(3.0)).supremum == pytest.approx(8.0, rel=1e-12)

    def test_exp_unbounded(self):
        assert delta2_estimate(exp_young(2.0)).unbounded

    def test_delta_unbounded(self):
        assert delta2_estimate(delta_young(2.0)).unbounded

import json
import math

import pytest

from orlicz.embedding import (
    COINCIDENT,
    INCONCLUSIVE,
    NON_COINCIDENT,
    coincidence_criterion,
    embedding_constant,
    embedding_modular,
    embedding_report,
    extremal_function,
    unit_threshold,
)
from orlicz.errors import DivergentModular
from orlicz.expfamily import exp_embedding_constant, exp_embedding_modular
from orlicz.norms import luxemburg_norm, weak_norm
from orlicz.young import delta_young, exp_young, power_young

from oracle_values import K0_EXP, Y0_EXP2


class TestUnitThreshold:
    def test_exp_family_closed_form(self):
        for m in (1.0, 1.5, 2.0, 3.0):
            got = unit_threshold(exp_young(m), 1.0)
            assert got == pytest.approx((m * math.log(2.0)) ** (1.0 / m), rel=1e-12)

    def test_exp_two(self):
        assert unit_threshold(exp_young(2.0), 1.0) == pytest.approx(Y0_EXP2, abs=1e-12)

    def test_infinite_mass_gives_zero(self):
        assert unit_threshold(exp_young(2.0), math.inf) == 0.0

    def test_general_mass(self):
        N = power_young(2.0)
        assert unit_threshold(N, 4.0) == pytest.approx(0.5, rel=1e-12)


class TestEmbeddingModular:
    def test_unit_value_at_the_constant(self):
        k0 = exp_embedding_constant(2.0)
        r = embedding_modular(exp_young(2.0), k0, 1.0)
        assert r.value == pytest.approx(1.0, abs=1e-6)

    def test_power_family_divergent_at_any_scale(self):
        for k in (1.5, 3.0, 10.0):
            assert embedding_modular(power_young(2.0), k, 1.0).is_divergent

    def test_small_at_large_scale(self):
        r = embedding_modular(exp_young(2.0), 100.0, 1.0)
        assert r.value < 1e-3

    def test_matches_closed_form(self):
        for m in (1.0, 2.0, 3.0):
            for k in (1.5, 2.0):
                got = embedding_modular(exp_young(m), k, 1.0).require_finite()
                assert got == pytest.approx(exp_embedding_modular(m, k), abs=1e-6)

    def test_strictly_decreasing(self):
        N = exp_young(2.0)
        ks = [1.05 + (50.0 - 1.05) * i / 19.0 for i in range(20)]
        qs = [embedding_modular(N, k, 1.0).require_finite() for k in ks]
        assert all(a > b for a, b in zip(qs, qs[1:]))

    def test_blows_up_toward_one(self):
        r = embedding_modular(exp_young(2.0), 1.001, 1.0)
        assert r.is_divergent or r.value > 100.0

    def test_scale_validated(self):
        with pytest.raises(ValueError):
            embedding_modular(exp_young(2.0), 0.0, 1.0)

    def test_tiny_scale_reports_divergence_not_overflow(self):
        r = embedding_modular(exp_young(2.0), 0.01, 1.0)
        assert r.is_divergent


class TestCriterion:
    def test_exp_family_coincident_with_half_witness(self):
        crit = coincidence_criterion(exp_young(2.0), 1.0)
        assert crit.verdict == COINCIDENT
        assert crit.witness == pytest.approx(0.5)
        assert crit.trail[0][1] == "divergent"  # scaling 1 is always divergent

    def test_power_family_divergent_everywhere(self):
        crit = coincidence_criterion(power_young(2.0), 1.0)
        assert crit.verdict == NON_COINCIDENT
        assert all(outcome == "divergent" for _, outcome, _ in crit.trail)

    def test_delta_family_numerically_inconclusive(self):
        # the induced integrand decays like w^(-1 - c/sqrt(ln w)): the
        # ladder can neither converge at tolerance nor certify divergence
        crit = coincidence_criterion(delta_young(2.0), 1.0)
        assert crit.verdict == INCONCLUSIVE

    def test_infinite_mass_breaks_coincidence(self):
        crit = coincidence_criterion(exp_young(2.0), math.inf)
        assert crit.verdict == NON_COINCIDENT

    def test_ladder_validated(self):
        with pytest.raises(ValueError):
            coincidence_criterion(exp_young(2.0), 1.0, c_ladder=())
        with pytest.raises(ValueError):
            coincidence_criterion(exp_young(2.0), 1.0, c_ladder=(0.5, 0.5))


class TestEmbeddingConstant:
    def test_exp_two(self):
        k0 = embedding_constant(exp_young(2.0), 1.0)
        assert k0 == pytest.approx(K0_EXP[2.0], abs=1e-4)

    def test_exp_hundred_near_one(self):
        k0 = embedding_constant(exp_young(100.0), 1.0)
        assert 1.0 < k0 < 1.01

    def test_matches_closed_form_across_m(self):
        for m in (1.5, 2.0, 3.0):
            k0 = embedding_constant(exp_young(m), 1.0)
            assert k0 == pytest.approx(K0_EXP[m], abs=1e-4)

    def test_power_family_raises(self):
        with pytest.raises(DivergentModular):
            embedding_constant(power_young(2.0), 1.0)

    def test_delta_family_raises_by_verdict(self):
        with pytest.raises(DivergentModular):
            embedding_constant(delta_young(2.0), 1.0)

    def test_modular_at_result_is_one(self):
        N = exp_young(2.0)
        k0 = embedding_constant(N, 1.0)
        assert embedding_modular(N, k0, 1.0).value == pytest.approx(1.0, abs=1e-8)


class TestExtremalFunction:
    def test_unit_weak_norm(self):
        N = exp_young(2.0)
        assert weak_norm(N, extremal_function(N, 1.0)).value == pytest.approx(1.0, abs=1e-8)

    def test_strong_norm_attains_the_constant(self):
        N = exp_young(2.0)
        k0 = embedding_constant(N, 1.0)
        lux = luxemburg_norm(N, extremal_function(N, 1.0), rel_tol=1e-7)
        assert lux.value == pytest.approx(k0, rel=1e-4)

    def test_power_family_strong_norm_infinite(self):
        N = power_young(2.0)
        assert luxemburg_norm(N, extremal_function(N, 1.0)).value == math.inf

    def test_dilated_extremal_scales(self):
        # dilation by 10 pushes the norm bisection through scales where the
        # integrand overflows pointwise; the norm must still come out as
        # 10 * k0 by homogeneity
        from orlicz.tails import TailRepFunction, dilate

        N = exp_young(2.0)
        k0 = embedding_constant(N, 1.0)
        g10 = TailRepFunction(dilate(extremal_function(N, 1.0).tail, 10.0), 1.0)
        lux = luxemburg_norm(N, g10, rel_tol=1e-7)
        assert lux.value == pytest.approx(10.0 * k0, rel=1e-4)
        assert weak_norm(N, g10).value == pytest.approx(10.0, rel=1e-8)


class TestReport:
    def test_exp_two_report(self):
        rep = embedding_report(exp_young(2.0), 1.0)
        assert rep.verdict == COINCIDENT
        assert rep.classifier_agreement == "agreed"
        assert rep.embedding_constant == pytest.approx(K0_EXP[2.0], abs=1e-4)
        assert rep.embedding_constant_modular == pytest.approx(1.0, abs=1e-8)
        assert 1.0 < rep.embedding_constant < math.inf
        assert rep.sharp
        assert rep.unit_threshold == pytest.approx(Y0_EXP2, abs=1e-12)

    def test_power_report(self):
        rep = embedding_report(power_young(4.0), 1.0)
        assert rep.verdict == NON_COINCIDENT
        assert rep.embedding_constant is None
        assert rep.classifier_agreement == "agreed"
        assert not rep.sharp

    def test_delta_report_records_disagreement_honestly(self):
        rep = embedding_report(delta_young(2.0), 1.0)
        assert rep.verdict == NON_COINCIDENT  # analytic override
        assert rep.numeric_verdict == INCONCLUSIVE
        assert rep.classifier_agreement == "inconclusive"

    def test_exp_smaller_mass(self):
        # halving the mass moves the constant but keeps coincidence
        rep = embedding_report(exp_young(2.0), 0.5)
        assert rep.verdict == COINCIDENT
        assert 1.0 < rep.embedding_constant

    def test_infinite_mass_no_override(self):
        rep = embedding_report(exp_young(2.0), math.inf)
        assert rep.verdict == NON_COINCIDENT
        assert rep.override_verdict is None
        assert rep.classifier_agreement is None

    def test_report_serializes(self):
        rep = embedding_report(exp_young(2.0), 1.0)
        text = json.dumps(rep.to_dict(), sort_keys=True)
        assert "embedding_constant" in text
        rep_inf = embedding_report(exp_young(2.0), math.inf)
        decoded = json.loads(json.dumps(rep_inf.to_dict()))
        assert decoded["total_mass"] == "inf"

"""Bound calculators against worked values, algebraic identities, and oracles."""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hrbounds.bounds import (
    MomentProfile,
    SLLNSeriesSpec,
    analytic_moment_profile,
    bound_amini,
    bound_hajek_renyi_classic,
    bound_rao,
    bound_theorem1,
    estimate_moment_profile,
    slln_series_check,
)
from hrbounds.distributions import RandomSequenceSpec
from hrbounds.errors import (
    AnalyticProfileUnavailable,
    DataError,
    HypothesisViolationError,
    NonIntegrabilityError,
    ParameterDomainError,
    ValidationError,
)
from hrbounds.shape_functions import ScaleFunction, ShapeFunction, WeightSequence
from hrbounds.simulation import enumerate_exact

PHI1 = ShapeFunction.abs_power(1.0)
PHI2 = ShapeFunction.abs_power(2.0)

RADEMACHER2 = RandomSequenceSpec("rademacher", 2)
GAUSS = lambda n: RandomSequenceSpec("gaussian", n, (("mu", 0.0), ("sigma", 1.0)))
STABLE15 = lambda n: RandomSequenceSpec(
    "alpha_stable", n, (("alpha", 1.5), ("beta", 0.0), ("scale", 1.0)))


def nondecreasing_moments(draw_min=0.0):
    """Strategy: a short profile of nondecreasing nonnegative expectations."""
    return st.lists(st.floats(min_value=draw_min, max_value=5.0),
                    min_size=1, max_size=8).map(
        lambda incs: tuple(float(x) for x in np.cumsum(incs)))


class TestTheorem1:
    def test_worked_two_step_sign_example(self):
        # E[u_k] = E[v_k] = k/2; chi(b_k) = 10k; K = 1:
        # raw = 1 - 2*[(1/2+1/2)/10 + (1/2+1/2)/20] = 0.7
        mp = analytic_moment_profile(RADEMACHER2, PHI1)
        assert mp.e_phi_u == (0.5, 1.0)
        rep = bound_theorem1(PHI1, ScaleFunction.linear(10.0),
                             WeightSequence.power(1.0, 2), mp)
        assert rep.bound_kind == "theorem1_lower"
        assert rep.value == pytest.approx(0.7, abs=1e-15)
        assert rep.informative

    def test_worked_example_is_dominated_by_exact_probability(self):
        exact = enumerate_exact(RADEMACHER2, PHI1, ScaleFunction.linear(10.0),
                                WeightSequence.power(1.0, 2), 2, "A_n")
        assert float(exact) == 1.0 >= 0.7

    def test_clamps_to_zero_and_reports_uninformative(self):
        mp = analytic_moment_profile(RADEMACHER2, PHI1)
        rep = bound_theorem1(PHI1, ScaleFunction.linear(0.1),
                             WeightSequence.power(1.0, 2), mp)
        assert rep.value == 0.0
        assert rep.raw_value < 0.0
        assert not rep.informative

    def test_refuses_non_integrable_profile(self):
        mp = estimate_moment_profile(STABLE15(16), PHI2, replications=2000, seed=0)
        assert mp.non_integrable
        with pytest.raises(NonIntegrabilityError):
            bound_theorem1(PHI2, ScaleFunction.linear(1.0),
                           WeightSequence.power(1.0, 16), mp)

    def test_rejects_decreasing_moment_sequence(self):
        with pytest.raises(HypothesisViolationError) as exc:
            MomentProfile(n=3, e_phi_u=(1.0, 0.5, 2.0), e_phi_v=(0.0, 0.0, 0.0),
                          sigma=None, ex2=None, provenance="analytic")
        assert tuple(exc.value.failing_indices) == (2,)

    def test_estimated_route_agrees_with_analytic(self):
        spec = GAUSS(6)
        chi = ScaleFunction.linear(5.0)
        w = WeightSequence.power(1.0, 6)
        exact = bound_theorem1(PHI1, chi, w, analytic_moment_profile(spec, PHI1))
        est = bound_theorem1(PHI1, chi, w,
                             estimate_moment_profile(spec, PHI1,
                                                     replications=40_000, seed=8))
        assert est.raw_value == pytest.approx(exact.raw_value, abs=0.02)

    def test_lower_bound_monotone_in_epsilon(self):
        mp = analytic_moment_profile(GAUSS(8), PHI1)
        w = WeightSequence.power(1.0, 8)
        raws = [bound_theorem1(PHI1, ScaleFunction.linear(e), w, mp).raw_value
                for e in (0.5, 1.0, 2.0, 4.0, 8.0)]
        assert all(a <= b for a, b in zip(raws, raws[1:]))

    @given(nondecreasing_moments(), nondecreasing_moments())
    @settings(max_examples=60)
    def test_terms_reconstruct_raw_value(self, us, vs):
        n = min(len(us), len(vs))
        mp = MomentProfile(n=n, e_phi_u=us[:n], e_phi_v=vs[:n],
                           sigma=None, ex2=None, provenance="analytic")
        rep = bound_theorem1(PHI1, ScaleFunction.linear(1.0),
                             WeightSequence.power(1.0, n), mp)
        assert rep.raw_value == pytest.approx(rep.reconstruct_raw(), rel=1e-12)
        assert 0.0 <= rep.value <= 1.0

    @given(nondecreasing_moments())
    @settings(max_examples=60)
    def test_matches_rao_form_when_negative_part_vanishes(self, us):
        """With v identically 0 and K = 1 the two bounds are algebraically tied:
        raw_theorem1 = 1 - 2 * (1 - raw_rao)."""
        n = len(us)
        chi = ScaleFunction.linear(2.0)
        w = WeightSequence.power(1.0, n)
        mp = MomentProfile(n=n, e_phi_u=us, e_phi_v=(0.0,) * n,
                           sigma=None, ex2=None, provenance="analytic")
        t1 = bound_theorem1(PHI1, chi, w, mp)
        rao = bound_rao(PHI1, chi, w, us)
        assert t1.raw_value == pytest.approx(1.0 - 2.0 * (1.0 - rao.raw_value),
                                             rel=1e-12, abs=1e-12)


class TestRao:
    def test_worked_example(self):
        rep = bound_rao(PHI1, ScaleFunction.linear(10.0),
                        WeightSequence.power(1.0, 2), (0.5, 1.0))
        assert rep.bound_kind == "rao_lower"
        assert rep.value == pytest.approx(0.925, abs=1e-15)

    def test_requires_nondecreasing_expectations(self):
        with pytest.raises(HypothesisViolationError):
            bound_rao(PHI1, ScaleFunction.linear(1.0),
                      WeightSequence.power(1.0, 2), (1.0, 0.5))
        with pytest.raises(HypothesisViolationError):
            bound_rao(PHI1, ScaleFunction.linear(1.0),
                      WeightSequence.power(1.0, 1), (-0.5,))

    def test_empty_input_rejected(self):
        with pytest.raises(DataError):
            bound_rao(PHI1, ScaleFunction.linear(1.0),
                      WeightSequence.power(1.0, 1), ())


class TestClassic:
    def test_worked_example_clamps_at_one(self):
        # head: 1/b_1^2 = 1, tail: (1/eps^2)(1/4 + 1/9); raw = 1 + 13/144
        rep = bound_hajek_renyi_classic([1.0, 1.0, 1.0],
                                        WeightSequence.power(1.0, 3),
                                        m=1, n=3, epsilon=2.0)
        assert rep.raw_value == pytest.approx(1.0 + 13.0 / 144.0, rel=1e-14)
        assert rep.value == 1.0
        assert not rep.informative

    def test_informative_case(self):
        rep = bound_hajek_renyi_classic([1.0, 1.0],
                                        WeightSequence.custom([2.0, 4.0]),
                                        m=1, n=2, epsilon=2.0)
        assert rep.raw_value == pytest.approx(1.0 / 4.0 + (1.0 / 4.0) / 16.0,
                                              rel=1e-14)
        assert rep.informative

    def test_index_and_domain_errors(self):
        w = WeightSequence.power(1.0, 3)
        with pytest.raises(IndexError):
            bound_hajek_renyi_classic([1.0] * 3, w, m=4, n=3, epsilon=1.0)
        with pytest.raises(IndexError):
            bound_hajek_renyi_classic([1.0] * 3, w, m=0, n=3, epsilon=1.0)
        with pytest.raises(ParameterDomainError):
            bound_hajek_renyi_classic([1.0] * 3, w, m=1, n=3, epsilon=0.0)
        with pytest.raises(ValidationError):
            bound_hajek_renyi_classic([1.0, -1.0, 1.0], w, m=1, n=3, epsilon=1.0)
        with pytest.raises(DataError, match="index"):
            bound_hajek_renyi_classic([1.0, math.nan, 1.0], w, m=1, n=3,
                                      epsilon=1.0)

    def test_upper_bound_monotone_in_epsilon(self):
        w = WeightSequence.power(1.0, 5)
        raws = [bound_hajek_renyi_classic([1.0] * 5, w, 2, 5, e).raw_value
                for e in (0.5, 1.0, 2.0, 4.0)]
        assert all(a >= b for a, b in zip(raws, raws[1:]))


class TestAmini:
    def test_single_step_example(self):
        rep = bound_amini([1.0], WeightSequence.custom([1.0]), 1, 4.0)
        assert rep.bound_kind == "amini_upper"
        assert rep.value == pytest.approx(0.5, abs=1e-15)

    def test_two_step_example_clamps(self):
        # (8/16)(1 + 1/4) + 2*(1*1)/4 = 1.125, clamped to 1
        rep = bound_amini([1.0, 1.0], WeightSequence.custom([1.0, 2.0]), 2, 4.0)
        assert rep.raw_value == pytest.approx(1.125, rel=1e-14)
        assert rep.value == 1.0

    def test_zero_dispersion_gives_zero(self):
        rep = bound_amini([0.0] * 4, WeightSequence.power(1.0, 4), 4, 1.0)
        assert rep.value == 0.0

    def test_rejects_negative_dispersion(self):
        with pytest.raises(ValidationError):
            bound_amini([1.0, -0.1], WeightSequence.power(1.0, 2), 2, 1.0)

    def test_upper_bound_monotone_in_epsilon(self):
        w = WeightSequence.power(1.0, 6)
        raws = [bound_amini([1.0] * 6, w, 6, e).raw_value
                for e in (1.0, 2.0, 5.0, 10.0)]
        assert all(a >= b for a, b in zip(raws, raws[1:]))


class TestMomentProfiles:
    def test_point_mass_zero_profile(self):
        spec = RandomSequenceSpec("point_mass", 4, (("c", 0.0),))
        mp = estimate_moment_profile(spec, PHI1, replications=200, seed=0)
        assert mp.e_phi_u == (0.0,) * 4 and mp.e_phi_v == (0.0,) * 4
        assert mp.se_u == (0.0,) * 4

    def test_point_mass_analytic_any_exponent(self):
        spec = RandomSequenceSpec("point_mass", 3, (("c", -2.0),))
        mp = analytic_moment_profile(spec, ShapeFunction.abs_power(3.0))
        assert mp.e_phi_u == (0.0, 0.0, 0.0)
        assert mp.e_phi_v == (8.0, 64.0, 216.0)

    def test_rademacher_estimated_linear_growth(self):
        """E[u_k] = k/2 for sign increments; 1e5 replications, 4 se."""
        mp = estimate_moment_profile(RandomSequenceSpec("rademacher", 3), PHI1,
                                     replications=100_000, seed=0)
        for k in range(3):
            assert abs(mp.e_phi_u[k] - 0.5 * (k + 1)) <= 4 * mp.se_u[k]

    def test_gaussian_half_normal_first_entry(self):
        mp = estimate_moment_profile(GAUSS(1), PHI1, replications=100_000, seed=1)
        assert abs(mp.e_phi_u[0] - 1.0 / math.sqrt(2 * math.pi)) <= 4 * mp.se_u[0]

    @pytest.mark.parametrize("family,params,nu,seed", [
        ("gaussian", (("mu", 0.0), ("sigma", 1.0)), 2.0, 1),
        ("centered_exponential", (("lam", 1.0),), 1.0, 2),
        ("centered_exponential", (("lam", 1.0),), 2.0, 3),
    ])
    def test_analytic_matches_estimation_within_noise(self, family, params, nu, seed):
        spec = RandomSequenceSpec(family, 6, params)
        phi = ShapeFunction.abs_power(nu)
        a = analytic_moment_profile(spec, phi)
        e = estimate_moment_profile(spec, phi, replications=20_000, seed=seed)
        for k in range(6):
            assert abs(a.e_phi_u[k] - e.e_phi_u[k]) <= 4 * e.se_u[k]
            assert abs(a.e_phi_v[k] - e.e_phi_v[k]) <= 4 * e.se_v[k]

    def test_stable_second_moment_analytic_refusal(self):
        with pytest.raises(NonIntegrabilityError):
            analytic_moment_profile(STABLE15(8), PHI2)

    def test_stable_second_moment_estimation_detector(self):
        mp = estimate_moment_profile(STABLE15(32), PHI2, replications=2000, seed=0)
        assert mp.non_integrable
        assert mp.max_rel_drift > 0.10

    def test_stable_first_moment_analytic_profile(self):
        mp = analytic_moment_profile(STABLE15(4), PHI1)
        half_mean = math.gamma(1.0 - 1.0 / 1.5) / math.pi
        np.testing.assert_allclose(mp.e_phi_u,
                                   half_mean * np.arange(1, 5), rtol=1e-12)

    def test_unavailable_analytic_combination_falls_through(self):
        with pytest.raises(AnalyticProfileUnavailable):
            analytic_moment_profile(GAUSS(4), ShapeFunction.abs_power(1.5))

    def test_estimated_profiles_are_isotonic(self):
        mp = estimate_moment_profile(STABLE15(16), PHI1, replications=500, seed=4)
        assert all(b >= a - 1e-12 for a, b in zip(mp.e_phi_u, mp.e_phi_u[1:]))
        assert all(b >= a - 1e-12 for a, b in zip(mp.e_phi_v, mp.e_phi_v[1:]))

    def test_replication_floor(self):
        with pytest.raises(ValidationError):
            estimate_moment_profile(GAUSS(2), PHI1, replications=99, seed=0)


class TestSeriesCheck:
    def test_basel_series(self):
        s = SLLNSeriesSpec(alpha=1.0, r=2.0, weights=WeightSequence.power(1.0, 10_000))
        rep = slln_series_check(s, horizon=10_000)
        assert rep.verdict == "converging"
        assert abs(rep.partial_sum - math.pi ** 2 / 6.0) < 1e-2

    def test_harmonic_series(self):
        s = SLLNSeriesSpec(alpha=1.0, r=1.0, weights=WeightSequence.power(1.0, 10_000))
        assert slln_series_check(s, horizon=10_000).verdict == "diverging"

    def test_zero_coefficients(self):
        s = SLLNSeriesSpec(alpha=0.0, r=1.0, weights=WeightSequence.power(1.0, 100))
        rep = slln_series_check(s, horizon=100)
        assert rep.verdict == "converging" and rep.partial_sum == 0.0

    def test_p_three_halves_converges(self):
        s = SLLNSeriesSpec(alpha=1.0, r=1.0, weights=WeightSequence.power(1.5, 10_000))
        assert slln_series_check(s, horizon=10_000).verdict == "converging"

    def test_oscillating_coefficients_are_inconclusive(self):
        alpha = tuple(2.0 + (-1.0) ** k for k in range(1, 2001))
        s = SLLNSeriesSpec(alpha=alpha, r=1.0, weights=WeightSequence.power(1.0, 2000))
        assert slln_series_check(s, horizon=2000).verdict == "inconclusive"

    def test_spec_validation(self):
        w = WeightSequence.power(1.0, 100)
        with pytest.raises(ValidationError):
            SLLNSeriesSpec(alpha=1.0, r=1.0, weights=WeightSequence.custom([1.0, 2.0]))
        with pytest.raises(ParameterDomainError):
            SLLNSeriesSpec(alpha=1.0, r=0.0, weights=w)
        with pytest.raises(ValidationError):
            SLLNSeriesSpec(alpha=-1.0, r=1.0, weights=w)
        s = SLLNSeriesSpec(alpha=(1.0,) * 10, r=1.0, weights=w)
        with pytest.raises(ValidationError):
            slln_series_check(s, horizon=50)

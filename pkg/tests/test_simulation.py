"""Monte Carlo estimates, exact enumeration, verdicts, demi margins, SLLN runs."""

from fractions import Fraction

import numpy as np
import pytest
from dataclasses import replace

from hrbounds.bounds import analytic_moment_profile, bound_theorem1
from hrbounds.distributions import RandomSequenceSpec
from hrbounds.errors import (
    DigestMismatchError,
    ParameterDomainError,
    EnumerationSizeError,
    HypothesisViolationError,
    ValidationError,
)
from hrbounds.sequences import TrajectoryBatch
from hrbounds.shape_functions import ScaleFunction, ShapeFunction, WeightSequence
from hrbounds.simulation import (
    MonteCarloEstimate,
    binomial_estimate,
    demi_check,
    enumerate_exact,
    estimate_event_An,
    estimate_max_event,
    slln_trajectory,
    verify_bound,
)

PHI1 = ShapeFunction.abs_power(1.0)


def rademacher(n):
    return RandomSequenceSpec("rademacher", n)


def gaussian(n, mu=0.0):
    return RandomSequenceSpec("gaussian", n, (("mu", mu), ("sigma", 1.0)))


# ---------------------------------------------------------------------------
# interval machinery


def test_wilson_interval_interior():
    est = binomial_estimate(50, 100, level=0.95)
    assert est.method == "wilson"
    # hand-computed Wilson interval at z = 1.959964, p_hat = 0.5, n = 100
    assert est.ci_low == pytest.approx(0.404, abs=2e-3)
    assert est.ci_high == pytest.approx(0.596, abs=2e-3)
    assert est.ci_low <= est.p_hat <= est.ci_high


def test_clopper_pearson_boundaries_closed_form():
    # at zero successes: upper limit is 1 - (alpha/2)^(1/R); mirrored at R
    R, level = 400, 0.99
    alpha = 1.0 - level
    z = binomial_estimate(0, R, level=level)
    assert z.method == "exact_clopper_pearson"
    assert z.ci_low == 0.0
    assert z.ci_high == pytest.approx(1.0 - (alpha / 2.0) ** (1.0 / R), rel=1e-10)
    o = binomial_estimate(R, R, level=level)
    assert o.ci_high == 1.0
    assert o.ci_low == pytest.approx((alpha / 2.0) ** (1.0 / R), rel=1e-10)


def test_estimate_invariants_enforced():
    with pytest.raises(ValidationError):
        MonteCarloEstimate(p_hat=0.5, replications=100, ci_low=0.6, ci_high=0.9)


# ---------------------------------------------------------------------------
# event estimators


def test_event_an_point_mass_zero_is_certain():
    est = estimate_event_An(RandomSequenceSpec("point_mass", 4, (("c", 0.0),)),
                            PHI1, ScaleFunction.linear(1.0),
                            WeightSequence.power(1.0, 4), 4, reps=1000, seed=0)
    assert est.p_hat == 1.0


def test_event_an_wide_envelope_is_certain():
    est = estimate_event_An(rademacher(2), PHI1, ScaleFunction.linear(10.0),
                            WeightSequence.power(1.0, 2), 2, reps=1000, seed=0)
    assert est.p_hat == 1.0


def test_event_an_tight_envelope_half():
    est = estimate_event_An(rademacher(2), PHI1, ScaleFunction.linear(1.0),
                            WeightSequence.custom([1.0, 1.0]), 2, reps=4000, seed=0)
    assert est.ci_low <= 0.5 <= est.ci_high


def test_max_event_examples():
    assert estimate_max_event(RandomSequenceSpec("point_mass", 3, (("c", 0.0),)),
                              WeightSequence.power(1.0, 3), 1.0, 1, 3,
                              reps=1000, seed=0).p_hat == 0.0
    assert estimate_max_event(rademacher(2), WeightSequence.custom([1.0, 2.0]),
                              0.9, 1, 2, reps=1000, seed=1).p_hat == 1.0
    half = estimate_max_event(rademacher(2), WeightSequence.custom([2.0, 2.0]),
                              0.9, 1, 2, reps=4000, seed=2)
    assert half.ci_low <= 0.5 <= half.ci_high


def test_sidedness_at_the_boundary():
    # S_k/b_k is exactly 1 for a unit point mass with b_k = k, so the
    # inclusive reading fires and the strict one does not
    spec = RandomSequenceSpec("point_mass", 3, (("c", 1.0),))
    w = WeightSequence.power(1.0, 3)
    assert estimate_max_event(spec, w, 1.0, 1, 3, 1000, 0, sided="abs").p_hat == 1.0
    assert estimate_max_event(spec, w, 1.0, 1, 3, 1000, 0, sided="upper").p_hat == 0.0


def test_estimator_preconditions():
    with pytest.raises(ValidationError):
        estimate_event_An(rademacher(2), PHI1, ScaleFunction.linear(1.0),
                          WeightSequence.power(1.0, 2), 2, reps=999, seed=0)
    with pytest.raises(IndexError):
        estimate_max_event(rademacher(4), WeightSequence.power(1.0, 4),
                           1.0, m=5, n=4, reps=1000, seed=0)


# ---------------------------------------------------------------------------
# exact enumeration


def test_enumeration_pinned_probabilities():
    assert enumerate_exact(rademacher(2), PHI1, ScaleFunction.linear(10.0),
                           WeightSequence.power(1.0, 2), 2, "A_n") == 1

    half = enumerate_exact(rademacher(2), w=WeightSequence.custom([2.0, 2.0]),
                           n=2, event="max", epsilon=0.9)
    assert half == Fraction(1, 2)

    quarter = enumerate_exact(rademacher(3), w=WeightSequence.custom([1.0] * 3),
                              n=3, event="max", epsilon=3.0)
    assert quarter == Fraction(1, 4)


def test_enumeration_complementary_events():
    spec, w = rademacher(8), WeightSequence.custom([2.0] * 8)
    inside = enumerate_exact(spec, PHI1, ScaleFunction.linear(0.9), w, 8, "A_n")
    outside = enumerate_exact(spec, w=w, n=8, event="max", epsilon=0.9)
    assert inside + outside == 1
    assert inside == Fraction(1, 16)


def test_enumeration_denominator_is_power_of_two():
    p = enumerate_exact(rademacher(9), PHI1, ScaleFunction.linear(1.0),
                        WeightSequence.power(1.0, 9), 9, "A_n")
    assert isinstance(p, Fraction)
    d = p.denominator
    assert d & (d - 1) == 0


def test_enumeration_guards():
    with pytest.raises(EnumerationSizeError):
        enumerate_exact(rademacher(21), PHI1, ScaleFunction.linear(1.0),
                        WeightSequence.power(1.0, 21), 21, "A_n")
    with pytest.raises(ValidationError):
        enumerate_exact(gaussian(4), PHI1, ScaleFunction.linear(1.0),
                        WeightSequence.power(1.0, 4), 4, "A_n")
    with pytest.raises(ParameterDomainError):
        enumerate_exact(rademacher(4), w=WeightSequence.power(1.0, 4), n=4,
                        event="max")  # epsilon missing


# ---------------------------------------------------------------------------
# verdicts


def _theorem1_report():
    mp = analytic_moment_profile(rademacher(2), PHI1)
    return bound_theorem1(PHI1, ScaleFunction.linear(10.0),
                          WeightSequence.power(1.0, 2), mp)


def test_verdict_consistent_against_exact_one():
    assert verify_bound(Fraction(1), _theorem1_report()) == "consistent"


def test_verdict_violation_fires():
    bad = MonteCarloEstimate(p_hat=0.5, replications=1000, ci_low=0.4, ci_high=0.6)
    assert verify_bound(bad, _theorem1_report()) == "violation"


def test_verdict_vacuous_for_clamped_bounds():
    mp = analytic_moment_profile(rademacher(2), PHI1)
    rep = bound_theorem1(PHI1, ScaleFunction.linear(0.1),
                         WeightSequence.power(1.0, 2), mp)
    assert rep.value == 0.0
    est = MonteCarloEstimate(p_hat=0.2, replications=1000, ci_low=0.1, ci_high=0.3)
    assert verify_bound(est, rep) == "vacuous"


def test_verdict_digest_guard():
    rep = _theorem1_report()
    est = estimate_event_An(rademacher(2), PHI1, ScaleFunction.linear(10.0),
                            WeightSequence.power(1.0, 2), 2, reps=1000, seed=0)
    assert est.event_digest == rep.inputs_digest
    assert verify_bound(est, rep) == "consistent"

    other = estimate_event_An(rademacher(2), PHI1, ScaleFunction.linear(9.0),
                              WeightSequence.power(1.0, 2), 2, reps=1000, seed=0)
    with pytest.raises(DigestMismatchError):
        verify_bound(other, rep)


# ---------------------------------------------------------------------------
# demi margins


def test_demi_drifted_gaussian_flagged_everywhere():
    batch = TrajectoryBatch.generate(gaussian(8, mu=-0.5), 10_000, master_seed=17)
    rep = demi_check(batch, "S")
    assert rep.flagged_js() == (1, 2, 3, 4, 5, 6, 7)
    const_margins = [r.margin for r in rep.records if r.g == "const"]
    assert all(abs(m + 0.5) < 0.05 for m in const_margins)


def test_demi_centered_martingales_pass():
    for spec, seed in [(gaussian(8), 13), (rademacher(8), 3)]:
        batch = TrajectoryBatch.generate(spec, 10_000, master_seed=seed)
        rep = demi_check(batch, "S")
        assert rep.passed, rep.flagged_js()


def test_demi_one_sided_processes_have_no_negative_products():
    batch = TrajectoryBatch.generate(gaussian(6), 2000, master_seed=5)
    for process in ("u", "v"):
        rep = demi_check(batch, process)
        assert rep.pointwise_negative_count == 0
        assert rep.passed


def test_demi_transformed_process_closure():
    """phi(S_k+) with convex nondecreasing phi stays inside the class."""
    batch = TrajectoryBatch.generate(gaussian(8), 10_000, master_seed=13)
    rep = demi_check(batch, "phi_of_S_plus", phi=ShapeFunction.abs_power(2.0))
    assert rep.passed


def test_demi_validation():
    batch = TrajectoryBatch.generate(gaussian(4), 1000, master_seed=0)
    with pytest.raises(ValidationError):
        demi_check(batch, "S", family=())
    with pytest.raises(ValidationError):
        demi_check(batch, "S", family=("const", "mystery"))
    with pytest.raises(ValidationError):
        demi_check(batch, "phi_of_S_plus")  # phi missing
    small = TrajectoryBatch.generate(gaussian(4), 999, master_seed=0)
    with pytest.raises(ValidationError):
        demi_check(small, "S")


# ---------------------------------------------------------------------------
# SLLN trajectories


def test_slln_point_mass_all_zero():
    spec = RandomSequenceSpec("point_mass", 500, (("c", 0.0),))
    t = slln_trajectory(spec, PHI1, ScaleFunction.linear(1.0),
                        WeightSequence.power(1.0, 500), 500, 20, (100, 500), seed=0)
    assert all(q == 0.0 for q in t.q95_phi_ratio)
    assert all(q == 0.0 for q in t.q95_abs_ratio)


def test_slln_sign_sequence_classic_rate():
    spec = rademacher(10_000)
    t = slln_trajectory(spec, PHI1, ScaleFunction.linear(1.0),
                        WeightSequence.power(1.0, 10_000), 10_000, 100,
                        (1000, 10_000), seed=6)
    assert t.q95_abs_ratio[-1] < 0.05
    assert t.q95_abs_ratio[1] < t.q95_abs_ratio[0]


def test_slln_requires_unbounded_weights_and_sane_checkpoints():
    spec = rademacher(100)
    with pytest.raises(HypothesisViolationError):
        slln_trajectory(spec, PHI1, ScaleFunction.linear(1.0),
                        WeightSequence.custom([1.0] * 100), 100, 10, (50, 100), seed=0)
    w = WeightSequence.power(1.0, 100)
    with pytest.raises(ValidationError):
        slln_trajectory(spec, PHI1, ScaleFunction.linear(1.0), w, 100, 10,
                        (80, 40), seed=0)
    with pytest.raises(ValidationError):
        slln_trajectory(spec, PHI1, ScaleFunction.linear(1.0), w, 100, 10,
                        (50, 200), seed=0)


def test_slln_deterministic():
    spec = gaussian(2000)
    args = (spec, PHI1, ScaleFunction.linear(1.0), WeightSequence.power(1.0, 2000),
            2000, 25, (200, 2000))
    a = slln_trajectory(*args, seed=9)
    b = slln_trajectory(*args, seed=9)
    assert a.q95_abs_ratio == b.q95_abs_ratio
    assert a.median_phi_ratio == b.median_phi_ratio

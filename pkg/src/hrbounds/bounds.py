"""Closed-form probability bounds for weighted partial-sum maxima.

Four inequalities are evaluated from per-index moment data, each into a
BoundReport with per-term contributions:

* ``bound_theorem1``: lower bound on P(phi(S_k) <= chi(b_k) for all k <= n)
  built from the positive/negative-part decomposition, with the
  subadditivity constant K of phi entering as a factor 2K.
* ``bound_rao``: the one-envelope precursor, 1 - sum of increments of
  E[phi(T_k)] over chi(b_k).
* ``bound_hajek_renyi_classic``: the two-range second-moment upper bound
  on the weighted maximum of partial sums of independent centered terms.
* ``bound_amini``: the variance-plus-cross-term upper bound on
  P(max_k |S_k|/b_k >= eps).

Moment data arrives as a MomentProfile, either from the closed-form table
(`analytic_moment_profile`) or from Monte Carlo (`estimate_moment_profile`).
Estimated profiles carry standard errors, are isotonically projected to
restore the monotonicity the analytic quantities must have, and are flagged
as non-integrable when running means fail to stabilize; flagged profiles
are refused by the bound evaluators rather than silently used.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import isotonic_regression
from scipy.stats import norm

from ._digest import digest_of, event_a_n, event_max_ratio
from .distributions import RandomSequenceSpec
from .errors import (
    AnalyticProfileUnavailable,
    DataError,
    HypothesisViolationError,
    NonIntegrabilityError,
    ParameterDomainError,
    ValidationError,
)
from .sequences import TrajectoryBatch
from .shape_functions import (
    ScaleFunction,
    ShapeFunction,
    WeightSequence,
    subadditivity_constant,
)

BOUND_KINDS = ("theorem1_lower", "rao_lower", "hajek_renyi_upper", "amini_upper")

# Relative drift between half-sample and full-sample running means above
# which an estimated moment sequence is declared non-integrable.
_DRIFT_LIMIT = 0.10


# ---------------------------------------------------------------------------
# moment profiles


@dataclass(frozen=True)
class MomentProfile:
    """Per-index moment data: E[phi(u_k)], E[phi(v_k)], and increment moments.

    ``sigma`` (std of one increment) and ``ex2`` (second raw moment) are None
    when they do not exist for the underlying law; they are never zero-filled.
    Estimated profiles carry per-entry standard errors and two flags:
    ``isotonic_adjusted`` (the monotone projection moved some entry by more
    than two standard errors) and ``non_integrable`` (running means failed to
    stabilize, so the expectations are not trusted to exist).
    """

    n: int
    e_phi_u: tuple[float, ...]
    e_phi_v: tuple[float, ...]
    sigma: tuple[float, ...] | None = None
    ex2: tuple[float, ...] | None = None
    provenance: str = "analytic"
    replications: int | None = None
    se_u: tuple[float, ...] | None = None
    se_v: tuple[float, ...] | None = None
    isotonic_adjusted: bool = False
    non_integrable: bool = False
    max_rel_drift: float | None = None
    source: dict | None = None  # law descriptor of the increment sequence

    def __post_init__(self):
        if self.provenance not in ("analytic", "estimated"):
            raise ValidationError(f"unknown provenance {self.provenance!r}")
        for name in ("e_phi_u", "e_phi_v"):
            vec = getattr(self, name)
            if len(vec) != self.n:
                raise ValidationError(f"{name}: expected {self.n} entries, got {len(vec)}")
            arr = np.asarray(vec, dtype=np.float64)
            if not self.non_integrable and not np.all(np.isfinite(arr)):
                raise ValidationError(f"{name}: non-finite entry")
            if np.any(arr < 0):
                raise ValidationError(f"{name}: negative entry (phi is nonnegative)")
            bad = np.flatnonzero(np.diff(arr) < 0)
            if bad.size and not self.non_integrable:
                raise HypothesisViolationError(
                    f"{name} must be nondecreasing in k",
                    failing_indices=[int(i) + 2 for i in bad])  # 1-based k of the drop
        if self.provenance == "estimated" and (self.replications or 0) < 100:
            raise ValidationError("estimated profiles need >= 100 replications")

    def increments(self) -> np.ndarray:
        """Increments of E[phi(u_k)] + E[phi(v_k)] with the k=0 term zero."""
        combined = np.asarray(self.e_phi_u, dtype=np.float64) + np.asarray(
            self.e_phi_v, dtype=np.float64)
        return np.diff(np.concatenate([[0.0], combined]))

    def to_dict(self) -> dict:
        out = {
            "n": self.n,
            "e_phi_u": list(self.e_phi_u),
            "e_phi_v": list(self.e_phi_v),
            "sigma": None if self.sigma is None else list(self.sigma),
            "ex2": None if self.ex2 is None else list(self.ex2),
            "provenance": self.provenance,
            "isotonic_adjusted": self.isotonic_adjusted,
            "non_integrable": self.non_integrable,
            "source": self.source,
        }
        if self.provenance == "estimated":
            out["replications"] = self.replications
            out["se_u"] = list(self.se_u)
            out["se_v"] = list(self.se_v)
            out["max_rel_drift"] = self.max_rel_drift
        return out


def _sided_increment_moments(spec: RandomSequenceSpec) -> tuple[float, float, float, float]:
    """(E[X+], E[(X+)^2], E[X-], E[(X-)^2]) for one increment of the law.

    Raises NonIntegrabilityError when a requested moment is analytically
    infinite, AnalyticProfileUnavailable when no closed form is shipped.
    """
    p = spec.param_dict()
    if spec.family == "rademacher":
        return 0.5, 0.5, 0.5, 0.5
    if spec.family == "gaussian":
        return _gaussian_sided(p["mu"], p["sigma"])
    if spec.family == "centered_exponential":
        lam = p["lam"]
        # X = E - 1/lam, E ~ Exp(lam): both sided means are 1/(e*lam);
        # E[(X+)^2] = 2/(e*lam^2), E[(X-)^2] = (1 - 2/e)/lam^2.
        return (math.exp(-1.0) / lam, 2.0 * math.exp(-1.0) / lam ** 2,
                math.exp(-1.0) / lam, (1.0 - 2.0 * math.exp(-1.0)) / lam ** 2)
    if spec.family == "point_mass":
        c = p["c"]
        cp, cm = max(c, 0.0), max(-c, 0.0)
        return cp, cp ** 2, cm, cm ** 2
    if spec.family == "alpha_stable":
        alpha, beta, scale = p["alpha"], p["beta"], p["scale"]
        if alpha == 2.0:
            # exactly N(0, 2*scale^2)
            return _gaussian_sided(0.0, math.sqrt(2.0) * scale)
        if beta != 0.0:
            raise AnalyticProfileUnavailable(
                "closed-form sided moments are only shipped for symmetric stable laws")
        if alpha <= 1.0:
            raise NonIntegrabilityError(
                f"E|X| is infinite for a stable law with alpha={alpha} <= 1")
        # symmetric, alpha in (1,2): E|X| = (2/pi) Gamma(1 - 1/alpha) * scale,
        # split evenly between the two sides; second moments are infinite.
        half_abs_mean = (1.0 / math.pi) * math.gamma(1.0 - 1.0 / alpha) * scale
        return half_abs_mean, math.inf, half_abs_mean, math.inf
    raise AnalyticProfileUnavailable(f"no sided-moment table for family {spec.family!r}")


def _gaussian_sided(mu: float, sigma: float) -> tuple[float, float, float, float]:
    def one_side(m: float) -> tuple[float, float]:
        z = m / sigma
        mean = m * norm.cdf(z) + sigma * norm.pdf(z)
        second = (m * m + sigma * sigma) * norm.cdf(z) + m * sigma * norm.pdf(z)
        return mean, second

    mp, sp = one_side(mu)
    mm, sm = one_side(-mu)
    return mp, sp, mm, sm


def _increment_sigma_ex2(spec: RandomSequenceSpec) -> tuple[float | None, float | None]:
    """Std and raw second moment of one increment, or (None, None) if infinite."""
    p = spec.param_dict()
    if spec.family == "rademacher":
        return 1.0, 1.0
    if spec.family == "gaussian":
        return p["sigma"], p["mu"] ** 2 + p["sigma"] ** 2
    if spec.family == "centered_exponential":
        return 1.0 / p["lam"], 1.0 / p["lam"] ** 2
    if spec.family == "point_mass":
        return 0.0, p["c"] ** 2
    if p["alpha"] == 2.0:
        s = math.sqrt(2.0) * p["scale"]
        return s, s * s
    return None, None


def analytic_moment_profile(spec: RandomSequenceSpec, phi: ShapeFunction,
                            n: int | None = None) -> MomentProfile:
    """Closed-form E[phi(u_k)], E[phi(v_k)] for the shipped law/shape table.

    Covers exponents 1 and 2 for every family with the needed moments
    (u_k and v_k are nonnegative, so the absolute-value and positive-part
    shapes coincide there), and any exponent for point masses.  Requesting
    a moment that is analytically infinite raises NonIntegrabilityError;
    combinations outside the table raise AnalyticProfileUnavailable.
    """
    n = int(spec.n if n is None else n)
    if n < 1:
        raise ParameterDomainError("n", "must be >= 1")
    sigma, ex2 = _increment_sigma_ex2(spec)
    k = np.arange(1, n + 1, dtype=np.float64)

    if spec.family == "point_mass":
        c = spec.param_dict()["c"]
        e_u = phi(k * max(c, 0.0))
        e_v = phi(k * max(-c, 0.0))
    elif phi.exponent == 1.0:
        a_p, _, a_m, _ = _sided_increment_moments(spec)
        e_u, e_v = k * a_p, k * a_m
    elif phi.exponent == 2.0:
        a_p, s_p, a_m, s_m = _sided_increment_moments(spec)
        if not (math.isfinite(s_p) and math.isfinite(s_m)):
            raise NonIntegrabilityError(
                "second moment of the sided increments is infinite; "
                "the exponent-2 profile does not exist for this law")
        # E[(sum of k iid nonnegative terms)^2] = k*E[Y^2] + k(k-1)*(E[Y])^2
        e_u = k * s_p + k * (k - 1.0) * a_p ** 2
        e_v = k * s_m + k * (k - 1.0) * a_m ** 2
    else:
        raise AnalyticProfileUnavailable(
            f"no closed form for exponent {phi.exponent} outside point masses")

    return MomentProfile(
        n=n,
        e_phi_u=tuple(float(x) for x in np.atleast_1d(e_u)),
        e_phi_v=tuple(float(x) for x in np.atleast_1d(e_v)),
        sigma=None if sigma is None else (float(sigma),) * n,
        ex2=None if ex2 is None else (float(ex2),) * n,
        provenance="analytic",
        source=spec.law(),
    )


def _running_mean_drift(samples: np.ndarray) -> float:
    """Max over k of the relative change between half- and full-sample means."""
    half = samples[: samples.shape[0] // 2].mean(axis=0)
    full = samples.mean(axis=0)
    scale = np.maximum(np.abs(full), np.abs(half))
    with np.errstate(invalid="ignore"):
        rel = np.where(scale > 0, np.abs(full - half) / np.where(scale > 0, scale, 1.0), 0.0)
    return float(np.max(rel)) if rel.size else 0.0


def estimate_moment_profile(spec: RandomSequenceSpec, phi: ShapeFunction,
                            n: int | None = None, replications: int = 10_000,
                            seed: int = 0, threads: int = 1) -> MomentProfile:
    """Monte Carlo moment profile with isotonic projection and drift check.

    The non-integrability detector compares the half-sample and full-sample
    running means entrywise; relative drift beyond 10% marks the profile as
    non-integrable, and bound evaluators then refuse it.
    """
    if replications < 100:
        raise ValidationError("moment estimation needs >= 100 replications")
    target = spec if n is None else spec.with_n(int(n))
    batch = TrajectoryBatch.generate(target, replications, seed, threads=threads)
    profile = {}
    drift = 0.0
    adjusted = False
    for name, paths in (("u", batch.u), ("v", batch.v)):
        values = phi(paths)  # (R, n)
        mean = values.mean(axis=0)
        se = values.std(axis=0, ddof=1) / math.sqrt(replications)
        drift = max(drift, _running_mean_drift(values))
        projected = isotonic_regression(mean).x
        adjusted = adjusted or bool(np.any(np.abs(projected - mean) > 2.0 * se))
        profile[name] = (projected, se)
    sigma, ex2 = _increment_sigma_ex2(target)
    return MomentProfile(
        n=target.n,
        e_phi_u=tuple(float(x) for x in profile["u"][0]),
        e_phi_v=tuple(float(x) for x in profile["v"][0]),
        sigma=None if sigma is None else (float(sigma),) * target.n,
        ex2=None if ex2 is None else (float(ex2),) * target.n,
        provenance="estimated",
        replications=replications,
        se_u=tuple(float(x) for x in profile["u"][1]),
        se_v=tuple(float(x) for x in profile["v"][1]),
        isotonic_adjusted=adjusted,
        non_integrable=drift > _DRIFT_LIMIT,
        max_rel_drift=drift,
        source=target.law(),
    )


# ---------------------------------------------------------------------------
# bound reports


@dataclass(frozen=True)
class BoundReport:
    """One evaluated inequality.

    ``terms`` are the per-index contributions: lower bounds reconstruct as
    raw_value = 1 - sum(terms), upper bounds as raw_value = sum(terms).
    ``value`` is raw_value clamped to [0, 1].  ``inputs_digest`` hashes the
    event the bound constrains (law, shape, scale, weights, horizon), so a
    matching estimate carries the same digest.
    """

    bound_kind: str
    value: float
    raw_value: float
    terms: tuple[float, ...]
    hypotheses_checked: tuple[tuple[str, bool], ...]
    inputs_digest: str
    event: dict = field(repr=False, default_factory=dict)

    def __post_init__(self):
        if self.bound_kind not in BOUND_KINDS:
            raise ValidationError(f"unknown bound kind {self.bound_kind!r}")

    @property
    def direction(self) -> str:
        return "lower" if self.bound_kind.endswith("_lower") else "upper"

    def reconstruct_raw(self) -> float:
        s = math.fsum(self.terms)
        return 1.0 - s if self.direction == "lower" else s

    @property
    def informative(self) -> bool:
        return dict(self.hypotheses_checked).get("informative", False)

    def to_dict(self) -> dict:
        return {
            "bound_kind": self.bound_kind,
            "direction": self.direction,
            "value": self.value,
            "raw_value": self.raw_value,
            "terms": list(self.terms),
            "hypotheses_checked": [[name, ok] for name, ok in self.hypotheses_checked],
            "inputs_digest": self.inputs_digest,
            "event": self.event,
        }


def _clamp01(x: float) -> float:
    return min(1.0, max(0.0, x))


def bound_theorem1(phi: ShapeFunction, chi: ScaleFunction, w: WeightSequence,
                   mp: MomentProfile) -> BoundReport:
    """Lower bound on P(phi(S_k) <= chi(b_k), all k <= n) from sided moments.

    raw = 1 - 2K * sum_k (increment of E[phi(u_k)] + E[phi(v_k)]) / chi(b_k)
    with K the subadditivity constant of phi.  The bound is only meaningful
    when every moment is finite; a profile flagged non-integrable is refused.
    """
    if mp.non_integrable:
        raise NonIntegrabilityError(
            "moment profile failed the running-mean stabilization check "
            f"(max relative drift {mp.max_rel_drift!r}); bound undefined")
    inc = mp.increments()
    bad = np.flatnonzero(~np.isfinite(inc))
    if bad.size:
        raise HypothesisViolationError(
            "non-finite moment increments", failing_indices=[int(i) + 1 for i in bad])
    bad = np.flatnonzero(inc < 0)
    if bad.size:
        raise HypothesisViolationError(
            "decreasing combined moment sequence", failing_indices=[int(i) + 1 for i in bad])
    cert = subadditivity_constant(phi)
    b = w.materialize(mp.n)
    terms = 2.0 * cert.K * inc / chi(b)
    raw = 1.0 - math.fsum(terms)
    hypotheses = (
        ("well_defined", True),
        ("moments_nondecreasing", True),
        ("informative", raw > 0.0),
    )
    payload = event_a_n(mp.source, phi, chi, w, mp.n)
    return BoundReport(
        bound_kind="theorem1_lower",
        value=_clamp01(raw),
        raw_value=raw,
        terms=tuple(float(t) for t in terms),
        hypotheses_checked=hypotheses,
        inputs_digest=digest_of(payload),
        event=payload,
    )


def bound_rao(phi: ShapeFunction, chi: ScaleFunction, w: WeightSequence,
              e_phi_T, source: dict | None = None,
              process: str = "u") -> BoundReport:
    """Lower bound 1 - sum_k (E[phi(T_k)] - E[phi(T_{k-1})]) / chi(b_k).

    ``e_phi_T`` is the expectation sequence for k = 1..n; the k = 0 term is
    zero by convention.  It must be finite, nonnegative, and nondecreasing.
    ``process`` names the nondecreasing sequence the envelope applies to
    (the positive-part process by default) for event identification.
    """
    e = np.asarray(e_phi_T, dtype=np.float64)
    if e.ndim != 1 or e.size == 0:
        raise DataError("expected a nonempty expectation vector")
    if not np.all(np.isfinite(e)):
        raise HypothesisViolationError(
            "non-finite expectations",
            failing_indices=[int(i) + 1 for i in np.flatnonzero(~np.isfinite(e))])
    inc = np.diff(np.concatenate([[0.0], e]))
    bad = np.flatnonzero(inc < 0)
    if bad.size:
        raise HypothesisViolationError(
            "E[phi(T_k)] must be nondecreasing (with E[phi(T_0)] = 0)",
            failing_indices=[int(i) + 1 for i in bad])
    n = e.size
    b = w.materialize(n)
    terms = inc / chi(b)
    raw = 1.0 - math.fsum(terms)
    payload = event_a_n(source, phi, chi, w, n, process=process)
    return BoundReport(
        bound_kind="rao_lower",
        value=_clamp01(raw),
        raw_value=raw,
        terms=tuple(float(t) for t in terms),
        hypotheses_checked=(
            ("moments_nondecreasing", True),
            ("informative", raw > 0.0),
        ),
        inputs_digest=digest_of(payload),
        event=payload,
    )


def bound_hajek_renyi_classic(ex2, w: WeightSequence, m: int, n: int,
                              epsilon: float, source: dict | None = None,
                              sided: str = "abs") -> BoundReport:
    """Two-range second-moment upper bound on the weighted partial-sum maximum.

    value = min(1, eps^{-2} * sum_{j=m+1..n} ex2[j]/b_j^2
                   + b_m^{-2} * sum_{j=1..m} ex2[j])

    The formula is stated for the one-sided maximum of S_k/b_k; ``sided``
    declares which event the report is checked against (the two-sided form
    is what the verifier exercises, by symmetry of the centered laws used).
    """
    m, n = int(m), int(n)
    if m < 1 or m > n:
        raise IndexError(f"need 1 <= m <= n, got m={m}, n={n}")
    if epsilon <= 0:
        raise ParameterDomainError("epsilon", "must be > 0")
    e = np.asarray(ex2, dtype=np.float64)
    if e.size < n:
        raise DataError(f"ex2 has {e.size} entries, need {n}")
    if not np.all(np.isfinite(e[:n])):
        raise DataError("non-finite second moment",
                        index=int(np.flatnonzero(~np.isfinite(e[:n]))[0]))
    if np.any(e[:n] < 0):
        raise ValidationError("second moments must be nonnegative")
    b = w.materialize(n)
    terms = np.empty(n, dtype=np.float64)
    terms[:m] = e[:m] / b[m - 1] ** 2
    terms[m:] = e[m:n] / (epsilon ** 2 * b[m:] ** 2)
    raw = math.fsum(terms)
    payload = event_max_ratio(source, w, m, n, epsilon, sided)
    return BoundReport(
        bound_kind="hajek_renyi_upper",
        value=_clamp01(raw),
        raw_value=raw,
        terms=tuple(float(t) for t in terms),
        hypotheses_checked=(
            ("second_moments_finite", True),
            ("informative", raw < 1.0),
        ),
        inputs_digest=digest_of(payload),
        event=payload,
    )


def bound_amini(sigma, w: WeightSequence, n: int, epsilon: float,
                source: dict | None = None) -> BoundReport:
    """Variance/cross-term upper bound on P(max_{k<=n} |S_k|/b_k >= eps).

    value = min(1, (8/eps^2) sum_k sigma_k^2/b_k^2
                   + 2 sum_{k>=2} sigma_k (sigma_1 + ... + sigma_{k-1})/b_k^2)
    """
    n = int(n)
    if n < 1:
        raise ParameterDomainError("n", "must be >= 1")
    if epsilon <= 0:
        raise ParameterDomainError("epsilon", "must be > 0")
    s = np.asarray(sigma, dtype=np.float64)
    if s.size < n:
        raise DataError(f"sigma has {s.size} entries, need {n}")
    s = s[:n]
    if not np.all(np.isfinite(s)):
        raise DataError("non-finite sigma entry",
                        index=int(np.flatnonzero(~np.isfinite(s))[0]))
    if np.any(s < 0):
        raise ValidationError("standard deviations must be nonnegative")
    b = w.materialize(n)
    head = np.concatenate([[0.0], np.cumsum(s)[:-1]])  # sigma_1 + .. + sigma_{k-1}
    terms = (8.0 / epsilon ** 2) * s ** 2 / b ** 2 + 2.0 * s * head / b ** 2
    raw = math.fsum(terms)
    payload = event_max_ratio(source, w, 1, n, epsilon, "abs")
    return BoundReport(
        bound_kind="amini_upper",
        value=_clamp01(raw),
        raw_value=raw,
        terms=tuple(float(t) for t in terms),
        hypotheses_checked=(
            ("sigma_nonnegative", True),
            ("informative", raw < 1.0),
        ),
        inputs_digest=digest_of(payload),
        event=payload,
    )


# ---------------------------------------------------------------------------
# series criterion for almost-sure convergence


@dataclass(frozen=True)
class SLLNSeriesSpec:
    """Inputs of the series criterion sum_k alpha_k * b_k^{-r} < infinity.

    ``alpha`` is a scalar (broadcast) or a per-k vector of nonnegative
    coefficients; ``c`` is the hypothesis constant carried along for
    reporting, not multiplied into the series.
    """

    alpha: float | tuple[float, ...]
    r: float
    weights: WeightSequence
    c: float = 1.0

    def __post_init__(self):
        if self.r <= 0:
            raise ParameterDomainError("r", "must be > 0")
        if self.c <= 0:
            raise ParameterDomainError("c", "must be > 0")
        values = self.alpha if isinstance(self.alpha, tuple) else (self.alpha,)
        for i, a in enumerate(values, start=1):
            if not math.isfinite(a) or a < 0:
                raise ValidationError(f"alpha: bad coefficient at index {i}")
        if not self.weights.is_unbounded:
            raise ValidationError(
                "series criterion needs certifiably unbounded weights "
                "(power with beta > 0, or log)")

    def alphas(self, horizon: int) -> np.ndarray:
        if isinstance(self.alpha, tuple):
            if len(self.alpha) < horizon:
                raise ValidationError(
                    f"alpha vector has {len(self.alpha)} entries, need {horizon}")
            return np.asarray(self.alpha[:horizon], dtype=np.float64)
        return np.full(horizon, float(self.alpha))


@dataclass(frozen=True)
class SLLNSeriesReport:
    partial_sum: float
    tail_increment: float
    verdict: str  # converging | diverging | inconclusive
    horizon: int
    tail_window: int
    c: float

    def to_dict(self) -> dict:
        return {
            "partial_sum": self.partial_sum,
            "tail_increment": self.tail_increment,
            "verdict": self.verdict,
            "horizon": self.horizon,
            "tail_window": self.tail_window,
            "c": self.c,
        }


def slln_series_check(s: SLLNSeriesSpec, horizon: int,
                      tail_window: int | None = None) -> SLLNSeriesReport:
    """Numerically classify sum_k alpha_k b_k^{-r} as converging/diverging.

    This is a heuristic on a finite horizon, not a proof: converging needs
    the last window to contribute < 1e-3 of the partial sum with decreasing
    increments; diverging needs k * delta_k to stay bounded away from zero
    across the window (the harmonic signature); anything else is
    inconclusive.
    """
    horizon = int(horizon)
    if tail_window is None:
        tail_window = max(10, horizon // 10)
    tail_window = int(tail_window)
    if horizon < 2 * tail_window:
        raise ValidationError("horizon must be at least twice the tail window")
    b = s.weights.materialize(horizon)
    if np.any(b <= 0):
        raise ValidationError("weights must be strictly positive")
    delta = s.alphas(horizon) * b ** (-float(s.r))
    total = math.fsum(delta)
    tail = math.fsum(delta[-tail_window:])

    if total == 0.0:
        verdict = "converging"
    elif tail < 1e-3 * total and np.all(np.diff(delta[-tail_window:]) <= 0):
        verdict = "converging"
    else:
        k = np.arange(horizon - tail_window + 1, horizon + 1, dtype=np.float64)
        kd = k * delta[-tail_window:]
        if kd.min() > 0 and kd.min() >= 0.5 * kd.max():
            verdict = "diverging"
        else:
            verdict = "inconclusive"
    return SLLNSeriesReport(
        partial_sum=float(total),
        tail_increment=float(tail),
        verdict=verdict,
        horizon=horizon,
        tail_window=tail_window,
        c=float(s.c),
    )

"""Monte Carlo and exact-enumeration estimation of the bounded probabilities.

The bounds module produces one-number reports; this module produces the
matching empirical side: estimates of P(A_n) and of weighted-maximum
exceedance probabilities, an exact enumeration oracle for sign sequences,
a verdict function comparing the two, an empirical check of the defining
inequality E[(T_{j+1} - T_j) g(T_1..T_j)] >= 0, and trailing-window ratio
summaries for almost-sure convergence demonstrations.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.stats import beta as _beta_dist
from scipy.stats import norm

from ._digest import digest_of, event_a_n, event_max_ratio
from .bounds import BoundReport
from .distributions import RandomSequenceSpec, SeedSpec, sample_iid
from .errors import (
    DigestMismatchError,
    EnumerationSizeError,
    HypothesisViolationError,
    ParameterDomainError,
    ValidationError,
)
from .sequences import TrajectoryBatch, partial_sums
from .shape_functions import ScaleFunction, ShapeFunction, WeightSequence

_ENUM_STATE_CAP = 2 ** 20
_ENUM_CHUNK = 2 ** 16

DEMI_PROCESSES = ("S", "u", "v", "phi_of_S_plus")
DEFAULT_DEMI_FAMILY = ("const", "coordinate", "running_max",
                       "indicator_q25", "indicator_q75")


# ---------------------------------------------------------------------------
# binomial estimates


@dataclass(frozen=True)
class MonteCarloEstimate:
    """A binomial proportion with a two-sided confidence interval.

    Wilson intervals by default; exact Clopper-Pearson at the boundary
    (p_hat of exactly 0 or 1), where Wilson degenerates.  ``event_digest``
    identifies the event estimated so reports can be matched to bounds.
    """

    p_hat: float
    replications: int
    ci_low: float
    ci_high: float
    level: float = 0.99
    method: str = "wilson"
    event_digest: str | None = None
    event: dict | None = None

    def __post_init__(self):
        if not 0.0 <= self.ci_low <= self.p_hat <= self.ci_high <= 1.0:
            raise ValidationError("confidence interval must satisfy "
                                  "0 <= ci_low <= p_hat <= ci_high <= 1")
        if self.method not in ("wilson", "exact_clopper_pearson"):
            raise ValidationError(f"unknown interval method {self.method!r}")

    def to_dict(self) -> dict:
        return {
            "p_hat": self.p_hat,
            "replications": self.replications,
            "ci_low": self.ci_low,
            "ci_high": self.ci_high,
            "level": self.level,
            "method": self.method,
            "event_digest": self.event_digest,
            "event": self.event,
        }


def binomial_estimate(successes: int, replications: int, level: float = 0.99,
                      event: dict | None = None) -> MonteCarloEstimate:
    """Wilson score interval, or Clopper-Pearson when p_hat is 0 or 1."""
    if replications < 1:
        raise ValidationError("need at least one replication")
    if not 0 <= successes <= replications:
        raise ValidationError("successes outside [0, replications]")
    if not 0.0 < level < 1.0:
        raise ParameterDomainError("level", "must be in (0, 1)")
    alpha = 1.0 - level
    p = successes / replications
    if successes == 0 or successes == replications:
        lo = 0.0 if successes == 0 else float(
            _beta_dist.ppf(alpha / 2.0, successes, replications - successes + 1))
        hi = 1.0 if successes == replications else float(
            _beta_dist.isf(alpha / 2.0, successes + 1, replications - successes))
        method = "exact_clopper_pearson"
    else:
        z = float(norm.ppf(1.0 - alpha / 2.0))
        denom = 1.0 + z * z / replications
        center = (p + z * z / (2.0 * replications)) / denom
        half = z * math.sqrt(p * (1.0 - p) / replications
                             + z * z / (4.0 * replications ** 2)) / denom
        lo, hi = max(0.0, center - half), min(1.0, center + half)
        method = "wilson"
    return MonteCarloEstimate(
        p_hat=p, replications=replications, ci_low=lo, ci_high=hi,
        level=level, method=method,
        event_digest=None if event is None else digest_of(event), event=event)


# ---------------------------------------------------------------------------
# event probability estimation


def _resolve_batch(spec: RandomSequenceSpec, n: int, reps: int, seed: int,
                   threads: int, batch: TrajectoryBatch | None) -> TrajectoryBatch:
    if batch is None:
        return TrajectoryBatch.generate(spec.with_n(n), reps, seed, threads=threads)
    if batch.spec.law() != spec.law():
        raise ValidationError("supplied batch was drawn from a different law")
    if batch.n < n or batch.replications < reps:
        raise ValidationError(
            f"supplied batch is {batch.replications}x{batch.n}, need {reps}x{n}")
    return batch


def _exceeds(max_ratio: np.ndarray, epsilon: float, sided: str) -> np.ndarray:
    # The two-sided event uses >= (the exceedance form the upper bounds
    # constrain); the one-sided event keeps the strict > of the classical
    # statement.  For the continuous laws the difference is null.
    if sided == "abs":
        return max_ratio >= epsilon
    if sided == "upper":
        return max_ratio > epsilon
    raise ValidationError(f"unknown sidedness {sided!r}")


def estimate_event_An(spec: RandomSequenceSpec, phi: ShapeFunction,
                      chi: ScaleFunction, w: WeightSequence, n: int | None = None,
                      reps: int = 10_000, seed: int = 0, level: float = 0.99,
                      threads: int = 1,
                      batch: TrajectoryBatch | None = None) -> MonteCarloEstimate:
    """Estimate P(phi(S_k) <= chi(b_k) simultaneously for all k <= n)."""
    n = int(spec.n if n is None else n)
    if reps < 1000:
        raise ValidationError("event estimation needs >= 1000 replications")
    batch = _resolve_batch(spec, n, reps, seed, threads, batch)
    b = w.materialize(n)
    inside = np.all(phi(batch.s[:reps, :n]) <= chi(b), axis=1)
    return binomial_estimate(int(inside.sum()), reps, level,
                             event=event_a_n(spec.law(), phi, chi, w, n))


def estimate_max_event(spec: RandomSequenceSpec, w: WeightSequence, epsilon: float,
                       m: int = 1, n: int | None = None, reps: int = 10_000,
                       seed: int = 0, sided: str = "abs", level: float = 0.99,
                       threads: int = 1,
                       batch: TrajectoryBatch | None = None) -> MonteCarloEstimate:
    """Estimate P(max_{m<=k<=n} (|S_k| or S_k)/b_k exceeds epsilon)."""
    n = int(spec.n if n is None else n)
    m = int(m)
    if m < 1 or m > n:
        raise IndexError(f"need 1 <= m <= n, got m={m}, n={n}")
    if epsilon <= 0:
        raise ParameterDomainError("epsilon", "must be > 0")
    if reps < 1000:
        raise ValidationError("event estimation needs >= 1000 replications")
    batch = _resolve_batch(spec, n, reps, seed, threads, batch)
    b = w.materialize(n)
    s = batch.s[:reps, m - 1:n]
    ratios = (np.abs(s) if sided == "abs" else s) / b[m - 1:n]
    hit = _exceeds(ratios.max(axis=1), epsilon, sided)
    return binomial_estimate(int(hit.sum()), reps, level,
                             event=event_max_ratio(spec.law(), w, m, n, epsilon, sided))


def enumerate_exact(spec: RandomSequenceSpec, phi: ShapeFunction | None = None,
                    chi: ScaleFunction | None = None, w: WeightSequence | None = None,
                    n: int | None = None, event: str = "A_n",
                    epsilon: float | None = None, m: int = 1,
                    sided: str = "abs") -> Fraction:
    """Exact event probability by full enumeration of a finite-support law.

    Supports sign sequences (2^n equiprobable paths, exact dyadic rational)
    and point masses (one path).  ``event`` is "A_n" (requires phi and chi)
    or "max" (requires epsilon; optional m and sidedness).
    """
    n = int(spec.n if n is None else n)
    if w is None:
        raise ValidationError("a weight sequence is required")
    b = w.materialize(n)
    if event == "A_n":
        if phi is None or chi is None:
            raise ValidationError("the A_n event needs phi and chi")
        envelope = chi(b)

        def hits(s: np.ndarray) -> np.ndarray:
            return np.all(phi(s) <= envelope, axis=1)
    elif event == "max":
        if epsilon is None or epsilon <= 0:
            raise ParameterDomainError("epsilon", "must be > 0 for the max event")
        m = int(m)
        if m < 1 or m > n:
            raise IndexError(f"need 1 <= m <= n, got m={m}, n={n}")

        def hits(s: np.ndarray) -> np.ndarray:
            tail = s[:, m - 1:n]
            ratios = (np.abs(tail) if sided == "abs" else tail) / b[m - 1:n]
            return _exceeds(ratios.max(axis=1), epsilon, sided)
    else:
        raise ValidationError(f"unknown event {event!r}")

    if spec.family == "point_mass":
        path = np.cumsum(np.full(n, spec.param_dict()["c"])).reshape(1, n)
        return Fraction(int(hits(path)[0]), 1)
    if spec.family != "rademacher":
        raise ValidationError("exact enumeration needs a finite-support family")
    if 2 ** n > _ENUM_STATE_CAP:
        raise EnumerationSizeError(
            f"2^{n} sign paths exceed the {_ENUM_STATE_CAP} state cap")

    count = 0
    shifts = np.arange(n, dtype=np.uint32)
    for start in range(0, 2 ** n, _ENUM_CHUNK):
        idx = np.arange(start, min(start + _ENUM_CHUNK, 2 ** n), dtype=np.uint32)
        signs = (((idx[:, None] >> shifts) & 1) * 2.0 - 1.0)
        count += int(hits(np.cumsum(signs, axis=1)).sum())
    return Fraction(count, 2 ** n)


# ---------------------------------------------------------------------------
# bound-versus-estimate verdicts


def verify_bound(estimate, report: BoundReport) -> str:
    """Compare a bound against an estimate of the same event.

    Returns "vacuous" when the clamped bound carries no information
    (raw <= 0 for a lower bound, raw >= 1 for an upper bound), "violation"
    when the estimate's whole confidence interval sits on the wrong side of
    the bound, and "consistent" otherwise.  Exact probabilities (Fraction
    or float) act as degenerate intervals.  When both sides carry an event
    digest the digests must agree.
    """
    if isinstance(estimate, MonteCarloEstimate):
        ci_low, ci_high = estimate.ci_low, estimate.ci_high
        digest = estimate.event_digest
    else:
        p = float(estimate)
        if not 0.0 <= p <= 1.0:
            raise ValidationError("exact probability outside [0, 1]")
        ci_low = ci_high = p
        digest = None
    if digest is not None and report.inputs_digest is not None \
            and digest != report.inputs_digest:
        raise DigestMismatchError(
            f"estimate describes {digest}, report describes {report.inputs_digest}")
    if report.direction == "lower":
        if report.raw_value <= 0.0:
            return "vacuous"
        return "violation" if ci_high < report.value else "consistent"
    if report.raw_value >= 1.0:
        return "vacuous"
    return "violation" if ci_low > report.value else "consistent"


# ---------------------------------------------------------------------------
# empirical demimartingale checking


@dataclass(frozen=True)
class MarginRecord:
    j: int               # margin of step j -> j+1 (1-based)
    g: str               # test-function name
    margin: float        # mean of (T_{j+1} - T_j) * g(T_1..T_j)
    se: float
    flagged: bool        # significantly negative at the Bonferroni level
    negative_products: int  # count of strictly negative per-sample products


@dataclass(frozen=True)
class DemiCheckReport:
    """Empirical margins of the defining inequality across (j, g) pairs.

    Flags use a one-sided z-test with Bonferroni correction over all pairs,
    so at family-wise level 0.99 the false-positive allowance is zero flags.
    """

    process: str
    level: float
    replications: int
    n: int
    family: tuple[str, ...]
    clip_constant: float
    records: tuple[MarginRecord, ...]

    @property
    def flagged(self) -> tuple[MarginRecord, ...]:
        return tuple(r for r in self.records if r.flagged)

    @property
    def flagged_count(self) -> int:
        return len(self.flagged)

    @property
    def pointwise_negative_count(self) -> int:
        return sum(r.negative_products for r in self.records)

    @property
    def passed(self) -> bool:
        return self.flagged_count == 0

    def flagged_js(self) -> tuple[int, ...]:
        return tuple(sorted({r.j for r in self.flagged}))

    def to_dict(self) -> dict:
        return {
            "process": self.process,
            "level": self.level,
            "replications": self.replications,
            "n": self.n,
            "family": list(self.family),
            "clip_constant": self.clip_constant,
            "flagged_count": self.flagged_count,
            "pointwise_negative_count": self.pointwise_negative_count,
            "passed": self.passed,
            "records": [
                {"j": r.j, "g": r.g, "margin": r.margin, "se": r.se,
                 "flagged": r.flagged, "negative_products": r.negative_products}
                for r in self.records
            ],
        }


def _process_matrix(batch: TrajectoryBatch, process: str,
                    phi: ShapeFunction | None) -> np.ndarray:
    if process == "S":
        return batch.s
    if process == "u":
        return batch.u
    if process == "v":
        return batch.v
    if process == "phi_of_S_plus":
        if phi is None:
            raise ValidationError("process phi_of_S_plus needs a shape function")
        return phi(np.maximum(batch.s, 0.0))
    raise ValidationError(f"unknown process {process!r}")


def demi_check(batch: TrajectoryBatch, process: str = "S",
               family: tuple[str, ...] = DEFAULT_DEMI_FAMILY,
               level: float = 0.99,
               phi: ShapeFunction | None = None) -> DemiCheckReport:
    """Estimate E[(T_{j+1} - T_j) g(T_1..T_j)] for every j and test g.

    Every shipped g is componentwise nondecreasing and nonnegative (clipped
    coordinates and running maxima are shifted up by the clip constant), so
    the family is admissible for both the general and the nonnegative-g
    variants of the defining inequality.  A pair is flagged when its margin
    is significantly negative under a Bonferroni-corrected one-sided z-test.
    """
    if not family:
        raise ValidationError("empty test-function family")
    unknown = [g for g in family if g not in DEFAULT_DEMI_FAMILY]
    if unknown:
        raise ValidationError(f"unknown test functions: {unknown}")
    if batch.replications < 1000:
        raise ValidationError("demi check needs >= 1000 replications")
    if batch.n < 2:
        raise ValidationError("need at least two indices to form a margin")
    if not 0.0 < level < 1.0:
        raise ParameterDomainError("level", "must be in (0, 1)")

    T = _process_matrix(batch, process, phi)
    R, n = T.shape
    c = float(np.quantile(np.abs(T), 0.999))
    running_max = np.maximum.accumulate(T, axis=1)
    n_tests = (n - 1) * len(family)
    z = float(norm.ppf(1.0 - (1.0 - level) / n_tests))

    records = []
    for j in range(1, n):  # margin between T_j and T_{j+1}, 1-based
        diff = T[:, j] - T[:, j - 1]
        col = T[:, j - 1]
        for name in family:
            if name == "const":
                g = np.ones(R)
            elif name == "coordinate":
                g = np.clip(col, -c, c) + c
            elif name == "running_max":
                g = np.clip(running_max[:, j - 1], -c, c) + c
            elif name == "indicator_q25":
                g = (col > np.quantile(col, 0.25)).astype(np.float64)
            else:  # indicator_q75
                g = (col > np.quantile(col, 0.75)).astype(np.float64)
            prod = diff * g
            margin = float(prod.mean())
            se = float(prod.std(ddof=1) / math.sqrt(R))
            flagged = margin < -z * se if se > 0 else margin < 0
            records.append(MarginRecord(
                j=j, g=name, margin=margin, se=se, flagged=bool(flagged),
                negative_products=int(np.count_nonzero(prod < 0))))
    return DemiCheckReport(
        process=process, level=level, replications=R, n=n,
        family=tuple(family), clip_constant=c, records=tuple(records))


# ---------------------------------------------------------------------------
# almost-sure convergence demonstrations


@dataclass(frozen=True)
class SLLNTrajectoryReport:
    """Trailing-window maxima of the normalized ratios at checkpoints.

    At checkpoint k the window is [k/2, k]; the summary is the median and
    0.95-quantile across replicates of the window maximum, for both
    phi(S_k)/chi(b_k) and |S_k|/b_k.  A profile decreasing in k is the
    empirical signature of almost-sure convergence to zero.
    """

    checkpoints: tuple[int, ...]
    median_phi_ratio: tuple[float, ...]
    q95_phi_ratio: tuple[float, ...]
    median_abs_ratio: tuple[float, ...]
    q95_abs_ratio: tuple[float, ...]
    replications: int
    n: int
    master_seed: int

    def rows(self) -> list[dict]:
        return [
            {
                "checkpoint": k,
                "median_phi_ratio": self.median_phi_ratio[i],
                "q95_phi_ratio": self.q95_phi_ratio[i],
                "median_abs_ratio": self.median_abs_ratio[i],
                "q95_abs_ratio": self.q95_abs_ratio[i],
            }
            for i, k in enumerate(self.checkpoints)
        ]

    def to_dict(self) -> dict:
        return {
            "checkpoints": list(self.checkpoints),
            "median_phi_ratio": list(self.median_phi_ratio),
            "q95_phi_ratio": list(self.q95_phi_ratio),
            "median_abs_ratio": list(self.median_abs_ratio),
            "q95_abs_ratio": list(self.q95_abs_ratio),
            "replications": self.replications,
            "n": self.n,
            "master_seed": self.master_seed,
        }


def slln_trajectory(spec: RandomSequenceSpec, phi: ShapeFunction,
                    chi: ScaleFunction, w: WeightSequence, n: int | None = None,
                    reps: int = 200, checkpoints: tuple[int, ...] = (10 ** 3, 10 ** 4, 10 ** 5),
                    seed: int = 0, threads: int = 1) -> SLLNTrajectoryReport:
    """Per-checkpoint ratio summaries along independent long trajectories.

    Replicates are streamed one at a time (a 10^5-step path is small, but a
    full replicate-by-step matrix would not be), so memory stays O(n).
    """
    n = int(spec.n if n is None else n)
    if not w.is_unbounded:
        raise HypothesisViolationError(
            "almost-sure convergence needs unbounded weights; "
            "got a bounded (or not certifiably unbounded) sequence")
    cps = tuple(int(k) for k in checkpoints)
    if not cps or any(k < 2 for k in cps) or any(b <= a for a, b in zip(cps, cps[1:])):
        raise ValidationError("checkpoints must be increasing integers >= 2")
    if cps[-1] > n:
        raise ValidationError(f"last checkpoint {cps[-1]} exceeds horizon {n}")
    if reps < 1:
        raise ValidationError("need at least one replicate")

    target = spec.with_n(n)
    b = w.materialize(n)
    chib = chi(b)
    phi_out = np.empty((reps, len(cps)), dtype=np.float64)
    abs_out = np.empty((reps, len(cps)), dtype=np.float64)

    def run(rows: range) -> None:
        for r in rows:
            s = partial_sums(sample_iid(target, SeedSpec(seed, r)))
            phi_ratio = phi(s) / chib
            abs_ratio = np.abs(s) / b
            for i, k in enumerate(cps):
                lo = max(k // 2, 1) - 1  # 0-based start of the [k/2, k] window
                phi_out[r, i] = phi_ratio[lo:k].max()
                abs_out[r, i] = abs_ratio[lo:k].max()

    if threads > 1 and reps > 1:
        chunks = np.array_split(np.arange(reps), min(threads, reps))
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(run, [range(c[0], c[-1] + 1) for c in chunks if c.size]))
    else:
        run(range(reps))

    return SLLNTrajectoryReport(
        checkpoints=cps,
        median_phi_ratio=tuple(float(x) for x in np.median(phi_out, axis=0)),
        q95_phi_ratio=tuple(float(x) for x in np.quantile(phi_out, 0.95, axis=0)),
        median_abs_ratio=tuple(float(x) for x in np.median(abs_out, axis=0)),
        q95_abs_ratio=tuple(float(x) for x in np.quantile(abs_out, 0.95, axis=0)),
        replications=int(reps), n=n, master_seed=int(seed))

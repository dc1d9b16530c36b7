"""Maximal-inequality bounds for weighted partial sums, with verification.

The package has three layers:

* analytic: shape/scale/weight descriptors, moment profiles, and the four
  bound calculators (`bounds`),
* empirical: trajectory batches, Monte Carlo and exact event probabilities,
  the demi-margin check, and SLLN trajectories (`sequences`, `simulation`),
* glue: experiment configs and the `hrbounds` command line (`cli`).
"""

from .bounds import (
    BOUND_KINDS,
    BoundReport,
    MomentProfile,
    SLLNSeriesReport,
    SLLNSeriesSpec,
    analytic_moment_profile,
    bound_amini,
    bound_hajek_renyi_classic,
    bound_rao,
    bound_theorem1,
    estimate_moment_profile,
    slln_series_check,
)
from .distributions import RandomSequenceSpec, SeedSpec, sample_iid, stable_sample
from .errors import (
    AnalyticProfileUnavailable,
    CertificateError,
    DataError,
    DigestMismatchError,
    EnumerationSizeError,
    HRBoundsError,
    HypothesisViolationError,
    NonIntegrabilityError,
    ParameterDomainError,
    ValidationError,
)
from .sequences import Trajectory, TrajectoryBatch, decompose, partial_sums
from .shape_functions import (
    ScaleFunction,
    ShapeFunction,
    SubadditivityCertificate,
    WeightSequence,
    subadditivity_constant,
)
from .simulation import (
    DEFAULT_DEMI_FAMILY,
    DemiCheckReport,
    MonteCarloEstimate,
    SLLNTrajectoryReport,
    binomial_estimate,
    demi_check,
    enumerate_exact,
    estimate_event_An,
    estimate_max_event,
    slln_trajectory,
    verify_bound,
)

__version__ = "0.1.0"

__all__ = [
    "BOUND_KINDS",
    "BoundReport",
    "MomentProfile",
    "SLLNSeriesReport",
    "SLLNSeriesSpec",
    "analytic_moment_profile",
    "bound_amini",
    "bound_hajek_renyi_classic",
    "bound_rao",
    "bound_theorem1",
    "estimate_moment_profile",
    "slln_series_check",
    "RandomSequenceSpec",
    "SeedSpec",
    "sample_iid",
    "stable_sample",
    "AnalyticProfileUnavailable",
    "CertificateError",
    "DataError",
    "DigestMismatchError",
    "EnumerationSizeError",
    "HRBoundsError",
    "HypothesisViolationError",
    "NonIntegrabilityError",
    "ParameterDomainError",
    "ValidationError",
    "Trajectory",
    "TrajectoryBatch",
    "decompose",
    "partial_sums",
    "ScaleFunction",
    "ShapeFunction",
    "SubadditivityCertificate",
    "WeightSequence",
    "subadditivity_constant",
    "DEFAULT_DEMI_FAMILY",
    "DemiCheckReport",
    "MonteCarloEstimate",
    "SLLNTrajectoryReport",
    "binomial_estimate",
    "demi_check",
    "enumerate_exact",
    "estimate_event_An",
    "estimate_max_event",
    "slln_trajectory",
    "verify_bound",
]

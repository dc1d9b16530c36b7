"""Seed-reproducible i.i.d. samplers for the increment families.

The menu spans the regimes the bounds care about: bounded increments
(rademacher), light tails (gaussian), asymmetric light tails
(centered_exponential), infinite variance (alpha_stable with alpha < 2)
and the degenerate point mass.

Stream discipline: the stream for ``SeedSpec(master_seed, i)`` is derived
as ``numpy.random.SeedSequence([master_seed, i])``, i.e. hash-based child
seeding.  Streams for distinct replicate indices never overlap, so
replicates can be generated in parallel and in any order with identical
results.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterDomainError

FAMILIES = ("rademacher", "gaussian", "centered_exponential", "alpha_stable", "point_mass")

# parameters each family accepts (and their defaults)
_FAMILY_PARAMS: dict[str, dict[str, float]] = {
    "rademacher": {},
    "gaussian": {"mu": 0.0, "sigma": 1.0},
    "centered_exponential": {"lam": 1.0},
    "alpha_stable": {"alpha": 1.5, "beta": 0.0, "scale": 1.0},
    "point_mass": {"c": 0.0},
}

_U64_MAX = 2**64 - 1


@dataclass(frozen=True)
class SeedSpec:
    """Addresses one reproducible random stream.

    ``(master_seed, replicate_index)`` is mapped to an independent child
    stream via ``SeedSequence([master_seed, replicate_index])``; different
    replicate indices under the same master seed give disjoint streams.
    """

    master_seed: int
    replicate_index: int = 0

    def __post_init__(self):
        if not 0 <= int(self.master_seed) <= _U64_MAX:
            raise ParameterDomainError("master_seed", "must be a 64-bit unsigned integer")
        if int(self.replicate_index) < 0:
            raise ParameterDomainError("replicate_index", "must be non-negative")

    def generator(self) -> np.random.Generator:
        """Instantiate the stream this spec addresses."""
        ss = np.random.SeedSequence([int(self.master_seed), int(self.replicate_index)])
        return np.random.default_rng(ss)


@dataclass(frozen=True)
class RandomSequenceSpec:
    """Generative description of an i.i.d. sequence X_1..X_n.

    ``params`` holds the family's named parameters; unknown or out-of-domain
    parameters are rejected at construction.
    """

    family: str
    n: int
    params: tuple[tuple[str, float], ...] = field(default_factory=tuple)
    dependence: str = "iid"

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ParameterDomainError("family", f"unknown family {self.family!r}")
        if self.dependence != "iid":
            raise ParameterDomainError("dependence", "only 'iid' is supported")
        if int(self.n) < 1:
            raise ParameterDomainError("n", "sequence length must be a positive integer")
        allowed = _FAMILY_PARAMS[self.family]
        given = dict(self.params)
        for name in given:
            if name not in allowed:
                raise ParameterDomainError(name, f"not a parameter of family {self.family!r}")
        merged = {**allowed, **given}
        object.__setattr__(self, "params", tuple(sorted(merged.items())))
        p = self.param_dict()
        if self.family == "gaussian" and p["sigma"] <= 0:
            raise ParameterDomainError("sigma", "must be > 0")
        if self.family == "centered_exponential" and p["lam"] <= 0:
            raise ParameterDomainError("lam", "must be > 0")
        if self.family == "alpha_stable":
            if not 0 < p["alpha"] <= 2:
                raise ParameterDomainError("alpha", "must satisfy 0 < alpha <= 2")
            if not -1 <= p["beta"] <= 1:
                raise ParameterDomainError("beta", "must satisfy -1 <= beta <= 1")
            if p["scale"] <= 0:
                raise ParameterDomainError("scale", "must be > 0")

    # -- constructors ------------------------------------------------------

    @classmethod
    def rademacher(cls, n: int) -> "RandomSequenceSpec":
        return cls("rademacher", n)

    @classmethod
    def gaussian(cls, n: int, mu: float = 0.0, sigma: float = 1.0) -> "RandomSequenceSpec":
        return cls("gaussian", n, (("mu", float(mu)), ("sigma", float(sigma))))

    @classmethod
    def centered_exponential(cls, n: int, lam: float = 1.0) -> "RandomSequenceSpec":
        return cls("centered_exponential", n, (("lam", float(lam)),))

    @classmethod
    def alpha_stable(cls, n: int, alpha: float, beta: float = 0.0,
                     scale: float = 1.0) -> "RandomSequenceSpec":
        return cls("alpha_stable", n,
                   (("alpha", float(alpha)), ("beta", float(beta)), ("scale", float(scale))))

    @classmethod
    def point_mass(cls, n: int, c: float = 0.0) -> "RandomSequenceSpec":
        return cls("point_mass", n, (("c", float(c)),))

    # -- helpers -----------------------------------------------------------

    def param_dict(self) -> dict[str, float]:
        return dict(self.params)

    def with_n(self, n: int) -> "RandomSequenceSpec":
        return RandomSequenceSpec(self.family, n, self.params, self.dependence)

    @property
    def mean(self) -> float | None:
        """Analytic mean of one increment, or None when it does not exist."""
        p = self.param_dict()
        if self.family == "rademacher":
            return 0.0
        if self.family == "gaussian":
            return p["mu"]
        if self.family == "centered_exponential":
            return 0.0
        if self.family == "point_mass":
            return p["c"]
        # alpha_stable, location 0: the mean exists iff alpha > 1 and is 0
        return 0.0 if p["alpha"] > 1 else None

    @property
    def is_symmetric(self) -> bool:
        p = self.param_dict()
        if self.family == "rademacher":
            return True
        if self.family == "gaussian":
            return p["mu"] == 0.0
        if self.family == "alpha_stable":
            return p["beta"] == 0.0
        if self.family == "point_mass":
            return p["c"] == 0.0
        return False

    def descriptor(self) -> dict:
        """Canonical plain-dict form, used for digests and serialization."""
        return {
            "family": self.family,
            "n": int(self.n),
            "params": self.param_dict(),
            "dependence": self.dependence,
        }

    def law(self) -> dict:
        """The increment law alone, without the horizon.

        Event digests use this so that a batch drawn at a longer horizon can
        be sliced down to a shorter event without changing identity.
        """
        return {
            "family": self.family,
            "params": self.param_dict(),
            "dependence": self.dependence,
        }


def stable_sample(alpha: float, beta: float, scale: float, u1, u2):
    """One stable variate from two uniforms, via the CMS transform.

    Pure function: identical inputs give identical output, so it can be
    tested directly against distributional oracles.  Accepts scalars or
    equally-shaped arrays for ``u1``/``u2``.

    Uses the standard one-parameterization: for ``alpha != 1`` the output is
    ``scale * Z`` with Z the unit variate; ``alpha == 1`` adds the
    ``(2/pi) * beta * scale * log(scale)`` shift that keeps the skewed
    Cauchy branch consistent.  At ``alpha == 2`` the transform collapses to
    ``2 * scale * sin(V) * sqrt(W)``, a centered normal with variance
    ``2 * scale**2``.
    """
    if not 0 < alpha <= 2:
        raise ParameterDomainError("alpha", "must satisfy 0 < alpha <= 2")
    if not -1 <= beta <= 1:
        raise ParameterDomainError("beta", "must satisfy -1 <= beta <= 1")
    if scale <= 0:
        raise ParameterDomainError("scale", "must be > 0")
    u1 = np.asarray(u1, dtype=np.float64)
    u2 = np.asarray(u2, dtype=np.float64)
    if np.any(u1 <= 0) or np.any(u1 >= 1):
        raise ParameterDomainError("u1", "must lie strictly inside (0, 1)")
    if np.any(u2 <= 0) or np.any(u2 >= 1):
        raise ParameterDomainError("u2", "must lie strictly inside (0, 1)")

    v = np.pi * (u1 - 0.5)          # uniform on (-pi/2, pi/2)
    w = -np.log(u2)                 # unit exponential

    if alpha == 1.0:
        # logarithmic branch; reduces to tan(v) (Cauchy) when beta == 0
        half_pi = np.pi / 2
        z = (2 / np.pi) * ((half_pi + beta * v) * np.tan(v)
                           - beta * np.log((half_pi * w * np.cos(v)) / (half_pi + beta * v)))
        out = scale * z + (2 / np.pi) * beta * scale * math.log(scale)
    else:
        # tan(pi*alpha/2) is exactly 0 at alpha == 2; avoid the float residue
        ta = 0.0 if alpha == 2.0 else math.tan(math.pi * alpha / 2)
        b0 = math.atan(beta * ta) / alpha
        s0 = (1 + (beta * ta) ** 2) ** (1 / (2 * alpha))
        z = (s0 * np.sin(alpha * (v + b0)) / np.cos(v) ** (1 / alpha)
             * (np.cos(v - alpha * (v + b0)) / w) ** ((1 - alpha) / alpha))
        out = scale * z
    return out if out.ndim else float(out)


def sample_iid(spec: RandomSequenceSpec, seed: SeedSpec) -> np.ndarray:
    """Draw the length-n i.i.d. vector described by ``spec``.

    Bitwise reproducible: identical ``(spec, seed)`` give identical output.
    """
    rng = seed.generator()
    n = int(spec.n)
    p = spec.param_dict()
    if spec.family == "rademacher":
        return (2.0 * rng.integers(0, 2, size=n) - 1.0).astype(np.float64)
    if spec.family == "gaussian":
        return p["mu"] + p["sigma"] * rng.standard_normal(n)
    if spec.family == "centered_exponential":
        return rng.exponential(1.0 / p["lam"], size=n) - 1.0 / p["lam"]
    if spec.family == "point_mass":
        return np.full(n, p["c"], dtype=np.float64)
    # alpha_stable: two uniform blocks feed the pure CMS transform.
    eps = np.finfo(np.float64).eps
    u1 = np.clip(rng.random(n), eps, 1.0 - eps)
    u2 = np.clip(rng.random(n), eps, 1.0 - eps)
    return np.asarray(stable_sample(p["alpha"], p["beta"], p["scale"], u1, u2))

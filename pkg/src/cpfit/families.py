"""Compound Poisson distribution families.

A compound Poisson variate is the sum of M i.i.d. draws from an inner
"generalizer" distribution B, where M is Poisson with some rate.  Four
compound families are provided (the inner distribution in parentheses),
plus the plain Poisson and the negative binomial for comparison fits:

* :class:`NeymanTypeA`      (Poisson)
* :class:`PoissonBinomial`  (binomial)
* :class:`PoissonPascal`    (negative binomial, P/Q parameterization)
* :class:`GeometricPoisson` (geometric supported on 1, 2, ...)

All pmfs live on n = 0, 1, ... and are evaluated with the standard
compound-Poisson recursion, which is exact in exact arithmetic and
numerically stable (every term is nonnegative).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Union

import numpy as np
from scipy.special import gammaln

__all__ = [
    "ParameterError",
    "Poisson",
    "NeymanTypeA",
    "PoissonBinomial",
    "PoissonPascal",
    "GeometricPoisson",
    "NegativeBinomial",
    "DistributionSpec",
    "PmfVector",
    "Moments",
    "generalizer_pmf",
    "compound_pmf",
    "family_pmf",
    "moments",
    "pmf_moments",
    "geometric_to_pascal",
    "pascal_to_geometric",
]

# Auto-truncation: smallest power of two >= MIN_AUTO_LENGTH whose tail mass
# is below AUTO_TAIL_TOLERANCE, capped at MAX_AUTO_LENGTH.
MIN_AUTO_LENGTH = 64
MAX_AUTO_LENGTH = 2**16
AUTO_TAIL_TOLERANCE = 1e-10

# Below exp(-700) the straightforward recursion start is at risk of
# underflowing to zero partway through; switch to the rescaled recursion.
_LOG_P0_DIRECT_LIMIT = -700.0


class ParameterError(ValueError):
    """A distribution parameter is outside its admissible domain."""


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise ParameterError(message)


@dataclass(frozen=True)
class Poisson:
    """Plain Poisson distribution with mean ``rate``."""

    rate: float

    def __post_init__(self):
        _require(self.rate > 0, f"Poisson rate must be > 0, got {self.rate}")


@dataclass(frozen=True)
class NeymanTypeA:
    """Poisson number of clusters, Poisson-distributed cluster sizes.

    ``rate`` is the mean number of clusters and ``cluster_mean`` the mean
    size of each cluster, so the distribution mean is rate * cluster_mean.
    """

    rate: float
    cluster_mean: float

    def __post_init__(self):
        _require(self.rate > 0, f"rate must be > 0, got {self.rate}")
        _require(self.cluster_mean > 0,
                 f"cluster_mean must be > 0, got {self.cluster_mean}")


@dataclass(frozen=True)
class PoissonBinomial:
    """Poisson number of clusters, binomial(k, p) cluster sizes."""

    rate: float
    k: int
    p: float

    def __post_init__(self):
        _require(self.rate > 0, f"rate must be > 0, got {self.rate}")
        _require(isinstance(self.k, (int, np.integer)) and self.k >= 1,
                 f"k must be a positive integer, got {self.k}")
        _require(0 < self.p < 1, f"p must be inside (0, 1), got {self.p}")

    @property
    def q(self) -> float:
        return 1.0 - self.p


@dataclass(frozen=True)
class PoissonPascal:
    """Poisson number of clusters, negative-binomial cluster sizes.

    The inner negative binomial uses the classical P/Q parameterization:
    ``odds`` is P (> 0, not a probability) and Q = 1 + P, so the cluster
    size has mean k * odds.  With k = 1 this family coincides with
    :class:`GeometricPoisson` (see :func:`pascal_to_geometric`).
    """

    rate: float
    k: int
    odds: float

    def __post_init__(self):
        _require(self.rate > 0, f"rate must be > 0, got {self.rate}")
        _require(isinstance(self.k, (int, np.integer)) and self.k >= 1,
                 f"k must be a positive integer, got {self.k}")
        _require(self.odds > 0, f"odds must be > 0, got {self.odds}")

    @property
    def q(self) -> float:
        """The companion parameter Q = 1 + P; holds by construction."""
        return 1.0 + self.odds


@dataclass(frozen=True)
class GeometricPoisson:
    """Poisson number of clusters, geometric cluster sizes on 1, 2, ...

    ``p`` is the common ratio of the geometric generalizer,
    b_j = (1-p) * p**(j-1) for j >= 1, so clusters have mean 1/(1-p).
    """

    rate: float
    p: float

    def __post_init__(self):
        _require(self.rate > 0, f"rate must be > 0, got {self.rate}")
        _require(0 < self.p < 1, f"p must be inside (0, 1), got {self.p}")

    @property
    def q(self) -> float:
        return 1.0 - self.p


@dataclass(frozen=True)
class NegativeBinomial:
    """Negative binomial with real-valued shape k and success probability p.

    pmf(n) = C(k+n-1, n) * p**k * q**n on n = 0, 1, ...; the shape does
    not have to be an integer.  Included as a comparison family; it is
    not a compound Poisson distribution in this framework.
    """

    k: float
    p: float

    def __post_init__(self):
        _require(self.k > 0, f"k must be > 0, got {self.k}")
        _require(0 < self.p < 1, f"p must be inside (0, 1), got {self.p}")

    @property
    def q(self) -> float:
        return 1.0 - self.p


DistributionSpec = Union[
    Poisson,
    NeymanTypeA,
    PoissonBinomial,
    PoissonPascal,
    GeometricPoisson,
    NegativeBinomial,
]

_COMPOUND_FAMILIES = (Poisson, NeymanTypeA, PoissonBinomial, PoissonPascal,
                      GeometricPoisson)


class Moments(NamedTuple):
    mean: float
    variance: float


@dataclass(frozen=True)
class PmfVector:
    """Truncated pmf P_0 .. P_{N-1} on the nonnegative integers.

    The array is made read-only on construction; instances are safe to
    share across threads.  ``h`` is the scaled pmf P_n / P_0 with h_0 = 1
    exactly (available only when P_0 > 0; generalizer pmfs may start at
    zero, compound pmfs never do).
    """

    masses: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.masses, dtype=float)
        if arr.ndim != 1 or arr.size == 0:
            raise ParameterError("masses must be a nonempty 1-d array")
        if not np.all(np.isfinite(arr)):
            raise ParameterError("masses must be finite")
        if np.any(arr < 0):
            raise ParameterError("masses must be nonnegative")
        if arr.sum() > 1.0 + 1e-9:
            raise ParameterError(f"masses sum to {arr.sum()}, above 1")
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "masses", arr)

    @property
    def n(self) -> int:
        """Truncation length N."""
        return self.masses.size

    @property
    def h(self) -> np.ndarray:
        """Scaled pmf h_n = P_n / P_0 (h_0 = 1 exactly)."""
        p0 = self.masses[0]
        if p0 <= 0.0:
            raise ParameterError("scaled pmf undefined: P_0 is zero")
        return self.masses / p0

    @property
    def total_mass(self) -> float:
        return float(self.masses.sum())

    @property
    def tail_mass(self) -> float:
        """Probability mass beyond the truncation point, 1 - sum(P_n)."""
        return max(0.0, 1.0 - self.total_mass)


def _poisson_terms(mean: float, n: int) -> np.ndarray:
    j = np.arange(n)
    return np.exp(j * math.log(mean) - mean - gammaln(j + 1.0))


def _binomial_terms(k: int, p: float, n: int) -> np.ndarray:
    out = np.zeros(n)
    j = np.arange(min(n, k + 1))
    log_terms = (gammaln(k + 1.0) - gammaln(j + 1.0) - gammaln(k - j + 1.0)
                 + j * math.log(p) + (k - j) * math.log1p(-p))
    out[: j.size] = np.exp(log_terms)
    return out


def _negative_binomial_terms(k: float, p: float, n: int) -> np.ndarray:
    j = np.arange(n)
    log_terms = (gammaln(k + j) - gammaln(k) - gammaln(j + 1.0)
                 + k * math.log(p) + j * math.log1p(-p))
    return np.exp(log_terms)


def generalizer_pmf(spec: DistributionSpec, n: int) -> PmfVector:
    """Pmf b_0 .. b_{n-1} of the inner (generalizer) distribution.

    For a plain :class:`Poisson` spec the generalizer is the point mass at
    1, so compounding reproduces the Poisson itself.  Raises for
    :class:`NegativeBinomial`, which is not compound Poisson here.
    """
    if n < 1:
        raise ParameterError(f"n must be >= 1, got {n}")
    if isinstance(spec, Poisson):
        b = np.zeros(n)
        if n > 1:
            b[1] = 1.0
        return PmfVector(b)
    if isinstance(spec, NeymanTypeA):
        return PmfVector(_poisson_terms(spec.cluster_mean, n))
    if isinstance(spec, PoissonBinomial):
        return PmfVector(_binomial_terms(spec.k, spec.p, n))
    if isinstance(spec, PoissonPascal):
        # Negative binomial in success-probability form: 1/Q per success.
        return PmfVector(_negative_binomial_terms(spec.k, 1.0 / spec.q, n))
    if isinstance(spec, GeometricPoisson):
        b = np.zeros(n)
        j = np.arange(1, n)
        b[1:] = spec.q * spec.p ** (j - 1.0)
        return PmfVector(b)
    if isinstance(spec, NegativeBinomial):
        raise ParameterError(
            "NegativeBinomial is not a compound Poisson family; "
            "it has no generalizer")
    raise TypeError(f"unknown distribution spec {spec!r}")


def _validate_generalizer(b: np.ndarray) -> None:
    if b.ndim != 1 or b.size == 0:
        raise ParameterError("generalizer must be a nonempty 1-d pmf")
    if np.any(b < 0) or not np.all(np.isfinite(b)):
        raise ParameterError("generalizer masses must be finite and >= 0")
    total = b.sum()
    if total > 1.0 + 1e-9:
        raise ParameterError(f"generalizer masses sum to {total}, above 1")
    # Missing mass is fine when explainable by truncation: either the tail
    # is still live (last mass not negligible) or the bulk lies entirely
    # beyond the window (masses still climbing).  A decayed tail with
    # missing mass means the pmf is genuinely non-normalized.
    if total < 1.0 - 1e-9 and b[-1] <= 1e-12 and b[-1] < b.max():
        raise ParameterError(
            f"generalizer masses sum to {total} with a decayed tail; "
            "not a normalized pmf")


def compound_pmf(rate: float, generalizer, n: int) -> PmfVector:
    """Pmf of the compound Poisson distribution, by recursion.

    P_0 = exp(rate * (b_0 - 1)) and
    P_n = (rate / n) * sum_{j=1..n} j * b_j * P_{n-j}.

    When log P_0 < -700 the recursion runs on rescaled values with an
    exponent carried separately, so very concentrated large-rate regimes
    do not underflow midway.

    Parameters
    ----------
    rate : float
        Rate of the outer Poisson (> 0).
    generalizer : PmfVector or array_like
        Pmf of the inner distribution; validated for normalization
        (a slowly decaying truncated tail is accepted).
    n : int
        Number of masses to return.
    """
    if rate <= 0:
        raise ParameterError(f"rate must be > 0, got {rate}")
    if n < 1:
        raise ParameterError(f"n must be >= 1, got {n}")
    b = generalizer.masses if isinstance(generalizer, PmfVector) else \
        np.asarray(generalizer, dtype=float)
    _validate_generalizer(b)

    log_p0 = rate * (b[0] - 1.0)
    rescaled = log_p0 < _LOG_P0_DIRECT_LIMIT

    # Weights j * b_j, padded so every recursion step can take a full dot.
    jb = np.arange(min(b.size, n)) * b[: n]
    w = np.zeros(n)
    w[0] = 1.0 if rescaled else math.exp(log_p0)
    log_shift = log_p0 if rescaled else 0.0
    for m in range(1, n):
        top = min(m, jb.size - 1)
        if top >= 1:
            w[m] = (rate / m) * np.dot(jb[1: top + 1], w[m - 1:: -1][: top])
        if rescaled and w[m] > 1e250:
            w[: m + 1] *= 1e-250
            log_shift += 250.0 * math.log(10.0)

    if rescaled:
        masses = np.zeros(n)
        pos = w > 0
        masses[pos] = np.exp(np.log(w[pos]) + log_shift)
    else:
        masses = w
    return PmfVector(masses)


def family_pmf(spec: DistributionSpec, n: int | None = None) -> PmfVector:
    """Pmf of a named family, truncated to n masses.

    With n=None the truncation length is chosen automatically: the
    smallest power of two >= 64 whose tail mass is below 1e-10, capped at
    2**16 (the cap is applied silently for extremely spread-out
    distributions).
    """
    if n is not None:
        return _family_pmf_fixed(spec, n)
    length = MIN_AUTO_LENGTH
    while True:
        pmf = _family_pmf_fixed(spec, length)
        if pmf.tail_mass < AUTO_TAIL_TOLERANCE or length >= MAX_AUTO_LENGTH:
            return pmf
        length *= 2


def _family_pmf_fixed(spec: DistributionSpec, n: int) -> PmfVector:
    if n < 1:
        raise ParameterError(f"n must be >= 1, got {n}")
    if isinstance(spec, NegativeBinomial):
        return PmfVector(_negative_binomial_terms(spec.k, spec.p, n))
    if isinstance(spec, _COMPOUND_FAMILIES):
        return compound_pmf(spec.rate, generalizer_pmf(spec, n), n)
    raise TypeError(f"unknown distribution spec {spec!r}")


def moments(spec: DistributionSpec) -> Moments:
    """Closed-form mean and variance of a family."""
    if isinstance(spec, Poisson):
        return Moments(spec.rate, spec.rate)
    if isinstance(spec, NeymanTypeA):
        mu = spec.rate * spec.cluster_mean
        return Moments(mu, mu * (1.0 + spec.cluster_mean))
    if isinstance(spec, PoissonBinomial):
        kp = spec.k * spec.p
        return Moments(spec.rate * kp, spec.rate * kp * (kp + spec.q))
    if isinstance(spec, PoissonPascal):
        kp = spec.k * spec.odds
        return Moments(spec.rate * kp, spec.rate * kp * (kp + spec.q))
    if isinstance(spec, GeometricPoisson):
        q = spec.q
        return Moments(spec.rate / q, spec.rate * (1.0 + spec.p) / q**2)
    if isinstance(spec, NegativeBinomial):
        return Moments(spec.k * spec.q / spec.p, spec.k * spec.q / spec.p**2)
    raise TypeError(f"unknown distribution spec {spec!r}")


def pmf_moments(pmf: PmfVector) -> Moments:
    """Mean and variance of a truncated pmf by direct summation."""
    n = np.arange(pmf.n, dtype=float)
    mean = float(np.dot(n, pmf.masses))
    variance = float(np.dot((n - mean) ** 2, pmf.masses))
    return Moments(mean, variance)


def geometric_to_pascal(spec: GeometricPoisson) -> PoissonPascal:
    """Equivalent Poisson-Pascal parameters with k = 1.

    The two parameterizations are related by
    (rate, p, q)_geometric = (rate*P/Q, P/Q, 1/Q)_Pascal; the resulting
    distributions agree termwise.
    """
    odds = spec.p / spec.q            # P = p/q, so P/Q = p
    return PoissonPascal(rate=spec.rate / spec.p, k=1, odds=odds)


def pascal_to_geometric(spec: PoissonPascal) -> GeometricPoisson:
    """Inverse of :func:`geometric_to_pascal`; requires k = 1."""
    if spec.k != 1:
        raise ParameterError(
            f"only k=1 Poisson-Pascal maps to geometric Poisson, got k={spec.k}")
    p = spec.odds / spec.q            # P/Q
    return GeometricPoisson(rate=spec.rate * p, p=p)

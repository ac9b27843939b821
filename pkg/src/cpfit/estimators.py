"""Parameter estimation for the compound Poisson families.

Classical estimators (method of moments per family, the first-two-bins
estimator for geometric Poisson, negative-binomial moments) plus the
power-spectrum estimator: build the empirical spectrum of the data,
enumerate peak candidates including mirror and alias branches, map each
candidate generalizer mean to family parameters, and keep the candidate
whose fit minimizes the delta statistic.
"""

from __future__ import annotations

from dataclasses import dataclass

import math

import numpy as np

from .families import (
    DistributionSpec,
    GeometricPoisson,
    NegativeBinomial,
    NeymanTypeA,
    PoissonBinomial,
    PoissonPascal,
    family_pmf,
)
from .gof import chi_square, delta_statistic
from .histogram import CountHistogram
from .spectrum import (
    DEFAULT_N_DFT,
    PeakCandidate,
    candidate_means,
    find_peaks,
    power_spectrum,
)

__all__ = [
    "EstimationError",
    "OverdispersionError",
    "NoAdmissibleCandidateError",
    "SampleStats",
    "FitResult",
    "sample_stats",
    "with_denominator",
    "mom_neyman",
    "mom_geometric",
    "geometric_p0h1",
    "mom_poisson_binomial",
    "mom_negative_binomial",
    "evaluate_fit",
    "ps_estimate",
    "DENOMINATOR_MODES",
]

DENOMINATOR_MODES = ("n-1", "n")

# Fitted-count range: out to where the model has placed all but this much
# of its mass (or the last populated data bin, whichever is farther).
MODEL_COVERAGE_TAIL = 1e-9


class EstimationError(Exception):
    """An estimator's preconditions fail on the given data."""


class OverdispersionError(EstimationError):
    """Sample variance does not exceed the mean, so the moment equations
    of an overdispersed family have no admissible solution."""


class NoAdmissibleCandidateError(EstimationError):
    """No spectral peak candidate maps to valid family parameters."""


@dataclass(frozen=True)
class SampleStats:
    """Sample mean and variance of binned counts.

    ``denominator_mode`` records whether the variance used N_c - 1 or
    N_c; the historical sources differ and the estimates inherit the
    choice.
    """

    n_c: int
    mean: float
    variance: float
    denominator_mode: str = "n-1"

    def __post_init__(self):
        if self.denominator_mode not in DENOMINATOR_MODES:
            raise ValueError(
                f"denominator_mode must be one of {DENOMINATOR_MODES}, "
                f"got {self.denominator_mode!r}")
        if self.n_c < 1:
            raise ValueError(f"n_c must be >= 1, got {self.n_c}")
        if self.mean < 0 or self.variance < 0:
            raise ValueError("mean and variance must be nonnegative")


@dataclass(frozen=True)
class FitResult:
    """A fitted distribution with its goodness-of-fit numbers.

    ``method`` is one of "MM", "P0H1", "PS", "NB-MM".  ``peak`` is the
    selected spectral candidate for power-spectrum fits, None otherwise.
    """

    spec: DistributionSpec
    method: str
    fitted_counts: np.ndarray
    delta: float
    chi_square: float
    peak: PeakCandidate | None = None

    def __post_init__(self):
        f = np.asarray(self.fitted_counts, dtype=float)
        f = f.copy()
        f.flags.writeable = False
        object.__setattr__(self, "fitted_counts", f)


def sample_stats(hist: CountHistogram, mode: str = "n-1") -> SampleStats:
    """Sample mean and variance of a histogram.

    The mean is sum n*c_n / N_c; the variance divides the centered sum of
    squares by N_c - 1 or N_c according to ``mode``.
    """
    if mode not in DENOMINATOR_MODES:
        raise ValueError(
            f"mode must be one of {DENOMINATOR_MODES}, got {mode!r}")
    n_c = hist.n_c
    if mode == "n-1" and n_c < 2:
        raise EstimationError(
            f"variance with denominator N_c-1 needs N_c >= 2, got {n_c}")
    n = np.arange(hist.counts.size, dtype=float)
    mean = float(np.dot(n, hist.counts) / n_c)
    css = float(np.dot((n - mean) ** 2, hist.counts))
    denom = n_c - 1 if mode == "n-1" else n_c
    return SampleStats(n_c=n_c, mean=mean, variance=css / denom,
                       denominator_mode=mode)


def with_denominator(stats: SampleStats, mode: str) -> SampleStats:
    """The same sample statistics re-expressed in the other variance
    convention (multiplies by N_c/(N_c-1) or its inverse)."""
    if mode not in DENOMINATOR_MODES:
        raise ValueError(
            f"mode must be one of {DENOMINATOR_MODES}, got {mode!r}")
    if mode == stats.denominator_mode:
        return stats
    if stats.n_c < 2:
        raise EstimationError("conversion needs N_c >= 2")
    if mode == "n-1":
        variance = stats.variance * stats.n_c / (stats.n_c - 1)
    else:
        variance = stats.variance * (stats.n_c - 1) / stats.n_c
    return SampleStats(n_c=stats.n_c, mean=stats.mean, variance=variance,
                       denominator_mode=mode)


def _require_overdispersed(stats: SampleStats) -> None:
    if stats.mean <= 0:
        raise EstimationError(
            f"sample mean must be > 0, got {stats.mean}")
    if stats.variance <= stats.mean:
        raise OverdispersionError(
            f"sample variance {stats.variance} does not exceed the mean "
            f"{stats.mean}; the moment equations have no solution")


def mom_neyman(stats: SampleStats) -> NeymanTypeA:
    """Method of moments: cluster_mean = (s^2 - xbar)/xbar, rate =
    xbar/cluster_mean."""
    _require_overdispersed(stats)
    phi = (stats.variance - stats.mean) / stats.mean
    return NeymanTypeA(rate=stats.mean / phi, cluster_mean=phi)


def mom_geometric(stats: SampleStats) -> GeometricPoisson:
    """Method of moments: rate = 2 xbar^2/(s^2 + xbar),
    p = (s^2 - xbar)/(s^2 + xbar)."""
    _require_overdispersed(stats)
    rate = 2.0 * stats.mean**2 / (stats.variance + stats.mean)
    p = (stats.variance - stats.mean) / (stats.variance + stats.mean)
    return GeometricPoisson(rate=rate, p=p)


def geometric_p0h1(hist: CountHistogram) -> GeometricPoisson:
    """Geometric Poisson estimator from the first two bins only.

    rate = -ln(c_0/N_c) and 1 - p = (c_1/c_0) / rate; works because
    P_0 = exp(-rate) and P_1/P_0 = rate * (1 - p) for this family.
    """
    counts = hist.counts
    n_c = hist.n_c
    c0 = int(counts[0])
    c1 = int(counts[1]) if counts.size > 1 else 0
    if c0 <= 0:
        raise EstimationError("estimator needs c_0 > 0")
    if c0 >= n_c:
        raise EstimationError(
            "estimator needs c_0 < N_c (otherwise the rate estimate is 0)")
    if c1 <= 0:
        raise EstimationError("estimator needs c_1 > 0")
    rate = -math.log(c0 / n_c)
    q = (c1 / c0) / rate
    if not 0.0 < q < 1.0:
        raise EstimationError(
            f"implied q = {q:.6g} is outside (0, 1); "
            "the data do not support a geometric Poisson shape")
    return GeometricPoisson(rate=rate, p=1.0 - q)


def mom_poisson_binomial(stats: SampleStats, k: int) -> PoissonBinomial:
    """Method of moments with the binomial size k fixed:
    p = (s^2 - xbar)/((k-1) xbar), rate = xbar/(k p)."""
    if k < 2:
        raise EstimationError(
            f"k must be >= 2 for the moment estimator, got {k}")
    _require_overdispersed(stats)
    p = (stats.variance - stats.mean) / ((k - 1) * stats.mean)
    if p >= 1.0:
        raise EstimationError(
            f"implied p = {p:.6g} is not below 1; "
            f"k = {k} is too small for this dispersion")
    return PoissonBinomial(rate=stats.mean / (k * p), k=k, p=p)


def mom_negative_binomial(stats: SampleStats,
                          round_k: bool = False) -> NegativeBinomial:
    """Method of moments: k = xbar^2/(s^2 - xbar), p = k/(k + xbar).

    With round_k the shape is rounded to the nearest positive integer
    before p is computed; the shape may otherwise stay fractional.
    """
    _require_overdispersed(stats)
    k = stats.mean**2 / (stats.variance - stats.mean)
    if round_k:
        k = float(max(1, round(k)))
    return NegativeBinomial(k=k, p=k / (k + stats.mean))


def _fit_arrays(spec: DistributionSpec,
                hist: CountHistogram) -> tuple[np.ndarray, np.ndarray]:
    """Observed and fitted count arrays over the reporting range.

    The range runs to the larger of the last populated data bin and the
    point where the model has accumulated all but MODEL_COVERAGE_TAIL of
    its mass, so the residual tail contributes nothing material.
    """
    pmf = family_pmf(spec)
    csum = np.cumsum(pmf.masses)
    covered = np.flatnonzero(csum > 1.0 - MODEL_COVERAGE_TAIL)
    cover = int(covered[0]) if covered.size else pmf.n - 1
    n_upper = max(hist.last_nonzero, cover)
    if n_upper + 1 > pmf.n:
        masses = family_pmf(spec, n_upper + 1).masses
    else:
        masses = pmf.masses[: n_upper + 1]
    f = hist.n_c * masses
    c = np.zeros(n_upper + 1)
    shared = min(c.size, hist.counts.size)  # beyond last_nonzero is zero
    c[:shared] = hist.counts[:shared]
    return c, f


def evaluate_fit(spec: DistributionSpec, hist: CountHistogram,
                 method: str, denominator_mode: str = "n-1",
                 peak: PeakCandidate | None = None) -> FitResult:
    """Fitted counts and goodness of fit for an already-estimated spec."""
    stats = sample_stats(hist, denominator_mode)
    c, f = _fit_arrays(spec, hist)
    return FitResult(
        spec=spec,
        method=method,
        fitted_counts=f,
        delta=delta_statistic(c, f, stats.n_c, stats.variance),
        chi_square=chi_square(c, f),
        peak=peak,
    )


def _candidate_spec(family: type, mean: float, e_b: float,
                    k: int) -> DistributionSpec | None:
    # Map an implied generalizer mean to family parameters; None when the
    # candidate falls outside the parameter domain.
    if family is NeymanTypeA:
        return NeymanTypeA(rate=mean / e_b, cluster_mean=e_b)
    if family is PoissonBinomial:
        p = e_b / k
        if not 0.0 < p < 1.0:
            return None
        return PoissonBinomial(rate=mean / e_b, k=k, p=p)
    if family is PoissonPascal:
        return PoissonPascal(rate=mean / e_b, k=k, odds=e_b / k)
    raise ValueError(
        f"power-spectrum estimation supports NeymanTypeA, PoissonBinomial "
        f"and PoissonPascal, got {family!r}")


def ps_estimate(hist: CountHistogram, family: type, k: int = 1,
                n_dft: int = DEFAULT_N_DFT, m_max: int = 3,
                denominator_mode: str = "n-1") -> FitResult:
    """Power-spectrum fit of a compound family to a histogram.

    Builds the spectrum of the normalized counts, expands every detected
    peak over mirror and alias branches, maps each implied generalizer
    mean to parameters (the mean matching rate * E[B] = xbar), and keeps
    the candidate minimizing the delta statistic.  Ties break toward the
    smaller frequency, then the smaller alias offset, so the result is
    deterministic.

    ``family`` is NeymanTypeA, PoissonBinomial or PoissonPascal; ``k`` is
    the fixed inner size/shape for the latter two (PoissonPascal with
    k=1, equivalent to geometric Poisson, is the usual choice).
    """
    stats = sample_stats(hist, denominator_mode)
    if stats.mean <= 0:
        raise EstimationError("sample mean must be > 0 for a spectrum fit")
    if family in (PoissonBinomial, PoissonPascal) and k < 1:
        raise EstimationError(f"k must be >= 1, got {k}")
    weights = hist.counts[: hist.last_nonzero + 1] / stats.n_c
    if weights.size > n_dft:
        raise EstimationError(
            f"histogram extends over {weights.size} bins, beyond "
            f"n_dft = {n_dft}")
    ps = power_spectrum(weights, n_dft)
    candidates = candidate_means(find_peaks(ps), m_max)

    best = None
    for cand in candidates:
        spec = _candidate_spec(family, stats.mean, cand.e_b, k)
        if spec is None:
            continue
        c, f = _fit_arrays(spec, hist)
        if np.any(f <= 0.0):
            continue
        delta = delta_statistic(c, f, stats.n_c, stats.variance)
        key = (delta, cand.nu_grid, cand.alias_m)
        if best is None or key < best[0]:
            best = (key, cand, spec, c, f, delta)
    if best is None:
        raise NoAdmissibleCandidateError(
            "no spectral peak candidate maps to admissible parameters "
            f"for {family.__name__}")
    _, cand, spec, c, f, delta = best
    return FitResult(
        spec=spec,
        method="PS",
        fitted_counts=f,
        delta=delta,
        chi_square=chi_square(c, f),
        peak=cand,
    )

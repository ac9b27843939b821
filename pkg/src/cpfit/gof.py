"""Fitted counts and goodness-of-fit statistics.

Two statistics are provided for comparing observed counts c_n against
fitted counts f_n = N_c * P_n:

* chi_square: sum (c_n - f_n)^2 / f_n.  Blows up when a bin with a tiny
  fitted count holds an observation, which classically forces ad-hoc bin
  aggregation; provided for completeness only.
* delta_statistic: sum (c_n - f_n)^2 / (N_c * s^2).  Aggregation-free and
  the measure used for all model selection here.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .families import DistributionSpec, family_pmf

__all__ = [
    "BinContribution",
    "GofReport",
    "fitted_counts",
    "delta_statistic",
    "chi_square",
    "gof_report",
]


class BinContribution(NamedTuple):
    n: int
    observed: float
    fitted: float
    delta_term: float


@dataclass(frozen=True)
class GofReport:
    """Per-bin breakdown of a fit; delta equals the sum of the bin terms."""

    delta: float
    chi_square: float
    per_bin: tuple[BinContribution, ...]


def fitted_counts(spec: DistributionSpec, n_c: int, n_bins: int) -> np.ndarray:
    """Fitted counts f_n = N_c * P_n for n < n_bins; always positive."""
    if n_c < 1:
        raise ValueError(f"n_c must be >= 1, got {n_c}")
    f = n_c * family_pmf(spec, n_bins).masses
    if np.any(f <= 0.0):
        raise ValueError(
            "fitted counts underflowed to zero inside the requested range; "
            "the model places no representable mass there")
    return f


def _aligned(c, f) -> tuple[np.ndarray, np.ndarray]:
    c = np.asarray(c, dtype=float)
    f = np.asarray(f, dtype=float)
    if c.shape != f.shape or c.ndim != 1:
        raise ValueError(
            f"observed and fitted counts must be aligned 1-d arrays, "
            f"got shapes {c.shape} and {f.shape}")
    return c, f


def delta_statistic(c, f, n_c: int, s2: float) -> float:
    """The statistic sum (c_n - f_n)^2 / (N_c * s^2).

    ``s2`` must be the sample variance of the same data, in whichever
    denominator convention the fit context uses.
    """
    c, f = _aligned(c, f)
    if s2 <= 0.0:
        raise ValueError(f"s2 must be > 0, got {s2}")
    if n_c < 1:
        raise ValueError(f"n_c must be >= 1, got {n_c}")
    return float(np.sum((c - f) ** 2) / (n_c * s2))


def chi_square(c, f) -> float:
    """The statistic sum (c_n - f_n)^2 / f_n; every f_n must be positive."""
    c, f = _aligned(c, f)
    if np.any(f <= 0.0):
        raise ValueError("chi_square requires every fitted count > 0")
    return float(np.sum((c - f) ** 2 / f))


def gof_report(c, f, n_c: int, s2: float) -> GofReport:
    """Per-bin report; delta is the exact sum of the listed contributions."""
    c, f = _aligned(c, f)
    if s2 <= 0.0:
        raise ValueError(f"s2 must be > 0, got {s2}")
    terms = (c - f) ** 2 / (n_c * s2)
    rows = tuple(
        BinContribution(n, float(c[n]), float(f[n]), float(terms[n]))
        for n in range(c.size)
    )
    return GofReport(
        delta=float(terms.sum()),
        chi_square=chi_square(c, f),
        per_bin=rows,
    )

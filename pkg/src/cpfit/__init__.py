"""Compound Poisson distributions for binned count data.

Pmfs and moments for the Neyman Type A, Poisson-binomial, Poisson-Pascal
and geometric Poisson families (plus plain Poisson and the negative
binomial), classical moment estimators, and a power-spectrum estimator
that reads the generalizer mean off spectral peaks of the data and
resolves mirror/alias ambiguity by minimizing the delta goodness-of-fit
statistic.
"""

from .families import (
    DistributionSpec,
    GeometricPoisson,
    Moments,
    NegativeBinomial,
    NeymanTypeA,
    ParameterError,
    PmfVector,
    Poisson,
    PoissonBinomial,
    PoissonPascal,
    compound_pmf,
    family_pmf,
    generalizer_pmf,
    geometric_to_pascal,
    moments,
    pascal_to_geometric,
    pmf_moments,
)
from .spectrum import (
    PeakCandidate,
    PowerSpectrum,
    candidate_means,
    dft_sums,
    find_peaks,
    power_spectrum,
)
from .gof import (
    BinContribution,
    GofReport,
    chi_square,
    delta_statistic,
    fitted_counts,
    gof_report,
)
from .estimators import (
    EstimationError,
    FitResult,
    NoAdmissibleCandidateError,
    OverdispersionError,
    SampleStats,
    evaluate_fit,
    geometric_p0h1,
    mom_geometric,
    mom_negative_binomial,
    mom_neyman,
    mom_poisson_binomial,
    ps_estimate,
    sample_stats,
    with_denominator,
)
from .histogram import (
    CountHistogram,
    DatasetFormatError,
    parse_dataset,
    serialize_dataset,
    simulate,
)

__version__ = "0.1.0"

__all__ = [
    "CountHistogram",
    "BinContribution",
    "DatasetFormatError",
    "DistributionSpec",
    "EstimationError",
    "FitResult",
    "GeometricPoisson",
    "GofReport",
    "Moments",
    "NegativeBinomial",
    "NeymanTypeA",
    "NoAdmissibleCandidateError",
    "OverdispersionError",
    "ParameterError",
    "PeakCandidate",
    "PmfVector",
    "Poisson",
    "PoissonBinomial",
    "PoissonPascal",
    "PowerSpectrum",
    "SampleStats",
    "candidate_means",
    "chi_square",
    "compound_pmf",
    "delta_statistic",
    "dft_sums",
    "evaluate_fit",
    "family_pmf",
    "find_peaks",
    "fitted_counts",
    "generalizer_pmf",
    "geometric_p0h1",
    "geometric_to_pascal",
    "gof_report",
    "mom_geometric",
    "mom_negative_binomial",
    "mom_neyman",
    "mom_poisson_binomial",
    "moments",
    "parse_dataset",
    "pascal_to_geometric",
    "pmf_moments",
    "power_spectrum",
    "ps_estimate",
    "sample_stats",
    "serialize_dataset",
    "simulate",
    "with_denominator",
]

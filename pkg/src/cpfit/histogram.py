"""Binned count data: parsing, serialization, and Monte Carlo simulation.

Dataset text format (UTF-8): one ``n count`` pair of nonnegative integers
per line, whitespace-separated; ``#`` starts a comment; the optional
metadata comments ``# name: <text>`` and ``# source: <text>`` are
preserved on round-trip.  Bins may appear in any order, duplicates are
rejected, and bins not listed are zero.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .families import (
    DistributionSpec,
    GeometricPoisson,
    NegativeBinomial,
    NeymanTypeA,
    Poisson,
    PoissonBinomial,
    PoissonPascal,
)

__all__ = [
    "DatasetFormatError",
    "CountHistogram",
    "parse_dataset",
    "serialize_dataset",
    "simulate",
    "RNG_ALGORITHM",
]

# Bit generator backing simulate(); recorded in the output provenance.
RNG_ALGORITHM = "numpy-PCG64"


class DatasetFormatError(ValueError):
    """Malformed dataset text; carries a 1-based line number when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class CountHistogram:
    """Observed counts c_0..c_M with at least one observation in total."""

    counts: np.ndarray
    name: str = ""
    source: str = ""

    def __post_init__(self):
        arr = np.asarray(self.counts)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("counts must be a nonempty 1-d array")
        if not np.issubdtype(arr.dtype, np.integer):
            as_int = np.asarray(arr, dtype=np.int64)
            if not np.array_equal(as_int, arr):
                raise ValueError("counts must be integers")
            arr = as_int
        else:
            arr = arr.astype(np.int64)
        if np.any(arr < 0):
            raise ValueError("counts must be nonnegative")
        if arr.sum() < 1:
            raise ValueError("histogram must contain at least one count")
        for label, text in (("name", self.name), ("source", self.source)):
            if "\n" in text or "\r" in text:
                raise ValueError(f"{label} must not contain newlines")
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "counts", arr)

    @property
    def n_c(self) -> int:
        """Total number of observations, sum of all bin counts."""
        return int(self.counts.sum())

    @property
    def last_nonzero(self) -> int:
        """Index of the last bin holding a nonzero count."""
        return int(np.flatnonzero(self.counts)[-1])


def parse_dataset(text: str) -> CountHistogram:
    """Parse dataset text into a histogram; errors carry line numbers."""
    bins: dict[int, int] = {}
    name = ""
    source = ""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line.startswith("#"):
            body = line[1:].strip()
            for key in ("name", "source"):
                if body.startswith(key + ":"):
                    value = body[len(key) + 1:].strip()
                    if key == "name":
                        name = value
                    else:
                        source = value
            continue
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise DatasetFormatError(
                f"expected 'n count', got {raw.strip()!r}", lineno)
        try:
            n, count = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise DatasetFormatError(
                f"expected integers, got {raw.strip()!r}", lineno) from None
        if n < 0:
            raise DatasetFormatError(f"negative bin index {n}", lineno)
        if count < 0:
            raise DatasetFormatError(f"negative count {count}", lineno)
        if n in bins:
            raise DatasetFormatError(f"duplicate bin index {n}", lineno)
        bins[n] = count
    if not bins:
        raise DatasetFormatError("no count lines found")
    counts = np.zeros(max(bins) + 1, dtype=np.int64)
    for n, count in bins.items():
        counts[n] = count
    if counts.sum() < 1:
        raise DatasetFormatError("histogram contains no observations")
    return CountHistogram(counts=counts, name=name, source=source)


def serialize_dataset(hist: CountHistogram) -> str:
    """Dataset text for a histogram; parse(serialize(h)) == h."""
    lines = []
    if hist.name:
        lines.append(f"# name: {hist.name}")
    if hist.source:
        lines.append(f"# source: {hist.source}")
    lines.extend(f"{n} {int(c)}" for n, c in enumerate(hist.counts))
    return "\n".join(lines) + "\n"


def _compound_draws(spec, clusters: np.ndarray,
                    rng: np.random.Generator) -> np.ndarray:
    # Sums of i.i.d. generalizer variates, using closure under
    # convolution so the whole batch is drawn vectorized.
    if isinstance(spec, Poisson):
        return clusters
    if isinstance(spec, NeymanTypeA):
        return rng.poisson(spec.cluster_mean * clusters)
    if isinstance(spec, PoissonBinomial):
        return rng.binomial(spec.k * clusters, spec.p)
    if isinstance(spec, PoissonPascal):
        out = np.zeros(clusters.size, dtype=np.int64)
        busy = clusters > 0
        if np.any(busy):
            out[busy] = rng.negative_binomial(
                spec.k * clusters[busy], 1.0 / spec.q)
        return out
    if isinstance(spec, GeometricPoisson):
        # Each cluster is 1 + a geometric count of extra events.
        out = clusters.astype(np.int64).copy()
        busy = clusters > 0
        if np.any(busy):
            out[busy] += rng.negative_binomial(clusters[busy], spec.q)
        return out
    raise TypeError(f"unknown distribution spec {spec!r}")


def simulate(spec: DistributionSpec, n_samples: int,
             seed: int) -> CountHistogram:
    """Histogram of n_samples variates drawn from a family.

    Compound families are sampled by the compounding definition: a
    Poisson cluster count, then the sum of that many generalizer
    variates.  Reproducible: a fixed (spec, n_samples, seed) always
    yields the same histogram (single PCG64 stream, fixed draw order;
    any internal parallelization would have to derive per-partition
    streams from the seed to keep this contract).
    """
    if n_samples < 1:
        raise ValueError(f"n_samples must be >= 1, got {n_samples}")
    rng = np.random.default_rng(seed)
    if isinstance(spec, NegativeBinomial):
        values = rng.negative_binomial(spec.k, spec.p, size=n_samples)
    else:
        clusters = rng.poisson(spec.rate, size=n_samples)
        values = _compound_draws(spec, clusters, rng)
    counts = np.bincount(np.asarray(values, dtype=np.int64))
    return CountHistogram(
        counts=counts,
        name=f"simulated {type(spec).__name__}",
        source=f"simulate({spec!r}, n_samples={n_samples}, seed={seed}, "
               f"rng={RNG_ALGORITHM})",
    )

"""Command-line front end.

Subcommands: ``pmf``, ``spectrum``, ``fit``, ``gof``, ``simulate``.  All
computation lives in the library modules; this module only parses
arguments, routes, and formats.  Machine output (CSV or JSON) is
byte-identical across repeat runs: floats are printed with 17 significant
digits and nothing environment-dependent is emitted.

Exit codes: 0 success, 2 usage error (bad flags or parameter values),
3 data error (unreadable or malformed dataset), 4 estimation error
(estimator preconditions fail on the data).
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import svgplot
from .estimators import (
    DENOMINATOR_MODES,
    EstimationError,
    FitResult,
    evaluate_fit,
    geometric_p0h1,
    mom_geometric,
    mom_negative_binomial,
    mom_neyman,
    mom_poisson_binomial,
    ps_estimate,
    sample_stats,
)
from .families import (
    GeometricPoisson,
    NegativeBinomial,
    NeymanTypeA,
    ParameterError,
    Poisson,
    PoissonBinomial,
    PoissonPascal,
    family_pmf,
)
from .gof import gof_report
from .histogram import (
    CountHistogram,
    DatasetFormatError,
    parse_dataset,
    serialize_dataset,
    simulate,
)
from .spectrum import candidate_means, find_peaks, power_spectrum

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_ESTIMATION = 4

FAMILIES = ("poisson", "neyman", "pbinom", "pascal", "geom", "negbinom")
METHODS = ("mm", "p0h1", "ps", "nb")

_PARAM_NAMES = {
    "poisson": ("rate",),
    "neyman": ("rate", "cluster_mean"),
    "pbinom": ("rate", "k", "p"),
    "pascal": ("rate", "k", "odds"),
    "geom": ("rate", "p"),
    "negbinom": ("k", "p"),
}

_FAMILY_LABEL = {
    Poisson: "poisson",
    NeymanTypeA: "neyman",
    PoissonBinomial: "pbinom",
    PoissonPascal: "pascal",
    GeometricPoisson: "geom",
    NegativeBinomial: "negbinom",
}


class UsageError(Exception):
    pass


def _fmt(value) -> str:
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return f"{float(value):.17g}"


def _spec_from_args(family: str, params: str):
    names = _PARAM_NAMES[family]
    if params is None:
        raise UsageError(
            f"--params is required for family {family} "
            f"(comma-separated: {','.join(names)})")
    values = [t.strip() for t in params.split(",")]
    if len(values) != len(names):
        raise UsageError(
            f"family {family} takes {len(names)} parameters "
            f"({','.join(names)}), got {len(values)}")
    try:
        if family == "poisson":
            return Poisson(float(values[0]))
        if family == "neyman":
            return NeymanTypeA(float(values[0]), float(values[1]))
        if family == "pbinom":
            return PoissonBinomial(float(values[0]), int(values[1]),
                                   float(values[2]))
        if family == "pascal":
            return PoissonPascal(float(values[0]), int(values[1]),
                                 float(values[2]))
        if family == "geom":
            return GeometricPoisson(float(values[0]), float(values[1]))
        if family == "negbinom":
            return NegativeBinomial(float(values[0]), float(values[1]))
    except ValueError as err:
        raise UsageError(f"invalid parameters for {family}: {err}") from err
    raise UsageError(f"unknown family {family!r}")


def _spec_params(spec) -> dict[str, float]:
    family = _FAMILY_LABEL[type(spec)]
    return {name: getattr(spec, name) for name in _PARAM_NAMES[family]}


def _load_histogram(path: str) -> CountHistogram:
    try:
        text = open(path, "r", encoding="utf-8").read()
    except OSError as err:
        raise DatasetFormatError(f"cannot read {path}: {err}") from err
    return parse_dataset(text)


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _write_plot(path: str, series: list[svgplot.Series], title: str,
                xlabel: str, ylabel: str) -> None:
    svg = svgplot.render_figure(series, title=title, xlabel=xlabel,
                                ylabel=ylabel)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(svg)


def _csv(rows: list[list], header: list[str]) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join("" if v is None else
                              v if isinstance(v, str) else _fmt(v)
                              for v in row))
    return "\n".join(lines) + "\n"


def _json_dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _peak_dict(peak):
    if peak is None:
        return None
    return {"nu": peak.nu_grid, "alias_m": peak.alias_m, "e_b": peak.e_b,
            "source": peak.source}


# ---------------------------------------------------------------- pmf


def _cmd_pmf(args) -> int:
    spec = _spec_from_args(args.family, args.params)
    pmf = family_pmf(spec, args.bins)
    scaled = pmf.h
    if args.format == "csv":
        rows = [[n, pmf.masses[n], scaled[n]] for n in range(pmf.n)]
        text = _csv(rows, ["n", "mass", "scaled"])
    else:
        text = _json_dump({
            "family": args.family,
            "params": _spec_params(spec),
            "pmf": [{"n": n, "mass": pmf.masses[n], "scaled": scaled[n]}
                    for n in range(pmf.n)],
        })
    _emit(text, args.out)
    if args.plot:
        grid = np.arange(pmf.n)
        _write_plot(args.plot,
                    [svgplot.Series(grid, scaled, label="scaled pmf")],
                    title=f"{args.family} scaled pmf", xlabel="n",
                    ylabel="h")
    return EXIT_OK


# ----------------------------------------------------------- spectrum


def _cmd_spectrum(args) -> int:
    if (args.dataset is None) == (args.params is None):
        raise UsageError("pass a dataset path or --family/--params, not both")
    if args.dataset is not None:
        hist = _load_histogram(args.dataset)
        weights = hist.counts[: hist.last_nonzero + 1] / hist.n_c
    else:
        spec = _spec_from_args(args.family, args.params)
        pmf = family_pmf(spec, args.ndft)
        weights = pmf.masses
        if pmf.tail_mass > 1e-6:
            print(f"cpfit: warning: the grid truncates "
                  f"{pmf.tail_mass:.3g} of the model mass; consider a "
                  f"larger --ndft", file=sys.stderr)
    if weights.size > args.ndft:
        raise DatasetFormatError(
            f"dataset spans {weights.size} bins, beyond --ndft {args.ndft}")
    ps = power_spectrum(weights, args.ndft)
    peaks = find_peaks(ps)
    if args.alias_max > 0:
        peaks = candidate_means(peaks, args.alias_max)
    nu = ps.nu
    if args.format == "csv":
        spectrum_rows = [[nu[j], ps.psi[j]] for j in range(args.ndft)]
        candidate_rows = [[c.nu_grid, c.alias_m, c.e_b, c.source]
                          for c in peaks]
        text = (_csv(spectrum_rows, ["nu", "psi"]) + "\n"
                + _csv(candidate_rows, ["nu", "alias_m", "e_b", "source"]))
    else:
        text = _json_dump({
            "n_dft": args.ndft,
            "spectrum": [{"nu": nu[j], "psi": ps.psi[j]}
                         for j in range(args.ndft)],
            "candidates": [_peak_dict(c) for c in peaks],
        })
    _emit(text, args.out)
    if args.plot:
        _write_plot(args.plot,
                    [svgplot.Series(nu, ps.psi, label="power spectrum")],
                    title="power spectrum", xlabel="nu", ylabel="psi")
    return EXIT_OK


# ---------------------------------------------------------------- fit


_PS_FAMILY = {"neyman": NeymanTypeA, "pbinom": PoissonBinomial,
              "pascal": PoissonPascal}


def _parse_scan_range(text: str) -> range:
    try:
        lo, hi = text.split(":")
        lo, hi = int(lo), int(hi)
    except ValueError:
        raise UsageError("--scan-k takes MIN:MAX integers") from None
    if lo < 1 or hi < lo:
        raise UsageError(f"invalid --scan-k range {text!r}")
    return range(lo, hi + 1)


def _best_fit(fits: list[FitResult]) -> FitResult:
    if not fits:
        raise EstimationError("no k in the scan range admits an estimate")
    best = fits[0]
    for fit in fits[1:]:
        if fit.delta < best.delta:
            best = fit
    return best


def _fit_one_method(method, args, hist, stats) -> FitResult:
    family = args.family
    mode = args.denominator
    scan = _parse_scan_range(args.scan_k) if args.scan_k else None

    if method == "mm":
        if family == "neyman":
            spec = mom_neyman(stats)
        elif family == "geom":
            spec = mom_geometric(stats)
        elif family == "pbinom":
            if scan is not None:
                fits = []
                for k in scan:
                    try:
                        spec = mom_poisson_binomial(stats, k)
                    except EstimationError:
                        continue
                    fits.append(evaluate_fit(spec, hist, "MM", mode))
                return _best_fit(fits)
            if args.k is None:
                raise UsageError("fit --family pbinom --method mm needs --k")
            spec = mom_poisson_binomial(stats, args.k)
        else:
            raise UsageError(
                f"--method mm supports neyman, geom, pbinom; got {family}")
        return evaluate_fit(spec, hist, "MM", mode)

    if method == "p0h1":
        if family != "geom":
            raise UsageError("--method p0h1 applies to --family geom only")
        return evaluate_fit(geometric_p0h1(hist), hist, "P0H1", mode)

    if method == "ps":
        if family not in _PS_FAMILY:
            raise UsageError(
                f"--method ps supports neyman, pbinom, pascal; got {family}")
        cls = _PS_FAMILY[family]
        if family == "pbinom":
            if scan is not None:
                fits = []
                for k in scan:
                    try:
                        fits.append(ps_estimate(
                            hist, cls, k=k, n_dft=args.ndft,
                            m_max=args.alias_max, denominator_mode=mode))
                    except EstimationError:
                        continue
                return _best_fit(fits)
            if args.k is None:
                raise UsageError("fit --family pbinom --method ps needs --k")
            k = args.k
        else:
            k = args.k if args.k is not None else 1
        return ps_estimate(hist, cls, k=k, n_dft=args.ndft,
                           m_max=args.alias_max, denominator_mode=mode)

    if method == "nb":
        if family != "negbinom":
            raise UsageError("--method nb applies to --family negbinom only")
        if scan is not None:
            fits = []
            for k in scan:
                spec = NegativeBinomial(float(k),
                                        k / (k + stats.mean))
                fits.append(evaluate_fit(spec, hist, "NB-MM", mode))
            return _best_fit(fits)
        spec = mom_negative_binomial(stats, round_k=args.round_k)
        return evaluate_fit(spec, hist, "NB-MM", mode)

    raise UsageError(f"unknown method {method!r}")


def _cmd_fit(args) -> int:
    hist = _load_histogram(args.dataset)
    methods = []
    for chunk in args.method:
        methods.extend(m.strip() for m in chunk.split(",") if m.strip())
    for m in methods:
        if m not in METHODS:
            raise UsageError(f"unknown method {m!r}; choose from {METHODS}")
    stats = sample_stats(hist, args.denominator)
    results = [_fit_one_method(m, args, hist, stats) for m in methods]

    param_names = _PARAM_NAMES[args.family]
    if args.format == "csv":
        header = (["method", "family"] + list(param_names)
                  + ["delta", "chi_square", "peak_nu", "peak_alias_m",
                     "peak_e_b"])
        rows = []
        for res in results:
            params = _spec_params(res.spec)
            rows.append(
                [res.method, args.family]
                + [params[name] for name in param_names]
                + [res.delta, res.chi_square]
                + ([res.peak.nu_grid, res.peak.alias_m, res.peak.e_b]
                   if res.peak else [None, None, None]))
        text = _csv(rows, header)
        width = max(res.fitted_counts.size for res in results)
        bin_header = ["n", "observed"] + [f"fitted_{r.method}"
                                          for r in results]
        bin_rows = []
        for n in range(width):
            observed = int(hist.counts[n]) if n < hist.counts.size else 0
            row = [n, observed]
            for res in results:
                row.append(res.fitted_counts[n]
                           if n < res.fitted_counts.size else None)
            bin_rows.append(row)
        text += "\n" + _csv(bin_rows, bin_header)
    else:
        text = _json_dump({
            "family": args.family,
            "denominator": args.denominator,
            "sample": {"n_c": stats.n_c, "mean": stats.mean,
                       "variance": stats.variance},
            "fits": [
                {
                    "method": res.method,
                    "params": _spec_params(res.spec),
                    "delta": res.delta,
                    "chi_square": res.chi_square,
                    "peak": _peak_dict(res.peak),
                    "fitted_counts": [float(v) for v in res.fitted_counts],
                }
                for res in results
            ],
        })
    _emit(text, args.out)
    if args.plot:
        grid = np.arange(hist.counts.size)
        series = [svgplot.Series(grid, hist.counts.astype(float),
                                 label="data", markers=True)]
        dashes = ["", "6,3", "2,2", "8,2,2,2"]
        for i, res in enumerate(results):
            fgrid = np.arange(res.fitted_counts.size)
            series.append(svgplot.Series(fgrid, res.fitted_counts,
                                         label=res.method,
                                         dash=dashes[i % len(dashes)]))
        _write_plot(args.plot, series, title=f"{args.family} fits",
                    xlabel="n", ylabel="count")
    return EXIT_OK


# ---------------------------------------------------------------- gof


def _cmd_gof(args) -> int:
    hist = _load_histogram(args.dataset)
    spec = _spec_from_args(args.family, args.params)
    stats = sample_stats(hist, args.denominator)
    result = evaluate_fit(spec, hist, "MM", args.denominator)
    observed = np.zeros(result.fitted_counts.size)
    shared = min(observed.size, hist.counts.size)
    observed[:shared] = hist.counts[:shared]
    report = gof_report(observed, result.fitted_counts, stats.n_c,
                        stats.variance)
    if args.format == "csv":
        text = _csv([[report.delta, report.chi_square, args.denominator]],
                    ["delta", "chi_square", "denominator"])
        rows = [[row.n, row.observed, row.fitted, row.delta_term]
                for row in report.per_bin]
        text += "\n" + _csv(rows, ["n", "observed", "fitted", "delta_term"])
    else:
        text = _json_dump({
            "family": args.family,
            "params": _spec_params(spec),
            "denominator": args.denominator,
            "delta": report.delta,
            "chi_square": report.chi_square,
            "bins": [{"n": row.n, "observed": row.observed,
                      "fitted": row.fitted, "delta_term": row.delta_term}
                     for row in report.per_bin],
        })
    _emit(text, args.out)
    return EXIT_OK


# ----------------------------------------------------------- simulate


def _cmd_simulate(args) -> int:
    spec = _spec_from_args(args.family, args.params)
    hist = simulate(spec, args.samples, args.seed)
    _emit(serialize_dataset(hist), args.out)
    return EXIT_OK


# --------------------------------------------------------------- main


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cpfit",
        description="Fit compound Poisson distributions to binned counts, "
                    "classically or via the power spectrum of the data.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, dataset=False, spec=False, spectral=False, fit=False):
        if dataset:
            p.add_argument("dataset", help="dataset file (n count per line)")
        if spec:
            p.add_argument("--family", required=True, choices=FAMILIES)
            p.add_argument("--params",
                           help="comma-separated family parameters")
        if spectral:
            p.add_argument("--ndft", type=int, default=1024,
                           help="DFT grid size (default 1024)")
            p.add_argument("--alias-max", type=int, default=3,
                           help="largest alias offset m (default 3)")
        if fit:
            p.add_argument("--denominator", choices=DENOMINATOR_MODES,
                           default="n-1",
                           help="variance denominator (default n-1)")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--out", help="write machine output to a file")

    p_pmf = sub.add_parser("pmf", help="emit P_n and the scaled pmf")
    add_common(p_pmf, spec=True)
    p_pmf.add_argument("--bins", type=int, default=None,
                       help="truncation length (default: automatic)")
    p_pmf.add_argument("--plot", help="write an SVG figure")
    p_pmf.set_defaults(func=_cmd_pmf)

    p_spec = sub.add_parser("spectrum",
                            help="power spectrum and peak candidates")
    p_spec.add_argument("dataset", nargs="?", default=None,
                        help="dataset file; alternatively --family/--params")
    p_spec.add_argument("--family", choices=FAMILIES)
    p_spec.add_argument("--params")
    p_spec.add_argument("--ndft", type=int, default=1024)
    p_spec.add_argument("--alias-max", type=int, default=0,
                        help="expand candidates over aliases m<=M")
    p_spec.add_argument("--format", choices=("csv", "json"), default="csv")
    p_spec.add_argument("--out")
    p_spec.add_argument("--plot")
    p_spec.set_defaults(func=_cmd_spectrum)

    p_fit = sub.add_parser("fit", help="estimate parameters from a dataset")
    add_common(p_fit, dataset=True, spectral=True, fit=True)
    p_fit.add_argument("--family", required=True, choices=FAMILIES)
    p_fit.add_argument("--method", action="append", required=True,
                       help="mm, p0h1, ps, nb (repeat or comma-separate)")
    p_fit.add_argument("--k", type=int, default=None,
                       help="fixed inner size/shape for pbinom/pascal")
    p_fit.add_argument("--scan-k", default=None, metavar="MIN:MAX",
                       help="scan integer k and keep the smallest delta")
    p_fit.add_argument("--round-k", action="store_true",
                       help="round the negative-binomial shape to an integer")
    p_fit.add_argument("--plot", help="write an SVG figure of the fits")
    p_fit.set_defaults(func=_cmd_fit)

    p_gof = sub.add_parser("gof", help="delta and chi-square for a spec")
    add_common(p_gof, dataset=True, spec=True, fit=True)
    p_gof.set_defaults(func=_cmd_gof)

    p_sim = sub.add_parser("simulate", help="draw samples, emit a dataset")
    p_sim.add_argument("--family", required=True, choices=FAMILIES)
    p_sim.add_argument("--params", help="comma-separated family parameters")
    p_sim.add_argument("-n", "--samples", type=int, required=True)
    p_sim.add_argument("--seed", type=int, default=0)
    p_sim.add_argument("--out", help="write the dataset to a file")
    p_sim.set_defaults(func=_cmd_simulate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return int(err.code) if err.code else EXIT_OK
    try:
        return args.func(args)
    except UsageError as err:
        print(f"cpfit: usage error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except ParameterError as err:
        print(f"cpfit: usage error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except DatasetFormatError as err:
        print(f"cpfit: data error: {err}", file=sys.stderr)
        return EXIT_DATA
    except EstimationError as err:
        print(f"cpfit: estimation error: {err}", file=sys.stderr)
        return EXIT_ESTIMATION
    except ValueError as err:
        # numeric degeneracies surfacing from the library (e.g. fitted
        # counts underflowing inside the requested range)
        print(f"cpfit: estimation error: {err}", file=sys.stderr)
        return EXIT_ESTIMATION


if __name__ == "__main__":
    sys.exit(main())

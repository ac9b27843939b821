import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cpfit import (
    CountHistogram,
    EstimationError,
    GeometricPoisson,
    NegativeBinomial,
    NeymanTypeA,
    NoAdmissibleCandidateError,
    OverdispersionError,
    PoissonBinomial,
    PoissonPascal,
    SampleStats,
    evaluate_fit,
    geometric_p0h1,
    mom_geometric,
    mom_negative_binomial,
    mom_neyman,
    mom_poisson_binomial,
    moments,
    ps_estimate,
    sample_stats,
    simulate,
    with_denominator,
)


def stats_of(mean, variance, n_c=1000, mode="n-1"):
    return SampleStats(n_c=n_c, mean=mean, variance=variance,
                       denominator_mode=mode)


class TestSampleStats:
    def test_binned_example(self):
        # raw observations (0,0,0,0,0,2,2,2,3,3) binned as (5,0,3,2)
        hist = CountHistogram(np.array([5, 0, 3, 2]))
        s = sample_stats(hist, "n-1")
        assert s.n_c == 10
        assert s.mean == pytest.approx(1.2, abs=1e-15)
        assert s.variance == pytest.approx(15.6 / 9.0, rel=1e-14)
        s_n = sample_stats(hist, "n")
        assert s_n.variance == pytest.approx(1.56, rel=1e-14)

    def test_degenerate_single_bin(self):
        hist = CountHistogram(np.array([7]))
        s = sample_stats(hist, "n-1")
        assert (s.mean, s.variance) == (0.0, 0.0)

    def test_needs_two_observations_for_unbiased_mode(self):
        hist = CountHistogram(np.array([1]))
        with pytest.raises(EstimationError):
            sample_stats(hist, "n-1")
        assert sample_stats(hist, "n").variance == 0.0

    def test_rejects_unknown_mode(self):
        hist = CountHistogram(np.array([2, 2]))
        with pytest.raises(ValueError):
            sample_stats(hist, "n-2")

    def test_denominator_conversion_round_trip(self):
        s = stats_of(1.4, 2.3272, n_c=325)
        back = with_denominator(with_denominator(s, "n"), "n-1")
        assert back.variance == pytest.approx(s.variance, rel=1e-15)


class TestMomNeyman:
    @pytest.mark.parametrize("mean,var,m1,m2", [
        (1.4000, 2.3272, 2.1140, 0.6623),
        (4.0333, 16.4527, 1.3099, 3.0792),
        (17.2581, 121.7399 * 31 / 30, 2.7441, 6.2892),
    ])
    def test_published_rows(self, mean, var, m1, m2):
        est = mom_neyman(stats_of(mean, var))
        assert est.rate == pytest.approx(m1, rel=5e-4)
        assert est.cluster_mean == pytest.approx(m2, rel=5e-4)

    def test_overdispersion_required(self):
        with pytest.raises(OverdispersionError):
            mom_neyman(stats_of(2.0, 2.0))
        with pytest.raises(OverdispersionError):
            mom_neyman(stats_of(2.0, 1.5))


class TestMomGeometric:
    def test_derived_values(self):
        est = mom_geometric(stats_of(0.1068, 0.2944))
        assert est.rate == pytest.approx(0.05686, abs=5e-6)
        assert est.p == pytest.approx(0.4676, abs=5e-5)
        est = mom_geometric(stats_of(2.4016, 7.0941))
        assert est.rate == pytest.approx(1.2148, abs=5e-5)
        assert est.p == pytest.approx(0.4942, abs=5e-5)

    def test_equal_mean_variance_rejected(self):
        with pytest.raises(OverdispersionError):
            mom_geometric(stats_of(1.0, 1.0))


class TestGeometricP0H1:
    def test_derived_example(self):
        counts = np.zeros(6, dtype=int)
        counts[0], counts[1] = 368, 200
        counts[2] = 1000 - 368 - 200
        est = geometric_p0h1(CountHistogram(counts))
        assert est.rate == pytest.approx(-math.log(0.368), rel=1e-12)
        assert est.rate == pytest.approx(0.99967, abs=5e-6)
        assert 1 - est.p == pytest.approx(0.5436, abs=1e-4)

    def test_c0_equal_total_rejected(self):
        with pytest.raises(EstimationError):
            geometric_p0h1(CountHistogram(np.array([10])))

    def test_c1_zero_rejected(self):
        with pytest.raises(EstimationError):
            geometric_p0h1(CountHistogram(np.array([5, 0, 5])))

    def test_c0_zero_rejected(self):
        with pytest.raises(EstimationError):
            geometric_p0h1(CountHistogram(np.array([0, 5, 5])))

    def test_implied_q_above_one_rejected(self):
        # c_1/c_0 far above the log-rate forces q > 1
        with pytest.raises(EstimationError):
            geometric_p0h1(CountHistogram(np.array([10, 80, 10])))


class TestMomPoissonBinomial:
    def test_mcgbb_distribution_3(self):
        est = mom_poisson_binomial(stats_of(25.633, 82.368, mode="n"), k=4)
        assert est.p == pytest.approx(0.7378, abs=5e-5)
        assert est.rate == pytest.approx(8.686, abs=5e-4)

    def test_k1_rejected(self):
        with pytest.raises(EstimationError):
            mom_poisson_binomial(stats_of(2.0, 3.0), k=1)

    def test_implied_p_at_or_above_one_rejected(self):
        # dispersion too strong for k = 2
        with pytest.raises(EstimationError):
            mom_poisson_binomial(stats_of(1.0, 4.0), k=2)

    def test_round_trip_through_moments(self):
        spec = PoissonBinomial(3.7, 6, 0.21)
        m = moments(spec)
        est = mom_poisson_binomial(stats_of(m.mean, m.variance), k=6)
        assert est.rate == pytest.approx(spec.rate, rel=1e-10)
        assert est.p == pytest.approx(spec.p, rel=1e-10)


class TestMomNegativeBinomial:
    def test_mcgbb_distribution_5(self):
        s = stats_of(5.231, 10.740, mode="n")
        frac = mom_negative_binomial(s)
        assert frac.k == pytest.approx(4.97, abs=0.01)
        rounded = mom_negative_binomial(s, round_k=True)
        assert rounded.k == 5.0
        assert rounded.p == pytest.approx(0.4887, abs=5e-5)

    def test_mcgbb_distribution_3_fractional(self):
        est = mom_negative_binomial(stats_of(25.633, 82.368, mode="n"))
        assert est.k == pytest.approx(11.58, abs=0.01)
        assert est.p == pytest.approx(0.3112, abs=5e-5)

    def test_exact_algebra(self):
        est = mom_negative_binomial(stats_of(4.0, 8.0))
        assert est.k == pytest.approx(4.0, rel=1e-14)
        assert est.p == pytest.approx(0.5, rel=1e-14)

    def test_overdispersion_required(self):
        with pytest.raises(OverdispersionError):
            mom_negative_binomial(stats_of(3.0, 3.0))


class TestMomRoundTrips:
    @settings(max_examples=40, deadline=None)
    @given(rate=st.floats(0.05, 20.0), phi=st.floats(0.05, 20.0))
    def test_neyman(self, rate, phi):
        m = moments(NeymanTypeA(rate, phi))
        est = mom_neyman(stats_of(m.mean, m.variance))
        assert math.isclose(est.rate, rate, rel_tol=1e-10)
        assert math.isclose(est.cluster_mean, phi, rel_tol=1e-10)

    @settings(max_examples=40, deadline=None)
    @given(rate=st.floats(0.05, 20.0), p=st.floats(0.01, 0.99))
    def test_geometric(self, rate, p):
        m = moments(GeometricPoisson(rate, p))
        est = mom_geometric(stats_of(m.mean, m.variance))
        assert math.isclose(est.rate, rate, rel_tol=1e-10)
        assert math.isclose(est.p, p, rel_tol=1e-10)

    @settings(max_examples=40, deadline=None)
    @given(k=st.floats(0.2, 30.0), p=st.floats(0.01, 0.99))
    def test_negative_binomial(self, k, p):
        m = moments(NegativeBinomial(k, p))
        est = mom_negative_binomial(stats_of(m.mean, m.variance))
        assert math.isclose(est.k, k, rel_tol=1e-10)
        assert math.isclose(est.p, p, rel_tol=1e-10)


class TestEvaluateFit:
    def test_perfect_synthetic_fit_is_small(self):
        spec = NeymanTypeA(2.0, 5.0)
        hist = simulate(spec, 10**5, seed=42)
        result = evaluate_fit(spec, hist, method="MM")
        assert result.method == "MM"
        assert result.delta < 0.01
        assert np.all(result.fitted_counts > 0)
        assert result.peak is None

    def test_range_covers_data_and_model(self):
        # outlier data bin beyond the model bulk stretches the range
        counts = np.zeros(41, dtype=int)
        counts[0], counts[1], counts[40] = 50, 30, 1
        hist = CountHistogram(counts)
        result = evaluate_fit(GeometricPoisson(0.5, 0.3), hist, method="MM")
        assert result.fitted_counts.size >= 41

    def test_trailing_zero_bins_beyond_model_cover(self):
        # a concentrated model may cover less than the stored bin range
        counts = np.zeros(10, dtype=int)
        counts[0], counts[1] = 50, 30
        hist = CountHistogram(counts)
        from cpfit import Poisson

        result = evaluate_fit(Poisson(0.001), hist, method="MM")
        assert result.delta > 0
        assert np.all(result.fitted_counts > 0)


class TestPsEstimate:
    def test_recovers_neyman_parameters(self):
        hist = simulate(NeymanTypeA(2.0, 5.0), 10**5, seed=42)
        fit = ps_estimate(hist, NeymanTypeA)
        assert fit.method == "PS"
        assert fit.peak is not None
        assert abs(fit.spec.cluster_mean - 5.0) / 5.0 < 0.10
        assert abs(fit.spec.rate - 2.0) / 2.0 < 0.10

    def test_recovers_pascal_parameters(self):
        # GeometricPoisson(1, 0.5) is PoissonPascal(rate=2, k=1, odds=1),
        # so the scan should land on a generalizer mean near 1
        true = GeometricPoisson(1.0, 0.5)
        hist = simulate(true, 10**5, seed=42)
        fit = ps_estimate(hist, PoissonPascal, k=1)
        assert fit.spec.odds == pytest.approx(1.0, rel=0.15)
        mean_fit = moments(fit.spec).mean
        assert mean_fit == pytest.approx(moments(true).mean, rel=0.01)
        assert fit.delta < 0.1

    def test_poisson_binomial_mapping(self):
        hist = simulate(PoissonBinomial(2.0, 4, 0.6), 10**5, seed=42)
        fit = ps_estimate(hist, PoissonBinomial, k=4)
        assert 0.0 < fit.spec.p < 1.0
        assert fit.spec.k == 4
        stats = sample_stats(hist)
        assert moments(fit.spec).mean == pytest.approx(stats.mean, rel=1e-9)

    def test_candidate_mean_matches_sample_mean(self):
        # the mapping always reproduces xbar as the model mean
        hist = simulate(NeymanTypeA(1.0, 3.0), 5000, seed=7)
        stats = sample_stats(hist)
        fit = ps_estimate(hist, NeymanTypeA)
        assert moments(fit.spec).mean == pytest.approx(stats.mean, rel=1e-12)

    def test_scale_invariance_of_selection(self):
        hist = simulate(NeymanTypeA(2.0, 5.0), 20000, seed=11)
        tripled = CountHistogram(hist.counts * 3)
        fit1 = ps_estimate(hist, NeymanTypeA)
        fit3 = ps_estimate(tripled, NeymanTypeA)
        assert fit1.peak == fit3.peak

    def test_deterministic(self):
        hist = simulate(NeymanTypeA(2.0, 5.0), 20000, seed=13)
        fit1 = ps_estimate(hist, NeymanTypeA)
        fit2 = ps_estimate(hist, NeymanTypeA)
        assert fit1.spec == fit2.spec
        assert fit1.delta == fit2.delta
        assert fit1.chi_square == fit2.chi_square
        assert fit1.peak == fit2.peak
        assert np.array_equal(fit1.fitted_counts, fit2.fitted_counts)

    def test_no_admissible_candidate(self):
        # k=1 Poisson-binomial needs e_b < 1, impossible with m_max=0
        hist = simulate(NeymanTypeA(2.0, 5.0), 5000, seed=17)
        with pytest.raises(NoAdmissibleCandidateError):
            ps_estimate(hist, PoissonBinomial, k=1, m_max=0)

    def test_rejects_unsupported_family(self):
        hist = simulate(NeymanTypeA(2.0, 5.0), 1000, seed=19)
        with pytest.raises(ValueError):
            ps_estimate(hist, NegativeBinomial)

    def test_data_longer_than_grid_rejected(self):
        counts = np.zeros(40, dtype=int)
        counts[0], counts[39] = 5, 5
        with pytest.raises(EstimationError):
            ps_estimate(CountHistogram(counts), NeymanTypeA, n_dft=32)

    @settings(max_examples=25, deadline=None)
    @given(st.lists(st.integers(0, 30), min_size=3, max_size=25).filter(
        lambda counts: sum(counts) >= 2))
    def test_parameters_always_in_domain(self, counts):
        try:
            hist = CountHistogram(np.array(counts))
        except ValueError:
            return
        try:
            fit = ps_estimate(hist, NeymanTypeA)
        except EstimationError:
            return
        assert fit.spec.rate > 0
        assert fit.spec.cluster_mean > 0
        assert math.isfinite(fit.delta) and fit.delta >= 0
        assert math.isfinite(fit.chi_square) and fit.chi_square >= 0

import numpy as np
import pytest

from cpfit import (
    GeometricPoisson,
    NeymanTypeA,
    Poisson,
    chi_square,
    delta_statistic,
    fitted_counts,
    gof_report,
)


class TestFittedCounts:
    def test_neyman_paper_fit(self):
        f = fitted_counts(NeymanTypeA(2.3393, 1.7241), 120, 12)
        assert f[0] == pytest.approx(17.6, abs=0.05)
        assert f[1] == pytest.approx(12.6, abs=0.05)

    def test_small_rate_limit(self):
        f = fitted_counts(Poisson(1e-9), 100, 3)
        assert f[0] == pytest.approx(100.0, rel=1e-8)

    def test_geometric_ratio_identity(self):
        rate, p = 1.3, 0.4
        f = fitted_counts(GeometricPoisson(rate, p), 50, 8)
        assert f[1] / f[0] == pytest.approx(rate * (1 - p), rel=1e-12)

    def test_all_positive(self):
        f = fitted_counts(NeymanTypeA(2.0, 5.0), 10, 64)
        assert np.all(f > 0)


class TestDeltaStatistic:
    def test_perfect_fit(self):
        c = np.array([3.0, 4.0, 2.0])
        assert delta_statistic(c, c, 9, 1.5) == 0.0

    def test_hand_example(self):
        c = [5, 0, 3, 2]
        f = [4, 1, 3, 2]
        s2 = 15.6 / 9.0
        assert delta_statistic(c, f, 10, s2) == pytest.approx(
            2.0 / (10 * s2), rel=1e-12)
        assert delta_statistic(c, f, 10, s2) == pytest.approx(0.11538, abs=5e-6)

    def test_rejects_bad_s2_and_misaligned(self):
        with pytest.raises(ValueError):
            delta_statistic([1.0], [1.0], 1, 0.0)
        with pytest.raises(ValueError):
            delta_statistic([1.0, 2.0], [1.0], 2, 1.0)


class TestChiSquare:
    def test_perfect_fit(self):
        assert chi_square([2.0, 3.0], [2.0, 3.0]) == 0.0

    def test_symmetric_case(self):
        assert chi_square([10.0, 0.0], [5.0, 5.0]) == pytest.approx(10.0)

    def test_hand_example(self):
        assert chi_square([5, 0, 3, 2], [4, 1, 3, 2]) == pytest.approx(1.25)

    def test_rejects_nonpositive_fitted(self):
        with pytest.raises(ValueError):
            chi_square([1.0, 2.0], [1.0, 0.0])

    def test_monotone_in_residual(self):
        base = chi_square([5.0, 5.0], [4.0, 5.0])
        worse = chi_square([6.0, 5.0], [4.0, 5.0])
        assert worse > base


class TestGofReport:
    def test_delta_is_sum_of_contributions(self):
        rng = np.random.default_rng(2)
        c = rng.integers(0, 20, size=15).astype(float)
        f = c + rng.normal(0, 1, size=15) ** 2 + 0.1
        report = gof_report(c, f, int(c.sum()), 2.3)
        assert report.delta == pytest.approx(
            sum(row.delta_term for row in report.per_bin), abs=1e-12)
        assert report.delta >= 0
        assert report.chi_square >= 0

    def test_rows_carry_bin_data(self):
        report = gof_report([5, 0], [4.0, 1.0], 5, 1.0)
        assert report.per_bin[0].n == 0
        assert report.per_bin[0].observed == 5.0
        assert report.per_bin[0].fitted == 4.0
        assert report.per_bin[1].delta_term == pytest.approx(1.0 / 5.0)

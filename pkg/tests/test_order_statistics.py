"""Tests for the finite-n extreme laws and exact error probabilities."""
import numpy as np
import pytest
from scipy import stats

from ordered_detection.analytics.order_statistics import (
    error_probs_exact, error_probs_mixed, h_function, mixture_pmf,
    pdf_max, pdf_negmin, pdf_winner, pdf_winner_mixed, point_mass, winner_window,
)
from ordered_detection.dists.laws import Hypothesis, HypothesisLaws, gaussian
from ordered_detection.dists.numerics import quadrature
from ordered_detection.errors import InvalidInputError, InvalidParameterError, UnsupportedLawError
from ordered_detection.network.size_models import mixed_poisson, size_pmf
from ordered_detection.policy.transmission import identity_policy


def shifted_policy(mean=0.3):
    law = gaussian(mean, 1.0)
    return identity_policy(HypothesisLaws(h0=law, h1=law))


def simulated_winner_above(mean, n, gamma, rng, trials=200_000):
    z = rng.normal(mean, 1.0, size=(trials, n))
    winners = z[np.arange(trials), np.argmax(np.abs(z), axis=1)]
    return np.mean(winners >= gamma)


class TestDensities:

    def test_single_sensor_is_the_law(self, mo_policy):
        x = np.linspace(-3, 3, 7)
        law = mo_policy.z_law(Hypothesis.H0)
        for pdf in (pdf_max, pdf_negmin, pdf_winner):
            expected = law.density(x) if pdf is not pdf_negmin else law.density(-x)
            assert np.allclose(pdf(mo_policy, 1, Hypothesis.H0, x), expected)

    def test_h_function_standard_normal(self):
        law = gaussian(0.0, 1.0)
        x = np.array([0.0, 0.5, 1.0, 3.0])
        assert np.allclose(h_function(law, x), 2 * stats.norm.cdf(x) - 1, atol=1e-14)
        assert h_function(law, -1.0) == pytest.approx(h_function(law, 1.0))

    @pytest.mark.parametrize('n', [2, 10, 1000])
    def test_max_density_normalized(self, standard_policy, n):
        density = lambda x: pdf_max(standard_policy, n, Hypothesis.H0, x)
        assert quadrature(density, -10, 10, points=[0.0, stats.norm.isf(1.0 / n)]) == pytest.approx(1.0, abs=1e-8)

    @pytest.mark.parametrize('n', [2, 100, 10_000])
    def test_winner_density_normalized(self, n):
        policy = shifted_policy()
        law = policy.z_law(Hypothesis.H0)
        lo, hi = winner_window(law, n)
        density = lambda x: pdf_winner(policy, n, Hypothesis.H0, x)
        points = [0.0, float(law.isf(1.0 / n)), float(law.quantile(1.0 / n))]
        assert quadrature(density, lo, hi, points=points) == pytest.approx(1.0, abs=1e-8)

    def test_winner_density_vanishes_at_zero(self, standard_policy):
        assert pdf_winner(standard_policy, 5, Hypothesis.H0, 0.0) == 0.0

    def test_negmin_mirrors_max_for_symmetric_law(self, standard_policy):
        x = np.linspace(-1, 4, 11)
        assert np.allclose(
            pdf_negmin(standard_policy, 50, Hypothesis.H0, x),
            pdf_max(standard_policy, 50, Hypothesis.H0, x),
        )

    def test_large_n_stays_finite(self, standard_policy):
        values = pdf_winner(standard_policy, 10 ** 6, Hypothesis.H0, np.linspace(-6, 6, 25))
        assert np.all(np.isfinite(values))
        assert np.all(values >= 0)

    def test_invalid_n(self, standard_policy):
        with pytest.raises(InvalidParameterError):
            pdf_winner(standard_policy, 0, Hypothesis.H0, 0.0)
        with pytest.raises(InvalidParameterError):
            pdf_winner(standard_policy, 2.5, Hypothesis.H0, 0.0)

    def test_atomic_law_rejected(self, censoring):
        with pytest.raises(UnsupportedLawError):
            pdf_winner(censoring, 10, Hypothesis.H1, 1.0)
        with pytest.raises(UnsupportedLawError):
            error_probs_exact(censoring, 10, 0.0)


class TestErrorProbsExact:

    def test_symmetric_law_zero_threshold(self, standard_policy):
        errors = error_probs_exact(standard_policy, 100, 0.0)
        assert errors.alpha == pytest.approx(0.5, abs=1e-8)
        assert errors.beta == pytest.approx(0.5, abs=1e-8)

    @pytest.mark.parametrize('n', [1, 10, 1000])
    def test_symmetric_llr_balances_errors(self, llr_policy, n):
        errors = error_probs_exact(llr_policy, n, 0.0)
        assert errors.alpha == pytest.approx(errors.beta, abs=1e-8)

    def test_single_sensor(self, llr_policy):
        errors = error_probs_exact(llr_policy, 1, 0.5)
        assert errors.alpha == pytest.approx(stats.norm.sf(0.5, loc=-2.0, scale=2.0), abs=1e-9)
        assert errors.beta == pytest.approx(stats.norm.cdf(0.5, loc=2.0, scale=2.0), abs=1e-9)

    @pytest.mark.parametrize('n', [2, 3])
    @pytest.mark.parametrize('gamma', [-0.5, 0.0, 1.0])
    def test_agrees_with_direct_simulation(self, n, gamma, rng):
        policy = shifted_policy(0.3)
        exact = error_probs_exact(policy, n, gamma).alpha
        simulated = simulated_winner_above(0.3, n, gamma, rng)
        assert abs(exact - simulated) < 5 * np.sqrt(0.25 / 200_000)

    def test_alpha_decreases_with_threshold(self, llr_policy):
        alphas = [error_probs_exact(llr_policy, 100, g).alpha for g in (-2.0, 0.0, 2.0, 5.0)]
        assert all(a > b for a, b in zip(alphas, alphas[1:]))

    def test_mo_zero_threshold_improves_with_n(self, mo_policy):
        totals = [error_probs_exact(mo_policy, n, 0.0).total for n in (1, 10, 100, 1000, 10_000)]
        assert totals[0] == pytest.approx(2 * stats.norm.cdf(-1.0), abs=1e-9)
        # the left tail of N(-1, 1) dominates, so H0 winners turn negative
        assert all(a > b for a, b in zip(totals, totals[1:]))
        assert totals[-1] < 1e-2

    def test_threshold_outside_window(self, llr_policy):
        errors = error_probs_exact(llr_policy, 10, 1e6)
        assert errors.alpha == 0.0
        assert errors.beta == pytest.approx(1.0)

    def test_huge_network(self, llr_policy):
        errors = error_probs_exact(llr_policy, 10 ** 6, 0.0)
        assert 0.0 <= errors.alpha <= 1.0
        assert 0.0 <= errors.beta <= 1.0


class TestErrorProbsMixed:

    def test_point_mass_matches_exact(self, llr_policy):
        mixed = error_probs_mixed(llr_policy, point_mass(50), 1.0)
        exact = error_probs_exact(llr_policy, 50, 1.0)
        assert mixed.alpha == pytest.approx(exact.alpha, abs=1e-9)
        assert mixed.beta == pytest.approx(exact.beta, abs=1e-9)

    def test_mixture_is_weighted_average(self, llr_policy):
        pmf = mixture_pmf([(5, 0.25), (20, 0.5), (5, 0.25)])
        assert pmf == {5: 0.5, 20: 0.5}
        mixed = error_probs_mixed(llr_policy, pmf, 0.5)
        parts = [error_probs_exact(llr_policy, n, 0.5) for n in (5, 20)]
        assert mixed.alpha == pytest.approx(0.5 * (parts[0].alpha + parts[1].alpha), abs=1e-9)

    def test_empty_network_atom_at_zero_threshold(self, standard_policy):
        errors = error_probs_mixed(standard_policy, {0: 0.5, 1: 0.5}, 0.0)
        assert errors.alpha == pytest.approx(0.75, abs=1e-9)
        assert errors.beta == pytest.approx(0.25, abs=1e-9)

    def test_empty_network_atom_positive_threshold(self, standard_policy):
        errors = error_probs_mixed(standard_policy, {0: 0.5, 1: 0.5}, 0.1)
        assert errors.alpha == pytest.approx(0.5 * stats.norm.sf(0.1), abs=1e-9)
        assert errors.beta == pytest.approx(0.5 + 0.5 * stats.norm.cdf(0.1), abs=1e-9)

    def test_mixed_density_continuous_part(self, standard_policy):
        pmf = {0: 0.2, 3: 0.8}
        mixed = pdf_winner_mixed(standard_policy, pmf, Hypothesis.H0, 0.7)
        assert mixed == pytest.approx(0.8 * pdf_winner(standard_policy, 3, Hypothesis.H0, 0.7))

    def test_mixed_winner_keeps_log_likelihood_form(self, llr_policy):
        # log f_M(x; H1) - log f_M(x; H0) = x for a data-independent size
        pmf = size_pmf(mixed_poisson(30, 0.5, 0.5))
        x = np.linspace(-4, 4, 16)
        f1 = pdf_winner_mixed(llr_policy, pmf, Hypothesis.H1, x)
        f0 = pdf_winner_mixed(llr_policy, pmf, Hypothesis.H0, x)
        assert np.allclose(np.log(f1) - np.log(f0), x, atol=1e-9)

    @pytest.mark.parametrize('pmf', [{1: 0.5}, {1: 0.7, 2: 0.7}, {}, {1: -0.5, 2: 1.5}])
    def test_invalid_pmf(self, standard_policy, pmf):
        with pytest.raises(InvalidInputError):
            error_probs_mixed(standard_policy, pmf, 0.0)


class TestEnumerationOracle:
    """Winner law against exhaustive enumeration on a discretized N(0.3, 1)."""

    # edges chosen so that no two cell midpoints share a modulus
    EDGES = -4.03 + 0.1 * np.arange(81)

    def enumerated_winner_mass(self, law, n):
        mids = (self.EDGES[:-1] + self.EDGES[1:]) / 2
        mass = np.diff(law.cdf(self.EDGES))
        cells = np.indices((mids.size,) * n).reshape(n, -1)
        probs = np.prod(mass[cells], axis=0)
        winner = cells[np.argmax(np.abs(mids[cells]), axis=0), np.arange(cells.shape[1])]
        return np.bincount(winner, weights=probs, minlength=mids.size)

    @pytest.mark.parametrize('n', [1, 2, 3])
    def test_cell_masses(self, n):
        policy = shifted_policy(0.3)
        law = policy.z_law(Hypothesis.H0)
        enumerated = self.enumerated_winner_mass(law, n)
        exact = np.array([
            quadrature(lambda x: pdf_winner(policy, n, Hypothesis.H0, x), lo, hi)
            for lo, hi in zip(self.EDGES[:-1], self.EDGES[1:])
        ])
        assert np.max(np.abs(enumerated - exact)) <= 0.01
        assert exact.sum() == pytest.approx(enumerated.sum(), abs=0.01)


class TestReferenceValues:

    def test_gaussian_mo_single_sensor(self, mo_policy):
        errors = error_probs_exact(mo_policy, 1, 0.0)
        assert errors.alpha == pytest.approx(0.15866, abs=1e-5)
        assert errors.beta == pytest.approx(0.15866, abs=1e-5)

    def test_winner_histogram_chi_square(self, standard_policy, rng):
        samples = 100_000
        z = rng.normal(size=(samples, 3))
        winners = z[np.arange(samples), np.argmax(np.abs(z), axis=1)]

        edges = np.concatenate([[-np.inf], np.linspace(-3, 3, 25), [np.inf]])
        observed = np.histogram(winners, bins=edges)[0]
        cells = np.array([
            quadrature(lambda x: pdf_winner(standard_policy, 3, Hypothesis.H0, x),
                       max(lo, -12.0), min(hi, 12.0))
            for lo, hi in zip(edges[:-1], edges[1:])
        ])
        expected = samples * cells / cells.sum()
        assert stats.chisquare(observed, expected).pvalue > 0.01

"""Tests for extreme-value constants, limit laws and threshold rules."""
import numpy as np
import pytest
from scipy import stats

from ordered_detection.analytics.extreme_value import (
    DiscreteLimit, EmpiricalLimit, FamilyKind, NormConstants, PointMassLimit,
    TailDominance, UniformLimit, alpha_tilde_from_alpha, approx_miss_bound,
    attraction_distance, frechet, gamma_from_alpha_tilde, gumbel, limiting_cdf,
    miss_bound, negmin_constants, norm_constants, random_index_limit,
    tail_dominance, tail_ratios, threshold_asymptotic, threshold_refined,
)
from ordered_detection.dists.laws import Hypothesis, censored, from_scipy, gaussian, negate, pareto
from ordered_detection.errors import InvalidParameterError, UnsupportedLawError


class TestFamilies:

    def test_gumbel_cdf(self):
        assert gumbel().cdf(0.0) == pytest.approx(np.exp(-1.0))
        assert limiting_cdf(gumbel(), 2.0) == pytest.approx(np.exp(-np.exp(-2.0)))

    def test_frechet_cdf(self):
        family = frechet(2.0)
        assert family.kind == FamilyKind.FRECHET
        assert family.cdf(1.0) == pytest.approx(np.exp(-1.0))
        assert family.cdf(-1.0) == 0.0
        assert family.cdf(0.0) == 0.0

    def test_frechet_needs_shape(self):
        with pytest.raises(InvalidParameterError):
            frechet(0.0)


class TestNormConstants:

    def test_exponential_gumbel(self):
        constants = norm_constants(from_scipy(stats.expon()), 1000, gumbel())
        assert constants.b == pytest.approx(np.log(1000))
        assert constants.a == pytest.approx(1.0)
        assert constants.normalize(np.log(1000) + 2.0) == pytest.approx(2.0)

    def test_pareto_frechet(self):
        constants = norm_constants(pareto(1.0, 1.0), 500, frechet(1.0))
        assert constants.a == pytest.approx(500.0)
        assert constants.b == 0.0

    def test_needs_two_samples(self):
        with pytest.raises(InvalidParameterError):
            norm_constants(gaussian(0, 1), 1, gumbel())

    def test_negmin_constants(self, llr_policy):
        constants = negmin_constants(llr_policy, 1000, gumbel())
        law = negate(llr_policy.z_law(Hypothesis.H0))
        assert constants.b == pytest.approx(float(law.isf(1e-3)))
        # -min of N(-2, 2) sits to the right of the mean 2
        assert constants.b > 2.0

    def test_exponential_attraction_is_fast(self):
        grid = np.linspace(-2, 6, 41)
        assert attraction_distance(from_scipy(stats.expon()), 1000, gumbel(), grid) < 1e-3

    def test_gaussian_attraction_improves_with_n(self):
        grid = np.linspace(-2, 4, 61)
        law = gaussian(0, 1)
        distances = [attraction_distance(law, n, gumbel(), grid) for n in (100, 1000, 10_000)]
        assert all(a > b for a, b in zip(distances, distances[1:]))

    def test_pareto_attraction(self):
        grid = np.linspace(0.1, 10, 50)
        assert attraction_distance(pareto(1.0, 1.0), 10_000, frechet(1.0), grid) < 1e-3


class TestSizeLimitLaws:

    def test_point_mass(self):
        law = PointMassLimit(2.0)
        assert law.expect(lambda r: r * r) == pytest.approx(4.0)
        assert law.sample(None) == 2.0

    def test_discrete(self):
        law = DiscreteLimit([1.0, 3.0], [0.25, 0.75])
        assert law.mean() == pytest.approx(2.5)
        with pytest.raises(InvalidParameterError):
            DiscreteLimit([1.0, 2.0], [0.5, 0.6])

    def test_uniform(self):
        law = UniformLimit(0.5, 1.5)
        assert law.mean() == pytest.approx(1.0)
        assert law.expect(lambda r: r * r) == pytest.approx(1.0 + 1.0 / 12)
        with pytest.raises(InvalidParameterError):
            UniformLimit(0.0, 1.0)

    def test_empirical_is_deterministic(self):
        law = EmpiricalLimit(lambda rng, size: rng.uniform(0.5, 1.5, size), seed=7, samples=100_000)
        first = law.expect(lambda r: np.exp(-r))
        assert law.expect(lambda r: np.exp(-r)) == first
        assert law.mean() == pytest.approx(1.0, abs=0.01)


class TestRandomIndexLimit:

    def test_point_mass_gives_family(self):
        x = np.array([-1.0, 0.0, 2.0])
        assert np.allclose(random_index_limit(gumbel(), PointMassLimit(1.0), x), gumbel().cdf(x))

    def test_scaled_point_mass(self):
        assert random_index_limit(gumbel(), PointMassLimit(2.0), 0.5) == pytest.approx(gumbel().cdf(0.5) ** 2)

    def test_uniform_matches_closed_form(self):
        # E[exp(-R t)] for R uniform on [lo, hi]
        lo, hi, x = 0.5, 1.5, 0.3
        t = np.exp(-x)
        expected = (np.exp(-lo * t) - np.exp(-hi * t)) / (t * (hi - lo))
        assert random_index_limit(gumbel(), UniformLimit(lo, hi), x) == pytest.approx(expected, abs=1e-10)

    def test_frechet_left_of_support(self):
        assert random_index_limit(frechet(1.0), UniformLimit(0.5, 1.5), -1.0) == 0.0


class TestTailDominance:

    def test_symmetric_is_undetermined(self):
        assert np.allclose(tail_ratios(gaussian(0, 1)), 1.0)
        assert tail_dominance(gaussian(0, 1)) == TailDominance.UNDETERMINED

    def test_shifted_gaussians(self):
        assert tail_dominance(gaussian(1, 1)) == TailDominance.RIGHT
        assert tail_dominance(gaussian(-1, 1)) == TailDominance.LEFT

    def test_pareto_mixture(self, mixture):
        assert tail_dominance(mixture) == TailDominance.RIGHT
        assert tail_dominance(negate(mixture)) == TailDominance.LEFT


class TestThresholds:

    @pytest.mark.parametrize('family', [gumbel(), frechet(1.5)])
    @pytest.mark.parametrize('alpha_tilde', [0.01, 0.1, 0.5])
    def test_gamma_inverts_limit(self, family, alpha_tilde):
        gamma = gamma_from_alpha_tilde(family, alpha_tilde)
        assert family.cdf(-gamma) == pytest.approx(alpha_tilde)

    def test_gumbel_value(self):
        assert gamma_from_alpha_tilde(gumbel(), 0.01) == pytest.approx(np.log(np.log(100)))

    def test_alpha_tilde_point_mass(self):
        assert alpha_tilde_from_alpha(PointMassLimit(1.0), 0.01) == pytest.approx(0.01, abs=1e-10)
        assert alpha_tilde_from_alpha(PointMassLimit(2.0), 0.01) == pytest.approx(0.1, abs=1e-10)

    def test_alpha_tilde_uniform(self):
        R = UniformLimit(0.5, 1.5)
        alpha_tilde = alpha_tilde_from_alpha(R, 0.1)
        assert R.expect(lambda r: alpha_tilde ** r) == pytest.approx(0.1, abs=1e-9)

    @pytest.mark.parametrize('alpha', [0.0, 1.0, -0.1])
    def test_alpha_range(self, alpha):
        with pytest.raises(InvalidParameterError):
            alpha_tilde_from_alpha(PointMassLimit(1.0), alpha)

    def test_refined_threshold(self, llr_policy):
        law = llr_policy.z_law(Hypothesis.H0)
        gamma_nu = threshold_refined(law, 1000, 0.01)
        assert float(law.sf(gamma_nu)) ** 1000 == pytest.approx(0.01, rel=1e-6)

    def test_refined_threshold_large_nu(self, llr_policy):
        law = llr_policy.z_law(Hypothesis.H0)
        gamma_nu = threshold_refined(law, 10 ** 6, 0.01)
        assert np.isfinite(gamma_nu)
        assert gamma_nu < threshold_refined(law, 1000, 0.01)

    def test_refined_rejects_atoms(self):
        with pytest.raises(UnsupportedLawError):
            threshold_refined(censored(gaussian(0, 1), 1.0), 100, 0.01)

    def test_asymptotic_threshold(self):
        assert threshold_asymptotic(NormConstants(a=0.5, b=3.0), 2.0) == pytest.approx(-2.0)

    def test_asymptotic_close_to_refined(self, llr_policy):
        nu = 10_000
        gamma = gamma_from_alpha_tilde(gumbel(), 0.01)
        asymptotic = threshold_asymptotic(negmin_constants(llr_policy, nu, gumbel()), gamma)
        refined = threshold_refined(llr_policy.z_law(Hypothesis.H0), nu, 0.01)
        assert asymptotic == pytest.approx(refined, abs=0.5)

    def test_miss_bounds(self):
        assert miss_bound(-2.0) == pytest.approx(np.exp(-2.0))
        assert approx_miss_bound(2.0, np.e ** 2) == pytest.approx(np.exp(-4.0))


class TestReferenceValues:

    def test_standard_normal_constants(self):
        constants = norm_constants(gaussian(0, 1), 100, gumbel())
        assert constants.b == pytest.approx(2.3263, abs=1e-4)
        assert constants.a == pytest.approx(0.3752, abs=1e-4)

    def test_pareto_constants(self):
        constants = norm_constants(pareto(1.0, 1.0), 100, frechet(1.0))
        assert constants.a == pytest.approx(100.0)
        assert constants.b == 0.0

    def test_random_index_at_zero(self):
        assert random_index_limit(gumbel(), PointMassLimit(2.0), 0.0) == pytest.approx(0.13534, abs=1e-5)
        two_point = DiscreteLimit([1.0, 2.0], [0.5, 0.5])
        assert random_index_limit(gumbel(), two_point, 0.0) == pytest.approx(0.25161, abs=1e-5)

    def test_gumbel_gamma(self):
        assert gamma_from_alpha_tilde(gumbel(), 0.1) == pytest.approx(0.8340, abs=1e-4)

    def test_two_point_alpha_tilde(self):
        two_point = DiscreteLimit([1.0, 2.0], [0.5, 0.5])
        assert alpha_tilde_from_alpha(two_point, 0.1) == pytest.approx(0.17082, abs=1e-5)

    def test_refined_standard_normal(self):
        assert threshold_refined(gaussian(0, 1), 100, 0.1) == pytest.approx(-2.0, abs=0.01)

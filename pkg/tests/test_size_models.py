"""Tests for network size models, sensor draws and size pmfs."""
import numpy as np
import pytest
from scipy import stats

from ordered_detection.analytics.extreme_value import (
    PointMassLimit, UniformLimit, gumbel, random_index_limit,
)
from ordered_detection.dists.laws import Hypothesis, HypothesisLaws, gaussian
from ordered_detection.errors import InvalidParameterError, UnsupportedModelError
from ordered_detection.network.size_models import (
    Deterministic, clock_offsets, deterministic, draw_network, draw_size, draw_sizes,
    energy_phi, energy_stopped, limit_law, mixed_poisson, size_pmf, stopping_index,
)


@pytest.fixture
def energy_model():
    s_laws = HypothesisLaws(h0=gaussian(-1.0, 1.0), h1=gaussian(1.0, 1.0))
    return energy_stopped(1000, s_laws, gaussian(0.0, 1.0))


class TestStoppingRule:

    def test_energy_phi(self):
        assert np.array_equal(energy_phi([1.0, -2.0, 0.5]), [1.0, 5.0, 5.25])

    def test_strict_crossing(self):
        assert stopping_index([1.0, 1.0, 1.0], 2.0) == 3
        assert stopping_index([1.0, 1.0, 1.0], 1.5) == 2

    def test_never_reached(self):
        assert stopping_index([0.1, 0.1], 5.0) is None


class TestModels:

    def test_deterministic(self):
        model = deterministic(20)
        assert model.nu == 20.0
        assert model.with_nu(50).n == 50
        assert isinstance(limit_law(model, Hypothesis.H0), PointMassLimit)

    @pytest.mark.parametrize('n', [0, 2.5, -3])
    def test_deterministic_invalid(self, n):
        with pytest.raises(InvalidParameterError):
            Deterministic(n)

    def test_mixed_poisson_limit(self):
        model = mixed_poisson(100, eq=0.5, delta=0.5)
        assert model.r_bounds == (0.5, 1.5)
        law = model.limit_law(Hypothesis.H1)
        assert isinstance(law, UniformLimit)
        assert law.mean() == pytest.approx(1.0)
        assert model.describe()['eq'] == 0.5

    def test_mixed_poisson_without_perturbation(self):
        assert isinstance(mixed_poisson(100, 0.7, 0.0).limit_law(Hypothesis.H0), PointMassLimit)

    @pytest.mark.parametrize('eq,delta', [(0.0, 0.0), (1.2, 0.0), (0.5, 1.0), (0.9, 0.4), (0.5, -0.1)])
    def test_mixed_poisson_invalid(self, eq, delta):
        with pytest.raises(InvalidParameterError):
            mixed_poisson(100, eq, delta)

    def test_energy_stopped_limit(self, energy_model):
        assert not energy_model.is_data_independent
        assert energy_model.expected_size(Hypothesis.H1) == pytest.approx(500.0)
        assert energy_model.limit_law(Hypothesis.H0).mean() == pytest.approx(0.5)
        assert energy_model.with_nu(10).nu == 10.0


class TestDraws:

    def test_deterministic_sizes(self, rng):
        assert np.all(draw_sizes(deterministic(7), Hypothesis.H0, rng, 10) == 7)

    def test_mixed_poisson_mean(self, rng):
        sizes = draw_sizes(mixed_poisson(200, 0.5, 0.5), Hypothesis.H1, rng, 20_000)
        # Var N = nu + nu^2 Var(R) with R uniform on [0.5, 1.5]
        sd = np.sqrt(200 + 200 ** 2 / 12)
        assert abs(sizes.mean() - 200) < 5 * sd / np.sqrt(sizes.size)

    def test_energy_sizes_not_drawn_alone(self, energy_model, rng):
        with pytest.raises(UnsupportedModelError):
            draw_size(energy_model, Hypothesis.H1, rng)

    def test_network_draw(self, llr_policy, rng):
        draw = draw_network(deterministic(25), llr_policy, Hypothesis.H1, None, 0.0, rng)
        assert draw.n_active == 25
        assert np.allclose(draw.z_samples, llr_policy.transform(draw.x_samples))
        assert draw.offsets is None

    def test_network_draw_with_nu_override_and_offsets(self, llr_policy, rng):
        draw = draw_network(deterministic(25), llr_policy, Hypothesis.H0, 40, 0.5, rng)
        assert draw.n_active == 40
        assert draw.offsets.shape == (40,)
        assert np.all(np.abs(draw.offsets) <= 0.25)

    def test_energy_network_stops_at_crossing(self, energy_model, llr_policy, rng):
        draw = draw_network(energy_model, llr_policy, Hypothesis.H1, 200, 0.0, rng)
        energy = energy_phi(draw.s_samples)
        assert energy[-1] > 200
        assert draw.n_active == 1 or energy[-2] <= 200
        assert draw.x_samples.shape == draw.s_samples.shape

    def test_renewal_rate(self, energy_model, llr_policy, rng):
        nu, trials = 1000, 400
        sizes = np.array([
            draw_network(energy_model, llr_policy, Hypothesis.H1, nu, 0.0, rng).n_active
            for _ in range(trials)
        ])
        ratio = sizes / nu
        se = ratio.std(ddof=1) / np.sqrt(trials)
        # overshoot of the last increment biases N / nu by O(1 / nu)
        assert abs(ratio.mean() - 0.5) <= 4 * se + 3 / nu

    def test_clock_offsets(self, rng):
        assert clock_offsets(0.0, 5, rng) is None
        with pytest.raises(InvalidParameterError):
            clock_offsets(-1.0, 5, rng)


class TestSizePmf:

    def test_deterministic(self):
        assert size_pmf(deterministic(12)) == {12: 1.0}
        assert size_pmf(deterministic(12), nu=30) == {30: 1.0}

    def test_plain_poisson(self):
        pmf = size_pmf(mixed_poisson(50, 0.7, 0.0))
        assert pmf[50] == pytest.approx(stats.poisson.pmf(50, 50))
        assert sum(pmf.values()) == pytest.approx(1.0, abs=1e-10)

    def test_mixed_poisson_moments(self):
        pmf = size_pmf(mixed_poisson(100, 0.5, 0.5))
        n = np.array(list(pmf))
        p = np.array(list(pmf.values()))
        assert p.sum() == pytest.approx(1.0, abs=1e-10)
        assert (n * p).sum() == pytest.approx(100.0, rel=1e-8)
        assert (n * n * p).sum() - 100.0 ** 2 == pytest.approx(100 + 100 ** 2 / 12, rel=1e-6)

    def test_energy_has_no_pmf(self, energy_model):
        with pytest.raises(UnsupportedModelError):
            size_pmf(energy_model)


class TestRandomIndexLimit:

    def test_normalized_maxima_follow_mixed_gumbel(self, rng):
        """Exponential maxima over a mixed-Poisson count against E[G(x)^R]."""
        nu, samples = 1000, 2000
        sizes = draw_sizes(mixed_poisson(nu, 0.5, 0.5), Hypothesis.H0, rng, samples)
        u = rng.random(samples)
        # max of N standard exponentials by inversion
        maxima = -np.log(-np.expm1(np.log(u) / sizes))
        normalized = maxima - np.log(nu)

        R = UniformLimit(0.5, 1.5)
        result = stats.kstest(normalized, lambda x: random_index_limit(gumbel(), R, x))
        assert result.pvalue > 0.01

"""
Probability laws for sensor observations and transmitted statistics.

Every law exposes density, cdf, quantile and sampling, vectorized over numpy
arrays. A law may carry a point mass at zero (censoring); its density is
then the continuous part only and the cdf is right-continuous at zero.

Laws are immutable after construction and can be shared between
simulation workers. Samplers draw from a caller-supplied
numpy.random.Generator and keep no state of their own.
"""
from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import IntEnum
from typing import Optional, Tuple, Union

import numpy as np
from scipy import stats

from .numerics import find_root, quadrature
from ..config.settings import TAIL_EPS
from ..errors import InvalidParameterError

ArrayLike = Union[float, np.ndarray]


class Hypothesis(IntEnum):
    """The two states of nature."""
    H0 = 0
    H1 = 1

    @property
    def label(self) -> str:
        return self.name


def _finish(values, x) -> ArrayLike:
    """Return a float for scalar input, an array otherwise."""
    if np.ndim(x) == 0:
        return float(np.asarray(values))
    return np.asarray(values, dtype=float)


class ScalarLaw(ABC):
    """
    One-dimensional law: continuous part plus an optional atom at zero.

    Subclasses implement density, cdf, quantile and sample; the remaining
    methods have generic defaults that subclasses override when a more
    accurate form exists.
    """

    name: str = 'law'
    atom_at_zero: float = 0.0

    @property
    def support(self) -> Tuple[float, float]:
        """(lo, hi) support hints, possibly infinite."""
        return (-np.inf, np.inf)

    @property
    def is_continuous(self) -> bool:
        return self.atom_at_zero == 0.0

    @abstractmethod
    def density(self, x: ArrayLike) -> ArrayLike:
        """Density of the continuous part."""
        pass

    @abstractmethod
    def cdf(self, x: ArrayLike) -> ArrayLike:
        pass

    @abstractmethod
    def quantile(self, q: ArrayLike) -> ArrayLike:
        """Generalized inverse inf{x: cdf(x) >= q}."""
        pass

    @abstractmethod
    def sample(self, rng: np.random.Generator, size=None) -> ArrayLike:
        pass

    def sf(self, x: ArrayLike) -> ArrayLike:
        return _finish(1.0 - np.asarray(self.cdf(x)), x)

    def isf(self, q: ArrayLike) -> ArrayLike:
        """Inverse survival function."""
        return self.quantile(1.0 - np.asarray(q))

    def log_cdf(self, x: ArrayLike) -> ArrayLike:
        with np.errstate(divide='ignore'):
            return _finish(np.log(self.cdf(x)), x)

    def log_sf(self, x: ArrayLike) -> ArrayLike:
        with np.errstate(divide='ignore'):
            return _finish(np.log(self.sf(x)), x)

    def window(self, eps: float = TAIL_EPS) -> Tuple[float, float]:
        """Integration window [quantile(eps), quantile(1 - eps)]."""
        return float(self.quantile(eps)), float(self.isf(eps))

    def mean(self) -> float:
        lo, hi = self.window()
        return quadrature(lambda x: x * self.density(x), lo, hi, points=[0.0])

    def second_moment(self) -> float:
        lo, hi = self.window()
        return quadrature(lambda x: x * x * self.density(x), lo, hi, points=[0.0])

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name})"


class FrozenLaw(ScalarLaw):
    """Continuous law backed by a frozen scipy.stats distribution."""

    def __init__(self, frozen, name: Optional[str] = None):
        self._dist = frozen
        self.name = name or frozen.dist.name

    @property
    def support(self) -> Tuple[float, float]:
        lo, hi = self._dist.support()
        return float(lo), float(hi)

    def density(self, x):
        return _finish(self._dist.pdf(x), x)

    def cdf(self, x):
        return _finish(self._dist.cdf(x), x)

    def sf(self, x):
        return _finish(self._dist.sf(x), x)

    def quantile(self, q):
        return _finish(self._dist.ppf(q), q)

    def isf(self, q):
        return _finish(self._dist.isf(q), q)

    def log_cdf(self, x):
        return _finish(self._dist.logcdf(x), x)

    def log_sf(self, x):
        return _finish(self._dist.logsf(x), x)

    def sample(self, rng, size=None):
        return self._dist.rvs(size=size, random_state=rng)

    def mean(self) -> float:
        return float(self._dist.mean())

    def second_moment(self) -> float:
        return float(self._dist.var() + self._dist.mean() ** 2)


class GaussParetoMixture(ScalarLaw):
    """
    p * N(0, sigma) + (1 - p) * Pareto(theta, b).

    The Pareto part has density (b/theta) (x/theta)^(-b-1) on x >= theta.
    No closed-form quantile exists; it is found by bracketed root finding
    on the cdf, bracketed by the component quantiles.
    """

    def __init__(self, p: float, sigma: float, theta: float, b: float):
        self.p, self.sigma, self.theta, self.b = p, sigma, theta, b
        self._gauss = stats.norm(0.0, sigma)
        self._pareto = stats.pareto(b, scale=theta)
        self.name = f"GaussPareto(p={p}, sigma={sigma}, theta={theta}, b={b})"

    def density(self, x):
        return _finish(self.p * self._gauss.pdf(x) + (1 - self.p) * self._pareto.pdf(x), x)

    def cdf(self, x):
        return _finish(self.p * self._gauss.cdf(x) + (1 - self.p) * self._pareto.cdf(x), x)

    def sf(self, x):
        return _finish(self.p * self._gauss.sf(x) + (1 - self.p) * self._pareto.sf(x), x)

    def _invert(self, q: float, target, component_lo: float, component_hi: float) -> float:
        lo, hi = min(component_lo, component_hi), max(component_lo, component_hi)
        if lo == hi:
            return lo
        return find_root(lambda x: target(x) - q, lo, hi)

    def quantile(self, q):
        def one(qi):
            if qi <= 0.0:
                return -np.inf
            if qi >= 1.0:
                return np.inf
            return self._invert(qi, self.cdf, self._gauss.ppf(qi), self._pareto.ppf(qi))
        return _finish(np.vectorize(one, otypes=[float])(q), q)

    def isf(self, q):
        def one(qi):
            if qi <= 0.0:
                return np.inf
            if qi >= 1.0:
                return -np.inf
            # sf decreasing: negate so the bracket function increases
            return self._invert(-qi, lambda x: -self.sf(x), self._gauss.isf(qi), self._pareto.isf(qi))
        return _finish(np.vectorize(one, otypes=[float])(q), q)

    def sample(self, rng, size=None):
        use_gauss = rng.random(size) < self.p
        gauss = rng.normal(0.0, self.sigma, size)
        # numpy's pareto draws are Lomax; shift to the classical Pareto on [theta, inf)
        pareto = self.theta * (1.0 + rng.pareto(self.b, size))
        draws = np.where(use_gauss, gauss, pareto)
        return float(draws) if size is None else draws

    def mean(self) -> float:
        if self.b <= 1:
            return np.inf
        return (1 - self.p) * self.b * self.theta / (self.b - 1)

    def second_moment(self) -> float:
        if self.b <= 2:
            return np.inf
        return self.p * self.sigma ** 2 + (1 - self.p) * self.b * self.theta ** 2 / (self.b - 2)


class NegatedLaw(ScalarLaw):
    """Law of -X for X ~ base."""

    def __init__(self, base: ScalarLaw):
        self.base = base
        self.atom_at_zero = base.atom_at_zero
        self.name = f"-{base.name}"

    @property
    def support(self) -> Tuple[float, float]:
        lo, hi = self.base.support
        return -hi, -lo

    def density(self, x):
        return _finish(self.base.density(-np.asarray(x)), x)

    def cdf(self, x):
        # Pr(-X <= x) = Pr(X > -x) + Pr(X = -x)
        xa = np.asarray(x, dtype=float)
        values = np.asarray(self.base.sf(-xa)) + self.atom_at_zero * (xa == 0.0)
        return _finish(values, x)

    def sf(self, x):
        xa = np.asarray(x, dtype=float)
        values = np.asarray(self.base.cdf(-xa)) - self.atom_at_zero * (xa == 0.0)
        return _finish(values, x)

    def log_cdf(self, x):
        if self.is_continuous:
            return _finish(self.base.log_sf(-np.asarray(x)), x)
        return super().log_cdf(x)

    def log_sf(self, x):
        if self.is_continuous:
            return _finish(self.base.log_cdf(-np.asarray(x)), x)
        return super().log_sf(x)

    def quantile(self, q):
        qa = np.asarray(q, dtype=float)
        values = -np.asarray(self.base.isf(qa))
        if not self.is_continuous:
            below = 1.0 - float(self.base.cdf(0.0))
            in_atom = (qa > below) & (qa <= below + self.atom_at_zero)
            values = np.where(in_atom, 0.0, values)
        return _finish(values, q)

    def isf(self, q):
        qa = np.asarray(q, dtype=float)
        values = -np.asarray(self.base.quantile(qa))
        if not self.is_continuous:
            above = float(self.base.cdf(0.0)) - self.atom_at_zero
            in_atom = (qa >= above) & (qa < above + self.atom_at_zero)
            values = np.where(in_atom, 0.0, values)
        return _finish(values, q)

    def sample(self, rng, size=None):
        return -self.base.sample(rng, size)

    def mean(self) -> float:
        return -self.base.mean()

    def second_moment(self) -> float:
        return self.base.second_moment()


class CensoredLaw(ScalarLaw):
    """
    Law of T(X) with T(x) = x if |x| >= theta_c else 0.

    The band (-theta_c, theta_c) collapses into an atom at zero.
    """

    def __init__(self, base: ScalarLaw, theta_c: float):
        self.base = base
        self.theta_c = theta_c
        self._below = float(base.cdf(-theta_c))
        self._through = float(base.cdf(theta_c))
        self.atom_at_zero = self._through - self._below
        self.name = f"censored({base.name}, {theta_c})"

    @property
    def support(self) -> Tuple[float, float]:
        return self.base.support

    def density(self, x):
        xa = np.asarray(x, dtype=float)
        return _finish(np.where(np.abs(xa) >= self.theta_c, self.base.density(xa), 0.0), x)

    def cdf(self, x):
        xa = np.asarray(x, dtype=float)
        values = np.where(
            xa < -self.theta_c, self.base.cdf(xa),
            np.where(xa < 0.0, self._below,
                     np.where(xa < self.theta_c, self._through, self.base.cdf(xa))))
        return _finish(values, x)

    def sf(self, x):
        xa = np.asarray(x, dtype=float)
        values = np.where(
            xa < -self.theta_c, self.base.sf(xa),
            np.where(xa < 0.0, 1.0 - self._below,
                     np.where(xa < self.theta_c, 1.0 - self._through, self.base.sf(xa))))
        return _finish(values, x)

    def quantile(self, q):
        qa = np.asarray(q, dtype=float)
        values = np.where(qa <= self._below, self.base.quantile(qa),
                          np.where(qa <= self._through, 0.0, self.base.quantile(qa)))
        return _finish(values, q)

    def isf(self, q):
        qa = np.asarray(q, dtype=float)
        values = np.where(qa >= 1.0 - self._below, self.base.isf(qa),
                          np.where(qa >= 1.0 - self._through, 0.0, self.base.isf(qa)))
        return _finish(values, q)

    def sample(self, rng, size=None):
        draws = np.asarray(self.base.sample(rng, size))
        draws = np.where(np.abs(draws) >= self.theta_c, draws, 0.0)
        return float(draws) if size is None else draws


@dataclass(frozen=True)
class HypothesisLaws:
    """A pair of laws indexed by hypothesis."""
    h0: ScalarLaw
    h1: ScalarLaw

    def __call__(self, h: Hypothesis) -> ScalarLaw:
        return self.h1 if Hypothesis(h) == Hypothesis.H1 else self.h0


# =============================================================================
# Constructors
# =============================================================================

def _require_positive(**params):
    for key, value in params.items():
        if not np.isfinite(value) or value <= 0:
            raise InvalidParameterError(f"{key} must be a positive finite number, got {value}")


def gaussian(mean: float, sd: float) -> ScalarLaw:
    """Gaussian law N(mean, sd) (sd is the standard deviation)."""
    _require_positive(sd=sd)
    if not np.isfinite(mean):
        raise InvalidParameterError(f"mean must be finite, got {mean}")
    return FrozenLaw(stats.norm(mean, sd), name=f"N({mean:g}, {sd:g})")


def pareto(theta: float, b: float) -> ScalarLaw:
    """Pareto law with scale theta and shape b, support [theta, inf)."""
    _require_positive(theta=theta, b=b)
    return FrozenLaw(stats.pareto(b, scale=theta), name=f"Pareto({theta:g}, {b:g})")


def from_scipy(frozen, name: Optional[str] = None) -> ScalarLaw:
    """Wrap any continuous frozen scipy.stats distribution."""
    return FrozenLaw(frozen, name=name)


def gauss_pareto_mixture(p: float, sigma: float, theta: float, b: float) -> ScalarLaw:
    """Gaussian-Pareto mixture used for the censoring experiments."""
    if not 0.0 < p < 1.0:
        raise InvalidParameterError(f"p must lie in (0, 1), got {p}")
    _require_positive(sigma=sigma, theta=theta, b=b)
    return GaussParetoMixture(p, sigma, theta, b)


def negate(law: ScalarLaw) -> ScalarLaw:
    """Law of -X."""
    if isinstance(law, NegatedLaw):
        return law.base
    return NegatedLaw(law)


def censored(law: ScalarLaw, theta_c: float) -> ScalarLaw:
    """Law of X censored to zero inside (-theta_c, theta_c)."""
    _require_positive(theta_c=theta_c)
    return CensoredLaw(law, theta_c)

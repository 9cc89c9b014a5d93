"""
Transmission policies.

A policy maps each sensor observation X to Z = T(X). The sensor then waits
a time proportional to 1/|Z| before firing, so the largest-modulus
statistic is heard first. The policy also knows the law Z inherits from
X under each hypothesis.

Usage:
    policy = gaussian_llr_policy(theta0=1.0, theta1=1.0, sigma=1.0)
    z = policy.transform(x_samples)
    law = policy.z_law(Hypothesis.H0)
"""
from abc import ABC, abstractmethod
from enum import Enum
from typing import Dict

import numpy as np

from ..dists.laws import (
    ArrayLike, Hypothesis, HypothesisLaws, ScalarLaw, censored, gaussian,
)
from ..errors import InvalidParameterError


class PolicyKind(Enum):
    IDENTITY = 'identity-MO'
    LOGLIK = 'loglik-lMO'
    CENSORING = 'censoring'


class Policy(ABC):
    """
    Base class for transmission policies.

    Subclasses implement transform and z_law.
    """

    kind: PolicyKind

    def __init__(self, x_laws: HypothesisLaws):
        self.x_laws = x_laws

    def x_law(self, h: Hypothesis) -> ScalarLaw:
        """Law of the raw observation under hypothesis h."""
        return self.x_laws(h)

    @abstractmethod
    def transform(self, x: ArrayLike) -> ArrayLike:
        """T(x), vectorized."""
        pass

    @abstractmethod
    def z_law(self, h: Hypothesis) -> ScalarLaw:
        """Law of Z = T(X) under hypothesis h."""
        pass

    @property
    def is_continuous(self) -> bool:
        """True when neither Z-law carries an atom (exact quadrature applies)."""
        return all(self.z_law(h).is_continuous for h in Hypothesis)

    @property
    def has_miss_bound(self) -> bool:
        """Whether the e^gamma miss bound applies (log-likelihood policies only)."""
        return self.kind == PolicyKind.LOGLIK

    def describe(self) -> Dict:
        return {
            'kind': self.kind.value,
            'z_law_h0': self.z_law(Hypothesis.H0).name,
            'z_law_h1': self.z_law(Hypothesis.H1).name,
        }

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.kind.value})"


class IdentityPolicy(Policy):
    """Modulus ordering on the raw observation, T(x) = x."""

    kind = PolicyKind.IDENTITY

    def transform(self, x):
        return x

    def z_law(self, h):
        return self.x_laws(h)


class GaussianLlrPolicy(Policy):
    """
    Log-likelihood ratio of N(theta1, sigma) against N(-theta0, sigma).

    T(x) = (d / sigma^2) x + (theta0^2 - theta1^2) / (2 sigma^2), d = theta0 + theta1.
    Z is Gaussian with sd d/sigma and mean +d^2/(2 sigma^2) under H1,
    -d^2/(2 sigma^2) under H0.
    """

    kind = PolicyKind.LOGLIK

    def __init__(self, theta0: float, theta1: float, sigma: float):
        super().__init__(HypothesisLaws(h0=gaussian(-theta0, sigma), h1=gaussian(theta1, sigma)))
        self.theta0, self.theta1, self.sigma = theta0, theta1, sigma

        d = theta0 + theta1
        self.slope = d / sigma ** 2
        self.offset = (theta0 ** 2 - theta1 ** 2) / (2 * sigma ** 2)
        z_mean = d ** 2 / (2 * sigma ** 2)
        self._z_laws = HypothesisLaws(
            h0=gaussian(-z_mean, d / sigma),
            h1=gaussian(z_mean, d / sigma),
        )

    @property
    def snr(self) -> float:
        return (self.theta0 + self.theta1) / self.sigma

    def transform(self, x):
        z = self.slope * np.asarray(x, dtype=float) + self.offset
        return float(z) if np.ndim(x) == 0 else z

    def log_likelihood_ratio(self, x: ArrayLike) -> ArrayLike:
        """log f_X(x; H1) - log f_X(x; H0), evaluated from the observation laws."""
        h1 = np.log(self.x_laws.h1.density(x))
        h0 = np.log(self.x_laws.h0.density(x))
        return h1 - h0

    def z_law(self, h):
        return self._z_laws(h)


class CensoringPolicy(Policy):
    """
    Censored identity: T(x) = x when |x| >= theta_c, else 0.

    Censored sensors never transmit; the Z-laws carry an atom at zero.
    """

    kind = PolicyKind.CENSORING

    def __init__(self, x_laws: HypothesisLaws, theta_c: float):
        super().__init__(x_laws)
        self.theta_c = theta_c
        self._z_laws = HypothesisLaws(
            h0=censored(x_laws.h0, theta_c),
            h1=censored(x_laws.h1, theta_c),
        )

    def transform(self, x):
        xa = np.asarray(x, dtype=float)
        z = np.where(np.abs(xa) >= self.theta_c, xa, 0.0)
        return float(z) if np.ndim(x) == 0 else z

    def z_law(self, h):
        return self._z_laws(h)


# =============================================================================
# Constructors
# =============================================================================

def identity_policy(x_laws: HypothesisLaws) -> Policy:
    return IdentityPolicy(x_laws)


def gaussian_llr_policy(theta0: float, theta1: float, sigma: float) -> Policy:
    """
    Args:
        theta0: Mean magnitude under H0 (observations ~ N(-theta0, sigma)), >= 0
        theta1: Mean under H1, > 0
        sigma: Observation standard deviation, > 0
    """
    if not theta0 >= 0:
        raise InvalidParameterError(f"theta0 must be >= 0, got {theta0}")
    if not theta1 > 0:
        raise InvalidParameterError(f"theta1 must be > 0, got {theta1}")
    if not sigma > 0:
        raise InvalidParameterError(f"sigma must be > 0, got {sigma}")
    return GaussianLlrPolicy(theta0, theta1, sigma)


def censoring_policy(x_laws: HypothesisLaws, theta_c: float) -> Policy:
    if not theta_c > 0:
        raise InvalidParameterError(f"theta_c must be > 0, got {theta_c}")
    return CensoringPolicy(x_laws, theta_c)

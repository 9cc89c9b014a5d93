"""
Extreme-value machinery for threshold design.

Normalizing constants and limit laws for maxima (Gumbel and Frechet
attraction), random-index limits E[G(x)^R] for networks whose size grows
like nu * R, tail-dominance classification, and the threshold rules built
on them.

Usage:
    family = gumbel()
    R0 = limit_law(model, Hypothesis.H0)
    alpha_tilde = alpha_tilde_from_alpha(R0, alpha=0.01)
    gamma_nu = threshold_refined(policy.z_law(Hypothesis.H0), nu, alpha_tilde)
"""
from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional, Sequence

import numpy as np

from ..config.settings import (
    EXPECTATION_MC_SAMPLES, EXPECTATION_REL_TOL,
    TAIL_GRID_EXPONENTS, TAIL_RATIO_LEFT, TAIL_RATIO_RIGHT,
)
from ..dists.laws import ArrayLike, Hypothesis, ScalarLaw, _finish, negate
from ..dists.numerics import find_root, quadrature
from ..errors import (
    InvalidParameterError, NumericFailureError, UnsupportedLawError,
)
from ..policy.transmission import Policy
from ..utilities.logger import get_logger

logger = get_logger(__name__)


# =============================================================================
# Families and constants
# =============================================================================

class FamilyKind(Enum):
    GUMBEL = 'gumbel'
    FRECHET = 'frechet'


@dataclass(frozen=True)
class EvtFamily:
    """Limit family for normalized maxima; xi is the Frechet shape."""
    kind: FamilyKind
    xi: Optional[float] = None

    def __post_init__(self):
        if self.kind == FamilyKind.FRECHET and not (self.xi is not None and self.xi > 0):
            raise InvalidParameterError(f"Frechet family needs xi > 0, got {self.xi}")
        if self.kind == FamilyKind.GUMBEL and self.xi is not None:
            raise InvalidParameterError("Gumbel family takes no xi")

    def log_cdf(self, x: ArrayLike) -> ArrayLike:
        xa = np.asarray(x, dtype=float)
        if self.kind == FamilyKind.GUMBEL:
            return _finish(-np.exp(-xa), x)
        with np.errstate(divide='ignore', invalid='ignore'):
            values = np.where(xa > 0, -np.power(np.where(xa > 0, xa, 1.0), -self.xi), -np.inf)
        return _finish(values, x)

    def cdf(self, x: ArrayLike) -> ArrayLike:
        return _finish(np.exp(self.log_cdf(x)), x)

    def __str__(self) -> str:
        return self.kind.value if self.xi is None else f"{self.kind.value}(xi={self.xi:g})"


def gumbel() -> EvtFamily:
    return EvtFamily(FamilyKind.GUMBEL)


def frechet(xi: float) -> EvtFamily:
    return EvtFamily(FamilyKind.FRECHET, xi)


@dataclass(frozen=True)
class NormConstants:
    """Maxima of n draws behave like a * Y + b with Y from the limit family."""
    a: float
    b: float

    def normalize(self, x: ArrayLike) -> ArrayLike:
        return _finish((np.asarray(x, dtype=float) - self.b) / self.a, x)


def norm_constants(law: ScalarLaw, n: int, family: EvtFamily) -> NormConstants:
    """
    Normalizing constants for the maximum of n draws from law.

    Gumbel: b = F^-1(1 - 1/n), a = 1 / (n f(b)).
    Frechet: b = 0, a = F^-1(1 - 1/n).

    Raises:
        NumericFailureError: Density vanishes at b (Gumbel)
    """
    if int(n) != n or n < 2:
        raise InvalidParameterError(f"n must be an integer >= 2, got {n}")

    upper = float(law.isf(1.0 / n))
    if family.kind == FamilyKind.FRECHET:
        return NormConstants(a=upper, b=0.0)

    density = float(law.density(upper))
    if not np.isfinite(density) or density <= 0.0:
        raise NumericFailureError(f"density of {law.name} vanishes at b_n={upper:.6g} (n={n})")
    return NormConstants(a=1.0 / (n * density), b=upper)


def negmin_constants(policy: Policy, nu: int, family: EvtFamily) -> NormConstants:
    """Constants of -min under H0, taken at index nu."""
    return norm_constants(negate(policy.z_law(Hypothesis.H0)), nu, family)


def limiting_cdf(family: EvtFamily, x: ArrayLike) -> ArrayLike:
    """G(x) for the family."""
    return family.cdf(x)


def attraction_distance(law: ScalarLaw, n: int, family: EvtFamily, grid: Sequence[float]) -> float:
    """sup over grid of |Pr((max - b)/a <= x) - G(x)| for n draws."""
    constants = norm_constants(law, n, family)
    x = np.asarray(grid, dtype=float)
    exact = np.exp(n * np.asarray(law.log_cdf(constants.a * x + constants.b)))
    return float(np.max(np.abs(exact - family.cdf(x))))


# =============================================================================
# Limit laws of N / nu
# =============================================================================

class SizeLimitLaw(ABC):
    """Law of R = lim N / nu; R > 0 almost surely."""

    @abstractmethod
    def expect(self, g: Callable[[np.ndarray], np.ndarray]) -> float:
        """E[g(R)]."""
        pass

    @abstractmethod
    def sample(self, rng: np.random.Generator, size=None):
        pass

    def mean(self) -> float:
        return self.expect(lambda r: r)


class PointMassLimit(SizeLimitLaw):
    def __init__(self, value: float = 1.0):
        if not value > 0:
            raise InvalidParameterError(f"R must be positive, got {value}")
        self.value = float(value)

    def expect(self, g):
        return float(g(np.float64(self.value)))

    def sample(self, rng, size=None):
        return self.value if size is None else np.full(size, self.value)

    def __repr__(self):
        return f"PointMassLimit({self.value:g})"


class DiscreteLimit(SizeLimitLaw):
    def __init__(self, values: Sequence[float], probs: Sequence[float]):
        self.values = np.asarray(values, dtype=float)
        self.probs = np.asarray(probs, dtype=float)
        if self.values.shape != self.probs.shape or (self.values <= 0).any():
            raise InvalidParameterError("R values must be positive and match probabilities")
        if (self.probs < 0).any() or not np.isclose(self.probs.sum(), 1.0):
            raise InvalidParameterError("R probabilities must be nonnegative and sum to 1")

    def expect(self, g):
        return float(np.sum(self.probs * g(self.values)))

    def sample(self, rng, size=None):
        return rng.choice(self.values, size=size, p=self.probs)


class UniformLimit(SizeLimitLaw):
    """R uniform on [lo, hi], lo > 0; expectations by quadrature."""

    def __init__(self, lo: float, hi: float):
        if not 0 < lo <= hi:
            raise InvalidParameterError(f"uniform R needs 0 < lo <= hi, got [{lo}, {hi}]")
        self.lo, self.hi = float(lo), float(hi)

    def expect(self, g):
        if self.lo == self.hi:
            return float(g(np.float64(self.lo)))
        width = self.hi - self.lo
        return quadrature(lambda r: g(r) / width, self.lo, self.hi)

    def sample(self, rng, size=None):
        return rng.uniform(self.lo, self.hi, size)

    def __repr__(self):
        return f"UniformLimit({self.lo:g}, {self.hi:g})"


class EmpiricalLimit(SizeLimitLaw):
    """
    R given only through a sampler; expectations over a fixed seeded sample.

    The sample is drawn once so that E[g(R)] is a deterministic function of g
    (root finding on alpha_tilde relies on it).
    """

    def __init__(self, sampler: Callable, seed: int = 0, samples: int = EXPECTATION_MC_SAMPLES):
        self.sampler = sampler
        self.seed = seed
        self.samples = samples
        self._draws: Optional[np.ndarray] = None

    @property
    def draws(self) -> np.ndarray:
        if self._draws is None:
            rng = np.random.default_rng(self.seed)
            self._draws = np.asarray(self.sampler(rng, self.samples), dtype=float)
            if (self._draws <= 0).any():
                raise InvalidParameterError("empirical R sample contains nonpositive values")
        return self._draws

    def expect(self, g):
        values = np.asarray(g(self.draws), dtype=float)
        estimate = float(values.mean())
        if not np.isfinite(estimate):
            raise NumericFailureError("expectation over R is not finite", best_estimate=estimate)
        stderr = float(values.std(ddof=1) / np.sqrt(values.size)) if values.size > 1 else 0.0
        if estimate != 0.0 and stderr > EXPECTATION_REL_TOL * abs(estimate):
            logger.warning(
                f"E[g(R)] relative standard error {stderr / abs(estimate):.2e} "
                f"above {EXPECTATION_REL_TOL:.0e} with {values.size} samples"
            )
        return estimate

    def sample(self, rng, size=None):
        return self.sampler(rng, size)


def random_index_limit(family: EvtFamily, R: SizeLimitLaw, x: ArrayLike) -> ArrayLike:
    """E[G(x)^R]: limit cdf of normalized maxima over a random count nu * R."""
    def one(xi: float) -> float:
        log_g = float(family.log_cdf(xi))
        if log_g == -np.inf:
            return 0.0
        return R.expect(lambda r: np.exp(r * log_g))

    if np.ndim(x) == 0:
        return one(float(x))
    return np.vectorize(one, otypes=[float])(x)


# =============================================================================
# Tail dominance
# =============================================================================

class TailDominance(Enum):
    RIGHT = 'right'
    LEFT = 'left'
    UNDETERMINED = 'undetermined'


def tail_ratios(law: ScalarLaw) -> np.ndarray:
    """(1 - F(x)) / F(-x) on x = F^-1(1 - 10^-k) for the configured k grid."""
    x = np.array([float(law.isf(10.0 ** -k)) for k in TAIL_GRID_EXPONENTS])
    with np.errstate(divide='ignore', over='ignore'):
        return np.exp(np.asarray(law.log_sf(x)) - np.asarray(law.log_cdf(-x)))


def tail_dominance(law: ScalarLaw) -> TailDominance:
    """Classify which tail of law dominates far out."""
    ratios = tail_ratios(law)
    last, first = ratios[-1], ratios[0]
    logger.debug(f"Tail ratios for {law.name}: first={first:.3g}, last={last:.3g}")

    if last > TAIL_RATIO_RIGHT and last >= first:
        return TailDominance.RIGHT
    if last < TAIL_RATIO_LEFT and last <= first:
        return TailDominance.LEFT
    return TailDominance.UNDETERMINED


# =============================================================================
# Threshold rules and bounds
# =============================================================================

def _check_unit(name: str, value: float):
    if not 0.0 < value < 1.0:
        raise InvalidParameterError(f"{name} must lie in (0, 1), got {value}")


def gamma_from_alpha_tilde(family: EvtFamily, alpha_tilde: float) -> float:
    """Normalized threshold whose limiting false alarm is alpha_tilde."""
    _check_unit('alpha_tilde', alpha_tilde)
    log_inv = np.log(1.0 / alpha_tilde)
    if family.kind == FamilyKind.GUMBEL:
        return float(np.log(log_inv))
    return float(-log_inv ** (-1.0 / family.xi))


def alpha_tilde_from_alpha(R0: SizeLimitLaw, alpha: float) -> float:
    """Solve E[alpha_tilde^R0] = alpha for alpha_tilde in (0, 1)."""
    _check_unit('alpha', alpha)
    return find_root(lambda a: R0.expect(lambda r: np.power(a, r)) - alpha, 0.0, 1.0)


def threshold_asymptotic(constants_minus: NormConstants, gamma: float) -> float:
    """gamma_nu = a * gamma - b with -min constants under H0."""
    return constants_minus.a * gamma - constants_minus.b


def threshold_refined(z_law_h0: ScalarLaw, nu: int, alpha_tilde: float) -> float:
    """
    gamma_nu = F^-1(1 - alpha_tilde^(1/nu); H0), i.e. (1 - F(gamma_nu))^nu = alpha_tilde.
    """
    _check_unit('alpha_tilde', alpha_tilde)
    if not nu >= 1:
        raise InvalidParameterError(f"nu must be >= 1, got {nu}")
    if not z_law_h0.is_continuous:
        raise UnsupportedLawError(f"refined threshold needs a continuous law, got {z_law_h0.name}")
    # 1 - alpha_tilde^(1/nu) without cancellation for large nu
    q = -np.expm1(np.log(alpha_tilde) / nu)
    return float(z_law_h0.quantile(q))


def miss_bound(gamma_nu: float) -> float:
    """Upper bound e^gamma on the miss probability of log-likelihood ordering."""
    return float(np.exp(gamma_nu))


def approx_miss_bound(snr: float, n: float) -> float:
    """Leading-order Gaussian miss probability exp(-SNR sqrt(2 log n))."""
    return float(np.exp(-snr * np.sqrt(2.0 * np.log(n))))

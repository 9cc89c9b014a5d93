"""
Network size models and sensor draws.

Three ways the number of active sensors N arises:

    Deterministic(n)               N = n
    MixedPoisson(nu, eq, delta)    Q = eq + U, U ~ uniform(-delta/2, delta/2),
                                   N | Q ~ Poisson(nu * Q / eq)
    EnergyStopped(nu, s, w)        N = inf{n : phi(S_1..S_n) > nu},
                                   phi = running sum of S_i^2, X_i = S_i + W_i

N / nu converges to a random R: 1 for Deterministic, uniform on
1 +/- delta / (2 eq) for MixedPoisson, 1 / E[S^2] (renewal) for EnergyStopped.
"""
from abc import ABC, abstractmethod
from dataclasses import dataclass, field, replace
from typing import Callable, Dict, Optional

import numpy as np
from scipy import special, stats

from ..analytics.extreme_value import PointMassLimit, SizeLimitLaw, UniformLimit
from ..config.settings import PMF_MASS_TOL, POISSON_TRUNCATION_SD
from ..dists.laws import Hypothesis, HypothesisLaws, ScalarLaw
from ..errors import (
    InvalidParameterError, NumericFailureError, UnsupportedModelError,
)
from ..policy.transmission import Policy
from ..utilities.logger import get_logger

logger = get_logger(__name__)


def energy_phi(s_samples: np.ndarray) -> np.ndarray:
    """Running energy sum_{i<=k} s_i^2 for every prefix k."""
    s = np.asarray(s_samples, dtype=float)
    return np.cumsum(s * s)


def stopping_index(s_samples, nu: float, phi: Callable = energy_phi) -> Optional[int]:
    """First (1-based) k with phi(s_1..s_k) > nu, or None if never reached."""
    hits = np.flatnonzero(np.asarray(phi(s_samples)) > nu)
    return int(hits[0]) + 1 if hits.size else None


# =============================================================================
# Models
# =============================================================================

class SizeModel(ABC):
    """How N is generated and how it scales with nu."""

    name: str = 'size-model'

    @property
    @abstractmethod
    def nu(self) -> float:
        pass

    @abstractmethod
    def with_nu(self, nu: float) -> 'SizeModel':
        """Same model re-indexed at design parameter nu."""
        pass

    @abstractmethod
    def expected_size(self, h: Hypothesis) -> float:
        pass

    @abstractmethod
    def limit_law(self, h: Hypothesis) -> SizeLimitLaw:
        """Law of lim N / nu under hypothesis h."""
        pass

    @property
    def is_data_independent(self) -> bool:
        """True when N does not depend on the observations."""
        return True

    def describe(self) -> Dict:
        return {'model': self.name, 'nu': self.nu}


@dataclass(frozen=True)
class Deterministic(SizeModel):
    n: int
    name = 'deterministic'

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise InvalidParameterError(f"n must be an integer >= 1, got {self.n}")

    @property
    def nu(self) -> float:
        return float(self.n)

    def with_nu(self, nu):
        return Deterministic(int(round(nu)))

    def expected_size(self, h):
        return float(self.n)

    def limit_law(self, h):
        return PointMassLimit(1.0)


@dataclass(frozen=True)
class MixedPoisson(SizeModel):
    """Poisson count with a uniformly perturbed thinning probability Q."""
    nu_value: float
    eq: float
    delta: float = 0.0
    name = 'mixed_poisson'

    def __post_init__(self):
        if not self.nu_value > 0:
            raise InvalidParameterError(f"nu must be > 0, got {self.nu_value}")
        if not 0.0 < self.eq <= 1.0:
            raise InvalidParameterError(f"eq must lie in (0, 1], got {self.eq}")
        if not 0.0 <= self.delta < 2 * self.eq:
            raise InvalidParameterError(f"delta must lie in [0, 2*eq), got {self.delta}")
        if self.eq + self.delta / 2 > 1.0:
            raise InvalidParameterError(
                f"Q = eq + U reaches {self.eq + self.delta / 2:g} > 1 (eq={self.eq}, delta={self.delta})"
            )

    @property
    def nu(self) -> float:
        return float(self.nu_value)

    @property
    def r_bounds(self):
        spread = self.delta / (2 * self.eq)
        return 1.0 - spread, 1.0 + spread

    def with_nu(self, nu):
        return replace(self, nu_value=float(nu))

    def expected_size(self, h):
        return self.nu

    def limit_law(self, h):
        lo, hi = self.r_bounds
        return PointMassLimit(1.0) if lo == hi else UniformLimit(lo, hi)

    def describe(self):
        return {'model': self.name, 'nu': self.nu, 'eq': self.eq, 'delta': self.delta}


@dataclass(frozen=True)
class EnergyStopped(SizeModel):
    """Sensors join until the accumulated signal energy exceeds nu."""
    nu_value: float
    s_laws: HypothesisLaws
    w_law: ScalarLaw
    phi: Callable = field(default=energy_phi)
    name = 'energy_stopped'

    def __post_init__(self):
        if not self.nu_value > 0:
            raise InvalidParameterError(f"nu must be > 0, got {self.nu_value}")

    @property
    def nu(self) -> float:
        return float(self.nu_value)

    @property
    def is_data_independent(self) -> bool:
        return False

    def with_nu(self, nu):
        return replace(self, nu_value=float(nu))

    def expected_size(self, h):
        return self.nu / self.s_laws(h).second_moment()

    def limit_law(self, h):
        return PointMassLimit(1.0 / self.s_laws(h).second_moment())


def deterministic(n: int) -> SizeModel:
    return Deterministic(n)


def mixed_poisson(nu: float, eq: float, delta: float = 0.0) -> SizeModel:
    return MixedPoisson(nu, eq, delta)


def energy_stopped(nu: float, s_laws: HypothesisLaws, w_law: ScalarLaw, phi: Callable = energy_phi) -> SizeModel:
    return EnergyStopped(nu, s_laws, w_law, phi)


def limit_law(model: SizeModel, h: Hypothesis) -> SizeLimitLaw:
    return model.limit_law(h)


# =============================================================================
# Draws
# =============================================================================

@dataclass
class SensorDraw:
    """One realized network."""
    n_active: int
    x_samples: np.ndarray
    z_samples: np.ndarray
    s_samples: Optional[np.ndarray] = None
    offsets: Optional[np.ndarray] = None


def draw_size(model: SizeModel, h: Hypothesis, rng: np.random.Generator) -> int:
    """
    Draw N for a data-independent model.

    Raises:
        UnsupportedModelError: EnergyStopped (N comes out of draw_network)
    """
    return int(draw_sizes(model, h, rng, 1)[0])


def draw_sizes(model: SizeModel, h: Hypothesis, rng: np.random.Generator, count: int) -> np.ndarray:
    """Draw N for count independent networks."""
    if isinstance(model, Deterministic):
        return np.full(count, model.n, dtype=np.int64)
    if isinstance(model, MixedPoisson):
        q = model.eq + rng.uniform(-model.delta / 2, model.delta / 2, count)
        return rng.poisson(model.nu * q / model.eq).astype(np.int64)
    raise UnsupportedModelError(
        f"{model.name} sizes depend on the observations; use draw_network"
    )


def _energy_stopped_signal(model: EnergyStopped, h: Hypothesis, rng: np.random.Generator) -> np.ndarray:
    s_law = model.s_laws(h)
    chunk = max(16, int(1.25 * model.expected_size(h)) + 16)
    s = np.empty(0)
    while True:
        s = np.concatenate([s, np.atleast_1d(s_law.sample(rng, chunk))])
        n = stopping_index(s, model.nu, model.phi)
        if n is not None:
            return s[:n]


def clock_offsets(clock_delta: float, n: int, rng: np.random.Generator) -> Optional[np.ndarray]:
    """Offsets uniform on (-clock_delta/2, clock_delta/2); None when clock_delta == 0."""
    if clock_delta < 0:
        raise InvalidParameterError(f"clock_delta must be >= 0, got {clock_delta}")
    if clock_delta == 0:
        return None
    return rng.uniform(-clock_delta / 2, clock_delta / 2, n)


def draw_network(
    model: SizeModel,
    policy: Policy,
    h: Hypothesis,
    nu: Optional[float],
    clock_delta: float,
    rng: np.random.Generator,
) -> SensorDraw:
    """
    Draw one network under hypothesis h.

    Args:
        model: Size model
        policy: Transmission policy (supplies the observation law and T)
        h: True hypothesis
        nu: Design parameter override (None keeps the model's own)
        clock_delta: Width of the clock-offset distribution (0 for none)
        rng: Random stream

    Returns:
        SensorDraw
    """
    if nu is not None:
        model = model.with_nu(nu)

    s_samples = None
    if isinstance(model, EnergyStopped):
        s_samples = _energy_stopped_signal(model, h, rng)
        n = s_samples.size
        x = s_samples + np.asarray(model.w_law.sample(rng, n), dtype=float)
    else:
        n = draw_size(model, h, rng)
        x = np.asarray(policy.x_law(h).sample(rng, n), dtype=float)

    return SensorDraw(
        n_active=n,
        x_samples=x,
        z_samples=np.asarray(policy.transform(x), dtype=float),
        s_samples=s_samples,
        offsets=clock_offsets(clock_delta, n, rng),
    )


# =============================================================================
# Size pmf
# =============================================================================

def _poisson_range(lam_lo: float, lam_hi: float):
    tail = PMF_MASS_TOL / 10
    lo = min(
        stats.poisson.ppf(tail, lam_lo),
        np.floor(lam_lo - POISSON_TRUNCATION_SD * np.sqrt(lam_lo)),
    )
    hi = max(
        stats.poisson.isf(tail, lam_hi),
        np.ceil(lam_hi + POISSON_TRUNCATION_SD * np.sqrt(lam_hi)),
    )
    return np.arange(max(int(lo), 0), int(hi) + 1)


def size_pmf(model: SizeModel, nu: Optional[float] = None) -> Dict[int, float]:
    """
    Marginal pmf of N for a data-independent model, truncated to mass >= 1 - PMF_MASS_TOL.

    Raises:
        UnsupportedModelError: EnergyStopped
    """
    if nu is not None:
        model = model.with_nu(nu)

    if isinstance(model, Deterministic):
        return {model.n: 1.0}
    if not isinstance(model, MixedPoisson):
        raise UnsupportedModelError(f"{model.name} has no observation-free size pmf")

    r_lo, r_hi = model.r_bounds
    lam_lo, lam_hi = model.nu * r_lo, model.nu * r_hi
    n = _poisson_range(lam_lo, lam_hi)

    if lam_lo == lam_hi:
        probs = stats.poisson.pmf(n, lam_lo)
    else:
        # Poisson(lambda) averaged over lambda uniform on [lam_lo, lam_hi]
        probs = (special.gammainc(n + 1, lam_hi) - special.gammainc(n + 1, lam_lo)) / (lam_hi - lam_lo)

    mass = float(probs.sum())
    if mass < 1.0 - PMF_MASS_TOL:
        raise NumericFailureError(f"truncated size pmf keeps mass {mass:.12g}", best_estimate=mass)
    logger.debug(f"Size pmf for {model.name} nu={model.nu:g}: n in [{n[0]}, {n[-1]}], mass={mass:.12g}")

    return {int(k): float(p) for k, p in zip(n, probs) if p > 0}

"""
Exact finite-n laws of the network extremes and the resulting error
probabilities.

For n iid statistics Z_1..Z_n with cdf F and density f:

    max         f_{M+}(x) = n F(x)^(n-1) f(x)
    -min        f_{M-}(x) = n (1 - F(-x))^(n-1) f(-x)
    winner      f_{M}(x)  = n h(x)^(n-1) f(x),   h(x) = F(|x|) - F(-|x|)

Powers are taken in log space so n can run to 1e6. Only continuous laws
are handled here; censored laws go through Monte Carlo.
"""
from typing import Dict, Iterable, List, Mapping, NamedTuple, Tuple

import numpy as np

from ..config.settings import PMF_MASS_TOL, TAIL_EPS
from ..dists.laws import ArrayLike, Hypothesis, ScalarLaw, _finish
from ..dists.numerics import quadrature
from ..errors import InvalidInputError, InvalidParameterError, UnsupportedLawError
from ..policy.transmission import Policy
from ..utilities.logger import get_logger

logger = get_logger(__name__)


class ErrorProbabilities(NamedTuple):
    """False alarm and miss detection probabilities."""
    alpha: float
    beta: float

    @property
    def total(self) -> float:
        return self.alpha + self.beta


def _continuous_law(policy: Policy, h: Hypothesis) -> ScalarLaw:
    law = policy.z_law(h)
    if not law.is_continuous:
        raise UnsupportedLawError(
            f"{law.name} has an atom at zero (mass {law.atom_at_zero:.4g}); "
            "exact order-statistic routines need a continuous law, use Monte Carlo"
        )
    return law


def _check_n(n: int) -> int:
    if int(n) != n or n < 1:
        raise InvalidParameterError(f"n must be an integer >= 1, got {n}")
    return int(n)


def log_h_function(law: ScalarLaw, x: ArrayLike) -> ArrayLike:
    """log h(x) with h(x) = F(|x|) - F(-|x|), computed as log1p(-(both tails))."""
    ax = np.abs(np.asarray(x, dtype=float))
    tails = np.asarray(law.sf(ax)) + np.asarray(law.cdf(-ax))
    with np.errstate(divide='ignore'):
        return _finish(np.log1p(-np.minimum(tails, 1.0)), x)


def h_function(law: ScalarLaw, x: ArrayLike) -> ArrayLike:
    """Probability that a single statistic has modulus below |x|."""
    return _finish(np.exp(log_h_function(law, x)), x)


def _power_density(n: int, log_base, density) -> np.ndarray:
    if n == 1:
        return np.asarray(density, dtype=float)
    return n * np.exp((n - 1) * np.asarray(log_base)) * np.asarray(density)


def pdf_max(policy: Policy, n: int, h: Hypothesis, x: ArrayLike) -> ArrayLike:
    """Density of the largest of n statistics under hypothesis h."""
    n = _check_n(n)
    law = _continuous_law(policy, h)
    return _finish(_power_density(n, law.log_cdf(x), law.density(x)), x)


def pdf_negmin(policy: Policy, n: int, h: Hypothesis, x: ArrayLike) -> ArrayLike:
    """Density of minus the smallest of n statistics under hypothesis h."""
    n = _check_n(n)
    law = _continuous_law(policy, h)
    neg = -np.asarray(x, dtype=float)
    return _finish(_power_density(n, law.log_sf(neg), law.density(neg)), x)


def pdf_winner(policy: Policy, n: int, h: Hypothesis, x: ArrayLike) -> ArrayLike:
    """Density of the largest-modulus statistic (signed) among n."""
    n = _check_n(n)
    law = _continuous_law(policy, h)
    return _finish(_power_density(n, log_h_function(law, x), law.density(x)), x)


def winner_window(law: ScalarLaw, n: int, eps: float = TAIL_EPS) -> Tuple[float, float]:
    """
    Integration window for the winner of n draws.

    Each tail is cut at probability eps/n, so the mass of the extreme left
    outside the window is at most eps.
    """
    return float(law.quantile(eps / n)), float(law.isf(eps / n))


def _breakpoints(law: ScalarLaw, n: int, gamma: float) -> List[float]:
    points = [0.0, gamma]
    if n >= 2:
        # the winner concentrates near the 1 - 1/n quantiles of either sign
        points += [float(law.isf(1.0 / n)), float(law.quantile(1.0 / n))]
    return points


def _integrate_side(
    density,
    law: ScalarLaw,
    gamma: float,
    above: bool,
    window_n: int,
    peak_n: int,
) -> float:
    """Integral of density above (or below) gamma over the winner window."""
    lo, hi = winner_window(law, window_n)
    points = _breakpoints(law, peak_n, gamma)
    logger.debug(f"Winner window [{lo:.6g}, {hi:.6g}] for {law.name}, n={window_n}, gamma={gamma:.6g}")

    if above:
        return quadrature(density, max(gamma, lo), hi, points=points) if gamma < hi else 0.0
    return quadrature(density, lo, min(gamma, hi), points=points) if gamma > lo else 0.0


def error_probs_exact(policy: Policy, n: int, gamma: float) -> ErrorProbabilities:
    """
    Exact false alarm and miss probabilities for a network of n sensors.

    alpha = Pr(M_n >= gamma; H0), beta = Pr(M_n < gamma; H1).

    Raises:
        UnsupportedLawError: Either Z-law has an atom
    """
    n = _check_n(n)
    law0 = _continuous_law(policy, Hypothesis.H0)
    law1 = _continuous_law(policy, Hypothesis.H1)

    alpha = _integrate_side(
        lambda x: pdf_winner(policy, n, Hypothesis.H0, x), law0, gamma, True, n, n)
    beta = _integrate_side(
        lambda x: pdf_winner(policy, n, Hypothesis.H1, x), law1, gamma, False, n, n)

    return ErrorProbabilities(
        alpha=float(np.clip(alpha, 0.0, 1.0)),
        beta=float(np.clip(beta, 0.0, 1.0)),
    )


# =============================================================================
# Random network size
# =============================================================================

def _pmf_arrays(size_pmf: Mapping[int, float]) -> Tuple[np.ndarray, np.ndarray]:
    sizes = np.array(sorted(size_pmf), dtype=np.int64)
    probs = np.array([size_pmf[k] for k in sizes], dtype=float)
    if sizes.size == 0 or (sizes < 0).any() or (probs < 0).any():
        raise InvalidInputError("size pmf must be nonempty with nonnegative sizes and probabilities")
    mass = probs.sum()
    if not (1.0 - PMF_MASS_TOL <= mass <= 1.0 + PMF_MASS_TOL):
        raise InvalidInputError(f"size pmf carries mass {mass:.12g}, expected 1 within {PMF_MASS_TOL}")
    return sizes, probs


def pdf_winner_mixed(
    policy: Policy,
    size_pmf: Mapping[int, float],
    h: Hypothesis,
    x: ArrayLike,
) -> ArrayLike:
    """
    Winner density mixed over a data-independent network size N.

    Continuous part only: the N = 0 atom (nothing fires, M = 0) is left out.
    """
    sizes, probs = _pmf_arrays(size_pmf)
    law = _continuous_law(policy, h)
    return _mixed_density(law, sizes, probs, x)


def _mixed_density(law: ScalarLaw, sizes: np.ndarray, probs: np.ndarray, x: ArrayLike) -> ArrayLike:
    keep = sizes >= 1
    sizes, probs = sizes[keep], probs[keep]

    xa = np.atleast_1d(np.asarray(x, dtype=float))
    log_h = np.asarray(log_h_function(law, xa))[:, None]
    with np.errstate(invalid='ignore'):
        powers = np.where(sizes == 1, 1.0, np.exp((sizes - 1) * log_h))
    values = (powers * (probs * sizes)).sum(axis=1) * np.asarray(law.density(xa))
    return _finish(values if np.ndim(x) else values[0], x)


def error_probs_mixed(
    policy: Policy,
    size_pmf: Mapping[int, float],
    gamma: float,
) -> ErrorProbabilities:
    """
    Error probabilities with a random size N independent of the observations.

    The N = 0 atom adds Pr(N = 0) to alpha when 0 >= gamma and to beta
    otherwise.

    Raises:
        InvalidInputError: pmf mass differs from 1 by more than PMF_MASS_TOL
        UnsupportedLawError: Either Z-law has an atom
    """
    sizes, probs = _pmf_arrays(size_pmf)
    law0 = _continuous_law(policy, Hypothesis.H0)
    law1 = _continuous_law(policy, Hypothesis.H1)

    p_empty = float(probs[sizes == 0].sum())
    n_max = int(max(sizes.max(), 1))
    n_typical = int(max(round(float((sizes * probs).sum())), 1))

    alpha = _integrate_side(
        lambda x: _mixed_density(law0, sizes, probs, x), law0, gamma, True, n_max, n_typical)
    beta = _integrate_side(
        lambda x: _mixed_density(law1, sizes, probs, x), law1, gamma, False, n_max, n_typical)

    if 0.0 >= gamma:
        alpha += p_empty
    else:
        beta += p_empty

    return ErrorProbabilities(
        alpha=float(np.clip(alpha, 0.0, 1.0)),
        beta=float(np.clip(beta, 0.0, 1.0)),
    )


def point_mass(n: int) -> Dict[int, float]:
    """Size pmf of a deterministic network."""
    return {_check_n(n): 1.0}


def mixture_pmf(weights: Iterable[Tuple[int, float]]) -> Dict[int, float]:
    """Combine (size, probability) pairs into a pmf, summing repeated sizes."""
    pmf: Dict[int, float] = {}
    for n, p in weights:
        pmf[int(n)] = pmf.get(int(n), 0.0) + float(p)
    return pmf

"""
Threshold rules and nu-grid sweeps.

For every design parameter nu on a grid the sweep resolves the threshold
gamma_nu from its rule, obtains (alpha, beta) either exactly by quadrature
or by Monte Carlo, and attaches the e^gamma miss bound where it applies.
"""
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterator, Optional, Sequence

import numpy as np
import pandas as pd

from ..analytics.extreme_value import (
    EvtFamily, alpha_tilde_from_alpha, gamma_from_alpha_tilde, gumbel,
    miss_bound, negmin_constants, threshold_asymptotic, threshold_refined,
)
from ..analytics.order_statistics import error_probs_exact, error_probs_mixed
from ..config.settings import DEFAULT_TRIALS
from ..dists.laws import Hypothesis
from ..errors import InvalidParameterError
from ..network.size_models import Deterministic, SizeModel, size_pmf
from ..policy.transmission import Policy
from ..utilities.logger import get_logger
from .monte_carlo_engine import MonteCarloEngine

logger = get_logger(__name__)

SWEEP_COLUMNS = ['nu', 'gamma_nu', 'alpha', 'beta', 'alpha_ci', 'beta_ci', 'bound', 'method']
DIAGNOSTIC_COLUMNS = ['mean_size_h0', 'mean_size_h1', 'censored_fraction']


class ThresholdKind(Enum):
    ZERO = 'zero'
    ASYMPTOTIC = 'asymptotic'
    REFINED = 'refined'


class Method(Enum):
    AUTO = 'auto'
    QUADRATURE = 'quadrature'
    MONTECARLO = 'montecarlo'


@dataclass(frozen=True)
class ThresholdRule:
    """How gamma_nu is chosen; alpha is the target false alarm for non-zero rules."""
    kind: ThresholdKind
    alpha: Optional[float] = None
    family: EvtFamily = gumbel()

    def __post_init__(self):
        if self.kind != ThresholdKind.ZERO and not (self.alpha is not None and 0.0 < self.alpha < 1.0):
            raise InvalidParameterError(f"{self.kind.value} threshold needs alpha in (0, 1), got {self.alpha}")


def zero_rule() -> ThresholdRule:
    return ThresholdRule(ThresholdKind.ZERO)


def asymptotic_rule(alpha: float, family: Optional[EvtFamily] = None) -> ThresholdRule:
    return ThresholdRule(ThresholdKind.ASYMPTOTIC, alpha, family or gumbel())


def refined_rule(alpha: float) -> ThresholdRule:
    return ThresholdRule(ThresholdKind.REFINED, alpha)


def resolve_threshold(rule: ThresholdRule, policy: Policy, model: SizeModel, nu: float) -> float:
    """gamma_nu for the rule at design parameter nu."""
    if rule.kind == ThresholdKind.ZERO:
        return 0.0

    alpha_tilde = alpha_tilde_from_alpha(model.limit_law(Hypothesis.H0), rule.alpha)
    if rule.kind == ThresholdKind.REFINED:
        gamma_nu = threshold_refined(policy.z_law(Hypothesis.H0), nu, alpha_tilde)
    else:
        gamma = gamma_from_alpha_tilde(rule.family, alpha_tilde)
        constants = negmin_constants(policy, max(2, int(round(nu))), rule.family)
        gamma_nu = threshold_asymptotic(constants, gamma)

    logger.debug(f"{rule.kind.value} threshold at nu={nu:g}: alpha_tilde={alpha_tilde:.6g}, gamma_nu={gamma_nu:.6g}")
    return gamma_nu


def exact_supported(policy: Policy, model: SizeModel, clock_delta: float = 0.0) -> bool:
    """Quadrature applies: continuous Z-laws, size independent of the data, no clock offsets."""
    return policy.is_continuous and model.is_data_independent and clock_delta == 0


def resolve_method(method, policy: Policy, model: SizeModel, clock_delta: float = 0.0) -> Method:
    method = Method(method)
    supported = exact_supported(policy, model, clock_delta)
    if method == Method.AUTO:
        return Method.QUADRATURE if supported else Method.MONTECARLO
    if method == Method.QUADRATURE and not supported:
        raise InvalidParameterError(
            f"quadrature needs a continuous policy, a data-independent size model and no clock offsets "
            f"(policy={policy.kind.value}, model={model.name}, clock_delta={clock_delta})"
        )
    return method


def iter_sweep(
    policy: Policy,
    size_model: SizeModel,
    nu_grid: Sequence[float],
    rule: ThresholdRule,
    clock_delta: float = 0.0,
    trials: int = DEFAULT_TRIALS,
    seed: int = 0,
    workers: Optional[int] = None,
    method='montecarlo',
) -> Iterator[Dict]:
    """Yield one result row per grid point, in grid order."""
    grid = [float(nu) for nu in nu_grid]
    if not grid or any(b <= a for a, b in zip(grid, grid[1:])):
        raise InvalidParameterError(f"nu grid must be nonempty and strictly increasing, got {grid}")

    chosen = resolve_method(method, policy, size_model, clock_delta)
    with_bound = policy.has_miss_bound and size_model.is_data_independent

    with MonteCarloEngine(workers) as engine:
        for stream, nu in enumerate(grid):
            model = size_model.with_nu(nu)
            gamma_nu = resolve_threshold(rule, policy, model, model.nu)
            row = {'nu': nu, 'gamma_nu': gamma_nu}

            if chosen == Method.QUADRATURE:
                if isinstance(model, Deterministic):
                    exact = error_probs_exact(policy, model.n, gamma_nu)
                else:
                    exact = error_probs_mixed(policy, size_pmf(model), gamma_nu)
                row.update(alpha=exact.alpha, beta=exact.beta, alpha_ci=np.nan, beta_ci=np.nan)
                row.update(mean_size_h0=model.expected_size(Hypothesis.H0),
                           mean_size_h1=model.expected_size(Hypothesis.H1),
                           censored_fraction=np.nan)
            else:
                estimate = engine.estimate(policy, model, gamma_nu, clock_delta, trials, seed, stream)
                row.update(alpha=estimate.alpha_hat, beta=estimate.beta_hat,
                           alpha_ci=estimate.alpha_halfwidth, beta_ci=estimate.beta_halfwidth)
                row.update(mean_size_h0=estimate.mean_size_h0,
                           mean_size_h1=estimate.mean_size_h1,
                           censored_fraction=estimate.all_censored_fraction)

            row['bound'] = miss_bound(gamma_nu) if with_bound else np.nan
            row['method'] = chosen.value
            logger.info(
                f"nu={nu:g} gamma={gamma_nu:.6g} alpha={row['alpha']:.6g} "
                f"beta={row['beta']:.6g} [{chosen.value}]"
            )
            yield row


def sweep(
    policy: Policy,
    size_model: SizeModel,
    nu_grid: Sequence[float],
    rule: ThresholdRule,
    clock_delta: float = 0.0,
    trials: int = DEFAULT_TRIALS,
    seed: int = 0,
    workers: Optional[int] = None,
    method='montecarlo',
) -> pd.DataFrame:
    """
    Error probabilities across a nu grid.

    Returns:
        DataFrame with SWEEP_COLUMNS followed by DIAGNOSTIC_COLUMNS
    """
    rows = list(iter_sweep(policy, size_model, nu_grid, rule, clock_delta, trials, seed, workers, method))
    return pd.DataFrame(rows, columns=SWEEP_COLUMNS + DIAGNOSTIC_COLUMNS)

"""
Experiment configuration.

Configs are flat KEY=VALUE files (dotenv syntax) naming a built-in scenario
and overriding any of its keys:

    scenario=fig3
    theta0=1
    theta1=1
    nu_grid=100,1000,10000
    trials=200000

Every value is validated before anything runs. Errors carry the offending
key in ConfigError.field.
"""
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Mapping, Optional

import numpy as np
from dotenv import dotenv_values

from .scenarios import CONFIG_KEYS, SCENARIOS, scenario_defaults
from .settings import RESULTS_DIR
from ..analytics.extreme_value import EvtFamily, frechet, gumbel
from ..dists.laws import HypothesisLaws, gauss_pareto_mixture, gaussian, negate
from ..errors import ConfigError, DetectionError
from ..network.size_models import SizeModel, deterministic, energy_stopped, mixed_poisson
from ..policy.transmission import Policy, censoring_policy, gaussian_llr_policy, identity_policy
from ..simulation.sweep import (
    Method, ThresholdKind, ThresholdRule, resolve_method,
)

POLICIES = ('identity', 'llr', 'censoring')
LAWS = ('gaussian', 'gauss_pareto')
SIZE_MODELS = ('deterministic', 'mixed_poisson', 'energy_stopped')
TRUE_VALUES = ('true', '1', 'yes', 'on')
FALSE_VALUES = ('false', '0', 'no', 'off')


def _choice(values: Mapping[str, str], key: str, options) -> str:
    value = values[key].strip().lower()
    if value not in options:
        raise ConfigError(f"'{value}' is not one of {', '.join(options)}", field=key)
    return value


def _float(values: Mapping[str, str], key: str, lo: float = -np.inf, lo_open: bool = False) -> float:
    raw = values[key]
    try:
        value = float(raw)
    except (TypeError, ValueError):
        raise ConfigError(f"expected a number, got '{raw}'", field=key)
    if not np.isfinite(value) or value < lo or (lo_open and value == lo):
        bound = f"> {lo:g}" if lo_open else f">= {lo:g}"
        raise ConfigError(f"must be finite and {bound}, got {raw}", field=key)
    return value


def _int(values: Mapping[str, str], key: str, lo: int) -> int:
    raw = values[key]
    try:
        value = int(raw)
    except (TypeError, ValueError):
        raise ConfigError(f"expected an integer, got '{raw}'", field=key)
    if value < lo:
        raise ConfigError(f"must be >= {lo}, got {value}", field=key)
    return value


def _bool(values: Mapping[str, str], key: str) -> bool:
    raw = values[key].strip().lower()
    if raw in TRUE_VALUES:
        return True
    if raw in FALSE_VALUES:
        return False
    raise ConfigError(f"expected true or false, got '{values[key]}'", field=key)


def _grid(values: Mapping[str, str], key: str) -> List[float]:
    try:
        grid = [float(item) for item in values[key].split(',') if item.strip()]
    except ValueError:
        raise ConfigError(f"expected comma-separated numbers, got '{values[key]}'", field=key)
    if not grid:
        raise ConfigError("grid is empty", field=key)
    if any(nu <= 0 or not np.isfinite(nu) for nu in grid):
        raise ConfigError("grid values must be positive", field=key)
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ConfigError("grid must be strictly increasing", field=key)
    return grid


@dataclass
class ExperimentConfig:
    """A validated experiment."""
    scenario: str
    policy: str
    law: str
    theta0: float
    theta1: float
    sigma: float
    sigma_s: float
    sigma_w: float
    p: float
    theta: float
    b: float
    theta_c: float
    size_model: str
    eq: float
    delta: float
    nu_grid: List[float]
    threshold: str
    alpha: Optional[float]
    family: str
    xi: Optional[float]
    clock_delta: float
    trials: int
    seed: int
    method: str
    companion: bool
    workers: int
    output: Path
    raw: Dict[str, str] = field(default_factory=dict)
    explicit_keys: List[str] = field(default_factory=list)

    @property
    def observation_sigma(self) -> float:
        """Standard deviation of X: sqrt(sigma_s^2 + sigma_w^2) for energy-stopped sizing."""
        if self.size_model == 'energy_stopped':
            return float(np.hypot(self.sigma_s, self.sigma_w))
        return self.sigma

    @property
    def snr(self) -> float:
        return (self.theta0 + self.theta1) / self.observation_sigma

    def x_laws(self) -> HypothesisLaws:
        if self.law == 'gauss_pareto':
            mixture = gauss_pareto_mixture(self.p, self.sigma, self.theta, self.b)
            return HypothesisLaws(h0=negate(mixture), h1=mixture)
        sd = self.observation_sigma
        return HypothesisLaws(h0=gaussian(-self.theta0, sd), h1=gaussian(self.theta1, sd))

    def build_policy(self) -> Policy:
        if self.policy == 'llr':
            return gaussian_llr_policy(self.theta0, self.theta1, self.observation_sigma)
        if self.policy == 'censoring':
            return censoring_policy(self.x_laws(), self.theta_c)
        return identity_policy(self.x_laws())

    def build_size_model(self) -> SizeModel:
        """Size model at the first grid point; sweeps re-index it with with_nu."""
        nu = self.nu_grid[0]
        if self.size_model == 'deterministic':
            return deterministic(int(nu))
        if self.size_model == 'mixed_poisson':
            return mixed_poisson(nu, self.eq, self.delta)
        s_laws = HypothesisLaws(h0=gaussian(-self.theta0, self.sigma_s), h1=gaussian(self.theta1, self.sigma_s))
        return energy_stopped(nu, s_laws, gaussian(0.0, self.sigma_w))

    def build_companion_model(self) -> SizeModel:
        """
        Deterministic size model for the companion series.

        Every grid point is rounded to a network size, which must be at least 1.
        """
        first = deterministic(int(round(self.nu_grid[0])))
        for nu in self.nu_grid[1:]:
            first.with_nu(nu)
        return first

    def build_family(self) -> EvtFamily:
        return frechet(self.xi) if self.family == 'frechet' else gumbel()

    def build_rule(self) -> ThresholdRule:
        kind = ThresholdKind(self.threshold)
        alpha = None if kind == ThresholdKind.ZERO else self.alpha
        return ThresholdRule(kind, alpha, self.build_family())

    def resolved(self) -> Dict[str, str]:
        """Every key with the value in force (config or scenario default)."""
        return dict(self.raw)

    def to_dict(self) -> Dict:
        return {
            'scenario': self.scenario,
            'resolved': self.resolved(),
            'explicit_keys': self.explicit_keys,
            'observation_sigma': self.observation_sigma,
            'output': str(self.output),
        }


def list_scenario_ids() -> List[str]:
    return sorted(SCENARIOS)


def config_from_mapping(values: Mapping[str, Optional[str]], name: Optional[str] = None) -> ExperimentConfig:
    """
    Validate a key -> value mapping against its scenario.

    Without an output key, results go to RESULTS_DIR/<scenario>/<name>, with
    name defaulting to the scenario id.

    Raises:
        ConfigError: Unknown key, unknown scenario, or an invalid value
    """
    values = {k.strip(): ('' if v is None else str(v).strip()) for k, v in values.items()}

    unknown = sorted(set(values) - set(CONFIG_KEYS))
    if unknown:
        raise ConfigError(f"unknown key (valid keys: {', '.join(CONFIG_KEYS)})", field=unknown[0])

    scenario = values.get('scenario', '')
    if not scenario:
        raise ConfigError(f"required; one of {', '.join(list_scenario_ids())}", field='scenario')
    if scenario not in SCENARIOS:
        raise ConfigError(f"unknown scenario '{scenario}'; valid ids: {', '.join(list_scenario_ids())}", field='scenario')

    merged = {**scenario_defaults(scenario), **values}
    policy = _choice(merged, 'policy', POLICIES)
    law = _choice(merged, 'law', LAWS)
    size_model = _choice(merged, 'size_model', SIZE_MODELS)
    threshold = _choice(merged, 'threshold', [k.value for k in ThresholdKind])
    family = _choice(merged, 'family', ('gumbel', 'frechet'))
    method = _choice(merged, 'method', [m.value for m in Method])

    if policy == 'llr' and law != 'gaussian':
        raise ConfigError("the llr policy is defined for the gaussian law only", field='law')
    if size_model == 'energy_stopped' and law != 'gaussian':
        raise ConfigError("energy_stopped sizing needs the gaussian law", field='law')
    if policy == 'censoring' and threshold != 'zero':
        raise ConfigError("censored laws carry an atom; only the zero threshold applies", field='threshold')

    alpha = None
    if threshold != 'zero':
        alpha = _float(merged, 'alpha', 0.0, lo_open=True)
        if alpha >= 1.0:
            raise ConfigError(f"must lie in (0, 1), got {alpha}", field='alpha')
    xi = None
    if family == 'frechet':
        if not merged['xi']:
            raise ConfigError("required when family=frechet", field='xi')
        xi = _float(merged, 'xi', 0.0, lo_open=True)

    nu_grid = _grid(merged, 'nu_grid')
    if size_model == 'deterministic' and any(nu != int(nu) for nu in nu_grid):
        raise ConfigError("deterministic sizes need integer grid values", field='nu_grid')

    output = merged['output']
    config = ExperimentConfig(
        scenario=scenario,
        policy=policy,
        law=law,
        theta0=_float(merged, 'theta0', 0.0),
        theta1=_float(merged, 'theta1', 0.0, lo_open=True),
        sigma=_float(merged, 'sigma', 0.0, lo_open=True),
        sigma_s=_float(merged, 'sigma_s', 0.0, lo_open=True),
        sigma_w=_float(merged, 'sigma_w', 0.0, lo_open=True),
        p=_float(merged, 'p', 0.0, lo_open=True),
        theta=_float(merged, 'theta', 0.0, lo_open=True),
        b=_float(merged, 'b', 0.0, lo_open=True),
        theta_c=_float(merged, 'theta_c', 0.0, lo_open=True),
        size_model=size_model,
        eq=_float(merged, 'eq', 0.0, lo_open=True),
        delta=_float(merged, 'delta', 0.0),
        nu_grid=nu_grid,
        threshold=threshold,
        alpha=alpha,
        family=family,
        xi=xi,
        clock_delta=_float(merged, 'clock_delta', 0.0),
        trials=_int(merged, 'trials', 1),
        seed=_int(merged, 'seed', 0),
        method=method,
        companion=_bool(merged, 'companion'),
        workers=_int(merged, 'workers', 1),
        output=Path(output) if output else RESULTS_DIR / scenario / (name or scenario),
        raw=merged,
        explicit_keys=sorted(values),
    )
    _check_buildable(config)
    return config


def _check_buildable(config: ExperimentConfig):
    """Construct the domain objects once so parameter errors surface as ConfigError."""
    stages = [
        ('policy', config.build_policy),
        ('size_model', config.build_size_model),
        ('threshold', config.build_rule),
    ]
    built = {}
    for key, build in stages:
        try:
            built[key] = build()
        except DetectionError as e:
            raise ConfigError(str(e), field=key) from e

    try:
        resolve_method(config.method, built['policy'], built['size_model'], config.clock_delta)
    except DetectionError as e:
        raise ConfigError(str(e), field='method') from e

    if config.companion:
        if not built['policy'].is_continuous:
            raise ConfigError("the deterministic-N companion series needs a continuous policy", field='companion')
        try:
            config.build_companion_model()
        except DetectionError as e:
            raise ConfigError(f"companion series: {e}", field='companion') from e


def load_config(path) -> ExperimentConfig:
    """
    Read and validate a config file.

    Raises:
        ConfigError: Missing file or invalid contents
    """
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"config file not found: {path}")
    return config_from_mapping(dotenv_values(path), name=path.stem)

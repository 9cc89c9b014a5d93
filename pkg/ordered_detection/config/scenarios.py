"""
Built-in Experiment Scenarios

One entry per study the runner reproduces. Every config names a scenario;
keys the config leaves out take the scenario's value listed here.
"""

# Keys an experiment config may set (anything else is rejected)
CONFIG_KEYS = [
    'scenario',
    # Policy and observation law
    'policy',          # identity | llr | censoring
    'law',             # gaussian | gauss_pareto
    'theta0', 'theta1', 'sigma',
    'sigma_s', 'sigma_w',                  # energy-stopped signal / noise sd
    'p', 'theta', 'b', 'theta_c',          # Gaussian-Pareto mixture and censoring
    # Network size
    'size_model',      # deterministic | mixed_poisson | energy_stopped
    'eq', 'delta', 'nu_grid',
    # Threshold
    'threshold',       # zero | asymptotic | refined
    'alpha', 'family', 'xi',
    # Simulation
    'clock_delta', 'trials', 'seed', 'method', 'companion', 'workers',
    'output',
]

COMMON_DEFAULTS = {
    'law': 'gaussian',
    'theta0': '1', 'theta1': '1', 'sigma': '1',
    'sigma_s': '1', 'sigma_w': '1',
    'p': '0.5', 'theta': '1', 'b': '1', 'theta_c': '1',
    'eq': '1', 'delta': '0',
    'alpha': '0.01', 'family': 'gumbel', 'xi': '',
    'clock_delta': '0',
    'trials': '1000000',
    'seed': '20240',
    'method': 'auto',
    'companion': 'false',
    'workers': '1',
    'output': '',                          # empty: data/results/<scenario>
}

SCENARIOS = {
    'fig2': {
        'title': 'Modulus ordering, Gaussian shift in mean, zero threshold',
        'reproduces': 'alpha_n + beta_n of the nonparametric identity policy, by numerical integration',
        'defaults': {
            'policy': 'identity',
            'size_model': 'deterministic',
            'threshold': 'zero',
            'nu_grid': '1,10,100,1000,10000',
            'method': 'quadrature',
        },
    },
    'fig3': {
        'title': 'Log-likelihood ordering, refined threshold',
        'reproduces': 'alpha_n -> alpha = 1e-2 and beta_n -> 0 with the miss bound e^gamma',
        'defaults': {
            'policy': 'llr',
            'theta0': '0.5', 'theta1': '0.5',
            'size_model': 'deterministic',
            'threshold': 'refined',
            'alpha': '0.01',
            'nu_grid': '100,1000,10000',
            'method': 'montecarlo',
        },
    },
    'fig4': {
        'title': 'Log-likelihood ordering, mixed-Poisson network size',
        'reproduces': 'alpha_n -> 1e-1 with E(Q) = 0.5, plus the deterministic-N theoretical series',
        'defaults': {
            'policy': 'llr',
            'size_model': 'mixed_poisson',
            'eq': '0.5', 'delta': '0.5',
            'threshold': 'refined',
            'alpha': '0.1',
            'nu_grid': '10,100,1000',
            'method': 'montecarlo',
            'companion': 'true',
        },
    },
    'fig5': {
        'title': 'Censoring policy, Gaussian-Pareto mixture',
        'reproduces': 'alpha_n + beta_n under censoring with theta_c = theta = b = 1, p = 0.5, E(Q) = 0.7',
        'defaults': {
            'policy': 'censoring',
            'law': 'gauss_pareto',
            'size_model': 'mixed_poisson',
            'eq': '0.7', 'delta': '0.5',
            'threshold': 'zero',
            'nu_grid': '100,1000,10000',
            'method': 'montecarlo',
        },
    },
    'fig6': {
        'title': 'Log-likelihood ordering, energy-stopped network size',
        'reproduces': 'N / nu -> 1 / (theta_j^2 + sigma_s^2) and alpha_n -> 1e-2 with theta0 = theta1, sigma_s = sigma_w = 1',
        'defaults': {
            'policy': 'llr',
            'size_model': 'energy_stopped',
            'sigma_s': '1', 'sigma_w': '1',
            'threshold': 'refined',
            'alpha': '0.01',
            'nu_grid': '100,1000',
            'method': 'montecarlo',
        },
    },
}


def scenario_defaults(scenario_id: str) -> dict:
    """Full key -> value table for a scenario (common defaults overlaid)."""
    return {**COMMON_DEFAULTS, **SCENARIOS[scenario_id]['defaults'], 'scenario': scenario_id}

# Probability laws and numeric plumbing
from .laws import (
    Hypothesis, HypothesisLaws, ScalarLaw, FrozenLaw, GaussParetoMixture,
    NegatedLaw, CensoredLaw,
    gaussian, pareto, from_scipy, gauss_pareto_mixture, negate, censored,
)
from .numerics import quadrature, find_root

__all__ = [
    'Hypothesis', 'HypothesisLaws', 'ScalarLaw', 'FrozenLaw', 'GaussParetoMixture',
    'NegatedLaw', 'CensoredLaw',
    'gaussian', 'pareto', 'from_scipy', 'gauss_pareto_mixture', 'negate', 'censored',
    'quadrature', 'find_root',
]

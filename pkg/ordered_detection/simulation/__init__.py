# Monte Carlo estimation and nu-grid sweeps
from .monte_carlo_engine import (
    MonteCarloEngine, ErrorEstimate, BlockCounts, BlockTask,
    estimate_errors, wilson_interval, wilson_halfwidth, block_size,
)
from .sweep import (
    ThresholdKind, ThresholdRule, Method, SWEEP_COLUMNS, DIAGNOSTIC_COLUMNS,
    zero_rule, asymptotic_rule, refined_rule, resolve_threshold,
    exact_supported, resolve_method, iter_sweep, sweep,
)

__all__ = [
    'MonteCarloEngine', 'ErrorEstimate', 'BlockCounts', 'BlockTask',
    'estimate_errors', 'wilson_interval', 'wilson_halfwidth', 'block_size',
    'ThresholdKind', 'ThresholdRule', 'Method', 'SWEEP_COLUMNS', 'DIAGNOSTIC_COLUMNS',
    'zero_rule', 'asymptotic_rule', 'refined_rule', 'resolve_threshold',
    'exact_supported', 'resolve_method', 'iter_sweep', 'sweep',
]

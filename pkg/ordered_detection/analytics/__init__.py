# Exact order-statistic laws and extreme-value threshold design
from .order_statistics import (
    ErrorProbabilities, h_function, log_h_function,
    pdf_max, pdf_negmin, pdf_winner, pdf_winner_mixed,
    error_probs_exact, error_probs_mixed, winner_window, point_mass, mixture_pmf,
)
from .extreme_value import (
    FamilyKind, EvtFamily, NormConstants, gumbel, frechet,
    norm_constants, negmin_constants, limiting_cdf, attraction_distance,
    SizeLimitLaw, PointMassLimit, DiscreteLimit, UniformLimit, EmpiricalLimit,
    random_index_limit, TailDominance, tail_ratios, tail_dominance,
    gamma_from_alpha_tilde, alpha_tilde_from_alpha,
    threshold_asymptotic, threshold_refined, miss_bound, approx_miss_bound,
)

__all__ = [
    'ErrorProbabilities', 'h_function', 'log_h_function',
    'pdf_max', 'pdf_negmin', 'pdf_winner', 'pdf_winner_mixed',
    'error_probs_exact', 'error_probs_mixed', 'winner_window', 'point_mass', 'mixture_pmf',
    'FamilyKind', 'EvtFamily', 'NormConstants', 'gumbel', 'frechet',
    'norm_constants', 'negmin_constants', 'limiting_cdf', 'attraction_distance',
    'SizeLimitLaw', 'PointMassLimit', 'DiscreteLimit', 'UniformLimit', 'EmpiricalLimit',
    'random_index_limit', 'TailDominance', 'tail_ratios', 'tail_dominance',
    'gamma_from_alpha_tilde', 'alpha_tilde_from_alpha',
    'threshold_asymptotic', 'threshold_refined', 'miss_bound', 'approx_miss_bound',
]

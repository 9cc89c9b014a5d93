# Transmission policies and the winner decision rule
from .transmission import (
    Policy, PolicyKind, IdentityPolicy, GaussianLlrPolicy, CensoringPolicy,
    identity_policy, gaussian_llr_policy, censoring_policy,
)
from .decision import (
    DetectionOutcome, BatchDecisions, decide, decide_batch, firing_order, firing_times,
)

__all__ = [
    'Policy', 'PolicyKind', 'IdentityPolicy', 'GaussianLlrPolicy', 'CensoringPolicy',
    'identity_policy', 'gaussian_llr_policy', 'censoring_policy',
    'DetectionOutcome', 'BatchDecisions', 'decide', 'decide_batch', 'firing_order', 'firing_times',
]

"""Shared fixtures for the ordered detection tests."""
import sys
from pathlib import Path

import numpy as np
import pytest

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from ordered_detection.dists.laws import HypothesisLaws, gauss_pareto_mixture, gaussian, negate
from ordered_detection.policy.transmission import (
    censoring_policy, gaussian_llr_policy, identity_policy,
)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def gaussian_laws():
    """N(-1, 1) under H0 against N(1, 1) under H1."""
    return HypothesisLaws(h0=gaussian(-1.0, 1.0), h1=gaussian(1.0, 1.0))


@pytest.fixture
def mo_policy(gaussian_laws):
    return identity_policy(gaussian_laws)


@pytest.fixture
def llr_policy():
    return gaussian_llr_policy(1.0, 1.0, 1.0)


@pytest.fixture
def standard_policy():
    """Identity policy on N(0, 1) under both hypotheses."""
    law = gaussian(0.0, 1.0)
    return identity_policy(HypothesisLaws(h0=law, h1=law))


@pytest.fixture
def mixture():
    return gauss_pareto_mixture(p=0.5, sigma=1.0, theta=1.0, b=1.0)


@pytest.fixture
def censoring(mixture):
    return censoring_policy(HypothesisLaws(h0=negate(mixture), h1=mixture), theta_c=1.0)

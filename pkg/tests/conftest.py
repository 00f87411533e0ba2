import numpy as np
import pytest

from wishcut.spectral.curve import EnsembleParams
from wishcut.finite.mops import WeightPair


@pytest.fixture(scope="session")
def ref_params():
    """One-cut ensemble with lambda_1 ~ 0.12518 and lambda_2 ~ 2.48841."""
    return EnsembleParams(a=0.9, c=0.4, beta=0.7)


@pytest.fixture(scope="session")
def large_a_params():
    return EnsembleParams(a=1.5, c=0.5, beta=0.5)


@pytest.fixture(scope="session")
def small_weight():
    return WeightPair(M=16, N=8, N1=3, a=2.0)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)

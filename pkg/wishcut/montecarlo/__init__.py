# MIT License
# Copyright (c) 2026 wishcut developers
# See LICENSE file for full license information.
"""
Wishcut

Monte Carlo sampling of the two-point covariance Wishart ensemble and statistical validation.

File name:wishcut/montecarlo/__init__.py

Author: wishcut developers
Created: 2026-10-19
"""

from .sampler import SampleConfig, EigenSample, sample_spectrum, hermitian_eigen, replicate_seed
from .validation import (ValidationResult, bulk_density_test, edge_fluctuation_test, bulk_spacing_test,
                         marchenko_pastur_test, run_validation, edge_convergence_trend)
__all__ = ["SampleConfig", "EigenSample", "sample_spectrum", "hermitian_eigen", "replicate_seed",
           "ValidationResult", "bulk_density_test", "edge_fluctuation_test", "bulk_spacing_test",
           "marchenko_pastur_test", "run_validation", "edge_convergence_trend"]

# MIT License
# Copyright (c) 2026 wishcut developers
# See LICENSE file for full license information.
"""
Wishcut

Finite-N multiple Laguerre polynomials and the correlation kernel.

File name:wishcut/finite/__init__.py

Author: wishcut developers
Created: 2026-10-19
"""

from .mops import WeightPair, MOPSet, moment, build_mops, make_context
from .kernel import FiniteKernel, kernel_finite, correlation_m, kernel_grid, rescaled_kernel, bulk_deviation, bulk_convergence_trend
__all__ = ["WeightPair", "MOPSet", "moment", "build_mops", "make_context", "FiniteKernel", "kernel_finite",
           "correlation_m", "kernel_grid", "rescaled_kernel", "bulk_deviation", "bulk_convergence_trend"]

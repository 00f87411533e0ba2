# MIT License
# Copyright (c) 2026 wishcut developers
# See LICENSE file for full license information.
"""
Wishcut

Limit laws: Airy function, sine and Airy kernels, Fredholm determinants and the Tracy-Widom distribution.

File name:wishcut/limits/__init__.py

Author: wishcut developers
Created: 2026-10-19
"""

from .airy import airy, airy_asymptotic
from .kernels import KernelOperator, limit_kernel, fredholm_det, gap_probability_sine, sine_spacing_cdf, sine_spacing_density
from .tracywidom import TWTable, tw_cdf, tw_table, tw_moments, hastings_mcleod
__all__ = ["airy", "airy_asymptotic", "KernelOperator", "limit_kernel", "fredholm_det", "gap_probability_sine", "sine_spacing_cdf",
           "sine_spacing_density", "TWTable", "tw_cdf", "tw_table", "tw_moments", "hastings_mcleod"]

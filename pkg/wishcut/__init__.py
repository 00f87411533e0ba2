# MIT License
# Copyright (c) 2026 wishcut developers
# See LICENSE file for full license information.
"""
Wishcut

Spectral curve, edge and bulk limits, finite-N kernel and Monte Carlo
validation for complex Wishart matrices with a two-point covariance spectrum.

File name:wishcut/__init__.py

Author: wishcut developers
Created: 2026-10-19
"""
__version__ = "0.1.0"



from .main import run_from_config

__all__ = ['run_from_config']

# MIT License
# Copyright (c) 2026 wishcut developers
# See LICENSE file for full license information.
"""
Wishcut

Spectral curve of the two-point covariance Wishart ensemble: root solvers, support, density and the zero set of Re(theta_2 - theta_3).

File name:wishcut/spectral/__init__.py

Author: wishcut developers
Created: 2026-10-19
"""

from .polyroots import CubicCoeffs, QuarticCoeffs, RootSet, solve_cubic, solve_quartic, companion_roots, solve_cubic_batch
from .curve import (EnsembleParams, BranchTriple, SupportInfo, DensityProfile, DensityTable, classify_support,
                    require_one_cut, branch_values, sheet_structure, density, density_F, density_profile, cdf_F,
                    edge_constants, support_scan_oracle, stieltjes_mF, discriminant_D3, real_root_count, z_of_m,
                    z_prime, marchenko_pastur_edges, marchenko_pastur_density)
from .hgeometry import (ThetaDiff, LevelSetGeometry, theta_diff, h_value, find_iota, trace_hset, sign_structure, export_polylines,
                        real_axis_bracket, default_window, polyline_frame)
__all__ = ["CubicCoeffs", "QuarticCoeffs", "RootSet", "solve_cubic", "solve_quartic", "companion_roots",
           "solve_cubic_batch", "EnsembleParams", "BranchTriple", "SupportInfo", "DensityProfile", "DensityTable",
           "classify_support", "require_one_cut", "branch_values", "sheet_structure", "density", "density_F",
           "density_profile", "cdf_F", "edge_constants", "support_scan_oracle", "stieltjes_mF", "discriminant_D3",
           "real_root_count", "z_of_m", "z_prime", "marchenko_pastur_edges", "marchenko_pastur_density",
           "ThetaDiff", "LevelSetGeometry", "theta_diff", "h_value", "find_iota", "trace_hset", "sign_structure",
           "export_polylines", "real_axis_bracket", "default_window", "polyline_frame"]

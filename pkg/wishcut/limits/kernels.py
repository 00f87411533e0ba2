# MIT License
# Copyright (c) 2026 wishcut developers
# See LICENSE file for full license information.
"""
Wishcut

Sine and Airy kernels, the Nystrom Fredholm determinant, and sine-kernel gap
and spacing laws.

File name:wishcut/limits/kernels.py

Author: wishcut developers
Created: 2026-10-19
"""
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np
from scipy.linalg import det, eigvalsh

from wishcut.errors import InvalidParameters, NonConvergent
from .airy import airy

DIAGONAL_GAP = 1e-6
DOUBLING_TOL = 1e-6
SPACING_STEP = 0.005
SPACING_MAX = 8.0
SPACING_QUAD = 60


def _sine(u, v):
    return np.sinc(u - v)


def _airy(u, v):
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    ai_u, aip_u = airy(u)
    ai_v, aip_v = airy(v)
    d = u - v
    close = np.abs(d) < DIAGONAL_GAP
    safe = np.where(close, 1.0, d)
    off = (ai_u * aip_v - aip_u * ai_v) / safe
    if not np.any(close):
        return off
    m = 0.5 * (u + v) * np.ones_like(d)
    ai_m, aip_m = airy(m[close])
    out = np.array(off, dtype=float, copy=True) * np.ones_like(d)
    out[close] = aip_m ** 2 - m[close] * ai_m ** 2
    return out


_KINDS = {"sine": _sine, "airy": _airy}


def limit_kernel(kind, u, v):
    """
    K_sine(u, v) = sin(pi(u - v)) / (pi(u - v)) or
    K_Airy(u, v) = (Ai(u)Ai'(v) - Ai'(u)Ai(v)) / (u - v), with their diagonal limits.
    Broadcasts over u and v.
    """
    try:
        fn = _KINDS[kind]
    except KeyError:
        raise InvalidParameters(f"kind must be 'sine' or 'airy', got {kind!r}.") from None
    out = fn(u, v)
    return float(out) if np.ndim(out) == 0 else out


@dataclass(frozen=True)
class KernelOperator:
    """Integral operator with a symmetric kernel on [lo, hi]."""
    evaluator: Callable
    lo: float
    hi: float
    smooth: str = "analytic"

    def __post_init__(self):
        if not self.hi >= self.lo:
            raise InvalidParameters(f"Kernel interval must satisfy lo <= hi, got [{self.lo}, {self.hi}].")

    @classmethod
    def limit(cls, kind, lo, hi):
        if kind not in _KINDS:
            raise InvalidParameters(f"kind must be 'sine' or 'airy', got {kind!r}.")
        return cls(_KINDS[kind], float(lo), float(hi))

    def nystrom(self, n_quad):
        """Nodes and the symmetrized matrix w^1/2 K w^1/2 on n_quad Gauss-Legendre nodes."""
        t, w = np.polynomial.legendre.leggauss(n_quad)
        half = 0.5 * (self.hi - self.lo)
        x = self.lo + half * (t + 1.0)
        sw = np.sqrt(half * w)
        K = np.asarray(self.evaluator(x[:, None], x[None, :]), dtype=float)
        return x, sw[:, None] * K * sw[None, :]

    def eigenvalues(self, n_quad):
        _, A = self.nystrom(n_quad)
        return eigvalsh(0.5 * (A + A.T))


def _det_at(K, n):
    _, A = K.nystrom(n)
    return float(det(np.eye(n) - A))


def fredholm_det(K, n_quad=40):
    """
    det(I - K) by Nystrom discretization.

    The determinant is evaluated at n_quad and 2 n_quad nodes; the refined value
    is returned.
    """
    if n_quad < 20:
        raise InvalidParameters(f"n_quad must be at least 20, got {n_quad}.")
    if K.hi == K.lo:
        return 1.0
    coarse = _det_at(K, n_quad)
    fine = _det_at(K, 2 * n_quad)
    if abs(fine - coarse) > DOUBLING_TOL:
        raise NonConvergent(
            f"Fredholm determinant changed by {abs(fine - coarse):.3g} when doubling n_quad={n_quad}; "
            "increase n_quad."
        )
    return fine


def gap_probability_sine(s, n_quad=40):
    """Probability that a sine process has no point in an interval of length s."""
    s = float(s)
    if not 0.0 <= s <= 10.0:
        raise InvalidParameters(f"s must lie in [0, 10], got {s}.")
    if s == 0.0:
        return 1.0
    return fredholm_det(KernelOperator.limit("sine", 0.0, s), n_quad)


@lru_cache(maxsize=1)
def _spacing_table():
    s = np.arange(0.0, SPACING_MAX + 0.5 * SPACING_STEP, SPACING_STEP)
    gap = np.empty_like(s)
    gap[0] = 1.0
    for k in range(1, len(s)):
        gap[k] = _det_at(KernelOperator.limit("sine", 0.0, s[k]), SPACING_QUAD)
    d1 = np.gradient(gap, s, edge_order=2)
    d2 = np.gradient(d1, s, edge_order=2)
    cdf = np.clip(1.0 + d1, 0.0, 1.0)
    cdf[0] = 0.0
    return s, cdf, d2


def sine_spacing_cdf(s):
    """Nearest-neighbour spacing CDF of the sine process, 1 + E'(s) with E the gap probability."""
    grid, cdf, _ = _spacing_table()
    out = np.interp(np.asarray(s, dtype=float), grid, cdf, left=0.0, right=1.0)
    return float(out) if np.ndim(out) == 0 else out


def sine_spacing_density(s):
    grid, _, dens = _spacing_table()
    out = np.interp(np.asarray(s, dtype=float), grid, dens, left=0.0, right=0.0)
    return float(out) if np.ndim(out) == 0 else out

# MIT License
# Copyright (c) 2026 wishcut developers
# See LICENSE file for full license information.
"""
Wishcut

Finite-N correlation kernel of the two-point covariance Wishart ensemble in
terms of multiple Laguerre polynomials, m-point correlations and the bulk
rescaling towards the sine kernel.

File name:wishcut/finite/kernel.py

Author: wishcut developers
Created: 2026-10-19
"""
from functools import lru_cache

import numpy as np

from wishcut.errors import InvalidParameters
from wishcut.spectral.curve import EnsembleParams, require_one_cut, density
from wishcut.limits.kernels import limit_kernel
from .mops import DEFAULT_PREC, WeightPair, MomentTable, make_context, build_mops, poly_eval

BULK_SIZES = ((16, 8, 4), (24, 12, 6), (32, 16, 8), (40, 20, 10))


class FiniteKernel:
    """
    K_{M,N}(x, y) = (xy)^((M-N)/2) [L_{N0,N1}(x) Q_{N0,N1}(y)
                    - h1 ratio L_{N0-1,N1}(x) Q_{N0+1,N1}(y)
                    - h2 ratio L_{N0,N1-1}(x) Q_{N0,N1+1}(y)] / (x - y)

    Terms whose lowered index would be negative are absent. The diagonal is
    the x-derivative of the bracket.
    """

    def __init__(self, w, prec=DEFAULT_PREC):
        self.w = w
        self.ctx = make_context(prec)
        mu = MomentTable(w, self.ctx)
        N0, N1 = w.N0, w.N1
        base = build_mops(w, N0, N1, ctx=self.ctx, moments=mu)
        self.terms = [(self.ctx.mpf(1), base.L_coeffs, base)]
        if N0 > 0:
            lower = build_mops(w, N0 - 1, N1, ctx=self.ctx, moments=mu)
            upper = build_mops(w, N0 + 1, N1, ctx=self.ctx, moments=mu)
            self.terms.append((-base.h1 / lower.h1, lower.L_coeffs, upper))
        if N1 > 0:
            lower = build_mops(w, N0, N1 - 1, ctx=self.ctx, moments=mu)
            upper = build_mops(w, N0, N1 + 1, ctx=self.ctx, moments=mu)
            self.terms.append((-base.h2 / lower.h2, lower.L_coeffs, upper))

    def _q(self, mops, y):
        ctx = self.ctx
        M = ctx.mpf(self.w.M)
        return (poly_eval(ctx, mops.A1_coeffs, y) * ctx.exp(-M * y)
                + poly_eval(ctx, mops.Aa_coeffs, y) * ctx.exp(-M * y / ctx.mpf(self.w.a)))

    def value(self, x, y):
        """Kernel value in extended precision."""
        ctx = self.ctx
        x = ctx.mpf(x)
        y = ctx.mpf(y)
        if x <= 0 or y <= 0:
            raise InvalidParameters(f"Kernel arguments must be positive, got ({x}, {y}).")
        pref = (x * y) ** (ctx.mpf(self.w.alpha) / 2)
        if x == y:
            bracket = ctx.fsum(c * poly_eval(ctx, L, x, derivative=True)[1] * self._q(q, x)
                               for c, L, q in self.terms)
            return pref * bracket
        bracket = ctx.fsum(c * poly_eval(ctx, L, x) * self._q(q, y) for c, L, q in self.terms)
        return pref * bracket / (x - y)

    def __call__(self, x, y):
        return float(self.value(x, y))

    def matrix(self, points):
        return self.ctx.matrix([[self.value(u, v) for v in points] for u in points])


@lru_cache(maxsize=16)
def finite_kernel(w, prec=DEFAULT_PREC):
    return FiniteKernel(w, prec)


def kernel_finite(w, x, y, prec=DEFAULT_PREC):
    """K_{M,N}(x, y) for the weight pair w."""
    return finite_kernel(w, prec)(x, y)


def correlation_m(w, points, prec=DEFAULT_PREC):
    """m-point correlation det(K(y_j, y_k)) for 1 <= m <= 6."""
    points = [float(y) for y in points]
    if not 1 <= len(points) <= 6:
        raise InvalidParameters(f"correlation_m takes between 1 and 6 points, got {len(points)}.")
    K = finite_kernel(w, prec)
    return float(K.ctx.det(K.matrix(points)))


def kernel_grid(w, xs, ys, prec=DEFAULT_PREC):
    K = finite_kernel(w, prec)
    return np.array([[K(x, y) for y in ys] for x in xs])


def bulk_point(w):
    """Midpoint of the finite-size support and M rho there."""
    p = EnsembleParams.from_sizes(w.M, w.N, w.N1, w.a)
    info = require_one_cut(p)
    x0 = 0.5 * (info.lambda1 + info.lambda2)
    return x0, w.M * density(p, x0)


def rescaled_kernel(w, u, v, x0=None, prec=DEFAULT_PREC):
    """K(x0 + u/(M rho), x0 + v/(M rho)) / (M rho) with rho the finite-size density at x0."""
    if x0 is None:
        mid, scale = bulk_point(w)
    else:
        p = EnsembleParams.from_sizes(w.M, w.N, w.N1, w.a)
        mid, scale = float(x0), w.M * density(p, float(x0))
    return kernel_finite(w, mid + u / scale, mid + v / scale, prec) / scale


def bulk_deviation(w, n_grid=9, prec=DEFAULT_PREC):
    """
    Sup over |u|, |v| <= 1 of the distance to the sine kernel, measured on
    the combinations K(u,u) and K(u,v)K(v,u), which do not depend on the
    choice of conjugation of a non-symmetric kernel.
    """
    grid = np.linspace(-1.0, 1.0, n_grid)
    vals = np.array([[rescaled_kernel(w, u, v, prec=prec) for v in grid] for u in grid])
    sine = limit_kernel("sine", grid[:, None], grid[None, :])
    diag = np.max(np.abs(np.diag(vals) - 1.0))
    pair = np.max(np.abs(vals * vals.T - sine * sine.T))
    return float(max(diag, pair))


def bulk_convergence_trend(a=0.9, sizes=BULK_SIZES, n_grid=9, prec=DEFAULT_PREC, verbose=False):
    """Bulk deviations along increasing sizes at fixed c = N/M and beta = N1/N."""
    out = []
    for M, N, N1 in sizes:
        err = bulk_deviation(WeightPair(M, N, N1, a), n_grid, prec)
        if verbose:
            print(f"[wishcut] bulk deviation at (M, N, N1) = ({M}, {N}, {N1}): {err:.4g}")
        out.append(err)
    return out

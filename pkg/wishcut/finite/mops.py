# MIT License
# Copyright (c) 2026 wishcut developers
# See LICENSE file for full license information.
"""
Wishcut

Multiple Laguerre polynomials of types I and II for the weight pair
x^(M-N) e^(-Mx), x^(M-N) e^(-Mx/a), built from closed-form moments in
extended precision.

File name:wishcut/finite/mops.py

Author: wishcut developers
Created: 2026-10-19
"""
from dataclasses import dataclass
from math import factorial

import mpmath

from wishcut.errors import InvalidParameters, SingularMomentMatrix, PrecisionExhausted

DEFAULT_PREC = 256
MAX_DEGREE = 48


@dataclass(frozen=True)
class WeightPair:
    M: int
    N: int
    N1: int
    a: float

    def __post_init__(self):
        for key in ("M", "N", "N1"):
            if int(getattr(self, key)) != getattr(self, key):
                raise InvalidParameters(f"{key} must be an integer, got {getattr(self, key)}.")
        if self.N < 1 or self.M < self.N:
            raise InvalidParameters(f"Require 1 <= N <= M, got M={self.M}, N={self.N}.")
        if not 0 <= self.N1 <= self.N:
            raise InvalidParameters(f"Require 0 <= N1 <= N, got N1={self.N1}.")
        if not self.a > 0 or self.a == 1:
            raise InvalidParameters(f"a must be positive and different from 1, got {self.a}.")

    @property
    def alpha(self):
        return self.M - self.N

    @property
    def N0(self):
        return self.N - self.N1


@dataclass(frozen=True)
class MOPSet:
    """
    Monic type II polynomial L_{n1,n2} and the type I pair (A1, Aa) with
    coefficients in ascending order, plus the normalization constants.
    """
    n1: int
    n2: int
    L_coeffs: tuple
    A1_coeffs: tuple
    Aa_coeffs: tuple
    h1: object
    h2: object
    residual: float


def make_context(prec=DEFAULT_PREC):
    """Private mpmath context so precision never leaks between callers or workers."""
    ctx = mpmath.MPContext()
    ctx.prec = int(prec)
    return ctx


def _scale_value(w, scale):
    if scale == "a" or (not isinstance(scale, str) and scale == w.a):
        return w.a
    if scale == 1 or scale == "1":
        return 1
    raise InvalidParameters(f"scale must be 1 or 'a', got {scale!r}.")


def moment(w, scale, k, prec=DEFAULT_PREC, ctx=None):
    """
    int_0^inf x^(k+M-N) e^(-M x / scale) dx = scale^(k+M-N+1) (k+M-N)! / M^(k+M-N+1).
    """
    ctx = ctx or make_context(prec)
    s = _scale_value(w, scale)
    order = int(k) + w.alpha
    if order < 0:
        raise InvalidParameters(f"k + M - N must be nonnegative, got {order}.")
    if order * max(1, order.bit_length()) > 64 * ctx.prec:
        raise PrecisionExhausted(f"Moment of order {order} exceeds the {ctx.prec}-bit budget.")
    return ctx.mpf(s) ** (order + 1) * ctx.mpf(factorial(order)) / ctx.mpf(w.M) ** (order + 1)


class MomentTable:
    """Moments mu^(1)_k and mu^(a)_k cached per context."""

    def __init__(self, w, ctx):
        self.w = w
        self.ctx = ctx
        self._cache = {}

    def __call__(self, scale, k):
        key = (scale, k)
        if key not in self._cache:
            self._cache[key] = moment(self.w, scale, k, ctx=self.ctx)
        return self._cache[key]


def _solve(ctx, A, b):
    try:
        return ctx.lu_solve(A, b)
    except ZeroDivisionError:
        raise SingularMomentMatrix("Moment matrix is numerically singular; raise the precision and retry.") from None


def build_mops(w, n1, n2, prec=DEFAULT_PREC, ctx=None, moments=None):
    """
    Solve the moment systems for L_{n1,n2}, A1_{n1,n2}, Aa_{n1,n2} and h1, h2.

    The type I pair is normalized by int x^(n1+n2-1) Q(x) x^(M-N) dx = 1.
    """
    n1, n2 = int(n1), int(n2)
    if n1 < 0 or n2 < 0:
        raise InvalidParameters(f"n1, n2 must be nonnegative, got ({n1}, {n2}).")
    n = n1 + n2
    if n > MAX_DEGREE:
        raise InvalidParameters(f"n1 + n2 must not exceed {MAX_DEGREE}, got {n}.")
    ctx = ctx or make_context(prec)
    mu = moments or MomentTable(w, ctx)
    rows = [("1", j) for j in range(n1)] + [("a", j) for j in range(n2)]

    if n:
        A = ctx.matrix(n, n)
        b = ctx.matrix(n, 1)
        for r, (s, j) in enumerate(rows):
            for i in range(n):
                A[r, i] = mu(s, i + j)
            b[r] = -mu(s, n + j)
        low = _solve(ctx, A, b)
        L = [low[i] for i in range(n)] + [ctx.mpf(1)]
    else:
        L = [ctx.mpf(1)]

    if n:
        B = ctx.matrix(n, n)
        rhs = ctx.matrix(n, 1)
        cols = [("1", k) for k in range(n1)] + [("a", k) for k in range(n2)]
        for i in range(n):
            for c, (s, k) in enumerate(cols):
                B[i, c] = mu(s, i + k)
        rhs[n - 1] = 1
        sol = _solve(ctx, B, rhs)
        A1 = [sol[k] for k in range(n1)]
        Aa = [sol[n1 + k] for k in range(n2)]
    else:
        A1, Aa = [], []

    h1 = ctx.fsum(L[i] * mu("1", n1 + i) for i in range(n + 1))
    h2 = ctx.fsum(L[i] * mu("a", n2 + i) for i in range(n + 1))

    residual = 0.0
    for s, j in rows:
        terms = [L[i] * mu(s, i + j) for i in range(n + 1)]
        residual = max(residual, float(abs(ctx.fsum(terms)) / ctx.fsum(abs(t) for t in terms)))
    for i in range(n):
        terms = [A1[k] * mu("1", i + k) for k in range(n1)] + [Aa[k] * mu("a", i + k) for k in range(n2)]
        scale = ctx.fsum(abs(t) for t in terms)
        if scale:
            target = 1 if i == n - 1 else 0
            residual = max(residual, float(abs(ctx.fsum(terms) - target) / scale))
    bound = 10.0 ** (-ctx.prec / 5.0)
    if residual > bound or h1 == 0 or h2 == 0:
        raise SingularMomentMatrix(
            f"MOP system ({n1}, {n2}) has residual {residual:.3g} (bound {bound:.3g}); raise the precision."
        )
    return MOPSet(n1=n1, n2=n2, L_coeffs=tuple(L), A1_coeffs=tuple(A1), Aa_coeffs=tuple(Aa),
                  h1=h1, h2=h2, residual=residual)


def poly_eval(ctx, coeffs, x, derivative=False):
    """Ascending coefficients; returns value or (value, derivative)."""
    if not coeffs:
        return (ctx.zero, ctx.zero) if derivative else ctx.zero
    return ctx.polyval(list(reversed(coeffs)), x, derivative=derivative)

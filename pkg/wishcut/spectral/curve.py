# MIT License
# Copyright (c) 2026 wishcut developers
# See LICENSE file for full license information.
"""
Wishcut

Spectral curve of a complex Wishart ensemble whose population covariance has
two distinct eigenvalues 1 and a: labeled branches, support classification,
limiting density, edge constants and an independent support scan.

The curve is

    z a xi^3 + (A2 z + B2) xi^2 + (z + B1) xi + 1 = 0

with A2 = 1 + a, B2 = a (1 - c), B1 = 1 - c (1 - beta) + a (1 - c beta), and
xi1 is the Stieltjes transform of the companion law (mass 1 - c at 0).

File name:wishcut/spectral/curve.py

Author: wishcut developers
Created: 2026-10-19
"""
from dataclasses import dataclass, field
from functools import lru_cache
import itertools
import sys

import numpy as np

from wishcut.errors import (
    InvalidParameters,
    CriticalParameters,
    OneCutRequired,
    BranchCollision,
    ExtrapolationDiverged,
)
from .polyroots import QuarticCoeffs, solve_quartic, solve_cubic_batch, companion_roots
from .utils import track_path, track_points

SQRT3 = np.sqrt(3.0)
CLAMP_RTOL = 1e-13
BRANCH_POINT_TOL = 1e-10
NEAR_DOUBLE_RTOL = 1e-6


@dataclass(frozen=True)
class EnsembleParams:
    a: float
    c: float
    beta: float
    M: int = None
    N: int = None
    N1: int = None

    def __post_init__(self):
        if not 0.0 < self.c < 1.0:
            raise InvalidParameters(f"c must lie in (0,1), got {self.c}.")
        if not 0.0 < self.beta < 1.0:
            raise InvalidParameters(f"beta must lie in (0,1), got {self.beta}.")
        if not self.a > 0.0:
            raise InvalidParameters(f"a must be positive, got {self.a}.")
        if self.a == 1.0:
            raise InvalidParameters("a = 1 is excluded; the covariance must have two distinct eigenvalues.")
        sizes = (self.M, self.N, self.N1)
        if any(s is not None for s in sizes):
            if any(s is None for s in sizes):
                raise InvalidParameters("M, N and N1 must be given together.")
            if self.M < self.N:
                raise InvalidParameters(f"M must be >= N, got M={self.M}, N={self.N}.")
            if abs(self.c * self.M - self.N) > 1.0:
                raise InvalidParameters("|c M - N| must be at most 1.")
            if abs(self.beta * self.N - self.N1) > 1.0:
                raise InvalidParameters("|beta N - N1| must be at most 1.")

    @classmethod
    def from_sizes(cls, M, N, N1, a):
        """Finite-size triple c_N = N/M, beta_N = N1/N."""
        return cls(a=float(a), c=N / M, beta=N1 / N, M=int(M), N=int(N), N1=int(N1))

    @property
    def A2(self):
        return 1.0 + self.a

    @property
    def B2(self):
        return self.a * (1.0 - self.c)

    @property
    def B1(self):
        return 1.0 - self.c * (1.0 - self.beta) + self.a * (1.0 - self.c * self.beta)


@dataclass(frozen=True)
class BranchTriple:
    z: complex
    xi1: complex
    xi2: complex
    xi3: complex

    def as_array(self):
        return np.array([self.xi1, self.xi2, self.xi3], dtype=complex)

    def conjugate(self):
        return BranchTriple(np.conj(self.z), np.conj(self.xi1), np.conj(self.xi2), np.conj(self.xi3))


@dataclass(frozen=True)
class SupportInfo:
    gamma: tuple
    lam: tuple
    delta: float
    cuts: str

    @property
    def lambda1(self):
        return self.lam[0].real

    @property
    def lambda2(self):
        return self.lam[1].real

    @property
    def lambda3(self):
        return self.lam[2]

    @property
    def lambda4(self):
        return self.lam[3]

    def as_dict(self):
        out = {
            "cuts": self.cuts,
            "delta": self.delta,
            "gamma": [[g.real, g.imag] for g in self.gamma],
            "lambda": [[l.real, l.imag] for l in self.lam],
        }
        if self.cuts == "one-cut":
            out["lambda1"] = self.lambda1
            out["lambda2"] = self.lambda2
        return out


@dataclass(frozen=True)
class DensityProfile:
    grid: np.ndarray = field(repr=False)
    rho: np.ndarray = field(repr=False)
    edge_constants: tuple


# ---- curve algebra -------------------------------------------------------

def cubic_coefficients(p, z):
    """Coefficients of the curve as a cubic in xi (descending)."""
    z = np.asarray(z)
    return p.a * z, p.A2 * z + p.B2, z + p.B1, np.ones_like(z)


def curve_residual(p, z, xi):
    """Scaled residual |P(z, xi)| / ((1+|z|)(1+|xi|)^3)."""
    c3, c2, c1, c0 = cubic_coefficients(p, z)
    val = ((c3 * xi + c2) * xi + c1) * xi + c0
    return np.abs(val) / ((1.0 + np.abs(z)) * (1.0 + np.abs(xi)) ** 3)


def quartic_coefficients(p):
    """Numerator of z'(m) after clearing denominators; its roots are gamma_1..gamma_4."""
    a, c, b = p.a, p.c, p.beta
    return QuarticCoeffs(
        a * a * (1.0 - c),
        2.0 * (a * a * (1.0 - c * b) + a * (1.0 - c * (1.0 - b))),
        1.0 - c * (1.0 - b) + a * a * (1.0 - c * b) + 4.0 * a,
        2.0 * (1.0 + a),
        1.0,
    )


def z_of_m(p, m):
    """Inverse of the Stieltjes transform: z = -1/m + c(1-beta)/(1+m) + c a beta/(1+a m)."""
    m = np.asarray(m)
    return -1.0 / m + p.c * (1.0 - p.beta) / (1.0 + m) + p.c * p.a * p.beta / (1.0 + p.a * m)


def z_prime(p, m):
    m = np.asarray(m)
    return (1.0 / m**2 - p.c * (1.0 - p.beta) / (1.0 + m) ** 2
            - p.c * p.a**2 * p.beta / (1.0 + p.a * m) ** 2)


def discriminant_D3(p):
    """
    Coefficients (descending) of D3(z), the discriminant of the curve in xi.

    Its zeros are lambda_1..lambda_4; D3 > 0 on the real axis outside
    [lambda_1, lambda_2] and D3 < 0 inside.
    """
    a, A2, B1, B2 = p.a, p.A2, p.B1, p.B2
    return np.array([
        (1.0 - a) ** 2,
        2 * A2**2 * B1 + 2 * A2 * B2 - 4 * A2**3 - 12 * a * B1 + 18 * a * A2,
        (B2**2 + A2**2 * B1**2 + 4 * A2 * B1 * B2 - 12 * A2**2 * B2 - 12 * a * B1**2
         + 18 * a * B2 + 18 * a * A2 * B1 - 27 * a**2),
        2 * B1 * B2**2 + 2 * A2 * B2 * B1**2 - 12 * A2 * B2**2 - 4 * B1**3 * a + 18 * a * B1 * B2,
        B1**2 * B2**2 - 4 * B2**3,
    ])


def real_root_count(p, z):
    """Number of real xi at real z: 3 where D3(z) > 0, 1 where D3(z) < 0."""
    return 3 if np.polyval(discriminant_D3(p), z) > 0 else 1


def r_of_z(p, z):
    """Minus the constant term of the depressed monic cubic at z."""
    a, A2, B1, B2 = p.a, p.A2, p.B1, p.B2
    z = np.asarray(z, dtype=float)
    return (
        -2.0 * B2**3 / a**3 * z**-3.0
        + (9.0 * B1 * B2 / a**2 - 6.0 * A2 * B2**2 / a**3) * z**-2.0
        + (9.0 * B2 / a**2 + 9.0 * B1 * A2 / a**2 - 27.0 / a - 6.0 * A2**2 * B2 / a**3) * z**-1.0
        + (9.0 * A2 / a**2 - 2.0 * A2**3 / a**3)
    ) / 27.0


def _roots_at(p):
    def roots(z):
        c3, c2, c1, c0 = cubic_coefficients(p, complex(z))
        return solve_cubic_batch(c3, c2, c1, c0)
    return roots


# ---- support classification ---------------------------------------------

def _check_resolved(p, rs):
    """
    Refuse root sets that double precision cannot separate: a pair of gammas
    closer than NEAR_DOUBLE_RTOL, or a real/complex split that the companion
    eigenvalues do not reproduce.
    """
    roots = np.array(rs.roots)
    for i, j in itertools.combinations(range(len(roots)), 2):
        if abs(roots[i] - roots[j]) <= NEAR_DOUBLE_RTOL * max(1.0, abs(roots[i])):
            raise CriticalParameters(
                f"Quartic has a near-double root at gamma ~ {complex(roots[i]):.8g} for a={p.a}, c={p.c}, "
                f"beta={p.beta}; the support endpoints are not resolved in double precision."
            )
    oracle = companion_roots(quartic_coefficients(p).as_array())
    if len(oracle.real_roots()) != len(rs.real_roots()):
        raise CriticalParameters(
            f"Closed-form and companion roots disagree on the real root count "
            f"({len(rs.real_roots())} vs {len(oracle.real_roots())}) for a={p.a}, c={p.c}, beta={p.beta}."
        )


@lru_cache(maxsize=256)
def classify_support(p):
    """
    Solve the quartic for gamma_1..gamma_4, map them to lambda_k = z(gamma_k)
    and tag the support as one-cut (two real gammas) or two-cut (four).
    """
    rs = solve_quartic(quartic_coefficients(p))
    if rs.has_multiple_root:
        raise CriticalParameters(
            f"Quartic has a multiple root at a={p.a}, c={p.c}, beta={p.beta}; "
            "the support is at a transition and the density is not computed."
        )
    _check_resolved(p, rs)
    real = rs.real_roots()
    cplx = rs.complex_roots()

    if len(real) == 4:
        gamma = tuple(complex(g) for g in real)
        lam = tuple(complex(z_of_m(p, g.real)) for g in gamma)
        return SupportInfo(gamma=gamma, lam=lam, delta=rs.discriminant, cuts="two-cut")
    if len(real) != 2:
        raise CriticalParameters(f"Unexpected real root count {len(real)} for the support quartic.")

    g3, g4 = cplx
    if complex(z_of_m(p, g3)).imag < 0:
        g3, g4 = g4, g3
    gamma = (complex(real[0]), complex(real[1]), g3, g4)
    lam = tuple(complex(z_of_m(p, g)) for g in gamma)
    lam = (complex(lam[0].real, 0.0), complex(lam[1].real, 0.0), lam[2], np.conj(lam[2]))
    if not lam[0].real < lam[1].real:
        raise CriticalParameters("Support endpoints are not ordered; parameters are near critical.")
    return SupportInfo(gamma=gamma, lam=lam, delta=rs.discriminant, cuts="one-cut")


def require_one_cut(p):
    info = classify_support(p)
    if info.cuts != "one-cut":
        raise OneCutRequired(
            f"Parameters a={p.a}, c={p.c}, beta={p.beta} give a {info.cuts} support (delta={info.delta:.3g})."
        )
    return info


# ---- labeled branches ----------------------------------------------------

def _singular_points(info):
    return tuple(info.lam) + (0j,)


@lru_cache(maxsize=256)
def _right_anchor(p):
    """Anchor on the real axis right of the support, labels ordered per the z -> +inf asymptotics."""
    info = require_one_cut(p)
    za = info.lambda2 + 10.0 * (1.0 + abs(info.lambda3))
    roots = np.sort(np.real(_roots_at(p)(za)))
    if p.a < 1.0:
        xi3, xi2, xi1 = roots
    else:
        xi2, xi3, xi1 = roots
    return za, np.array([xi1, xi2, xi3], dtype=complex)


@lru_cache(maxsize=256)
def _left_anchor(p):
    """Anchor at negative z, labels ordered per the z -> -inf asymptotics."""
    info = require_one_cut(p)
    zl = info.lambda1 - 10.0 * (1.0 + abs(info.lambda3))
    roots = np.sort(np.real(_roots_at(p)(zl)))
    # xi1 ~ -1/z > 0 is the largest; xi2 -> -1 and xi3 -> -1/a below it
    if p.a < 1.0:
        xi3, xi2, xi1 = roots
    else:
        xi2, xi3, xi1 = roots
    return zl, np.array([xi1, xi2, xi3], dtype=complex)


def branch_path(p, z):
    """
    Waypoints from the right anchor to z (Im z >= 0).

    Points at or just above the real axis left of lambda_2 are reached by
    climbing to height Im(lambda_3)/2 first, which fixes the +i0 boundary
    values on the support and left of it.
    """
    info = require_one_cut(p)
    za, _ = _right_anchor(p)
    delta = 0.5 * info.lambda3.imag
    z = complex(z)
    if z.imag >= delta or z.real > info.lambda2:
        return [complex(za), z]
    return [complex(za), complex(z.real, delta), z]


def branch_values(p, z):
    """
    The three labeled solutions xi_1, xi_2, xi_3 of the curve at z.

    Labels come from continuation along branch_path; the lower half plane is
    the mirror image, and real z gets the boundary value from above.
    """
    z = complex(z)
    if z == 0:
        raise InvalidParameters("branch_values is undefined at z = 0.")
    info = require_one_cut(p)
    for lam in info.lam:
        if abs(z - lam) <= BRANCH_POINT_TOL * (1.0 + abs(lam)):
            raise BranchCollision(f"z = {z} coincides with the branch point {lam}.")
    if z.imag < 0:
        return branch_values(p, z.conjugate()).conjugate()

    _, xi0 = _right_anchor(p)
    xi = track_path(_roots_at(p), branch_path(p, z), xi0, _singular_points(info))
    return BranchTriple(z, *xi)


def branch_values_left(p, z):
    """
    Labels continued from z -> -inf instead of +inf, for real z < lambda_1.

    The path steps over z = 0 through the upper half plane, well below
    lambda_3, so xi_2 and xi_3 keep the ordering they have at -inf.
    """
    info = require_one_cut(p)
    z = complex(z)
    if not (z.imag == 0.0 and z.real < info.lambda1 and z != 0):
        raise InvalidParameters("branch_values_left needs real z < lambda_1, z != 0.")
    zl, xi0 = _left_anchor(p)
    if z.real < 0:
        path = [complex(zl), z]
    else:
        eta = 0.5 * min(info.lambda1, info.lambda3.imag)
        path = [complex(zl), complex(0.0, eta), z]
    xi = track_path(_roots_at(p), path, xi0, _singular_points(info))
    return BranchTriple(z, *xi)


def track_boundary_values(p, xs):
    """+i0 boundary values along an increasing or decreasing run of real points."""
    info = require_one_cut(p)
    xs = [complex(x) for x in xs]
    start = branch_values(p, xs[0]).as_array()
    return track_points(_roots_at(p), xs, start, _singular_points(info))


def sheet_structure(p, offset=1e-4):
    """
    Which branch labels merge at each branch point.

    lambda_2 is approached from the right, lambda_1 from the left with the
    -inf labeling, lambda_3 from just below it.
    """
    info = require_one_cut(p)

    def closest_pair(xi):
        best = min(itertools.combinations(range(3), 2), key=lambda ij: abs(xi[ij[0]] - xi[ij[1]]))
        return frozenset(k + 1 for k in best)

    at2 = closest_pair(branch_values(p, info.lambda2 + offset).as_array())
    at1 = closest_pair(branch_values_left(p, info.lambda1 - offset).as_array())
    at3 = closest_pair(branch_values(p, info.lambda3 - 1j * offset).as_array())
    return {"lambda1": at1, "lambda2": at2, "lambda3": at3, "lambda4": at3}


# ---- density --------------------------------------------------------------

def _density_array(p, info, z):
    z = np.asarray(z, dtype=float)
    out = np.zeros_like(z)
    lam1, lam2 = info.lambda1, info.lambda2
    inside = (z >= lam1) & (z <= lam2) & (z != 0.0)
    if not np.any(inside):
        return out
    zi = z[inside]
    r = r_of_z(p, zi)
    inner = -np.polyval(discriminant_D3(p), zi) / (27.0 * p.a**4 * zi**4)
    scale = np.maximum(1.0, r * r)
    inner = np.where((inner < 0) & (np.abs(inner) < CLAMP_RTOL * scale), 0.0, inner)
    clamped = inner < 0
    if np.any(clamped):
        worst = zi[clamped][np.argmin(inner[clamped])]
        print(f"[wishcut] WARNING: negative discriminant term at {int(np.sum(clamped))} support point(s) "
              f"(worst at z = {worst:.10g}, value {np.min(inner):.3g}); density set to 0 there.",
              file=sys.stderr)
    inner = np.maximum(inner, 0.0)
    sq = np.sqrt(inner)
    u = np.cbrt((r + sq) / 2.0)
    v = np.cbrt((r - sq) / 2.0)
    out[inside] = SQRT3 / (2.0 * np.pi) * np.abs(u - v)
    return out


def density(p, z):
    """
    Limiting density of the companion law at real z (integrates to c).

    Zero outside [lambda_1, lambda_2]. Accepts scalars or arrays.
    """
    info = require_one_cut(p)
    out = _density_array(p, info, np.atleast_1d(z))
    return float(out[0]) if np.ndim(z) == 0 else out


def density_F(p, z):
    """Density of the eigenvalue law F itself, rho / c."""
    return density(p, z) / p.c


def density_profile(p, n=401):
    info = require_one_cut(p)
    theta = np.linspace(0.0, np.pi, n)
    grid = info.lambda1 + (info.lambda2 - info.lambda1) * (1.0 - np.cos(theta)) / 2.0
    return DensityProfile(grid=grid, rho=density(p, grid), edge_constants=edge_constants(p))


def _edge_ratio(p, info, k, h):
    lam = info.lambda1 if k == 1 else info.lambda2
    z = lam + h if k == 1 else lam - h
    return np.pi * float(_density_array(p, info, np.array([z]))[0]) / np.sqrt(h)


def _richardson(f, h):
    f0, f1, f2 = f(h), f(h / 2.0), f(h / 4.0)
    r_h = 2.0 * f1 - f0
    r_h2 = 2.0 * f2 - f1
    return r_h, r_h2, (4.0 * r_h2 - r_h) / 3.0


def edge_constants(p, h=None, rtol=1e-4):
    """
    Square-root edge coefficients rho_k = lim pi rho(z) / |z - lambda_k|^(1/2).

    Richardson extrapolation over offsets h, h/2, h/4 with
    h = 1e-3 (lambda_2 - lambda_1) unless given.
    """
    info = require_one_cut(p)
    if h is None:
        h = 1e-3 * (info.lambda2 - info.lambda1)
    out = []
    for k in (1, 2):
        r_h, r_h2, est = _richardson(lambda t: _edge_ratio(p, info, k, t), h)
        if not (np.isfinite(est) and est > 0) or abs(r_h - r_h2) > rtol * abs(est):
            raise ExtrapolationDiverged(
                f"Edge constant at lambda_{k} did not settle: {r_h:.10g} vs {r_h2:.10g}."
            )
        out.append(est)
    return tuple(out)


def stieltjes_mF(p, z):
    """Stieltjes transform of F: (m_underline(z) + (1 - c)/z) / c."""
    z = complex(z)
    xi1 = branch_values(p, z).xi1
    return (xi1 + (1.0 - p.c) / z) / p.c


# ---- support scan ---------------------------------------------------------

def support_scan_oracle(p, m_grid_resolution=20001):
    """
    Support estimate from the sign of z'(m) on the real m axis alone.

    Runs of real m (away from 0, -1, -1/a) with z'(m) > 0 map through z(m)
    onto the complement of the support; the complement of their union in
    (0, inf) is returned as a list of (lo, hi) intervals.
    """
    if m_grid_resolution < 1000:
        raise InvalidParameters("m_grid_resolution must be at least 1000.")
    u = np.linspace(-1.0, 1.0, m_grid_resolution + 2)[1:-1]
    m = np.tan(np.pi * u / 2.0)
    poles = np.array([0.0, -1.0, -1.0 / p.a])
    m = m[np.min(np.abs(m[:, None] - poles[None, :]), axis=1) > 0.0]

    with np.errstate(divide="ignore", invalid="ignore"):
        zp = z_prime(p, m)
        zv = z_of_m(p, m)
    good = zp > 0
    # runs may not cross a pole
    region = np.sum(m[:, None] > poles[None, :], axis=1)

    n = m.size
    intervals = []
    k = 0
    while k < n:
        if not good[k]:
            k += 1
            continue
        j = k
        while j + 1 < n and good[j + 1] and region[j + 1] == region[k]:
            j += 1
        lo, hi = zv[k], zv[j]
        if k == 0:
            lo = 0.0  # m -> -inf, z -> 0+
        elif m[k] > 0 > m[k - 1]:
            lo = -np.inf
        if j == n - 1:
            hi = 0.0  # m -> +inf, z -> 0-
        elif m[j] < 0 < m[j + 1]:
            hi = np.inf
        intervals.append((min(lo, hi), max(lo, hi)))
        k = j + 1

    intervals.sort()
    support = []
    cursor = 0.0
    for lo, hi in intervals:
        if hi <= cursor:
            continue
        if lo > cursor:
            support.append((cursor, lo))
        cursor = max(cursor, hi)
    if np.isfinite(cursor):
        support.append((cursor, np.inf))
    return [(float(lo), float(hi)) for lo, hi in support if hi - lo > 1e-12]


# ---- closed-form reductions -------------------------------------------------

def marchenko_pastur_edges(sigma2, c):
    return sigma2 * (1.0 - np.sqrt(c)) ** 2, sigma2 * (1.0 + np.sqrt(c)) ** 2


def marchenko_pastur_density(sigma2, c, x):
    """Companion-law Marchenko-Pastur density, integrating to c."""
    lo, hi = marchenko_pastur_edges(sigma2, c)
    x = np.asarray(x, dtype=float)
    val = np.sqrt(np.clip((hi - x) * (x - lo), 0.0, None)) / (2.0 * np.pi * sigma2 * np.where(x == 0, 1.0, x))
    return np.where((x > lo) & (x < hi), val, 0.0)


class DensityTable:
    """
    Tabulated CDF of rho / c on [lambda_1, lambda_2].

    Nodes follow x = lambda_1 + (lambda_2 - lambda_1)(1 - cos t)/2 so the
    square-root edges become smooth; each panel is integrated with an
    8-point Gauss-Legendre rule.
    """

    def __init__(self, p, n=2001, density_fn=None, edges=None):
        if density_fn is None:
            info = require_one_cut(p)
            lo, hi = info.lambda1, info.lambda2
            density_fn = lambda x: density(p, x) / p.c
        else:
            lo, hi = edges
        self.lo, self.hi = lo, hi
        theta = np.linspace(0.0, np.pi, n)
        gx, gw = np.polynomial.legendre.leggauss(8)
        mid = 0.5 * (theta[1:] + theta[:-1])
        half = 0.5 * (theta[1:] - theta[:-1])
        t = mid[:, None] + half[:, None] * gx[None, :]
        x = lo + (hi - lo) * (1.0 - np.cos(t)) / 2.0
        g = density_fn(x.ravel()).reshape(x.shape) * (hi - lo) / 2.0 * np.sin(t)
        panels = np.sum(g * gw[None, :], axis=1) * half
        self.x = lo + (hi - lo) * (1.0 - np.cos(theta)) / 2.0
        self.F = np.concatenate([[0.0], np.cumsum(panels)])
        self.total = float(self.F[-1])

    def cdf(self, x):
        return np.interp(x, self.x, self.F, left=0.0, right=self.total)

    def inverse(self, q):
        return np.interp(q, self.F, self.x)


@lru_cache(maxsize=64)
def density_table(p, n=2001):
    return DensityTable(p, n)


def cdf_F(p, x):
    """CDF of the eigenvalue law F at x."""
    return density_table(p).cdf(x)

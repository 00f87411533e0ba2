# MIT License
# Copyright (c) 2026 wishcut developers
# See LICENSE file for full license information.
"""
Wishcut

Airy function Ai and its derivative from the Maclaurin series near the origin
and the large-argument expansion elsewhere.

File name:wishcut/limits/airy.py

Author: wishcut developers
Created: 2026-10-19
"""
import numpy as np

from wishcut.errors import InvalidParameters, SectorViolation

AI0 = 0.355028053887817239260063186004183
AIP0 = -0.258819403792806798405183560189203

SERIES_RADIUS = 6.0
OSCILLATORY_SERIES_RADIUS = 12.0
SERIES_TERMS = 80
ASYMPTOTIC_TERMS = 40
MAX_ABS_Z = 1.0e3
SECTOR_EPS = 1.0e-3

_OMEGA = np.exp(2j * np.pi / 3.0)


def _asymptotic_coefficients(n):
    u = np.empty(n)
    u[0] = 1.0
    for k in range(1, n):
        u[k] = u[k - 1] * (6 * k - 5) * (6 * k - 3) * (6 * k - 1) / ((2 * k - 1) * 216.0 * k)
    v = np.empty(n)
    v[0] = 1.0
    k = np.arange(1, n)
    v[1:] = -(6 * k + 1) / (6 * k - 1) * u[1:]
    return u, v


_U, _V = _asymptotic_coefficients(ASYMPTOTIC_TERMS)


def _series(z):
    """Maclaurin series; z is a complex array."""
    z3 = z ** 3
    f = np.ones_like(z)
    g = z.copy()
    fp = np.zeros_like(z)
    gp = np.ones_like(z)
    t = np.ones_like(z)
    s = z.copy()
    tp = z * z / 2.0
    sp = np.ones_like(z)
    fp = fp + tp
    for k in range(1, SERIES_TERMS):
        t = t * z3 / ((3 * k - 1) * (3 * k))
        s = s * z3 / ((3 * k) * (3 * k + 1))
        sp = sp * z3 / ((3 * k - 2) * (3 * k))
        f = f + t
        g = g + s
        gp = gp + sp
        if k >= 2:
            tp = tp * z3 / ((3 * k - 3) * (3 * k - 1))
            fp = fp + tp
    return AI0 * f + AIP0 * g, AI0 * fp + AIP0 * gp


def airy_asymptotic(z):
    """
    Ai(z) and Ai'(z) from the leading-exponential expansion alone.

    Terms are summed until they stop decreasing. Accurate for large |z| in
    |arg z| <= 2 pi / 3; raises SectorViolation within SECTOR_EPS of arg z = +-pi,
    where the expansion misses the second exponential.
    """
    z = np.atleast_1d(np.asarray(z)).astype(complex)
    if np.any(np.abs(np.abs(np.angle(z)) - np.pi) < SECTOR_EPS):
        raise SectorViolation("Single-exponential Airy expansion evaluated within 1e-3 of arg z = +-pi.")
    zeta = (2.0 / 3.0) * z ** 1.5
    quarter = z ** 0.25
    pref = np.exp(-zeta) / (2.0 * np.sqrt(np.pi))
    sa = np.zeros_like(z)
    sd = np.zeros_like(z)
    term_prev = np.full(z.shape, np.inf)
    active = np.ones(z.shape, dtype=bool)
    power = np.ones_like(z)
    for k in range(ASYMPTOTIC_TERMS):
        ta = _U[k] * power
        size = np.abs(ta)
        active &= size < term_prev
        sa = sa + np.where(active, ta, 0.0)
        sd = sd + np.where(active, _V[k] * power, 0.0)
        term_prev = size
        power = power * (-1.0 / zeta)
    return pref * sa / quarter, -pref * quarter * sd


def _large(z):
    ai = np.empty_like(z)
    aip = np.empty_like(z)
    near = np.abs(np.angle(z)) <= 2.0 * np.pi / 3.0
    if np.any(near):
        ai[near], aip[near] = airy_asymptotic(z[near])
    far = ~near
    if np.any(far):
        # Ai(z) = -w Ai(w z) - w^2 Ai(w^2 z)
        z1 = _OMEGA * z[far]
        z2 = _OMEGA ** 2 * z[far]
        a1, d1 = airy_asymptotic(z1)
        a2, d2 = airy_asymptotic(z2)
        ai[far] = -_OMEGA * a1 - _OMEGA ** 2 * a2
        aip[far] = -_OMEGA ** 2 * d1 - _OMEGA ** 4 * d2
    return ai, aip


def airy(z):
    """
    Ai(z) and Ai'(z).

    Parameters:
        z (float, complex or array): argument(s), |z| <= 1e3.

    Returns:
        (Ai, Ai'), real when z is real.
    """
    z_in = np.asarray(z)
    real_input = not np.iscomplexobj(z_in)
    zc = np.atleast_1d(z_in).astype(complex)
    if np.any(~np.isfinite(zc)) or np.any(np.abs(zc) > MAX_ABS_Z):
        raise InvalidParameters(f"airy is validated for |z| <= {MAX_ABS_Z:g}.")
    ai = np.empty_like(zc)
    aip = np.empty_like(zc)
    small = (np.abs(zc) <= SERIES_RADIUS) | (
        (np.abs(zc) <= OSCILLATORY_SERIES_RADIUS) & (np.abs(np.angle(zc)) >= 2.0 * np.pi / 3.0)
    )
    if np.any(small):
        ai[small], aip[small] = _series(zc[small])
    if np.any(~small):
        ai[~small], aip[~small] = _large(zc[~small])
    if real_input:
        ai, aip = ai.real, aip.real
    if z_in.ndim == 0:
        return ai[0], aip[0]
    return ai.reshape(z_in.shape), aip.reshape(z_in.shape)

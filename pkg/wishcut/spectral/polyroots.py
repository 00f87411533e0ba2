# MIT License
# Copyright (c) 2026 wishcut developers
# See LICENSE file for full license information.
"""
Wishcut

Closed-form cubic and quartic root finders with discriminants, plus the
companion-matrix oracle used to cross-check them.

File name:wishcut/spectral/polyroots.py

Author: wishcut developers
Created: 2026-10-19
"""
from dataclasses import dataclass

import numpy as np
from scipy.linalg import companion, eigvals

from wishcut.errors import InvalidParameters

MULTIPLICITY_RTOL = 1e-8
REAL_RTOL = 1e-9

_OMEGA = complex(-0.5, np.sqrt(3.0) / 2.0)


@dataclass(frozen=True)
class CubicCoeffs:
    """c3*x^3 + c2*x^2 + c1*x + c0, real or complex."""
    c3: complex
    c2: complex
    c1: complex
    c0: complex

    def __post_init__(self):
        if self.c3 == 0:
            raise InvalidParameters("Cubic leading coefficient c3 must be nonzero.")

    def as_array(self):
        return np.array([self.c3, self.c2, self.c1, self.c0])

    @property
    def is_real(self):
        return bool(np.all(np.imag(self.as_array()) == 0))


@dataclass(frozen=True)
class QuarticCoeffs:
    q4: float
    q3: float
    q2: float
    q1: float
    q0: float

    def __post_init__(self):
        if self.q4 == 0:
            raise InvalidParameters("Quartic leading coefficient q4 must be nonzero.")

    def as_array(self):
        return np.array([self.q4, self.q3, self.q2, self.q1, self.q0], dtype=float)


@dataclass(frozen=True)
class RootSet:
    """
    Roots of a polynomial together with multiplicity flags and discriminant.

    multiplicity[k] counts how many roots (itself included) lie within the
    relative multiplicity tolerance of roots[k].
    """
    roots: tuple
    multiplicity: tuple
    discriminant: float

    def __len__(self):
        return len(self.roots)

    def __iter__(self):
        return iter(self.roots)

    def __getitem__(self, k):
        return self.roots[k]

    @property
    def has_multiple_root(self):
        return any(m > 1 for m in self.multiplicity)

    def real_roots(self):
        return sorted(r.real for r in self.roots if r.imag == 0.0)

    def complex_roots(self):
        return [r for r in self.roots if r.imag != 0.0]


def _real_cbrt(x):
    return float(np.cbrt(x))


def _principal_cbrt(w):
    if w == 0:
        return 0j
    return complex(w) ** (1.0 / 3.0)


def _polish(coeffs, root):
    # one Newton step, kept only when it lowers the residual
    p = np.polyval(coeffs, root)
    dp = np.polyval(np.polyder(coeffs), root)
    if dp == 0:
        return root
    candidate = root - p / dp
    if abs(np.polyval(coeffs, candidate)) <= abs(p):
        return candidate
    return root


def _multiplicities(roots):
    out = []
    for r in roots:
        scale = max(1.0, abs(r))
        out.append(sum(1 for s in roots if abs(s - r) <= MULTIPLICITY_RTOL * scale))
    return tuple(out)


def _conjugate_close(roots):
    """Snap nearly-real roots onto the axis and average conjugate partners."""
    real = []
    upper = []
    lower = []
    for r in roots:
        r = complex(r)
        if abs(r.imag) <= REAL_RTOL * max(1.0, abs(r.real)):
            real.append(complex(r.real, 0.0))
        elif r.imag > 0:
            upper.append(r)
        else:
            lower.append(r)

    paired = []
    lower = list(lower)
    for r in sorted(upper, key=lambda w: (w.real, w.imag)):
        if not lower:
            paired.append(r)
            continue
        k = int(np.argmin([abs(r - np.conj(s)) for s in lower]))
        s = lower.pop(k)
        mid = 0.5 * (r + np.conj(s))
        paired.extend([complex(mid), complex(np.conj(mid))])
    # unmatched lower roots cannot occur for real coefficients unless the
    # real/complex split was ambiguous; keep them rather than drop
    paired.extend(lower)

    real.sort(key=lambda w: w.real)
    return real + paired


def cubic_discriminant(c3, c2, c1, c0):
    return (18 * c3 * c2 * c1 * c0 - 4 * c2**3 * c0 + c2**2 * c1**2
            - 4 * c3 * c1**3 - 27 * c3**2 * c0**2)


def quartic_discriminant(a, b, c, d, e):
    return (256 * a**3 * e**3 - 192 * a**2 * b * d * e**2 - 128 * a**2 * c**2 * e**2
            + 144 * a**2 * c * d**2 * e - 27 * a**2 * d**4 + 144 * a * b**2 * c * e**2
            - 6 * a * b**2 * d**2 * e - 80 * a * b * c**2 * d * e + 18 * a * b * c * d**3
            + 16 * a * c**4 * e - 4 * a * c**3 * d**2 - 27 * b**4 * e**2
            + 18 * b**3 * c * d * e - 4 * b**3 * d**3 - 4 * b**2 * c**3 * e
            + b**2 * c**2 * d**2)


def _depressed_cubic_roots_real(p, q):
    """Roots of t^3 + p t + q with real p, q; real cube roots of real numbers."""
    disc = (q / 2.0) ** 2 + (p / 3.0) ** 3
    if p == 0.0 and q == 0.0:
        return [0j, 0j, 0j]
    if disc > 0:
        sq = np.sqrt(disc)
        u = _real_cbrt(-q / 2.0 + sq)
        v = _real_cbrt(-q / 2.0 - sq)
        re = -(u + v) / 2.0
        im = np.sqrt(3.0) / 2.0 * (u - v)
        return [complex(u + v, 0.0), complex(re, im), complex(re, -im)]
    # three real roots (trigonometric form), p < 0 here
    r = 2.0 * np.sqrt(-p / 3.0)
    arg = np.clip(3.0 * q / (p * r), -1.0, 1.0)
    phi = np.arccos(arg)
    return [complex(r * np.cos((phi - 2.0 * np.pi * k) / 3.0), 0.0) for k in range(3)]


def _depressed_cubic_roots_complex(p, q):
    disc = (q / 2.0) ** 2 + (p / 3.0) ** 3
    sq = np.sqrt(complex(disc))
    w1 = -q / 2.0 + sq
    w2 = -q / 2.0 - sq
    w = w1 if abs(w1) >= abs(w2) else w2
    u = _principal_cbrt(w)
    v = 0j if u == 0 else -p / (3.0 * u)
    return [u + v, _OMEGA * u + np.conj(_OMEGA) * v, np.conj(_OMEGA) * u + _OMEGA * v]


def solve_cubic(c):
    """
    Cardano roots of a cubic with one Newton polish per root.

    Real coefficients use real cube roots of real arguments and the
    trigonometric form when all three roots are real.
    """
    if not isinstance(c, CubicCoeffs):
        c = CubicCoeffs(*c)
    coeffs = c.as_array()
    b, cc, d = coeffs[1] / coeffs[0], coeffs[2] / coeffs[0], coeffs[3] / coeffs[0]
    p = cc - b * b / 3.0
    q = 2.0 * b**3 / 27.0 - b * cc / 3.0 + d

    if c.is_real:
        t = _depressed_cubic_roots_real(float(np.real(p)), float(np.real(q)))
        coeffs = coeffs.real
    else:
        t = _depressed_cubic_roots_complex(complex(p), complex(q))

    roots = [_polish(coeffs, complex(tk - b / 3.0)) for tk in t]
    if c.is_real:
        roots = _conjugate_close(roots)
    disc = cubic_discriminant(*coeffs)
    if c.is_real:
        disc = float(np.real(disc))
    return RootSet(roots=tuple(roots), multiplicity=_multiplicities(roots), discriminant=disc)


def _quadratic_roots(B, C):
    """Roots of y^2 + B y + C, cancellation-free."""
    sq = np.sqrt(complex(B * B - 4.0 * C))
    big = B + sq if abs(B + sq) >= abs(B - sq) else B - sq
    if big == 0:
        return [0j, 0j]
    t = -big / 2.0
    return [t, C / t]


def solve_quartic(q):
    """Ferrari roots of a real quartic, the resolvent cubic solved by solve_cubic."""
    if not isinstance(q, QuarticCoeffs):
        q = QuarticCoeffs(*q)
    coeffs = q.as_array()
    b, c, d, e = coeffs[1:] / coeffs[0]

    p = c - 3.0 * b * b / 8.0
    qq = d - b * c / 2.0 + b**3 / 8.0
    r = e - b * d / 4.0 + b * b * c / 16.0 - 3.0 * b**4 / 256.0
    scale = max(1.0, abs(p), abs(r) ** 0.5, abs(qq) ** (2.0 / 3.0))

    if abs(qq) <= 1e-14 * scale ** 1.5:
        # biquadratic
        ys = []
        for y2 in _quadratic_roots(p, r):
            s = np.sqrt(complex(y2))
            ys.extend([s, -s])
    else:
        resolvent = solve_cubic(CubicCoeffs(8.0, 8.0 * p, 2.0 * p * p - 8.0 * r, -qq * qq))
        # the resolvent has a positive real root since its value at 0 is -q^2
        m = max(resolvent.roots, key=lambda w: (w.imag == 0.0, w.real))
        s = np.sqrt(complex(2.0 * m))
        ys = (_quadratic_roots(-s, p / 2.0 + m + qq / (2.0 * s))
              + _quadratic_roots(s, p / 2.0 + m - qq / (2.0 * s)))

    roots = [_polish(coeffs, complex(y - b / 4.0)) for y in ys]
    roots = _conjugate_close(roots)
    disc = float(quartic_discriminant(*coeffs))
    return RootSet(roots=tuple(roots), multiplicity=_multiplicities(roots), discriminant=disc)


def companion_roots(coeffs):
    """Eigenvalues of the companion matrix; coefficients in descending order."""
    coeffs = np.asarray(coeffs)
    if coeffs.ndim != 1 or coeffs.size < 2:
        raise InvalidParameters("companion_roots needs a polynomial of degree >= 1.")
    if coeffs[0] == 0:
        raise InvalidParameters("Leading coefficient must be nonzero.")
    real_input = bool(np.all(np.imag(coeffs) == 0))
    if coeffs.size == 2:
        roots = [complex(-coeffs[1] / coeffs[0])]
    else:
        roots = [complex(r) for r in eigvals(companion(coeffs))]
    if real_input:
        roots = _conjugate_close(roots)

    n = coeffs.size - 1
    disc = coeffs[0] ** (2 * n - 2)
    for i in range(n):
        for j in range(i + 1, n):
            disc = disc * (roots[i] - roots[j]) ** 2
    disc = float(np.real(disc)) if real_input else complex(disc)
    return RootSet(roots=tuple(roots), multiplicity=_multiplicities(roots), discriminant=disc)


def residual_bound(coeffs, root):
    """|p(r)| / (max|coefficient| (1+|r|)^deg)."""
    coeffs = np.asarray(coeffs)
    deg = coeffs.size - 1
    return abs(np.polyval(coeffs, root)) / (np.max(np.abs(coeffs)) * (1.0 + abs(root)) ** deg)


def solve_cubic_batch(c3, c2, c1, c0):
    """
    Vectorized complex Cardano for arrays of cubics, shape (..., 3).

    Used by grid sweeps where the per-point Python path is too slow. Roots
    come back unordered; callers pair them against neighbouring values.
    """
    c3, c2, c1, c0 = np.broadcast_arrays(*(np.asarray(x, dtype=complex) for x in (c3, c2, c1, c0)))
    b = c2 / c3
    c = c1 / c3
    d = c0 / c3
    p = c - b * b / 3.0
    q = 2.0 * b**3 / 27.0 - b * c / 3.0 + d
    sq = np.sqrt((q / 2.0) ** 2 + (p / 3.0) ** 3)
    w1 = -q / 2.0 + sq
    w2 = -q / 2.0 - sq
    w = np.where(np.abs(w1) >= np.abs(w2), w1, w2)
    u = np.power(w, 1.0 / 3.0)
    safe_u = np.where(u == 0, 1.0, u)
    v = np.where(u == 0, 0.0, -p / (3.0 * safe_u))
    t = np.stack([u + v, _OMEGA * u + np.conj(_OMEGA) * v, np.conj(_OMEGA) * u + _OMEGA * v], axis=-1)
    x = t - (b / 3.0)[..., None]

    # Newton polish on the monic form
    bb, cc, dd = b[..., None], c[..., None], d[..., None]
    f = ((x + bb) * x + cc) * x + dd
    df = (3.0 * x + 2.0 * bb) * x + cc
    ok = np.abs(df) > 0
    step = np.where(ok, f / np.where(ok, df, 1.0), 0.0)
    return x - step

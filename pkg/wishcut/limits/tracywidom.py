# MIT License
# Copyright (c) 2026 wishcut developers
# See LICENSE file for full license information.
"""
Wishcut

Tracy-Widom GUE distribution F2 by two routes: the Airy-kernel Fredholm
determinant and the Hastings-McLeod solution of Painleve II.

File name:wishcut/limits/tracywidom.py

Author: wishcut developers
Created: 2026-10-19
"""
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache, partial

import numpy as np
import pandas as pd
from scipy.integrate import solve_ivp, simpson

from wishcut.errors import InvalidParameters, RangeError, NonConvergent
from .airy import airy
from .kernels import KernelOperator, fredholm_det

S_MIN = -10.0
S_MAX = 6.0
AIRY_SPAN = 25.0
AIRY_QUAD = 80
PAINLEVE_START = 8.0
PAINLEVE_TOL = 1e-12
METHODS = ("fredholm", "painleve")


@dataclass(frozen=True)
class TWTable:
    s_grid: np.ndarray
    F2: np.ndarray
    method: str

    def is_monotone(self, tol=1e-12):
        return bool(np.all(np.diff(self.F2) >= -tol))

    def to_frame(self):
        return pd.DataFrame({"s": self.s_grid, "F2": self.F2})


def _check_range(s):
    if not (S_MIN <= s <= S_MAX):
        raise RangeError(f"tw_cdf is validated on [{S_MIN:g}, {S_MAX:g}], got s = {s}.")


def _painleve_rhs(s, y):
    q, dq, u, w = y
    return [dq, s * q + 2.0 * q ** 3, -q * q, -u]


@lru_cache(maxsize=1)
def _painleve_solution():
    """
    Backward integration from PAINLEVE_START with q ~ -Ai.

    The state carries U(s) = int_s^inf q^2 and W(s) = int_s^inf (x - s) q^2,
    so that log F2(s) = -W(s).
    """
    s0 = PAINLEVE_START
    ai, aip = airy(s0)
    u0 = aip ** 2 - s0 * ai ** 2
    w0 = (2.0 * s0 ** 2 * ai ** 2 - 2.0 * s0 * aip ** 2 - ai * aip) / 3.0
    sol = solve_ivp(_painleve_rhs, (s0, S_MIN - 0.5), [-ai, -aip, u0, w0], method="DOP853",
                    rtol=PAINLEVE_TOL, atol=PAINLEVE_TOL, dense_output=True)
    if not sol.success:
        raise NonConvergent(f"Painleve II integration failed: {sol.message}")
    return sol


def hastings_mcleod(s):
    """q(s) and q'(s) of the Hastings-McLeod solution (sign convention q ~ -Ai)."""
    y = _painleve_solution().sol(np.asarray(s, dtype=float))
    return y[0], y[1]


def _tw_fredholm(s, n_quad):
    return fredholm_det(KernelOperator.limit("airy", s, s + AIRY_SPAN), n_quad)


def _tw_painleve(s):
    if s > PAINLEVE_START:
        return 1.0
    w = _painleve_solution().sol(s)[3]
    return float(np.exp(-w))


def tw_cdf(s, method="fredholm", n_quad=AIRY_QUAD):
    """
    F2(s) for s in [-10, 6].

    Parameters:
        s (float): evaluation point.
        method (str): 'fredholm' or 'painleve'.
        n_quad (int): Gauss-Legendre nodes for the Fredholm route.
    """
    s = float(s)
    _check_range(s)
    if method == "fredholm":
        value = _tw_fredholm(s, n_quad)
    elif method == "painleve":
        value = _tw_painleve(s)
    else:
        raise InvalidParameters(f"method must be one of {METHODS}, got {method!r}.")
    return min(1.0, max(0.0, value))


def tw_table(s_grid, method="fredholm", workers=1, verbose=False):
    """TWTable over s_grid; parallel over grid points for the Fredholm route."""
    s_grid = np.asarray(s_grid, dtype=float)
    if s_grid.ndim != 1 or len(s_grid) < 2 or np.any(np.diff(s_grid) <= 0):
        raise InvalidParameters("s_grid must be a strictly increasing 1-D grid with at least two points.")
    for s in (s_grid[0], s_grid[-1]):
        _check_range(s)
    if verbose:
        print(f"[wishcut] Building TW table ({method}) on {len(s_grid)} points")
    fn = partial(tw_cdf, method=method)
    if workers > 1 and method == "fredholm":
        with ProcessPoolExecutor(max_workers=workers) as pool:
            values = list(pool.map(fn, s_grid.tolist()))
    else:
        values = [fn(s) for s in s_grid.tolist()]
    return TWTable(s_grid=s_grid, F2=np.array(values), method=method)


def tw_moments(table):
    """
    Mean and variance of F2 from a table, by parts: int s dF = [sF] - int F ds.
    The table should cover both tails.
    """
    s, F = table.s_grid, table.F2
    int_F = simpson(F, x=s)
    int_sF = simpson(s * F, x=s)
    mean = s[-1] * F[-1] - s[0] * F[0] - int_F
    second = s[-1] ** 2 * F[-1] - s[0] ** 2 * F[0] - 2.0 * int_sF
    return float(mean), float(second - mean ** 2)

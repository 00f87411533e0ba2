# MIT License
# Copyright (c) 2026 wishcut developers
# See LICENSE file for full license information.
"""
Wishcut

The Abelian integral theta_2 - theta_3 based at lambda_3, its real part h on
the real axis, the balance point iota, and the zero set of Re(theta_2 - theta_3)
extracted by marching squares.

File name:wishcut/spectral/hgeometry.py

Author: wishcut developers
Created: 2026-10-19
"""
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
import sys

import numpy as np
import pandas as pd
from scipy.integrate import quad_vec
from scipy.optimize import brentq

from wishcut.errors import (
    InvalidParameters,
    PathThroughBranchPoint,
    ComponentCountMismatch,
    MultipleSignChanges,
)
from .curve import (
    BRANCH_POINT_TOL,
    require_one_cut,
    branch_values,
    track_boundary_values,
    cubic_coefficients,
    _right_anchor,
    _roots_at,
    _singular_points,
)
from .polyroots import solve_cubic_batch
from .utils import (
    PAIRING_MARGIN,
    LabeledTable,
    track_segment,
    distance_to_segment,
)

PATH_CLEARANCE = 1e-6
QUAD_EPSABS = 1e-10
SWEEP_TOL = 1e-9
TABLE_NODES = 33
T_MIN = 1e-3

CURVE_TAGS = ("H_inf_plus", "H_inf_minus", "H_L", "H_R")

# 15-point Kronrod nodes on [-1, 1] (ascending) with the embedded 7-point Gauss rule
_XGK = np.array([
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0,
])
_WGK = np.array([
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
])
KRONROD_NODES = np.concatenate([-_XGK[:7], [0.0], _XGK[6::-1]])
KRONROD_WEIGHTS = np.concatenate([_WGK[:7], [_WGK[7]], _WGK[6::-1]])
GAUSS_WEIGHTS = np.zeros(15)
GAUSS_WEIGHTS[[1, 3, 5, 7, 9, 11, 13]] = [_WG[0], _WG[1], _WG[2], _WG[3], _WG[2], _WG[1], _WG[0]]


@dataclass(frozen=True)
class ThetaDiff:
    z: complex
    value: complex
    path_record: tuple


@dataclass
class LevelSetGeometry:
    curves: dict = field(repr=False)
    x_L: float
    x_R: float
    iota: float
    window: tuple
    spacing: tuple

    def real_crossings(self):
        return self.x_L, self.x_R


def _is_branch(info, w):
    return any(abs(w - lam) <= BRANCH_POINT_TOL * (1.0 + abs(lam)) for lam in info.lam)


def _check_clearance(info, path):
    for w in path[1:-1]:
        if _is_branch(info, w):
            raise PathThroughBranchPoint(f"Waypoint {w} is a branch point.")
    for w0, w1 in zip(path[:-1], path[1:]):
        for lam in info.lam:
            if abs(lam - w0) <= BRANCH_POINT_TOL * (1.0 + abs(lam)):
                continue
            if abs(lam - w1) <= BRANCH_POINT_TOL * (1.0 + abs(lam)):
                continue
            if distance_to_segment(lam, w0, w1) < PATH_CLEARANCE:
                raise PathThroughBranchPoint(
                    f"Segment {w0:.6g} -> {w1:.6g} passes within {PATH_CLEARANCE} of {lam:.6g}; re-route with via."
                )


def _segment_integral(p, info, w0, w1, xi_known, known_end):
    """
    Integral of xi_2 - xi_3 from w0 to w1, labels known at one end.

    A branch-point end is handled with x = B + t^2 (O - B), which removes the
    square-root behaviour of xi_2 - xi_3 there.
    """
    roots = _roots_at(p)
    singular = _singular_points(info)
    b0 = _is_branch(info, w0)
    b1 = _is_branch(info, w1)
    if b0 and b1:
        raise InvalidParameters("A segment cannot join two branch points; add a waypoint.")
    if b0 or b1:
        B, O = (w0, w1) if b0 else (w1, w0)
        if (b0 and known_end != 1) or (b1 and known_end != 0):
            raise InvalidParameters("Labels cannot be fixed at a branch point.")

        def x_of(t):
            return B + t * t * (O - B)

        def jac(t):
            return 2.0 * t * (w1 - w0)

        ts = np.linspace(1.0, T_MIN, TABLE_NODES)
    else:
        def x_of(t):
            return w0 + t * (w1 - w0)

        def jac(t):
            return w1 - w0

        ts = np.linspace(0.0, 1.0, TABLE_NODES) if known_end == 0 else np.linspace(1.0, 0.0, TABLE_NODES)

    table = LabeledTable(roots, [x_of(t) for t in ts], xi_known, singular)

    def integrand(t):
        xi = table.at(x_of(t))
        v = (xi[1] - xi[2]) * jac(t)
        return np.array([v.real, v.imag])

    res, _ = quad_vec(integrand, 0.0, 1.0, epsabs=QUAD_EPSABS, epsrel=1e-12,
                      quadrature="gk15", limit=400)
    return complex(res[0], res[1])


def theta_diff(p, z, via=None):
    """
    theta_2(z) - theta_3(z) as the integral of xi_2 - xi_3 from lambda_3 to z.

    The default route is the straight segment from lambda_3 for Im z >= 0 and
    lambda_3 -> right anchor -> z below the axis. `via` replaces the interior
    waypoints. Labels are fixed at z (or at the last waypoint when z is a
    branch point) and carried back along the route.
    """
    info = require_one_cut(p)
    z = complex(z)
    lam3 = info.lambda3
    if via is None:
        if abs(z - lam3) <= BRANCH_POINT_TOL * (1.0 + abs(lam3)):
            return ThetaDiff(z, 0j, (lam3,))
        via = [complex(_right_anchor(p)[0])] if z.imag < 0 else []
    path = [lam3] + [complex(w) for w in via] + [z]
    _check_clearance(info, path)

    r = len(path) - 1 if not _is_branch(info, z) else len(path) - 2
    if r == 0:
        raise PathThroughBranchPoint("Route from lambda_3 to a branch point needs an intermediate waypoint.")
    roots = _roots_at(p)
    singular = _singular_points(info)
    xi_ref = branch_values(p, path[r]).as_array()

    value = 0j
    xi = xi_ref
    for i in range(r - 1, -1, -1):
        value += _segment_integral(p, info, path[i], path[i + 1], xi, known_end=1)
        if i > 0:
            xi = track_segment(roots, path[i + 1], path[i], xi, singular)
    xi = xi_ref
    for i in range(r, len(path) - 1):
        value += _segment_integral(p, info, path[i], path[i + 1], xi, known_end=0)
        if i + 1 < len(path) - 1:
            xi = track_segment(roots, path[i], path[i + 1], xi, singular)
    return ThetaDiff(z, value, tuple(path))


def h_value(p, x):
    """Re(theta_2 - theta_3) at x + i0."""
    return theta_diff(p, complex(float(x), 0.0)).value.real


def real_part_gap(p, x):
    """
    Re(xi_I - xi_R) on the support: the complex root of the pair not equal to
    xi_1 minus the real root. Label free.
    """
    roots = _roots_at(p)(complex(x))
    k = int(np.argmin(np.abs(roots.imag)))
    others = np.delete(roots, k)
    return float(others[0].real - roots[k].real)


def find_iota(p, n_scan=1000):
    """The unique point of [lambda_1, lambda_2] where Re(xi_2 - xi_3)(x + i0) = 0."""
    info = require_one_cut(p)
    xs = np.linspace(info.lambda1, info.lambda2, n_scan + 2)[1:-1]
    labels = track_boundary_values(p, xs[::-1])[::-1]
    g = np.real(labels[:, 1] - labels[:, 2])
    changes = np.nonzero(np.sign(g[:-1]) != np.sign(g[1:]))[0]
    if len(changes) != 1:
        raise MultipleSignChanges(
            f"Re(xi_2 - xi_3) changes sign {len(changes)} times on [lambda_1, lambda_2]; expected once."
        )
    k = int(changes[0])
    roots = _roots_at(p)
    singular = _singular_points(info)

    def gap(x):
        xi = track_segment(roots, xs[k], x, labels[k], singular)
        return float((xi[1] - xi[2]).real)

    return float(brentq(gap, xs[k], xs[k + 1], xtol=1e-13))


# ---- grid sweeps ------------------------------------------------------------

def _label_sequence(raw, pts, xi0, roots, singular):
    """Labels for raw root triples along a chain of closely spaced points."""
    n_pts = len(pts)
    dist = np.abs(raw[:-1, :, None] - raw[1:, None, :])
    order = np.argsort(dist, axis=2)
    d_sorted = np.take_along_axis(dist, order, axis=2)
    nearest = order[:, :, 0]
    ok = (np.all(d_sorted[:, :, 1] > PAIRING_MARGIN * d_sorted[:, :, 0], axis=1)
          & np.all(np.sort(nearest, axis=1) == np.arange(3), axis=1))
    nearest_list = nearest.tolist()
    ok_list = ok.tolist()

    lab = tuple(int(np.argmin(np.abs(raw[0] - x))) for x in xi0)
    idx = np.empty((n_pts, 3), dtype=int)
    idx[0] = lab
    for k in range(n_pts - 1):
        if ok_list[k]:
            n = nearest_list[k]
            lab = (n[lab[0]], n[lab[1]], n[lab[2]])
        else:
            xi = track_segment(roots, pts[k], pts[k + 1], raw[k][list(lab)], singular)
            lab = tuple(int(np.argmin(np.abs(raw[k + 1] - x))) for x in xi)
        idx[k + 1] = lab
    return np.take_along_axis(raw, idx, axis=1)


def _refined_segment(roots, singular, w0, w1, xi0):
    table = LabeledTable(roots, np.linspace(w0, w1, 17), xi0, singular)

    def integrand(t):
        xi = table.at(w0 + t * (w1 - w0))
        v = (xi[1] - xi[2]) * (w1 - w0)
        return np.array([v.real, v.imag])

    res, _ = quad_vec(integrand, 0.0, 1.0, epsabs=0.1 * SWEEP_TOL, quadrature="gk15", limit=200)
    return complex(res[0], res[1])


def _sweep(p, nodes, theta0, xi0):
    """
    Continue theta_2 - theta_3 along a chain of nodes.

    Each gap gets a 15-point Kronrod panel; panels whose embedded Gauss
    estimate disagrees by more than SWEEP_TOL are redone adaptively.
    """
    info = require_one_cut(p)
    roots = _roots_at(p)
    singular = _singular_points(info)
    nodes = np.asarray(nodes, dtype=complex)
    mid = 0.5 * (nodes[:-1] + nodes[1:])
    half = 0.5 * (nodes[1:] - nodes[:-1])
    panel = mid[:, None] + half[:, None] * KRONROD_NODES[None, :]
    pts = np.concatenate([np.concatenate([nodes[:-1, None], panel], axis=1).ravel(), nodes[-1:]])

    raw = solve_cubic_batch(*cubic_coefficients(p, pts))
    labeled = _label_sequence(raw, pts, xi0, roots, singular)
    f = labeled[:, 1] - labeled[:, 2]
    fpanel = f[:-1].reshape(len(half), 16)[:, 1:]
    kron = half * (fpanel @ KRONROD_WEIGHTS)
    gauss = half * (fpanel @ GAUSS_WEIGHTS)
    for s in np.nonzero(np.abs(kron - gauss) > SWEEP_TOL)[0]:
        kron[s] = _refined_segment(roots, singular, nodes[s], nodes[s + 1], labeled[16 * s])
    theta = theta0 + np.concatenate([[0.0], np.cumsum(kron)])
    return theta, labeled[0::16]


def _row_values(task):
    p, nodes, theta0, xi0 = task
    theta, _ = _sweep(p, nodes, theta0, xi0)
    return np.real(theta)


# ---- marching squares -------------------------------------------------------

def _crossing(points, values, ka, kb):
    va, vb = values[ka], values[kb]
    t = va / (va - vb)
    t = min(1.0, max(0.0, t))
    return points[ka] + t * (points[kb] - points[ka])


def _cell_segments(v):
    """Edge pairs (0 bottom, 1 right, 2 top, 3 left) crossed by the zero level."""
    pos = [x > 0 for x in v]
    corners = ((0, 1), (1, 2), (2, 3), (3, 0))
    crossed = [e for e, (i, j) in enumerate(corners) if pos[i] != pos[j]]
    if len(crossed) == 2:
        return [tuple(crossed)]
    if len(crossed) == 4:
        center = sum(v) / 4.0
        if (center > 0) == pos[0]:
            return [(0, 1), (2, 3)]
        return [(3, 0), (1, 2)]
    return []


def _extract_zero_polylines(xs, ys, F, lam3):
    """
    Zero level of F on the grid as polylines of complex points.

    Cells straddling the horizontal rays left of lambda_3 and lambda_4 have the
    row farther from the axis sign-flipped; the cells holding lambda_3 and
    lambda_4 are skipped.
    """
    n_rows, n_cols = F.shape
    pos = F > 0
    mixed = ((pos[:-1, :-1] != pos[:-1, 1:]) | (pos[:-1, :-1] != pos[1:, :-1])
             | (pos[:-1, :-1] != pos[1:, 1:]))
    upper_cut = (ys[:-1] < lam3.imag) & (ys[1:] >= lam3.imag)
    lower_cut = (ys[:-1] < -lam3.imag) & (ys[1:] >= -lam3.imag)
    cut_rows = set(np.nonzero(upper_cut | lower_cut)[0].tolist())
    for r in cut_rows:
        mixed[r, :] = True

    points = {}
    nbrs = defaultdict(list)
    for r, j in zip(*np.nonzero(mixed)):
        r, j = int(r), int(j)
        v = [F[r, j], F[r, j + 1], F[r + 1, j + 1], F[r + 1, j]]
        if r in cut_rows:
            if xs[j] <= lam3.real < xs[j + 1]:
                continue
            if xs[j + 1] <= lam3.real:
                if upper_cut[r]:
                    v[2], v[3] = -v[2], -v[3]
                else:
                    v[0], v[1] = -v[0], -v[1]
        segs = _cell_segments(v)
        if not segs:
            continue
        corner_xy = [complex(xs[j], ys[r]), complex(xs[j + 1], ys[r]),
                     complex(xs[j + 1], ys[r + 1]), complex(xs[j], ys[r + 1])]
        keys = [("h", r, j), ("v", r, j + 1), ("h", r + 1, j), ("v", r, j)]
        ends = ((0, 1), (1, 2), (2, 3), (3, 0))
        for ea, eb in segs:
            for e in (ea, eb):
                if keys[e] not in points:
                    points[keys[e]] = _crossing(corner_xy, v, *ends[e])
            nbrs[keys[ea]].append(keys[eb])
            nbrs[keys[eb]].append(keys[ea])

    def on_boundary(key):
        kind, r, j = key
        if kind == "h":
            return r == 0 or r == n_rows - 1
        return j == 0 or j == n_cols - 1

    visited = set()
    polylines = []

    def walk(start):
        chain = [start]
        visited.add(start)
        prev, cur = None, start
        while True:
            nxt = [k for k in nbrs[cur] if k != prev and k not in visited]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            visited.add(cur)
            chain.append(cur)
        return chain

    for key in list(nbrs):
        if len(nbrs[key]) == 1 and key not in visited:
            polylines.append(walk(key))
    for key in list(nbrs):
        if key not in visited:
            polylines.append(walk(key))

    out = []
    for chain in polylines:
        out.append({
            "points": np.array([points[k] for k in chain]),
            "ends": (chain[0], chain[-1]),
            "boundary": (on_boundary(chain[0]), on_boundary(chain[-1])),
            "top": (chain[0][0] == "h" and chain[0][1] == n_rows - 1,
                    chain[-1][0] == "h" and chain[-1][1] == n_rows - 1),
            "bottom": (chain[0][0] == "h" and chain[0][1] == 0,
                       chain[-1][0] == "h" and chain[-1][1] == 0),
        })
    return out


def _axis_crossing(pts):
    y = pts.imag
    for k in range(len(pts) - 1):
        if y[k] == 0.0:
            return float(pts[k].real)
        if (y[k] > 0) != (y[k + 1] > 0):
            t = y[k] / (y[k] - y[k + 1])
            return float(pts[k].real + t * (pts[k + 1].real - pts[k].real))
    return None


def _refine_crossing(p, x0, dx):
    for width in (2.0 * dx, 5.0 * dx):
        lo, hi = x0 - width, x0 + width
        try:
            h_lo, h_hi = h_value(p, lo), h_value(p, hi)
        except PathThroughBranchPoint:
            continue
        if np.sign(h_lo) != np.sign(h_hi):
            return float(brentq(lambda x: h_value(p, x), lo, hi, xtol=1e-10))
    print(f"[wishcut] WARNING: h is not bracketed within 5 cells of x = {x0:.10g}; "
          f"keeping the grid crossing (accurate to about {dx:.3g}).", file=sys.stderr)
    return float(x0)


def real_axis_bracket(p, n_scan=120, max_doublings=4):
    """
    Grid intervals bracketing the outermost sign changes of h on the real axis.

    The scan starts on [lambda_1 - s, max(lambda_2, Re lambda_3) + s] with
    s the same width and doubles s until h changes sign twice; h grows
    linearly at both ends, so the outer sign is fixed far out.
    """
    info = require_one_cut(p)
    lo, hi = info.lambda1, max(info.lambda2, info.lambda3.real)
    span = hi - lo
    for _ in range(max_doublings + 1):
        xs = np.linspace(lo - span, hi + span, n_scan)
        vals = np.full(n_scan, np.nan)
        for k, x in enumerate(xs):
            try:
                vals[k] = h_value(p, x)
            except PathThroughBranchPoint:
                continue
        ok = np.isfinite(vals)
        xs_ok, v = xs[ok], vals[ok]
        changes = np.nonzero(np.sign(v[:-1]) != np.sign(v[1:]))[0]
        if len(changes) >= 2:
            first, last = changes[0], changes[-1]
            return ((float(xs_ok[first]), float(xs_ok[first + 1])),
                    (float(xs_ok[last]), float(xs_ok[last + 1])))
        span *= 2.0
    raise ComponentCountMismatch(
        f"h changes sign fewer than twice on [{lo - span / 2.0:.6g}, {hi + span / 2.0:.6g}]."
    )


def default_window(p, margin=0.3):
    """
    Window holding the branch points and both real crossings of the zero set,
    padded by `margin` of its width on each side.
    """
    info = require_one_cut(p)
    (xl, _), (_, xr) = real_axis_bracket(p)
    left = min(info.lambda1, xl)
    right = max(info.lambda2, info.lambda3.real, xr)
    width = right - left
    y1 = max(2.0 * info.lambda3.imag, 0.5 * width)
    return (left - margin * width, right + margin * width, -y1, y1)


def _widen(window, factor):
    x0, x1, _, y1 = window
    mid, half = 0.5 * (x0 + x1), 0.5 * factor * (x1 - x0)
    return (mid - half, mid + half, -factor * y1, factor * y1)


def _classify(polylines, info, cell):
    lam3, lam4 = info.lambda3, info.lambda4
    near = 3.0 * cell
    tagged = {}
    lr = []
    for line in polylines:
        pts = line["points"]
        d3 = np.abs(pts - lam3)
        d4 = np.abs(pts - lam4)
        if np.all(np.minimum(d3, d4) <= 4.0 * near):
            continue  # fragment inside the skipped cells' neighbourhood
        e_near3 = (d3[0] <= near, d3[-1] <= near)
        e_near4 = (d4[0] <= near, d4[-1] <= near)
        if any(e_near3) and any(line["top"]):
            tagged.setdefault("H_inf_plus", []).append(pts if e_near3[0] else pts[::-1])
        elif any(e_near4) and any(line["bottom"]):
            tagged.setdefault("H_inf_minus", []).append(pts if e_near4[0] else pts[::-1])
        elif (e_near3[0] and e_near4[1]) or (e_near3[1] and e_near4[0]):
            lr.append(pts if e_near3[0] else pts[::-1])
        else:
            raise ComponentCountMismatch(
                "A zero-set curve does not join lambda_3/lambda_4 to each other or to the window edge; "
                "increase the resolution or enlarge the window."
            )
    if len(tagged.get("H_inf_plus", [])) != 1 or len(tagged.get("H_inf_minus", [])) != 1 or len(lr) != 2:
        raise ComponentCountMismatch(
            f"Expected one curve to infinity in each half plane and two curves through the real axis, got "
            f"{len(tagged.get('H_inf_plus', []))}, {len(tagged.get('H_inf_minus', []))} and {len(lr)}."
        )
    crossings = [_axis_crossing(pts) for pts in lr]
    if any(c is None for c in crossings):
        raise ComponentCountMismatch("A curve joining lambda_3 and lambda_4 does not cross the real axis.")
    order = np.argsort(crossings)
    return {
        "H_inf_plus": tagged["H_inf_plus"][0],
        "H_inf_minus": tagged["H_inf_minus"][0],
        "H_L": lr[order[0]],
        "H_R": lr[order[1]],
    }, (crossings[order[0]], crossings[order[1]])


def trace_hset(p, window=None, resolution=400, workers=1, verbose=False, widenings=3):
    """
    Zero set of Re(theta_2 - theta_3) in a window symmetric about the real axis.

    The upper half plane is evaluated on rows at heights (k + 1/2) dy: the
    right column is integrated upward from a direct theta_diff value and each
    row is swept leftward from it. The lower half is the mirror image.

    Parameters:
        window (tuple or None): (x_min, x_max, y_min, y_max) with y_min = -y_max.
            None derives it from the branch points and the real crossings of h
            (see default_window) and widens it up to `widenings` times while a
            curve leaves through a side edge.
        resolution (int or tuple): grid size (nx, ny), each at least 200.
        workers (int): processes for the row sweeps; results do not depend on it.

    Returns:
        LevelSetGeometry with curves tagged H_inf_plus, H_inf_minus, H_L, H_R.
    """
    info = require_one_cut(p)
    nx, ny = (resolution, resolution) if np.isscalar(resolution) else resolution
    nx, ny = int(nx), int(ny)
    if nx < 200 or ny < 200:
        raise InvalidParameters(f"resolution must be at least 200x200, got {nx}x{ny}.")
    if window is not None:
        return _trace_window(p, info, tuple(float(w) for w in window), nx, ny, workers, verbose)

    window = default_window(p)
    for attempt in range(widenings + 1):
        try:
            return _trace_window(p, info, window, nx, ny, workers, verbose)
        except ComponentCountMismatch as err:
            if attempt == widenings:
                raise
            if verbose:
                print(f"[wishcut] {err} Widening the window.")
            window = _widen(window, 1.5)


def _trace_window(p, info, window, nx, ny, workers, verbose):
    x0, x1, y0, y1 = window
    if abs(y0 + y1) > 1e-12 * max(1.0, abs(y1)) or y1 <= 0:
        raise InvalidParameters("window must be symmetric about the real axis (y_min = -y_max).")
    if not (x0 < info.lambda1 and max(info.lambda2, info.lambda3.real) < x1 and info.lambda3.imag < y1):
        raise InvalidParameters("window must contain all four branch points.")

    nyh = ny // 2
    xs = np.linspace(x0, x1, nx)
    dx = xs[1] - xs[0]
    dy = y1 / nyh
    ys = (np.arange(nyh) + 0.5) * dy
    if verbose:
        print(f"[wishcut] Tracing zero set on a {nx}x{2 * nyh} grid over "
              f"[{x0:.4g}, {x1:.4g}] x [{y0:.4g}, {y1:.4g}]")

    column = x1 + 1j * ys
    theta_start = theta_diff(p, column[0]).value
    xi_start = branch_values(p, column[0]).as_array()
    theta_col, xi_col = _sweep(p, column, theta_start, xi_start)

    tasks = [(p, xs[::-1] + 1j * ys[k], theta_col[k], xi_col[k]) for k in range(nyh)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_row_values, tasks))
    else:
        rows = [_row_values(t) for t in tasks]
    upper = np.array([r[::-1] for r in rows])

    y_full = np.concatenate([-ys[::-1], ys])
    F = np.concatenate([upper[::-1], upper], axis=0)
    polylines = _extract_zero_polylines(xs, y_full, F, info.lambda3)
    curves, (xl, xr) = _classify(polylines, info, max(dx, dy))

    x_L = _refine_crossing(p, xl, dx)
    x_R = _refine_crossing(p, xr, dx)
    if not (x_L < x_R and x_L < info.lambda2 and x_R > info.lambda1):
        raise ComponentCountMismatch(
            f"Real crossings x_L={x_L:.6g}, x_R={x_R:.6g} do not straddle part of the support."
        )
    iota = find_iota(p)
    if verbose:
        print(f"[wishcut] x_L = {x_L:.10g}, x_R = {x_R:.10g}, iota = {iota:.10g}")
    return LevelSetGeometry(curves=curves, x_L=x_L, x_R=x_R, iota=iota,
                            window=(x0, x1, y0, y1), spacing=(dx, dy))


def sign_structure(p, geometry, offsets=(0.5, 1.0)):
    """
    Re(theta_2 - theta_3) sampled left of H_L and right of H_R.

    Left samples use the labels continued from -inf (the negative of the +i0
    continuation), right samples those from +inf; this is the orientation in
    which the left region is negative for a < 1.
    """
    info = require_one_cut(p)
    height = 0.25 * info.lambda3.imag
    left = []
    right = []
    for d in offsets:
        for y in (0.0, height):
            left.append(-theta_diff(p, complex(geometry.x_L - d, y)).value.real)
            right.append(theta_diff(p, complex(geometry.x_R + d, y)).value.real)
    return {"left": np.array(left), "right": np.array(right)}


def polyline_frame(geometry):
    """Tagged curves as rows x, y, curve_tag in CURVE_TAGS order."""
    frames = []
    for tag in CURVE_TAGS:
        pts = geometry.curves[tag]
        frames.append(pd.DataFrame({"x": pts.real, "y": pts.imag, "curve_tag": tag}))
    return pd.concat(frames, ignore_index=True)


def export_polylines(geometry, path):
    """Write the tagged curves as CSV columns x, y, curve_tag."""
    df = polyline_frame(geometry)
    df.to_csv(path, index=False, float_format="%.17g")
    return df

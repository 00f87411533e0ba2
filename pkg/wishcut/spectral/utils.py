# MIT License
# Copyright (c) 2026 wishcut developers
# See LICENSE file for full license information.
"""
Wishcut

Root pairing and path continuation helpers for the spectral curve.

File name:wishcut/spectral/utils.py

Author: wishcut developers
Created: 2026-10-19
"""
import numpy as np

from wishcut.errors import BranchCollision

PAIRING_MARGIN = 3.0


def pair_roots(previous, candidates, margin=PAIRING_MARGIN):
    """
    Match each previous root to its nearest candidate.

    Returns the candidates reordered to follow `previous`, or None when the
    matching is not a permutation or some nearest distance is not clearly
    separated from the second nearest (by the factor `margin`).
    """
    previous = np.asarray(previous, dtype=complex)
    candidates = np.asarray(candidates, dtype=complex)
    dist = np.abs(previous[:, None] - candidates[None, :])
    order = np.argsort(dist, axis=1)
    nearest = order[:, 0]
    if len(set(nearest.tolist())) != len(nearest):
        return None
    rows = np.arange(len(previous))
    d1 = dist[rows, order[:, 0]]
    d2 = dist[rows, order[:, 1]]
    if np.any(d2 <= margin * d1):
        return None
    return candidates[nearest]


def track_segment(roots_at, w0, w1, xi, singular_points=(), margin=PAIRING_MARGIN):
    """
    Carry the labeled roots `xi` (valid at w0) along the straight segment to w1.

    Steps never exceed half the distance to the nearest singular point, so a
    branch point cannot be stepped over; inside that limit the step is halved
    until pairing succeeds.
    """
    w0 = complex(w0)
    w1 = complex(w1)
    xi = np.asarray(xi, dtype=complex)
    length = abs(w1 - w0)
    if length == 0.0:
        return xi
    direction = (w1 - w0) / length
    singular = np.asarray(list(singular_points), dtype=complex)

    s = 0.0
    step = length
    while s < length:
        w = w0 + direction * s
        h = min(step, length - s)
        if singular.size:
            h = min(h, 0.5 * float(np.min(np.abs(w - singular))))
        while True:
            if h <= 1e-14 * (1.0 + abs(w)):
                raise BranchCollision(
                    f"Root pairing failed near z = {w:.6g}; "
                    "the path runs into a branch point or the parameters are near critical."
                )
            target = w1 if h >= length - s else w + direction * h
            paired = pair_roots(xi, roots_at(target), margin)
            if paired is not None:
                break
            h *= 0.5
        xi = paired
        s = length if h >= length - s else s + h
        step = 2.0 * h
    return xi


def track_path(roots_at, waypoints, xi, singular_points=(), margin=PAIRING_MARGIN):
    for w0, w1 in zip(waypoints[:-1], waypoints[1:]):
        xi = track_segment(roots_at, w0, w1, xi, singular_points, margin)
    return xi


def track_points(roots_at, points, xi, singular_points=(), margin=PAIRING_MARGIN):
    """Continue along consecutive points, returning the labeled roots at each one."""
    out = [np.asarray(xi, dtype=complex)]
    for w0, w1 in zip(points[:-1], points[1:]):
        xi = track_segment(roots_at, w0, w1, xi, singular_points, margin)
        out.append(xi)
    return np.array(out)


class LabeledTable:
    """
    Labeled roots at a chain of points, evaluated anywhere nearby by a short
    continuation from the closest tabulated point.
    """

    def __init__(self, roots_at, points, xi_start, singular_points=()):
        self.roots_at = roots_at
        self.points = np.asarray(points, dtype=complex)
        self.singular_points = tuple(singular_points)
        self.labels = track_points(roots_at, list(self.points), xi_start, self.singular_points)

    def at(self, w):
        k = int(np.argmin(np.abs(self.points - w)))
        return track_segment(self.roots_at, self.points[k], w, self.labels[k], self.singular_points)


def distance_to_segment(w, w0, w1):
    d = w1 - w0
    if d == 0:
        return abs(w - w0)
    t = ((w - w0) * np.conj(d)).real / abs(d) ** 2
    t = min(1.0, max(0.0, t))
    return abs(w - (w0 + t * d))

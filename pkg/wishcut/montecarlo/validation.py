# MIT License
# Copyright (c) 2026 wishcut developers
# See LICENSE file for full license information.
"""
Wishcut

Statistical checks of sampled spectra against the limiting density, the
sine-kernel spacing law and the Tracy-Widom law.

File name:wishcut/montecarlo/validation.py

Author: wishcut developers
Created: 2026-10-19
"""
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.stats import kstest

from wishcut.errors import InvalidParameters
from wishcut.spectral.curve import (
    DensityTable,
    require_one_cut,
    cdf_F,
    edge_constants,
    marchenko_pastur_density,
    marchenko_pastur_edges,
)
from wishcut.limits.kernels import sine_spacing_cdf
from wishcut.limits.tracywidom import S_MIN, S_MAX, tw_table, tw_moments
from .sampler import SampleConfig, sample_spectrum

THRESHOLDS = {
    "bulk_ks": 0.02,
    "outside_fraction": 0.01,
    "edge_ks": 0.1,
    "edge_mean": 0.15,
    "spacing_ks": 0.05,
    "poisson_ks": 0.2,
}
OUTSIDE_MARGIN = 0.1
SPACING_WINDOW = 0.2
TW_GRID_STEP = 0.02


@dataclass
class ValidationResult:
    name: str
    statistic: float
    threshold: float
    passed: bool
    details: dict = field(default_factory=dict)

    def as_dict(self):
        return {
            "name": self.name,
            "statistic": self.statistic,
            "threshold": self.threshold,
            "passed": self.passed,
            "details": dict(self.details),
        }


def _thresholds(overrides):
    out = dict(THRESHOLDS)
    for key, value in (overrides or {}).items():
        if key not in out:
            raise InvalidParameters(f"Unknown threshold: {key}")
        out[key] = float(value)
    return out


def _sample(cfg, sample, workers, verbose):
    return sample if sample is not None else sample_spectrum(cfg, workers=workers, verbose=verbose)


def bulk_density_test(cfg, sample=None, thresholds=None, workers=1, verbose=False):
    """KS distance of the pooled eigenvalues to the CDF of rho / c."""
    th = _thresholds(thresholds)
    p = cfg.params()
    info = require_one_cut(p)
    sample = _sample(cfg, sample, workers, verbose)
    pooled = sample.pooled()
    stat = float(kstest(pooled, lambda x: cdf_F(p, x)).statistic)
    outside = float(np.mean((pooled < info.lambda1 - OUTSIDE_MARGIN) | (pooled > info.lambda2 + OUTSIDE_MARGIN)))
    passed = stat < th["bulk_ks"] and outside < th["outside_fraction"]
    if verbose:
        print(f"[wishcut] bulk density KS = {stat:.5f}, outside fraction = {outside:.5f}")
    return ValidationResult("bulk_density", stat, th["bulk_ks"], bool(passed),
                            {"outside_fraction": outside, "pooled_size": int(pooled.size)})


def marchenko_pastur_table(sigma2, c, n=2001):
    """CDF table of the Marchenko-Pastur law of F (density / c)."""
    return DensityTable(None, n, density_fn=lambda x: marchenko_pastur_density(sigma2, c, x) / c,
                        edges=marchenko_pastur_edges(sigma2, c))


def marchenko_pastur_test(cfg, sigma2, sample=None, workers=1):
    """KS distance of the pooled eigenvalues to the Marchenko-Pastur law with variance sigma2."""
    table = marchenko_pastur_table(sigma2, cfg.N / cfg.M)
    sample = _sample(cfg, sample, workers, False)
    return float(kstest(sample.pooled(), table.cdf).statistic)


@lru_cache(maxsize=1)
def tw_reference():
    """Painleve-route F2 table used as the KS reference, with its mean."""
    grid = np.arange(S_MIN, S_MAX + 0.5 * TW_GRID_STEP, TW_GRID_STEP)
    table = tw_table(grid, method="painleve")
    return table, tw_moments(table)[0]


def edge_statistic(cfg, sample):
    """(y_max - lambda_2)(M rho_2)^(2/3) per replicate."""
    p = cfg.params()
    info = require_one_cut(p)
    rho2 = edge_constants(p)[1]
    return (sample.largest() - info.lambda2) * (cfg.M * rho2) ** (2.0 / 3.0)


def edge_fluctuation_test(cfg, sample=None, thresholds=None, workers=1, verbose=False):
    """KS distance of the rescaled largest eigenvalue to Tracy-Widom."""
    th = _thresholds(thresholds)
    if cfg.replicates < 200:
        raise InvalidParameters(f"edge_fluctuation_test needs at least 200 replicates, got {cfg.replicates}.")
    sample = _sample(cfg, sample, workers, verbose)
    s = edge_statistic(cfg, sample)
    table, tw_mean = tw_reference()
    stat = float(kstest(s, lambda x: np.interp(x, table.s_grid, table.F2, left=0.0, right=1.0)).statistic)
    mean_gap = abs(float(np.mean(s)) - tw_mean)
    passed = stat < th["edge_ks"] and mean_gap < th["edge_mean"]
    if verbose:
        print(f"[wishcut] edge KS = {stat:.5f}, mean s = {np.mean(s):.4f} (TW mean {tw_mean:.4f})")
    return ValidationResult("edge_fluctuation", stat, th["edge_ks"], bool(passed),
                            {"mean": float(np.mean(s)), "tw_mean": float(tw_mean), "mean_gap": mean_gap})


def unfolded_spacings(cfg, sample):
    """
    Nearest-neighbour spacings of N * F(y) for eigenvalues whose unfolded
    position lies in the central SPACING_WINDOW of mass around the support midpoint.
    """
    p = cfg.params()
    info = require_one_cut(p)
    q0 = float(cdf_F(p, 0.5 * (info.lambda1 + info.lambda2)))
    lo = max(0.0, q0 - 0.5 * SPACING_WINDOW)
    hi = min(1.0, q0 + 0.5 * SPACING_WINDOW)
    out = []
    for row in sample.eigenvalues:
        q = cdf_F(p, row)
        u = cfg.N * q[(q >= lo) & (q <= hi)]
        out.append(np.diff(u))
    return np.concatenate(out)


def bulk_spacing_test(cfg, sample=None, thresholds=None, workers=1, verbose=False):
    """KS distance of unfolded bulk spacings to the sine-kernel spacing law."""
    th = _thresholds(thresholds)
    sample = _sample(cfg, sample, workers, verbose)
    s = unfolded_spacings(cfg, sample)
    stat = float(kstest(s, sine_spacing_cdf).statistic)
    poisson = float(kstest(s, "expon").statistic)
    passed = stat < th["spacing_ks"] and poisson > th["poisson_ks"]
    if verbose:
        print(f"[wishcut] spacing KS = {stat:.5f}, exponential KS = {poisson:.5f}, mean = {np.mean(s):.4f}")
    return ValidationResult("bulk_spacing", stat, th["spacing_ks"], bool(passed),
                            {"poisson_ks": poisson, "mean_spacing": float(np.mean(s)), "count": int(s.size)})


def run_validation(cfg, thresholds=None, workers=1, verbose=False):
    """All three checks on one sample (the edge check needs at least 200 replicates)."""
    sample = sample_spectrum(cfg, workers=workers, verbose=verbose)
    return [
        bulk_density_test(cfg, sample, thresholds, verbose=verbose),
        bulk_spacing_test(cfg, sample, thresholds, verbose=verbose),
        edge_fluctuation_test(cfg, sample, thresholds, verbose=verbose),
    ]


def edge_convergence_trend(a=0.9, c=0.4, beta=0.7, sizes=(200, 400, 800), repetitions=5,
                           replicates=400, seed=0, workers=1, verbose=False):
    """Median edge KS over repetitions for each M at fixed c and beta."""
    out = {}
    for M in sizes:
        N = int(round(c * M))
        N1 = int(round(beta * N))
        stats = []
        for rep in range(repetitions):
            rep_seed = int(np.random.SeedSequence([int(seed), int(M), rep]).generate_state(1, np.uint64)[0])
            cfg = SampleConfig(M=M, N=N, N1=N1, a=a, replicates=replicates, seed=rep_seed)
            stats.append(edge_fluctuation_test(cfg, workers=workers).statistic)
        out[M] = float(np.median(stats))
        if verbose:
            print(f"[wishcut] M = {M}: median edge KS = {out[M]:.5f}")
    return out

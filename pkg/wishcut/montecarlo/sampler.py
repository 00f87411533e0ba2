# MIT License
# Copyright (c) 2026 wishcut developers
# See LICENSE file for full license information.
"""
Wishcut

Seeded sampling of B_N = M^-1 Sigma^1/2 X^H X Sigma^1/2 and its spectrum.

File name:wishcut/montecarlo/sampler.py

Author: wishcut developers
Created: 2026-10-19
"""
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial

import numpy as np
import pandas as pd
from scipy.linalg import eigh, LinAlgError

from wishcut.errors import InvalidParameters, NoConvergence
from wishcut.spectral.curve import EnsembleParams

HERMITIAN_RTOL = 1e-12


@dataclass(frozen=True)
class SampleConfig:
    M: int
    N: int
    N1: int
    a: float
    replicates: int = 1
    seed: int = 0

    def __post_init__(self):
        if self.N < 1 or self.M < self.N:
            raise InvalidParameters(f"Require 1 <= N <= M, got M={self.M}, N={self.N}.")
        if not 0 <= self.N1 <= self.N:
            raise InvalidParameters(f"Require 0 <= N1 <= N, got N1={self.N1}.")
        if not self.a > 0:
            raise InvalidParameters(f"a must be positive, got {self.a}.")
        if self.replicates < 1:
            raise InvalidParameters(f"replicates must be positive, got {self.replicates}.")
        if not 0 <= self.seed < 2 ** 64:
            raise InvalidParameters(f"seed must be a 64-bit unsigned integer, got {self.seed}.")

    def params(self):
        """Finite-size ensemble parameters (c = N/M, beta = N1/N)."""
        return EnsembleParams.from_sizes(self.M, self.N, self.N1, self.a)

    def sigma(self):
        return np.concatenate([np.ones(self.N - self.N1), np.full(self.N1, float(self.a))])


@dataclass(frozen=True)
class EigenSample:
    eigenvalues: np.ndarray
    seeds: tuple

    @property
    def replicates(self):
        return self.eigenvalues.shape[0]

    def pooled(self):
        return np.sort(self.eigenvalues.ravel())

    def largest(self):
        return self.eigenvalues[:, -1]

    def to_frame(self):
        R, N = self.eigenvalues.shape
        return pd.DataFrame({
            "replicate": np.repeat(np.arange(R), N),
            "seed": np.repeat(np.array(self.seeds, dtype=np.uint64), N),
            "index": np.tile(np.arange(N), R),
            "eigenvalue": self.eigenvalues.ravel(),
        })


def replicate_seed(seed, replicate):
    """64-bit seed of one replicate, a hash of (seed, replicate)."""
    return int(np.random.SeedSequence([int(seed), int(replicate)]).generate_state(1, np.uint64)[0])


def replicate_generator(seed, replicate):
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([int(seed), int(replicate)])))


def hermitian_eigen(H, vectors=False):
    """
    Eigenvalues (ascending) of a dense Hermitian matrix; with vectors=True
    also the eigenvectors as columns.
    """
    H = np.asarray(H)
    if H.ndim != 2 or H.shape[0] != H.shape[1]:
        raise InvalidParameters(f"Expected a square matrix, got shape {H.shape}.")
    scale = max(1.0, float(np.max(np.abs(H)))) if H.size else 1.0
    if np.max(np.abs(H - H.conj().T), initial=0.0) > HERMITIAN_RTOL * scale:
        raise InvalidParameters("Matrix is not Hermitian within 1e-12 relative.")
    try:
        if vectors:
            return eigh(H, check_finite=True)
        return eigh(H, eigvals_only=True, check_finite=True)
    except (LinAlgError, ValueError) as err:
        raise NoConvergence(f"Hermitian eigensolver failed: {err}") from None


def sample_matrix(cfg, replicate):
    """B_N for one replicate."""
    rng = replicate_generator(cfg.seed, replicate)
    g = rng.standard_normal((cfg.M, cfg.N, 2)) * np.sqrt(0.5)
    X = g[..., 0] + 1j * g[..., 1]
    Y = X * np.sqrt(cfg.sigma())[None, :]
    B = Y.conj().T @ Y / cfg.M
    return 0.5 * (B + B.conj().T)


def _replicate_spectrum(cfg, replicate):
    return hermitian_eigen(sample_matrix(cfg, replicate))


def sample_spectrum(cfg, workers=1, verbose=False):
    """
    Sorted eigenvalues of B_N for each replicate.

    Each replicate draws from its own Philox stream keyed on (seed, replicate),
    so the output does not depend on the worker count.
    """
    if verbose:
        print(f"[wishcut] Sampling {cfg.replicates} replicates of B_N with M={cfg.M}, N={cfg.N}, "
              f"N1={cfg.N1}, a={cfg.a}")
    fn = partial(_replicate_spectrum, cfg)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(fn, range(cfg.replicates)))
    else:
        rows = [fn(r) for r in range(cfg.replicates)]
    seeds = tuple(replicate_seed(cfg.seed, r) for r in range(cfg.replicates))
    return EigenSample(eigenvalues=np.array(rows), seeds=seeds)

# MIT License
# Copyright (c) 2026 wishcut developers
# See LICENSE file for full license information.
"""
Wishcut

KEY = VALUE run configuration: parsing, defaults, validation and the
resulting RunConfig.

File name:wishcut/cli/parser.py

Author: wishcut developers
Created: 2026-10-19
"""

import ast
from dataclasses import dataclass, field

import numpy as np

from wishcut.errors import InvalidParameters
from wishcut.spectral.curve import EnsembleParams
from wishcut.finite.mops import WeightPair
from wishcut.montecarlo.sampler import SampleConfig

MODES = ("classify", "density", "hset", "tw", "kernel-finite", "validate")

TOLERANCE_KEYS = {
    "TOL_BULK_KS": "bulk_ks",
    "TOL_OUTSIDE_FRACTION": "outside_fraction",
    "TOL_EDGE_KS": "edge_ks",
    "TOL_EDGE_MEAN": "edge_mean",
    "TOL_SPACING_KS": "spacing_ks",
    "TOL_POISSON_KS": "poisson_ks",
}

INT_KEYS = ("M", "N", "N1", "REPLICATES", "SEED", "WORKERS", "GRID_POINTS", "PREC")
FLOAT_KEYS = ("A", "C", "BETA") + tuple(TOLERANCE_KEYS)
BOOL_KEYS = ("TIMINGS", "VERBOSE")
LIST_KEYS = ("WINDOW", "RESOLUTION")


def parse_grid(text):
    """'lo:hi:step' -> inclusive grid."""
    try:
        lo, hi, step = (float(t) for t in str(text).split(":"))
    except ValueError:
        raise InvalidParameters(f"Grid must read 'lo:hi:step', got {text!r}.") from None
    if step <= 0 or hi < lo:
        raise InvalidParameters(f"Grid needs lo <= hi and step > 0, got {text!r}.")
    n = int(np.floor((hi - lo) / step + 1e-9)) + 1
    return lo + step * np.arange(n)


@dataclass(frozen=True)
class RunConfig:
    command: str
    params: object = None
    out: str = None
    fmt: str = "json"
    tolerances: dict = field(default_factory=dict)
    seed: int = 0
    options: dict = field(default_factory=dict)
    timings: bool = True
    verbose: bool = True


class RunConfigParser:
    def __init__(self, filepath=None, overrides=None):
        self.filepath = filepath
        self.params = {
            'MODE': None,
            # Ensemble
            'A': None,
            'C': None,
            'BETA': None,
            'M': None,
            'N': None,
            'N1': None,

            # density / hset
            'GRID_POINTS': 401,
            'WINDOW': None,
            'RESOLUTION': [400, 400],

            # tw
            'METHOD': 'both',
            'GRID': '-8:4:0.05',

            # kernel-finite
            'PREC': 256,
            'X_GRID': '0.1:3:0.1',

            # validate
            'REPLICATES': 200,
            'SEED': 0,
            'WORKERS': 1,

            # Common
            'OUT': None,
            'FORMAT': None,
            'TIMINGS': True,
            'VERBOSE': True,
        }
        for key in TOLERANCE_KEYS:
            self.params[key] = None

        if filepath is not None:
            self._parse()
        for key, value in (overrides or {}).items():
            if value is None:
                continue
            key = key.upper().replace("-", "_")
            if key not in self.params:
                raise InvalidParameters(f"Unknown config key: {key}")
            if isinstance(value, str):
                self._parse_single_key(key, value)
            else:
                self.params[key] = value
        self._apply_defaults()
        self._validate()

    def _parse(self):
        with open(self.filepath, 'r') as f:
            lines = f.readlines()

        for raw_line in lines:
            line = raw_line.strip()
            if not line or line.startswith('#'):
                continue
            if '#' in line:
                line = line.split('#', 1)[0].strip()
            if '=' not in line:
                raise InvalidParameters(f"Malformed config line: {raw_line.strip()!r}")
            key, value = map(str.strip, line.split('=', 1))
            key = key.upper()
            if key not in self.params:
                raise InvalidParameters(f"Unknown config key: {key}")
            self._parse_single_key(key, value)

    def _parse_single_key(self, key, value):
        try:
            if key in INT_KEYS:
                self.params[key] = int(value)
            elif key in FLOAT_KEYS:
                self.params[key] = float(value)
            elif key in BOOL_KEYS:
                val = value.strip().lower()
                if val in ['true', '.true.', 't', '1', 'yes']:
                    self.params[key] = True
                elif val in ['false', '.false.', 'f', '0', 'no']:
                    self.params[key] = False
                else:
                    raise InvalidParameters(f"{key} must be True or False.")
            elif key in LIST_KEYS:
                parsed = ast.literal_eval(value)
                if isinstance(parsed, (int, float)):
                    parsed = [parsed, parsed]
                self.params[key] = list(parsed)
            elif key == 'MODE':
                self.params[key] = value.strip().lower()
            elif key in ('METHOD', 'FORMAT'):
                self.params[key] = value.strip().lower()
            else:
                self.params[key] = value.strip()
        except (ValueError, SyntaxError) as err:
            if isinstance(err, InvalidParameters):
                raise
            raise InvalidParameters(f"Invalid value for {key}: {value!r}") from None

    def _apply_defaults(self):
        if self.params['FORMAT'] is None:
            self.params['FORMAT'] = 'json' if self.params['MODE'] in ('classify', 'validate') else 'csv'

    def _validate(self):
        mode = self.params['MODE']
        if mode not in MODES:
            raise InvalidParameters(f"MODE must be one of {', '.join(MODES)}; got {mode!r}.")
        if self.params['FORMAT'] not in ('csv', 'json'):
            raise InvalidParameters("FORMAT must be 'csv' or 'json'.")
        if mode in ('classify', 'density', 'hset'):
            for key in ('A', 'C', 'BETA'):
                if self.params[key] is None:
                    raise InvalidParameters(f"{key} is required in {mode} mode.")
        if mode in ('kernel-finite', 'validate'):
            for key in ('M', 'N', 'N1', 'A'):
                if self.params[key] is None:
                    raise InvalidParameters(f"{key} is required in {mode} mode.")
        if mode == 'tw' and self.params['METHOD'] not in ('fredholm', 'painleve', 'both'):
            raise InvalidParameters("METHOD must be 'fredholm', 'painleve' or 'both'.")
        if self.params['WINDOW'] is not None and len(self.params['WINDOW']) != 4:
            raise InvalidParameters("WINDOW must be [x_min, x_max, y_min, y_max].")
        if len(self.params['RESOLUTION']) != 2:
            raise InvalidParameters("RESOLUTION must be an integer or [nx, ny].")
        if self.params['WORKERS'] < 1:
            raise InvalidParameters("WORKERS must be at least 1.")

    def get(self, key):
        return self.params.get(key.upper())

    def as_dict(self):
        return self.params.copy()

    def _target(self):
        mode = self.params['MODE']
        p = self.params
        if mode in ('classify', 'density', 'hset'):
            sizes = (p['M'], p['N'], p['N1'])
            if all(s is not None for s in sizes):
                return EnsembleParams(a=p['A'], c=p['C'], beta=p['BETA'], M=p['M'], N=p['N'], N1=p['N1'])
            return EnsembleParams(a=p['A'], c=p['C'], beta=p['BETA'])
        if mode == 'kernel-finite':
            return WeightPair(M=p['M'], N=p['N'], N1=p['N1'], a=p['A'])
        if mode == 'validate':
            return SampleConfig(M=p['M'], N=p['N'], N1=p['N1'], a=p['A'], replicates=p['REPLICATES'], seed=p['SEED'])
        return None

    def to_run_config(self):
        """RunConfig with the target parameters validated by their own module."""
        p = self.params
        options = {
            'grid_points': p['GRID_POINTS'],
            'window': None if p['WINDOW'] is None else tuple(float(w) for w in p['WINDOW']),
            'resolution': tuple(int(r) for r in p['RESOLUTION']),
            'method': p['METHOD'],
            'grid': p['GRID'],
            'prec': p['PREC'],
            'x_grid': p['X_GRID'],
            'workers': p['WORKERS'],
        }
        tolerances = {TOLERANCE_KEYS[k]: p[k] for k in TOLERANCE_KEYS if p[k] is not None}
        return RunConfig(command=p['MODE'], params=self._target(), out=p['OUT'], fmt=p['FORMAT'],
                         tolerances=tolerances, seed=p['SEED'], options=options,
                         timings=p['TIMINGS'], verbose=p['VERBOSE'])

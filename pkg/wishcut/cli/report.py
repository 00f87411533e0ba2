# MIT License
# Copyright (c) 2026 wishcut developers
# See LICENSE file for full license information.
"""
Wishcut

JSON reports and CSV tables written by the command-line interface.

File name:wishcut/cli/report.py

Author: wishcut developers
Created: 2026-10-19
"""
import json
import sys
from dataclasses import asdict, is_dataclass

import numpy as np

from wishcut.errors import InvalidParameters

SCHEMA_VERSION = "v1"
FLOAT_FORMAT = "%.17g"


def _plain(value):
    if is_dataclass(value) and not isinstance(value, type):
        return {k: _plain(v) for k, v in asdict(value).items()}
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [_plain(v) for v in value]
    if isinstance(value, (complex, np.complexfloating)):
        return [float(value.real), float(value.imag)]
    if isinstance(value, (np.bool_, bool)):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    return value


def emit_report(results, command, seed, config, timings=None):
    """
    Validation report as a JSON string.

    Fields appear in a fixed order; `timings` (stage -> seconds) is omitted
    when None so that identical runs give identical bytes.
    """
    if not results:
        raise InvalidParameters("emit_report needs at least one executed test.")
    doc = {
        "schema": SCHEMA_VERSION,
        "command": command,
        "seed": int(seed),
        "config": _plain(config),
        "results": [_plain(r.as_dict() if hasattr(r, "as_dict") else r) for r in results],
        "passed": all(bool(r.passed if hasattr(r, "passed") else r["passed"]) for r in results),
    }
    if timings is not None:
        doc["timings"] = {k: float(v) for k, v in timings.items()}
    return json.dumps(doc, indent=2)


def write_json(doc, path=None):
    text = doc if isinstance(doc, str) else json.dumps(_plain(doc), indent=2)
    if path:
        with open(path, "w") as f:
            f.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def write_table(df, path=None, fmt="csv"):
    """CSV with 17 significant digits, or JSON records."""
    if fmt == "json":
        write_json({"schema": SCHEMA_VERSION, "columns": list(df.columns),
                    "rows": _plain(df.to_dict(orient="records"))}, path)
    elif path:
        df.to_csv(path, index=False, float_format=FLOAT_FORMAT)
    else:
        df.to_csv(sys.stdout, index=False, float_format=FLOAT_FORMAT)

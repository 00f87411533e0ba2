# MIT License
# Copyright (c) 2026 wishcut developers
# See LICENSE file for full license information.
"""
Wishcut

Run configuration and report writers for the wishcut command line.

File name:wishcut/cli/__init__.py

Author: wishcut developers
Created: 2026-10-19
"""

from .parser import RunConfig, RunConfigParser, parse_grid, MODES
from .report import emit_report, write_json, write_table
__all__ = ["RunConfig", "RunConfigParser", "parse_grid", "MODES", "emit_report", "write_json", "write_table"]

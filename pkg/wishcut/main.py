# MIT License
# Copyright (c) 2026 wishcut developers
# See LICENSE file for full license information.
"""
Wishcut

Command-line entry point: subcommands classify, density, hset, tw,
kernel-finite and validate, driven by flags or a KEY = VALUE config file.

File name:wishcut/main.py

Author: wishcut developers
Created: 2026-10-19
"""
import argparse
import sys
import time
from contextlib import redirect_stdout

import numpy as np
import pandas as pd

from wishcut.errors import InvalidParameters, WishcutError
from wishcut.cli.parser import RunConfigParser, parse_grid, TOLERANCE_KEYS
from wishcut.cli.report import SCHEMA_VERSION, emit_report, write_json, write_table
from wishcut.spectral.curve import classify_support, density_profile
from wishcut.spectral.hgeometry import trace_hset, export_polylines, polyline_frame
from wishcut.limits.tracywidom import tw_table
from wishcut.finite.kernel import kernel_grid
from wishcut.montecarlo.sampler import sample_spectrum
from wishcut.montecarlo.validation import bulk_density_test, bulk_spacing_test, edge_fluctuation_test

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

CSV_COLUMNS = """CSV columns:
  density        z, rho, rho_over_c
  hset           x, y, curve_tag   (curve_tag in H_inf_plus, H_inf_minus, H_L, H_R)
                 written to --out; the x_L, x_R, iota summary always goes to stdout as JSON
                 and carries the rows itself when --out is absent
  tw             s, fredholm, painleve, abs_diff   (only the requested method columns)
  kernel-finite  x, y, K
"""


def _ensemble_echo(p):
    return {"a": p.a, "c": p.c, "beta": p.beta, "M": p.M, "N": p.N, "N1": p.N1}


def _classify(rc):
    info = classify_support(rc.params)
    doc = {"schema": SCHEMA_VERSION, "command": "classify", "params": _ensemble_echo(rc.params)}
    doc.update(info.as_dict())
    write_json(doc, rc.out)
    return EXIT_OK


def _density(rc):
    p = rc.params
    prof = density_profile(p, rc.options["grid_points"])
    df = pd.DataFrame({"z": prof.grid, "rho": prof.rho, "rho_over_c": prof.rho / p.c})
    write_table(df, rc.out, rc.fmt)
    return EXIT_OK


def _hset(rc):
    with redirect_stdout(sys.stderr):
        geometry = trace_hset(rc.params, rc.options["window"], rc.options["resolution"],
                              workers=rc.options["workers"], verbose=rc.verbose)
    summary = {"schema": SCHEMA_VERSION, "command": "hset", "params": _ensemble_echo(rc.params),
               "x_L": geometry.x_L, "x_R": geometry.x_R, "iota": geometry.iota,
               "window": list(geometry.window), "spacing": list(geometry.spacing)}
    if rc.out:
        export_polylines(geometry, rc.out)
        write_json(summary, f"{rc.out}.json")
    else:
        # stdout stays a single JSON document
        df = polyline_frame(geometry)
        summary["polylines"] = {"columns": list(df.columns), "rows": df.to_dict(orient="records")}
    write_json(summary)
    return EXIT_OK


def _tw(rc):
    grid = parse_grid(rc.options["grid"])
    method = rc.options["method"]
    methods = ("fredholm", "painleve") if method == "both" else (method,)
    df = pd.DataFrame({"s": grid})
    for m in methods:
        df[m] = tw_table(grid, method=m, workers=rc.options["workers"]).F2
    if method == "both":
        df["abs_diff"] = (df["fredholm"] - df["painleve"]).abs()
    write_table(df, rc.out, rc.fmt)
    return EXIT_OK


def _kernel_finite(rc):
    xs = parse_grid(rc.options["x_grid"])
    if xs[0] <= 0:
        raise InvalidParameters("X_GRID must contain positive points only.")
    K = kernel_grid(rc.params, xs, xs, rc.options["prec"])
    df = pd.DataFrame({"x": np.repeat(xs, len(xs)), "y": np.tile(xs, len(xs)), "K": np.asarray(K).ravel()})
    write_table(df, rc.out, rc.fmt)
    return EXIT_OK


def _validate(rc):
    cfg = rc.params
    timings = {}
    start = time.perf_counter()
    # stdout carries only the report
    with redirect_stdout(sys.stderr):
        sample = sample_spectrum(cfg, workers=rc.options["workers"], verbose=rc.verbose)
        timings["sample"] = time.perf_counter() - start
        results = []
        for name, test in (("bulk_density", bulk_density_test), ("bulk_spacing", bulk_spacing_test),
                           ("edge_fluctuation", edge_fluctuation_test)):
            start = time.perf_counter()
            results.append(test(cfg, sample, rc.tolerances, verbose=rc.verbose))
            timings[name] = time.perf_counter() - start
    config = {"M": cfg.M, "N": cfg.N, "N1": cfg.N1, "a": cfg.a, "replicates": cfg.replicates,
              "tolerances": dict(sorted(rc.tolerances.items()))}
    report = emit_report(results, "validate", cfg.seed, config, timings if rc.timings else None)
    write_json(report, rc.out)
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAILED


HANDLERS = {
    "classify": _classify,
    "density": _density,
    "hset": _hset,
    "tw": _tw,
    "kernel-finite": _kernel_finite,
    "validate": _validate,
}


def run_from_config(config_path, overrides=None):
    """Run the MODE named in a config file (flags in `overrides` win) and return the exit code."""
    parser = RunConfigParser(config_path, overrides)
    rc = parser.to_run_config()
    if rc.verbose:
        print(f"[wishcut] Running {rc.command}", file=sys.stderr)
    mode = rc.command
    if mode not in HANDLERS:
        raise ValueError(f"Unknown mode: '{mode}'.")
    return HANDLERS[mode](rc)


def _add_common(sub):
    sub.add_argument("--config", type=str, default=None, help="KEY = VALUE config file; flags override it")
    sub.add_argument("--out", type=str, default=None, help="output path (stdout if omitted)")
    sub.add_argument("--format", choices=("csv", "json"), default=None)
    sub.add_argument("--seed", type=int, default=None)
    sub.add_argument("--workers", type=int, default=None)
    sub.add_argument("--no-timings", dest="timings", action="store_const", const=False, default=None)
    sub.add_argument("--quiet", dest="verbose", action="store_const", const=False, default=None)


def _add_ensemble(sub):
    sub.add_argument("--a", type=float, default=None, help="second covariance eigenvalue")
    sub.add_argument("--c", type=float, default=None, help="ratio N/M in (0,1)")
    sub.add_argument("--beta", type=float, default=None, help="fraction N1/N in (0,1)")


def _add_sizes(sub, with_a=True):
    sub.add_argument("--M", type=int, default=None)
    sub.add_argument("--N", type=int, default=None)
    sub.add_argument("--N1", type=int, default=None)
    if with_a:
        sub.add_argument("--a", type=float, default=None)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="wishcut",
        description="One-cut Wishart ensembles with two-point covariance spectrum",
        epilog=CSV_COLUMNS,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    subs = parser.add_subparsers(dest="command", required=True)

    run = subs.add_parser("run", help="run the MODE given in a config file")
    run.add_argument("config", type=str, help="Path to the configuration file")

    sub = subs.add_parser("classify", help="support classification as JSON")
    _add_ensemble(sub)
    _add_sizes(sub, with_a=False)
    _add_common(sub)

    sub = subs.add_parser("density", help="density grid CSV")
    _add_ensemble(sub)
    sub.add_argument("--points", dest="grid_points", type=int, default=None)
    _add_common(sub)

    sub = subs.add_parser("hset", help="zero-set polylines CSV and crossing summary JSON")
    _add_ensemble(sub)
    sub.add_argument("--window", type=float, nargs=4, default=None, metavar=("XMIN", "XMAX", "YMIN", "YMAX"))
    sub.add_argument("--resolution", type=int, nargs="+", default=None)
    _add_common(sub)

    sub = subs.add_parser("tw", help="Tracy-Widom table CSV")
    sub.add_argument("--method", choices=("fredholm", "painleve", "both"), default=None)
    sub.add_argument("--grid", type=str, default=None, help="lo:hi:step")
    _add_common(sub)

    sub = subs.add_parser("kernel-finite", help="finite-N kernel grid CSV")
    _add_sizes(sub)
    sub.add_argument("--prec", type=int, default=None, help="binary precision")
    sub.add_argument("--x-grid", dest="x_grid", type=str, default=None, help="lo:hi:step")
    _add_common(sub)

    sub = subs.add_parser("validate", help="Monte Carlo validation report")
    _add_sizes(sub)
    sub.add_argument("--replicates", type=int, default=None)
    for key in TOLERANCE_KEYS:
        sub.add_argument("--" + key.lower().replace("_", "-"), dest=key.lower(), type=float, default=None)
    _add_common(sub)
    return parser


def _overrides(args):
    skip = {"command", "config"}
    out = {k: v for k, v in vars(args).items() if k not in skip and v is not None}
    if args.command != "run":
        out["mode"] = args.command
    if "resolution" in out and len(out["resolution"]) == 1:
        out["resolution"] = out["resolution"] * 2
    return out


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return run_from_config(args.config, _overrides(args))
    except InvalidParameters as err:
        print(f"[wishcut] {type(err).__name__}: {err}", file=sys.stderr)
        return EXIT_USAGE
    except WishcutError as err:
        print(f"[wishcut] {type(err).__name__}: {err}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())

import json

import numpy as np
import pandas as pd
import pytest

import wishcut.main as entry
from wishcut.errors import InvalidParameters
from wishcut.cli.parser import RunConfigParser, parse_grid
from wishcut.cli.report import emit_report, write_table
from wishcut.main import main, run_from_config
from wishcut.montecarlo.validation import ValidationResult
from wishcut.spectral.curve import EnsembleParams, density
from wishcut.spectral.hgeometry import CURVE_TAGS, LevelSetGeometry


def _write(tmp_path, text, name="run.cfg"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


# ---- config parsing ------------------------------------------------------------

def test_parse_grid():
    grid = parse_grid("-8:4:0.05")
    assert len(grid) == 241
    assert grid[0] == -8.0 and grid[-1] == pytest.approx(4.0)
    with pytest.raises(InvalidParameters):
        parse_grid("1:0:0.1")
    with pytest.raises(InvalidParameters):
        parse_grid("1,2,3")


def test_config_file_and_overrides(tmp_path):
    path = _write(tmp_path, "# reference ensemble\nMODE = classify\nA = 0.9\nC = 0.4\nBETA = 0.5  # overridden\n")
    parser = RunConfigParser(path, {"beta": 0.7})
    assert parser.get("beta") == 0.7
    assert parser.get("FORMAT") == "json"
    rc = parser.to_run_config()
    assert rc.command == "classify"
    assert rc.params == EnsembleParams(a=0.9, c=0.4, beta=0.7)


def test_config_rejects_unknown_key(tmp_path):
    path = _write(tmp_path, "MODE = classify\nCOLOR = red\n")
    with pytest.raises(InvalidParameters, match="Unknown config key: COLOR"):
        RunConfigParser(path)


def test_config_requires_parameters():
    with pytest.raises(InvalidParameters, match="A is required"):
        RunConfigParser(None, {"mode": "density", "c": 0.4, "beta": 0.7})


def test_tolerances_flow_into_run_config():
    parser = RunConfigParser(None, {"mode": "validate", "M": 40, "N": 16, "N1": 11, "a": 0.9,
                                    "tol_bulk_ks": 0.05})
    rc = parser.to_run_config()
    assert rc.tolerances == {"bulk_ks": 0.05}
    assert rc.params.replicates == 200


# ---- reports ------------------------------------------------------------------

def _results():
    return [ValidationResult("bulk_density", 0.011, 0.02, True, {"outside_fraction": 0.0}),
            ValidationResult("edge_fluctuation", 0.2, 0.1, False, {"mean_gap": 0.3})]


def test_emit_report_rejects_empty_suite():
    with pytest.raises(InvalidParameters):
        emit_report([], "validate", 0, {})


def test_emit_report_is_ordered_and_reproducible():
    first = emit_report(_results(), "validate", 7, {"M": 400})
    second = emit_report(_results(), "validate", 7, {"M": 400})
    assert first == second
    doc = json.loads(first)
    assert list(doc) == ["schema", "command", "seed", "config", "results", "passed"]
    assert doc["schema"] == "v1"
    assert doc["passed"] is False
    timed = json.loads(emit_report(_results(), "validate", 7, {"M": 400}, {"sample": 1.5}))
    assert timed["timings"] == {"sample": 1.5}


def test_write_table_keeps_full_precision(tmp_path):
    path = tmp_path / "t.csv"
    write_table(pd.DataFrame({"x": [1.0 / 3.0]}), str(path))
    assert float(path.read_text().splitlines()[1]) == 1.0 / 3.0


# ---- command line ---------------------------------------------------------------

def test_classify_command(capsys):
    code = main(["classify", "--a", "0.9", "--c", "0.4", "--beta", "0.7", "--quiet"])
    assert code == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["cuts"] == "one-cut"
    assert doc["delta"] < 0
    assert doc["lambda1"] == pytest.approx(0.12518, abs=1e-4)


def test_invalid_ratio_exits_with_usage_code(capsys):
    code = main(["classify", "--a", "0.9", "--c", "1.5", "--beta", "0.7"])
    assert code == 2
    err = capsys.readouterr().err
    assert "InvalidParameters" in err
    assert "c must lie in (0,1)" in err


def test_two_cut_density_is_a_usage_error(capsys):
    code = main(["density", "--a", "10", "--c", "0.05", "--beta", "0.5", "--quiet"])
    assert code == 2
    assert "OneCutRequired" in capsys.readouterr().err


def test_density_command_matches_library(tmp_path):
    out = tmp_path / "density.csv"
    assert main(["density", "--a", "0.9", "--c", "0.4", "--beta", "0.7", "--points", "51",
                 "--out", str(out), "--quiet"]) == 0
    df = pd.read_csv(out)
    assert list(df.columns) == ["z", "rho", "rho_over_c"]
    assert len(df) == 51
    p = EnsembleParams(a=0.9, c=0.4, beta=0.7)
    assert np.allclose(df["rho"], density(p, df["z"].to_numpy()), rtol=1e-12, atol=1e-14)
    assert np.allclose(df["rho_over_c"], df["rho"] / 0.4)


def test_tw_command_routes_agree(tmp_path):
    out = tmp_path / "tw.csv"
    assert main(["tw", "--method", "both", "--grid", "-4:2:0.5", "--out", str(out), "--quiet"]) == 0
    df = pd.read_csv(out)
    assert list(df.columns) == ["s", "fredholm", "painleve", "abs_diff"]
    assert df["abs_diff"].max() < 1e-6


@pytest.mark.slow
def test_tw_command_full_grid(tmp_path):
    out = tmp_path / "tw.csv"
    assert main(["tw", "--method", "both", "--grid", "-8:4:0.05", "--out", str(out), "--quiet"]) == 0
    assert pd.read_csv(out)["abs_diff"].max() < 1e-6


def test_kernel_finite_command(tmp_path):
    out = tmp_path / "kernel.csv"
    assert main(["kernel-finite", "--M", "8", "--N", "4", "--N1", "2", "--a", "2",
                 "--x-grid", "0.5:1.5:0.5", "--out", str(out), "--quiet"]) == 0
    df = pd.read_csv(out)
    assert list(df.columns) == ["x", "y", "K"]
    assert len(df) == 9


def _stub_trace(calls):
    def trace(p, window, resolution, workers=1, verbose=False):
        calls.append(window)
        if verbose:
            print("[wishcut] x_L = -1.02, x_R = 3.89, iota = 0.61")
        curves = {tag: np.array([0.1 + 0.2j, 0.3 + 0.4j, 0.5 + 0.6j]) for tag in CURVE_TAGS}
        return LevelSetGeometry(curves=curves, x_L=-1.02, x_R=3.89, iota=0.61,
                                window=(-3.0, 6.0, -4.0, 4.0), spacing=(0.045, 0.04))
    return trace


def test_hset_summary_always_on_stdout(tmp_path, monkeypatch, capsys):
    calls = []
    monkeypatch.setattr(entry, "trace_hset", _stub_trace(calls))
    out = tmp_path / "hset.csv"
    args = ["hset", "--a", "0.9", "--c", "0.4", "--beta", "0.7", "--resolution", "200", "--quiet"]

    assert main(args + ["--out", str(out)]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert (doc["x_L"], doc["x_R"], doc["iota"]) == (-1.02, 3.89, 0.61)
    assert "polylines" not in doc
    assert json.loads((tmp_path / "hset.csv.json").read_text()) == doc
    df = pd.read_csv(out)
    assert list(df.columns) == ["x", "y", "curve_tag"]
    assert len(df) == 12

    assert main(args) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["x_L"] == -1.02
    assert doc["polylines"]["columns"] == ["x", "y", "curve_tag"]
    assert len(doc["polylines"]["rows"]) == 12
    assert calls == [None, None]


def test_hset_reports_crossings_once_when_verbose(monkeypatch, capsys):
    monkeypatch.setattr(entry, "trace_hset", _stub_trace([]))
    assert main(["hset", "--a", "0.9", "--c", "0.4", "--beta", "0.7", "--window", "-3", "6", "-4", "4"]) == 0
    captured = capsys.readouterr()
    assert captured.err.count("x_L =") == 1
    assert json.loads(captured.out)["iota"] == 0.61


def test_validate_with_too_few_replicates_is_a_usage_error(capsys):
    code = main(["validate", "--M", "40", "--N", "16", "--N1", "11", "--a", "0.9",
                 "--replicates", "20", "--quiet"])
    assert code == 2
    assert "at least 200 replicates" in capsys.readouterr().err


def test_run_from_config_file(tmp_path, capsys):
    path = _write(tmp_path, "MODE = classify\nA = 0.9\nC = 0.4\nBETA = 0.7\nVERBOSE = False\n")
    assert main(["run", path]) == 0
    assert json.loads(capsys.readouterr().out)["cuts"] == "one-cut"
    assert run_from_config(path) == 0


def test_flags_override_config_file(tmp_path, capsys):
    path = _write(tmp_path, "MODE = classify\nA = 0.9\nC = 0.4\nBETA = 0.2\nVERBOSE = False\n")
    assert main(["classify", "--config", path, "--beta", "0.7"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["params"]["beta"] == 0.7


@pytest.mark.slow
def test_validate_command_report(tmp_path):
    out = tmp_path / "report.json"
    code = main(["validate", "--M", "400", "--N", "160", "--N1", "112", "--a", "0.9",
                 "--replicates", "400", "--seed", "20240917", "--out", str(out), "--quiet"])
    doc = json.loads(out.read_text())
    assert [r["name"] for r in doc["results"]] == ["bulk_density", "bulk_spacing", "edge_fluctuation"]
    assert set(doc["timings"]) == {"sample", "bulk_density", "bulk_spacing", "edge_fluctuation"}
    assert code == (0 if doc["passed"] else 1)

import numpy as np
import pandas as pd
import pytest
from scipy.optimize import brentq

from wishcut.errors import ComponentCountMismatch, InvalidParameters, PathThroughBranchPoint
from wishcut.spectral import hgeometry
from wishcut.spectral.curve import EnsembleParams, classify_support, r_of_z
from wishcut.spectral.hgeometry import (
    CURVE_TAGS,
    default_window,
    export_polylines,
    find_iota,
    h_value,
    real_axis_bracket,
    real_part_gap,
    sign_structure,
    theta_diff,
    trace_hset,
)


def _h_zeros(p):
    (a0, b0), (a1, b1) = real_axis_bracket(p)
    return (brentq(lambda x: h_value(p, x), a0, b0, xtol=1e-12),
            brentq(lambda x: h_value(p, x), a1, b1, xtol=1e-12))


def _h_scan(p, xs):
    vals = []
    for x in xs:
        try:
            vals.append(h_value(p, x))
        except PathThroughBranchPoint:
            continue
    return np.array(vals)


def test_theta_diff_vanishes_at_lambda3(ref_params):
    info = classify_support(ref_params)
    assert theta_diff(ref_params, info.lambda3).value == 0


def test_theta_diff_is_path_independent_off_the_cuts(ref_params):
    z = 1.0 + 1.0j
    direct = theta_diff(ref_params, z).value
    routed = theta_diff(ref_params, z, via=[3.0 + 2.0j]).value
    assert abs(direct - routed) < 1e-8


def test_theta_diff_records_route(ref_params):
    info = classify_support(ref_params)
    td = theta_diff(ref_params, 1.0 + 1.0j, via=[3.0 + 2.0j])
    assert td.path_record[0] == info.lambda3
    assert td.path_record[-1] == 1.0 + 1.0j
    assert len(td.path_record) == 3


def test_theta_diff_refuses_route_through_branch_point(ref_params):
    info = classify_support(ref_params)
    with pytest.raises(PathThroughBranchPoint):
        theta_diff(ref_params, 1.0 + 1.0j, via=[complex(info.lambda2, 0.0)])
    # straight segment grazing lambda_2
    with pytest.raises(PathThroughBranchPoint):
        theta_diff(ref_params, 1.0 + 0.0j, via=[complex(info.lambda2 + 1.0, 0.0)])


def test_real_part_is_symmetric_under_conjugation(ref_params):
    info = classify_support(ref_params)
    rng = np.random.default_rng(11)
    checked = 0
    while checked < 20:
        z = complex(rng.uniform(-0.5, 4.5), rng.uniform(0.3, 2.5))
        if abs(z - info.lambda3) < 0.2:
            continue
        upper = theta_diff(ref_params, z).value
        lower = theta_diff(ref_params, np.conj(z)).value
        assert abs(upper.real - lower.real) < 1e-8
        checked += 1


def test_theta_diff_at_lambda4_is_imaginary(ref_params):
    info = classify_support(ref_params)
    value = theta_diff(ref_params, info.lambda4).value
    assert abs(value.real) < 1e-8
    assert abs(value.imag) == pytest.approx(0.75398, abs=1e-4)


def test_iota_matches_depressed_cubic_root(ref_params):
    # the real root equals the real part of the complex pair exactly where
    # the depressed cubic has no constant term
    info = classify_support(ref_params)
    xs = np.linspace(info.lambda1, info.lambda2, 2001)[1:-1]
    r = r_of_z(ref_params, xs)
    changes = np.nonzero(np.sign(r[:-1]) != np.sign(r[1:]))[0]
    assert len(changes) == 1
    k = int(changes[0])
    oracle = brentq(lambda x: float(r_of_z(ref_params, x)), xs[k], xs[k + 1], xtol=1e-14)
    iota = find_iota(ref_params)
    assert iota == pytest.approx(oracle, abs=1e-8)
    assert iota == pytest.approx(0.61088, abs=1e-4)
    assert info.lambda1 <= iota <= info.lambda2


def test_gap_increases_through_iota(ref_params):
    iota = find_iota(ref_params)
    h = 1e-4
    assert abs(real_part_gap(ref_params, iota)) < 1e-8
    assert real_part_gap(ref_params, iota + h) - real_part_gap(ref_params, iota - h) > 0


def test_h_value_is_real_part_of_theta_diff(ref_params):
    x = 3.0
    assert h_value(ref_params, x) == pytest.approx(theta_diff(ref_params, complex(x, 0.0)).value.real)


def test_h_has_two_real_zeros(ref_params):
    x_L, x_R = _h_zeros(ref_params)
    assert x_L == pytest.approx(-1.0202370, abs=1e-6)
    assert x_R == pytest.approx(3.8925040, abs=1e-6)
    assert abs(h_value(ref_params, x_L)) < 1e-7
    assert abs(h_value(ref_params, x_R)) < 1e-7
    vals = _h_scan(ref_params, np.linspace(x_L - 1.0, x_R + 1.0, 301))
    assert np.count_nonzero(np.sign(vals[:-1]) != np.sign(vals[1:])) == 2


def test_h_grows_linearly_far_out(ref_params):
    slope = 1.0 / ref_params.a - 1.0
    for sign in (1.0, -1.0):
        far = (h_value(ref_params, sign * 1000.0) - h_value(ref_params, sign * 500.0)) / 500.0
        assert abs(far) == pytest.approx(slope, rel=0.1)
        assert h_value(ref_params, sign * 1000.0) > 0


def test_default_window_holds_branch_points_and_crossings(ref_params):
    info = classify_support(ref_params)
    x0, x1, y0, y1 = default_window(ref_params)
    x_L, x_R = _h_zeros(ref_params)
    assert y0 == -y1
    assert x0 < min(info.lambda1, x_L) and max(info.lambda2, x_R) < x1
    assert info.lambda3.imag < y1


def test_refine_crossing_warns_when_h_is_not_bracketed(ref_params, monkeypatch, capsys):
    def unreachable(p, x):
        raise PathThroughBranchPoint("grazes a branch point")

    monkeypatch.setattr(hgeometry, "h_value", unreachable)
    assert hgeometry._refine_crossing(ref_params, 1.25, 0.01) == 1.25
    err = capsys.readouterr().err
    assert "[wishcut] WARNING:" in err
    assert "1.25" in err


def test_trace_hset_validates_inputs(ref_params):
    with pytest.raises(InvalidParameters):
        trace_hset(ref_params, resolution=100)
    with pytest.raises(InvalidParameters):
        trace_hset(ref_params, window=(-1.0, 6.0, -4.0, 5.0), resolution=200)
    with pytest.raises(InvalidParameters):
        trace_hset(ref_params, window=(0.5, 6.0, -5.0, 5.0), resolution=200)


def test_trace_hset_widens_the_default_window(ref_params, monkeypatch):
    seen = []

    def trace(p, info, window, nx, ny, workers, verbose):
        seen.append(window)
        if len(seen) < 3:
            raise ComponentCountMismatch("curve leaves through a side edge")
        return window

    monkeypatch.setattr(hgeometry, "default_window", lambda p: (-2.0, 6.0, -3.0, 3.0))
    monkeypatch.setattr(hgeometry, "_trace_window", trace)
    assert trace_hset(ref_params, resolution=200) == (-7.0, 11.0, -6.75, 6.75)
    assert seen[1] == (-4.0, 8.0, -4.5, 4.5)

    seen.clear()
    with pytest.raises(ComponentCountMismatch):
        trace_hset(ref_params, resolution=200, widenings=1)
    assert len(seen) == 2


@pytest.fixture(scope="module")
def reference_geometry():
    return trace_hset(EnsembleParams(a=0.9, c=0.4, beta=0.7), resolution=400)


@pytest.mark.slow
def test_hset_has_four_tagged_curves(reference_geometry):
    assert set(reference_geometry.curves) == set(CURVE_TAGS)
    for tag in CURVE_TAGS:
        assert len(reference_geometry.curves[tag]) > 2


@pytest.mark.slow
def test_hset_real_crossings_overlap_support(ref_params, reference_geometry):
    info = classify_support(ref_params)
    x_L, x_R = reference_geometry.real_crossings()
    assert x_L < x_R
    assert max(x_L, info.lambda1) < min(x_R, info.lambda2)
    assert reference_geometry.iota == pytest.approx(find_iota(ref_params), abs=1e-12)


@pytest.mark.slow
def test_hset_crossings_are_zeros_of_h(ref_params, reference_geometry):
    x_L, x_R = reference_geometry.real_crossings()
    assert x_L == pytest.approx(-1.0202370, abs=1e-6)
    assert x_R == pytest.approx(3.8925040, abs=1e-6)
    assert abs(h_value(ref_params, x_L)) < 1e-7
    assert abs(h_value(ref_params, x_R)) < 1e-7


@pytest.mark.slow
def test_hset_crossings_converge_under_refinement(ref_params, reference_geometry):
    coarse = trace_hset(ref_params, window=reference_geometry.window, resolution=200)
    dx = coarse.spacing[0]
    assert abs(coarse.x_L - reference_geometry.x_L) < dx
    assert abs(coarse.x_R - reference_geometry.x_R) < dx


@pytest.mark.slow
def test_hset_curves_are_zeros_and_mirror(ref_params, reference_geometry):
    plus = reference_geometry.curves["H_inf_plus"]
    minus = reference_geometry.curves["H_inf_minus"]
    assert np.all(plus.imag > 0) and np.all(minus.imag < 0)
    sample = plus[len(plus) // 2]
    scale = max(abs(theta_diff(ref_params, sample + 0.1).value.real), 1e-3)
    assert abs(theta_diff(ref_params, sample).value.real) < 0.05 * scale


@pytest.mark.slow
def test_sign_structure(ref_params, reference_geometry):
    signs = sign_structure(ref_params, reference_geometry)
    assert np.all(signs["left"] < 0)
    assert np.all(signs["right"] > 0)


@pytest.mark.slow
def test_export_polylines(reference_geometry, tmp_path):
    path = tmp_path / "hset.csv"
    export_polylines(reference_geometry, path)
    df = pd.read_csv(path)
    assert list(df.columns) == ["x", "y", "curve_tag"]
    assert set(df["curve_tag"]) == set(CURVE_TAGS)

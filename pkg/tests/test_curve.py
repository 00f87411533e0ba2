import numpy as np
import pytest
from scipy.integrate import quad

from wishcut.errors import BranchCollision, CriticalParameters, InvalidParameters, OneCutRequired
from wishcut.spectral import curve
from wishcut.spectral.curve import (
    EnsembleParams,
    branch_values,
    cdf_F,
    classify_support,
    curve_residual,
    density,
    density_F,
    density_profile,
    discriminant_D3,
    edge_constants,
    marchenko_pastur_density,
    marchenko_pastur_edges,
    real_root_count,
    sheet_structure,
    stieltjes_mF,
    support_scan_oracle,
    z_of_m,
    z_prime,
)
from wishcut.spectral.polyroots import RootSet, companion_roots


def test_reference_endpoints(ref_params):
    info = classify_support(ref_params)
    assert info.cuts == "one-cut"
    assert info.delta < 0
    assert info.lambda1 == pytest.approx(0.12518, abs=1e-4)
    assert info.lambda2 == pytest.approx(2.48841, abs=1e-4)
    assert abs(info.lambda3 - (2.40520 + 3.2516j)) < 1e-3
    assert info.lambda4 == np.conj(info.lambda3)


def test_ordering_and_labeling(large_a_params):
    info = classify_support(large_a_params)
    assert info.cuts == "one-cut"
    assert info.lambda1 < info.lambda2
    assert info.lambda3.imag > 0
    assert info.gamma[0].real < info.gamma[1].real


def test_beta_to_one_reduces_to_scaled_marchenko_pastur():
    p = EnsembleParams(a=0.9, c=0.4, beta=1.0 - 1e-9)
    info = classify_support(p)
    lo, hi = marchenko_pastur_edges(0.9, 0.4)
    assert lo == pytest.approx(0.12159, abs=1e-4)
    assert info.lambda1 == pytest.approx(lo, abs=1e-4)
    assert info.lambda2 == pytest.approx(hi, abs=1e-4)


def test_unresolved_double_root_near_beta_one_is_refused():
    # gamma_3, gamma_4 sit within ~1e-8 of -1 and the endpoints cannot be separated
    p = EnsembleParams(a=0.9, c=0.4, beta=1.0 - 1e-15)
    with pytest.raises(CriticalParameters, match="near-double root"):
        classify_support(p)
    with pytest.raises(CriticalParameters):
        density(p, 1.0)


def test_companion_disagreement_is_refused(monkeypatch):
    p = EnsembleParams(a=0.9, c=0.4, beta=0.65)
    four_real = RootSet(roots=(-3 + 0j, -2 + 0j, -1.5 + 0j, -0.5 + 0j), multiplicity=(1, 1, 1, 1),
                        discriminant=1.0)
    classify_support.cache_clear()
    monkeypatch.setattr(curve, "companion_roots", lambda coeffs: four_real)
    with pytest.raises(CriticalParameters, match="real root count"):
        classify_support(p)
    monkeypatch.undo()
    assert classify_support(p).cuts == "one-cut"


def test_beta_to_zero_reduces_to_marchenko_pastur():
    p = EnsembleParams(a=0.9, c=0.4, beta=1e-9)
    info = classify_support(p)
    lo, hi = marchenko_pastur_edges(1.0, 0.4)
    assert info.lambda1 == pytest.approx(lo, abs=1e-4)
    assert info.lambda2 == pytest.approx(hi, abs=1e-4)
    xs = np.linspace(lo, hi, 41)[5:-5]
    assert np.allclose(density(p, xs), marchenko_pastur_density(1.0, 0.4, xs), atol=1e-6)


def test_two_cut_support_is_refused():
    p = EnsembleParams(a=10.0, c=0.05, beta=0.5)
    assert classify_support(p).cuts == "two-cut"
    with pytest.raises(OneCutRequired):
        density(p, 1.0)


@pytest.mark.parametrize("kwargs, message", [
    ({"a": 0.9, "c": 1.5, "beta": 0.7}, "c must lie in (0,1)"),
    ({"a": 0.9, "c": 0.4, "beta": 0.0}, "beta must lie in (0,1)"),
    ({"a": 1.0, "c": 0.4, "beta": 0.7}, "a = 1"),
    ({"a": -1.0, "c": 0.4, "beta": 0.7}, "a must be positive"),
])
def test_params_validation(kwargs, message):
    with pytest.raises(InvalidParameters, match=message.replace("(", r"\(").replace(")", r"\)")):
        EnsembleParams(**kwargs)


def test_finite_sizes_must_match_limits():
    p = EnsembleParams.from_sizes(400, 160, 112, 0.9)
    assert p.c == pytest.approx(0.4) and p.beta == pytest.approx(0.7)
    with pytest.raises(InvalidParameters):
        EnsembleParams(a=0.9, c=0.4, beta=0.7, M=400, N=100, N1=70)


def test_scan_oracle_matches_endpoints(ref_params):
    info = classify_support(ref_params)
    support = support_scan_oracle(ref_params)
    assert len(support) == 1
    lo, hi = support[0]
    assert lo == pytest.approx(info.lambda1, abs=1e-3)
    assert hi == pytest.approx(info.lambda2, abs=1e-3)


def test_scan_oracle_rejects_coarse_grid(ref_params):
    with pytest.raises(InvalidParameters):
        support_scan_oracle(ref_params, 100)


def test_z_prime_negative_between_real_gammas(ref_params):
    info = classify_support(ref_params)
    g1, g2 = info.gamma[0].real, info.gamma[1].real
    m = np.linspace(g1, g2, 102)[1:-1]
    m = m[np.abs(m + 1.0) > 1e-6]
    m = m[np.abs(m + 1.0 / ref_params.a) > 1e-6]
    assert np.all(z_prime(ref_params, m) < 0)


def test_gamma_intervals_map_outside_support(ref_params):
    info = classify_support(ref_params)
    g1, g2 = info.gamma[0].real, info.gamma[1].real
    assert 0 < z_of_m(ref_params, g1 - 1.0) < info.lambda1
    assert z_of_m(ref_params, 0.5 * g2) > info.lambda2
    assert z_of_m(ref_params, 1.0) < 0


@pytest.mark.slow
def test_scan_oracle_on_random_one_cut_parameters():
    rng = np.random.default_rng(7)
    checked = 0
    while checked < 50:
        a = float(rng.uniform(0.3, 3.0))
        if abs(a - 1.0) < 0.05:
            continue
        p = EnsembleParams(a=a, c=float(rng.uniform(0.2, 0.8)), beta=float(rng.uniform(0.1, 0.9)))
        info = classify_support(p)
        if info.cuts != "one-cut" or info.delta > -1e-6:
            continue
        support = support_scan_oracle(p)
        assert len(support) == 1
        assert support[0][0] == pytest.approx(info.lambda1, abs=1e-3)
        assert support[0][1] == pytest.approx(info.lambda2, abs=1e-3)
        checked += 1


def test_branch_asymptotics_at_large_z(ref_params):
    b = branch_values(ref_params, 1e6)
    assert abs(b.xi1 - (-1e-6)) < 1e-5
    assert abs(b.xi2 - (-1.0)) < 1e-5
    assert abs(b.xi3 - (-1.0 / 0.9)) < 1e-5


def test_branch_ordering_right_of_support(ref_params):
    info = classify_support(ref_params)
    b = branch_values(ref_params, info.lambda2 + 1.0)
    xi = b.as_array()
    assert np.all(np.abs(xi.imag) < 1e-12)
    assert xi[0].real > max(xi[1].real, xi[2].real)


def test_herglotz_and_conjugate_symmetry(ref_params):
    z = 1.0 + 1.0j
    b = branch_values(ref_params, z)
    assert b.xi1.imag > 0
    below = branch_values(ref_params, np.conj(z))
    assert np.allclose(below.as_array(), np.conj(b.as_array()), atol=1e-12)


def test_branch_residuals(ref_params):
    for z in (0.5 + 0.1j, 3.0 - 2.0j, -1.0 + 0.5j, 1.3, 10.0 + 20.0j):
        b = branch_values(ref_params, z)
        assert np.all(curve_residual(ref_params, z, b.as_array()) <= 1e-10)


def test_branch_values_rejects_branch_point(ref_params):
    info = classify_support(ref_params)
    with pytest.raises(BranchCollision):
        branch_values(ref_params, info.lambda3)
    with pytest.raises(InvalidParameters):
        branch_values(ref_params, 0.0)


def test_sheet_structure_swaps_with_a(ref_params, large_a_params):
    small = sheet_structure(ref_params)
    assert small["lambda2"] == frozenset({1, 2})
    assert small["lambda1"] == frozenset({1, 3})
    large = sheet_structure(large_a_params)
    assert large["lambda2"] == frozenset({1, 3})
    assert large["lambda1"] == frozenset({1, 2})
    assert small["lambda3"] == frozenset({2, 3})


def test_discriminant_zeros_are_branch_points(ref_params):
    info = classify_support(ref_params)
    zeros = companion_roots(discriminant_D3(ref_params)).roots
    for lam in info.lam:
        assert min(abs(lam - r) for r in zeros) < 1e-8 * (1.0 + abs(lam))
    mid = 0.5 * (info.lambda1 + info.lambda2)
    assert real_root_count(ref_params, mid) == 1
    assert real_root_count(ref_params, info.lambda2 + 1.0) == 3


def test_density_vanishes_at_edges(ref_params):
    info = classify_support(ref_params)
    assert density(ref_params, info.lambda1) < 1e-8
    assert density(ref_params, info.lambda2) < 1e-8
    assert density(ref_params, info.lambda2 + 0.5) == 0.0
    assert density(ref_params, -1.0) == 0.0


def test_density_clamp_is_reported(ref_params, monkeypatch, capsys):
    xs = np.linspace(0.5, 2.0, 7)
    density(ref_params, xs)
    assert capsys.readouterr().err == ""
    # a constant positive D3 makes the discriminant term negative across the support
    monkeypatch.setattr(curve, "discriminant_D3", lambda p: np.array([1.0]))
    rho = density(ref_params, xs)
    assert np.all(rho == 0.0)
    err = capsys.readouterr().err
    assert "[wishcut] WARNING:" in err
    assert "7 support point(s)" in err


def test_density_integrates_to_c(ref_params):
    info = classify_support(ref_params)
    total, _ = quad(lambda x: density(ref_params, x), info.lambda1, info.lambda2,
                    epsabs=1e-13, epsrel=1e-13, limit=400)
    assert total == pytest.approx(ref_params.c, abs=1e-8)
    assert cdf_F(ref_params, info.lambda2 + 1.0) == pytest.approx(1.0, abs=1e-8)


def test_density_matches_stieltjes_inversion(ref_params):
    info = classify_support(ref_params)
    xs = np.linspace(info.lambda1, info.lambda2, 22)[1:-1]
    eps = 1e-6
    for x in xs:
        f1 = branch_values(ref_params, complex(x, eps)).xi1.imag / np.pi
        f2 = branch_values(ref_params, complex(x, 2 * eps)).xi1.imag / np.pi
        assert density(ref_params, x) == pytest.approx(2.0 * f1 - f2, abs=1e-8)


def test_density_F_is_normalised_density(ref_params):
    x = 1.0
    assert density_F(ref_params, x) == pytest.approx(density(ref_params, x) / ref_params.c)


def test_square_root_edges(ref_params):
    info = classify_support(ref_params)
    h = 1e-6 * (info.lambda2 - info.lambda1)
    slope1 = np.log(density(ref_params, info.lambda1 + h)) - np.log(density(ref_params, info.lambda1 + 4 * h))
    slope2 = np.log(density(ref_params, info.lambda2 - h)) - np.log(density(ref_params, info.lambda2 - 4 * h))
    target = -np.log(4.0) / 2.0
    assert slope1 == pytest.approx(target, rel=0.05)
    assert slope2 == pytest.approx(target, rel=0.05)


def test_edge_constants_positive_and_stable(ref_params):
    info = classify_support(ref_params)
    rho1, rho2 = edge_constants(ref_params)
    assert rho1 > 0 and rho2 > 0
    h = 1e-3 * (info.lambda2 - info.lambda1)
    r1, r2 = edge_constants(ref_params, h=h / 4)
    assert r1 == pytest.approx(rho1, rel=1e-4)
    assert r2 == pytest.approx(rho2, rel=1e-4)


def test_edge_constant_matches_marchenko_pastur():
    sigma2, c = 0.9, 0.4
    p = EnsembleParams(a=sigma2, c=c, beta=1.0 - 1e-9)
    lo, hi = marchenko_pastur_edges(sigma2, c)
    h = 1e-6
    mp = np.pi * marchenko_pastur_density(sigma2, c, hi - h) / np.sqrt(h)
    assert edge_constants(p)[1] == pytest.approx(float(mp), rel=1e-3)


def test_density_profile(ref_params):
    prof = density_profile(ref_params, n=101)
    info = classify_support(ref_params)
    assert prof.grid[0] == pytest.approx(info.lambda1)
    assert prof.grid[-1] == pytest.approx(info.lambda2)
    assert np.all(prof.rho[1:-1] > 0)
    assert np.all(np.diff(prof.grid) > 0)


def test_stieltjes_normalisation(ref_params):
    z = 1e6j
    assert abs(stieltjes_mF(ref_params, z) * z + 1.0) < 1e-5


def test_stieltjes_real_right_of_support(ref_params):
    info = classify_support(ref_params)
    x = info.lambda2 + 1.0
    m = stieltjes_mF(ref_params, x)
    assert abs(m.imag) < 1e-10
    assert m.real < 0
    up = stieltjes_mF(ref_params, complex(x, 1e-8))
    down = stieltjes_mF(ref_params, complex(x, -1e-8))
    assert abs(up - np.conj(down)) < 1e-10

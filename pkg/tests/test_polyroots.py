import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from wishcut.errors import InvalidParameters
from wishcut.spectral.polyroots import (
    CubicCoeffs,
    QuarticCoeffs,
    companion_roots,
    residual_bound,
    solve_cubic,
    solve_cubic_batch,
    solve_quartic,
)


def _match(a, b, tol):
    rest = [complex(y) for y in b]
    if len(rest) != len(a):
        return False
    for x in a:
        k = int(np.argmin([abs(x - y) for y in rest]))
        y = rest.pop(k)
        if abs(x - y) > tol * (1.0 + abs(y)):
            return False
    return True


def test_cubic_roots_of_unity():
    rs = solve_cubic(CubicCoeffs(1.0, 0.0, 0.0, -1.0))
    expected = [1.0, np.exp(2j * np.pi / 3), np.exp(-2j * np.pi / 3)]
    assert _match(rs.roots, expected, 1e-12)
    assert rs.real_roots() == [pytest.approx(1.0, abs=1e-15)]


def test_cubic_triple_root():
    rs = solve_cubic((1.0, -3.0, 3.0, -1.0))
    assert all(abs(r - 1.0) < 1e-5 for r in rs.roots)
    assert rs.multiplicity == (3, 3, 3)
    assert rs.has_multiple_root


def test_cubic_rejects_zero_leading_coefficient():
    with pytest.raises(InvalidParameters):
        CubicCoeffs(0.0, 1.0, 2.0, 3.0)


def test_cubic_real_cube_root_of_real_argument():
    # x^3 + 8 = 0 has the real root -2
    rs = solve_cubic((1.0, 0.0, 0.0, 8.0))
    assert rs.real_roots() == [pytest.approx(-2.0, abs=1e-14)]


def test_cubic_matches_companion_on_random_real_cubics(rng):
    for _ in range(100):
        c = rng.normal(size=4)
        rs = solve_cubic(c)
        oracle = companion_roots(c)
        assert _match(rs.roots, oracle.roots, 1e-10)
        for r in rs.roots:
            assert residual_bound(c, r) <= 1e-10


def test_complex_cubic_residual(rng):
    for _ in range(20):
        c = rng.normal(size=4) + 1j * rng.normal(size=4)
        rs = solve_cubic(c)
        for r in rs.roots:
            assert residual_bound(c, r) <= 1e-10


def test_quartic_factorable():
    rs = solve_quartic(QuarticCoeffs(1.0, 0.0, 0.0, 0.0, -1.0))
    assert _match(rs.roots, [1.0, -1.0, 1j, -1j], 1e-12)
    assert len(rs.real_roots()) == 2
    assert rs.discriminant < 0


def test_quartic_matches_companion_on_random_quartics(rng):
    for _ in range(100):
        q = rng.normal(size=5)
        rs = solve_quartic(q)
        oracle = companion_roots(q)
        assert _match(rs.roots, oracle.roots, 1e-8)
        for r in rs.roots:
            assert residual_bound(q, r) <= 1e-10


@settings(max_examples=200, deadline=None)
@given(st.lists(st.floats(-5.0, 5.0), min_size=5, max_size=5).filter(lambda q: abs(q[0]) > 0.1))
def test_quartic_discriminant_sign_matches_real_root_count(q):
    rs = solve_quartic(q)
    oracle = companion_roots(q)
    n_real = sum(1 for r in oracle.roots if r.imag == 0.0)
    if abs(rs.discriminant) < 1e-6 or rs.has_multiple_root:
        return
    assert (rs.discriminant < 0) == (n_real == 2)


def test_real_quartic_roots_closed_under_conjugation(rng):
    for _ in range(50):
        rs = solve_quartic(rng.normal(size=5))
        for r in rs.complex_roots():
            assert any(abs(np.conj(r) - s) <= 1e-12 * (1 + abs(r)) for s in rs.roots)


def test_companion_double_root():
    rs = companion_roots([1.0, -2.0, 1.0])
    assert all(abs(r - 1.0) < 1e-7 for r in rs.roots)


def test_companion_agrees_with_cubic():
    assert _match(companion_roots([1.0, 0.0, 0.0, -1.0]).roots, solve_cubic((1.0, 0.0, 0.0, -1.0)).roots, 1e-10)


def test_companion_degree_seven_residual(rng):
    coeffs = rng.normal(size=8)
    for r in companion_roots(coeffs).roots:
        assert residual_bound(coeffs, r) <= 1e-9


def test_companion_rejects_constant():
    with pytest.raises(InvalidParameters):
        companion_roots([3.0])


def test_batch_matches_scalar_solver(rng):
    c = rng.normal(size=(10, 4)) + 1j * rng.normal(size=(10, 4))
    batch = solve_cubic_batch(c[:, 0], c[:, 1], c[:, 2], c[:, 3])
    for row, coeffs in zip(batch, c):
        assert _match(list(row), solve_cubic(coeffs).roots, 1e-10)

from math import comb

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from artifact import poly
from artifact.errors import CapabilityError, ConfigError
from artifact.quadrature import gauss_1d


def _gauss(t, n=20):
    x, w = gauss_1d(n)
    return x * t, w * t


@pytest.mark.parametrize("t", [0.25, 1.0, 2.0])
def test_legendre_orthogonal_on_scaled_interval(t):
    x, w = _gauss(t)
    P = poly.legendre_batch((x, t), 10)
    G = (P * w) @ P.T
    diag = np.array([t ** (2 * i + 1) / (2 * i + 1) for i in range(11)])
    assert np.max(np.abs(G - np.diag(diag))) <= 1e-13 * max(1.0, diag.max())
    assert np.max(np.abs((P[1:] * w).sum(axis=1))) <= 1e-13 * max(1.0, diag.max())


def test_legendre_scaling_matches_unscaled():
    x = np.linspace(0, 2, 7)
    P2 = poly.legendre_batch((x, 2.0), 6)
    P1 = poly.legendre_batch(x / 2.0, 6)
    for i in range(7):
        assert np.allclose(P2[i], P1[i] * 2.0**i, atol=1e-13)


def test_legendre_against_numpy():
    x = np.linspace(0, 1, 11)
    P = poly.legendre_batch(x, 8)
    for i in range(9):
        ref = np.polynomial.legendre.Legendre.basis(i)(2 * x - 1)
        assert np.allclose(P[i], ref, atol=1e-13)


def _jacobi_sum(n, alpha, x):
    # explicit sum for P_n^(alpha, 0)(2x - 1), independent of the recursion
    return sum(comb(n + alpha, n - s) * comb(n, s) * (x - 1) ** s * x ** (n - s) for s in range(n + 1))


@pytest.mark.parametrize("alpha", [1, 3, 5])
@pytest.mark.parametrize("t", [1.0, 1.5])
def test_jacobi_weighted_orthogonality(alpha, t):
    x, w = _gauss(t, 24)
    P = poly.jacobi_batch(alpha, (x, t), 8)
    G = (P * (w * (t - x) ** alpha)) @ P.T
    off = G - np.diag(np.diag(G))
    assert np.max(np.abs(off)) <= 1e-12 * max(1.0, np.max(np.diag(G)))
    assert np.all(np.diag(G) > 0)


@pytest.mark.parametrize("alpha", [1, 2, 4])
def test_jacobi_matches_explicit_sum(alpha):
    x = np.linspace(0, 1, 13)
    P = poly.jacobi_batch(alpha, x, 8)
    for n in range(9):
        assert np.allclose(P[n], _jacobi_sum(n, alpha, x), atol=1e-11 * max(1.0, np.abs(P[n]).max()))


def test_jacobi_is_not_orthogonal_under_x_power_weight():
    # the recursion's weight sits at the opposite endpoint: int x^a P_1 = a / (a + 1)
    x, w = _gauss(1.0, 24)
    P = poly.jacobi_batch(3, x, 1)
    assert np.dot(w * x**3, P[1]) == pytest.approx(3 / 4, abs=1e-14)


def test_jacobi_alpha_zero_is_legendre():
    x = np.linspace(0, 1, 9)
    assert np.array_equal(poly.jacobi_batch(0, x, 7), poly.legendre_batch(x, 7))


@pytest.mark.parametrize("alpha", [0, 1, 2, 4])
@pytest.mark.parametrize("t", [0.5, 1.0, 1.7])
def test_integrated_endpoint_vanishing(alpha, t):
    L, _ = poly.integrated_jacobi_batch(alpha, (np.array([0.0, t]), t), 10)
    # L_i(0) = 0 for i >= 1; Legendre also vanishes at t for i >= 2
    scale = max(1.0, t**10)
    assert np.max(np.abs(L[1:, 0])) <= 1e-14 * scale
    if alpha == 0:
        assert np.max(np.abs(L[2:, 1])) <= 1e-14 * scale


@pytest.mark.parametrize("alpha", [0, 2])
def test_integrated_derivatives_by_finite_differences(alpha):
    x, t, h = np.array([0.2, 0.55, 0.9]), 1.3, 1e-6
    P, L, R = poly.ladders(alpha, x, t, 7)
    Lx = (poly.ladders(alpha, x + h, t, 7)[1] - poly.ladders(alpha, x - h, t, 7)[1]) / (2 * h)
    Lt = (poly.ladders(alpha, x, t + h, 7)[1] - poly.ladders(alpha, x, t - h, 7)[1]) / (2 * h)
    for i in range(1, 8):
        assert np.allclose(Lx[i], P[i - 1], atol=1e-8)
        assert np.allclose(Lt[i], R[i - 1], atol=1e-8)


def test_integrated_is_antiderivative_by_quadrature():
    xs, ws = gauss_1d(20)
    target = np.array([0.3, 0.8])
    L, _ = poly.integrated_legendre_batch(target, 8)
    for i in range(1, 9):
        for k, b in enumerate(target):
            Pi = poly.legendre_batch(xs * b, i - 1)[i - 1]
            assert abs(np.dot(ws * b, Pi) - L[i, k]) <= 1e-14


@settings(max_examples=40, deadline=None)
@given(
    s0=st.floats(0.05, 2.0),
    s1=st.floats(0.05, 2.0),
    c=st.floats(0.1, 3.0),
    kind=st.sampled_from(["P", "L", "P^a", "L^a"]),
)
def test_homogeneity(s0, s1, c, kind):
    a = poly.homog_ladder(kind, 7, s0, s1, alpha=3)
    b = poly.homog_ladder(kind, 7, c * s0, c * s1, alpha=3)
    start = 1 if kind.startswith("L") else 0
    for i in range(start, 8):
        assert abs(b[i] - c**i * a[i]) <= 1e-13 * max(1.0, abs(c**i * a[i]))


def test_homog_eval_matches_ladder():
    assert poly.homog_eval("L", 3, 0.4, 0.6) == pytest.approx(poly.homog_ladder("L", 3, 0.4, 0.6)[3])
    assert poly.homog_eval("R", 0, 0.4, 0.6) == 0.0


def test_rejects_bad_arguments():
    with pytest.raises(ConfigError):
        poly.legendre_batch(0.5, -1)
    with pytest.raises(CapabilityError):
        poly.legendre_batch(0.5, poly.P_SUPPORTED + 1)
    with pytest.raises(ConfigError):
        poly.jacobi_batch(-1, 0.5, 3)
    with pytest.raises(ConfigError):
        poly.homog_ladder("Q", 3, 0.5, 0.5)
    with pytest.raises(ConfigError):
        poly.homog_eval("L", 0, 0.5, 0.5)

import itertools
from fractions import Fraction
from math import factorial

import numpy as np
import pytest

from artifact import elements as el
from artifact import quadrature as qd
from artifact.errors import ConfigError


def exact_monomial(shape, e):
    """Closed-form integral of x^a y^b z^c over a master element, as a Fraction."""
    f = factorial
    if shape in ("segment", "quad", "hex"):
        out = Fraction(1)
        for a in e:
            out /= a + 1
        return out
    if shape == "triangle":
        a, b = e
        return Fraction(f(a) * f(b), f(a + b + 2))
    if shape == "tet":
        a, b, c = e
        return Fraction(f(a) * f(b) * f(c), f(a + b + c + 3))
    if shape == "prism":
        a, b, c = e
        return Fraction(f(a) * f(b), f(a + b + 2)) / (c + 1)
    a, b, c = e
    return Fraction(f(c) * f(a + b + 2), f(a + b + c + 3)) / ((a + 1) * (b + 1))


def test_small_rules():
    x, w = qd.gauss_1d(1)
    assert np.allclose(x, [0.5]) and np.allclose(w, [1.0])
    x, w = qd.gauss_1d(2)
    assert np.allclose(x, [0.5 - np.sqrt(3) / 6, 0.5 + np.sqrt(3) / 6], atol=1e-15)
    assert np.allclose(w, [0.5, 0.5], atol=1e-15)
    x, w = qd.gauss_1d(3)
    assert np.dot(w, x**5) == pytest.approx(1 / 6, abs=1e-15)


@pytest.mark.parametrize("n", [1, 5, 17, 30])
def test_matches_numpy_legendre(n):
    x, w = qd.gauss_1d(n)
    xr, wr = np.polynomial.legendre.leggauss(n)
    assert np.allclose(x, (xr + 1) / 2, atol=1e-14) and np.allclose(w, wr / 2, atol=1e-14)


@pytest.mark.parametrize("shape", list(qd.MEASURES))
def test_weights_sum_to_measure(shape):
    rule = qd.rule_for(shape, 4)
    assert rule.weights.sum() == pytest.approx(qd.MEASURES[shape], abs=1e-14)
    assert np.all(el.contains(shape, rule.nodes, tol=0.0))
    assert np.all(rule.weights > 0)


def test_triangle_product():
    assert qd.integrate("triangle", lambda x: x[:, 0] * x[:, 1], 3) == pytest.approx(1 / 24, abs=1e-15)
    assert qd.integrate("tet", lambda x: x[:, 0] * x[:, 1] * x[:, 2], 4) == pytest.approx(1 / 720, abs=1e-16)


@pytest.mark.parametrize("shape", list(qd.MEASURES))
def test_degree_exactness(shape):
    dim = el.get_shape(shape).dim
    for d in range(7):
        for e in itertools.product(range(d + 1), repeat=dim):
            if sum(e) != d:
                continue
            val = qd.integrate(shape, lambda x: np.prod(x ** np.array(e), axis=1), d + 2)
            assert val == pytest.approx(float(exact_monomial(shape, e)), rel=1e-13, abs=1e-16), e


@pytest.mark.parametrize("p", [1, 2, 3, 4])
def test_pyramid_rational_functions_converge(p):
    def gram(n):
        rule = qd.rule_for("pyramid", n)
        tab = el.evaluate("pyramid", "Hdiv", p, rule.nodes)
        return np.einsum("m,mia,mja->ij", rule.weights, tab.value, tab.value)

    a, b = gram(p + 3), gram(p + 7)
    assert np.max(np.abs(a - b)) / np.max(np.abs(b)) <= 1e-10


def test_bad_sizes():
    for n in (0, 31, 2.5):
        with pytest.raises(ConfigError):
            qd.gauss_1d(n)
    with pytest.raises(ConfigError):
        qd.rule_for("disk", 3)

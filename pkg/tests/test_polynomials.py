import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lpextremal.polynomials import (
    CANONICAL,
    UNIT,
    Interval,
    MonicPolynomial,
    SymmetricRootVector,
    chebyshev_T,
    chebyshev_U,
    chebyshev_t_nodes,
    evaluate,
    legendre_nodes,
    legendre_P,
    rescale,
)
from lpextremal.quadrature import lp_norm

S2 = 1 / math.sqrt(2)


@pytest.mark.parametrize("roots, x, expected", [
    ((0.0,), 0.5, 0.5),
    ((-S2, S2), 0.0, -0.5),
    ((0.5, -0.5), 1.0, 0.75),
])
def test_evaluate_examples(roots, x, expected):
    assert evaluate(MonicPolynomial(roots), x) == pytest.approx(expected, abs=1e-15)


def test_evaluate_vectorized_and_degree_zero():
    P = MonicPolynomial((1.0, 2.0))
    np.testing.assert_allclose(P(np.array([0.0, 1.0, 3.0])), [2.0, 0.0, 2.0])
    assert MonicPolynomial(()).degree == 0
    assert MonicPolynomial(())(3.0) == 1.0


def test_coefficients_monic():
    P = MonicPolynomial((-S2, S2))
    np.testing.assert_allclose(P.coefficients, [-0.5, 0.0, 1.0], atol=1e-15)
    assert P.coefficients[-1] == 1.0


def test_derivative_matches_finite_difference():
    P = MonicPolynomial((-0.9, -0.2, 0.3, 0.8))
    x = np.linspace(-1, 1, 7)
    h = 1e-6
    np.testing.assert_allclose(P.derivative(x), (P(x + h) - P(x - h)) / (2 * h), atol=1e-8)


def test_critical_points_between_roots():
    P = MonicPolynomial(tuple(chebyshev_t_nodes(5)))
    crit = P.critical_points()
    np.testing.assert_allclose(np.sort(crit), np.cos(np.arange(4, 0, -1) * math.pi / 5), atol=1e-12)


@pytest.mark.parametrize("n, coeffs, monic", [
    (0, [1], [1]),
    (2, [-1, 0, 2], [-0.5, 0, 1]),
    (3, [0, -3, 0, 4], [0, -0.75, 0, 1]),
])
def test_chebyshev_T(n, coeffs, monic):
    T = chebyshev_T(n)
    np.testing.assert_allclose(T.coefficients, coeffs, atol=1e-15)
    np.testing.assert_allclose(T.monic_coefficients, monic, atol=1e-15)


@pytest.mark.parametrize("n, coeffs, monic", [
    (1, [0, 2], [0, 1]),
    (2, [-1, 0, 4], [-0.25, 0, 1]),
    (3, [0, -4, 0, 8], [0, -0.5, 0, 1]),
])
def test_chebyshev_U(n, coeffs, monic):
    U = chebyshev_U(n)
    np.testing.assert_allclose(U.coefficients, coeffs, atol=1e-15)
    np.testing.assert_allclose(U.monic_coefficients, monic, atol=1e-15)


def test_legendre():
    np.testing.assert_allclose(legendre_P(1).monic_coefficients, [0, 1], atol=1e-15)
    P2 = legendre_P(2)
    np.testing.assert_allclose(P2.coefficients, [-0.5, 0, 1.5], atol=1e-15)
    np.testing.assert_allclose(P2.monic_coefficients, [-1 / 3, 0, 1], atol=1e-15)
    norm = math.sqrt(2 / 5)
    scaled = lp_norm(P2.monic(), CANONICAL, 2).value * P2.leading_coefficient
    assert scaled == pytest.approx(norm, rel=1e-12)


@pytest.mark.parametrize("n", range(1, 13))
def test_classical_roots_are_zeros(n):
    for fam in (chebyshev_T, chebyshev_U, legendre_P):
        c = fam(n)
        assert np.max(np.abs(c(np.asarray(c.roots)))) < 1e-10 * max(1.0, abs(c.leading_coefficient))
        np.testing.assert_allclose(c.roots, -np.asarray(c.roots)[::-1], atol=1e-15)


def test_legendre_nodes_against_numpy():
    for n in range(1, 15):
        ref = np.polynomial.legendre.leggauss(n)[0]
        np.testing.assert_allclose(legendre_nodes(n), ref, atol=1e-14)


def test_rescale_examples():
    P = rescale(MonicPolynomial((0.0,)), CANONICAL, UNIT)
    assert P.roots == pytest.approx((0.5,))
    Q = rescale(MonicPolynomial((-S2, S2)), CANONICAL, UNIT)
    assert Q.roots == pytest.approx(((2 - math.sqrt(2)) / 4, (2 + math.sqrt(2)) / 4), abs=1e-15)
    half = rescale(MonicPolynomial((0.0,)), CANONICAL, UNIT)
    assert lp_norm(half, UNIT, 2).value == pytest.approx(0.288675134594813, rel=1e-12)
    assert lp_norm(MonicPolynomial((0.0,)), CANONICAL, 2).value * 0.5**1.5 == pytest.approx(
        0.288675134594813, rel=1e-12)


intervals = st.tuples(st.floats(-5, 5), st.floats(0.1, 5)).map(lambda t: Interval(t[0], t[0] + t[1]))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.floats(-1, 1), min_size=1, max_size=6), intervals, intervals)
def test_rescale_is_invertible(roots, src, dst):
    P = MonicPolynomial(tuple(roots))
    back = rescale(rescale(P, src, dst), dst, src)
    np.testing.assert_allclose(back.roots, P.roots, atol=1e-9)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.floats(-1, 1), min_size=1, max_size=5), intervals, st.floats(0.3, 6))
def test_rescale_norm_scaling(roots, dst, p):
    P = MonicPolynomial(tuple(roots))
    n = P.degree
    scaled = lp_norm(rescale(P, CANONICAL, dst), dst, p).value
    expected = lp_norm(P, CANONICAL, p).value * (dst.length / 2) ** (n + 1 / p)
    assert scaled == pytest.approx(expected, rel=1e-9)


def test_symmetric_root_vector():
    v = SymmetricRootVector(5, (0.3, 0.8))
    assert v.k == 2 and v.epsilon == 1 and v.is_valid()
    assert v.all_roots() == (-0.8, -0.3, 0.0, 0.3, 0.8)
    assert not SymmetricRootVector(4, (0.8, 0.3)).is_valid()
    assert not SymmetricRootVector(2, (1.5,)).is_valid()
    with pytest.raises(ValueError):
        SymmetricRootVector(4, (0.5,))
    w = SymmetricRootVector.from_squares(4, [0.64, 0.09])
    assert w.positive_roots == pytest.approx((0.3, 0.8))


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 9), st.data())
def test_symmetric_polynomial_has_parity(n, data):
    k = n // 2
    pr = sorted(data.draw(st.lists(st.floats(0.05, 1), min_size=k, max_size=k, unique=True)))
    Q = SymmetricRootVector(n, tuple(pr)).to_polynomial()
    x = np.linspace(-1, 1, 11)
    np.testing.assert_allclose(Q(-x), (-1) ** n * Q(x), atol=1e-13)


def test_interval_validation():
    with pytest.raises(ValueError):
        Interval(1.0, 1.0)
    with pytest.raises(ValueError):
        Interval(0.0, math.inf)
    assert Interval(-1, 3).midpoint == 1.0 and Interval(-1, 3).length == 4.0

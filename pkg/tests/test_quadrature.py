import math

import numpy as np
import pytest
import scipy.integrate
from hypothesis import given, settings
from hypothesis import strategies as st

from lpextremal.errors import InvalidP, InvalidTolerance
from lpextremal.polynomials import CANONICAL, UNIT, MonicPolynomial, chebyshev_t_nodes
from lpextremal.quadrature import (
    PNorm,
    integrate,
    lp_norm,
    lp_norm_p_power,
    sup_norm,
    weighted_chebyshev_norm,
)

X = MonicPolynomial((0.0,))


@pytest.mark.parametrize("p", [0.1, 0.5, 1.0, 2.0, 3.7, 16.0, 64.0])
def test_norm_of_x(p):
    assert lp_norm(X, CANONICAL, p).value == pytest.approx((2 / (p + 1)) ** (1 / p), rel=1e-12)


def test_norm_examples():
    assert lp_norm(X, CANONICAL, 2).value == pytest.approx(0.816496580927726, rel=1e-13)
    assert lp_norm(MonicPolynomial((-0.5, 0.5)), CANONICAL, 1).value == pytest.approx(0.5, rel=1e-13)
    assert lp_norm(MonicPolynomial((-2**-0.5, 2**-0.5)), CANONICAL, "inf").value == pytest.approx(0.5, rel=1e-14)
    T3 = MonicPolynomial(tuple(chebyshev_t_nodes(3)))
    assert lp_norm(T3, CANONICAL, math.inf).value == pytest.approx(0.25, rel=1e-13)


def test_p_power_examples():
    assert lp_norm_p_power(MonicPolynomial((0.5,)), UNIT, 2).value == pytest.approx(1 / 12, rel=1e-13)
    assert lp_norm_p_power(X, CANONICAL, 1).value == pytest.approx(1.0, rel=1e-13)
    third = MonicPolynomial((-(1 / 3) ** 0.5, (1 / 3) ** 0.5))
    assert lp_norm_p_power(third, CANONICAL, 2).value == pytest.approx(8 / 45, rel=1e-13)


@pytest.mark.parametrize("n, p", [(1, 2.0), (2, 3.0), (3, 0.5), (4, 1.3)])
def test_centered_power(n, p):
    # ∫_0^1 |t - 1/2|^(np) dt = 2 (1/2)^(np+1) / (np+1)
    P = MonicPolynomial((0.5,) * n)
    expected = 2 * 0.5 ** (n * p + 1) / (n * p + 1)
    assert lp_norm_p_power(P, UNIT, p).value == pytest.approx(expected, rel=1e-11)


@pytest.mark.parametrize("p", [0.25, 0.7, 1.5, 5.0])
def test_against_scipy(p):
    P = MonicPolynomial((-0.9, -0.1, 0.35, 0.6))
    pts = list(P.roots)
    ref, _ = scipy.integrate.quad(lambda t: abs(P(t)) ** p, -1, 1, points=pts, limit=500, epsabs=0, epsrel=1e-13)
    assert lp_norm_p_power(P, CANONICAL, p).value == pytest.approx(ref, rel=1e-9)


def test_roots_outside_interval_and_repeated():
    P = MonicPolynomial((-3.0, 0.2, 0.2, 2.0))
    ref, _ = scipy.integrate.quad(lambda t: abs(P(t)) ** 0.5, -1, 1, points=[0.2], epsabs=0, epsrel=1e-13)
    assert lp_norm_p_power(P, CANONICAL, 0.5).value == pytest.approx(ref, rel=1e-9)


def test_weighted_chebyshev():
    assert weighted_chebyshev_norm(MonicPolynomial(()), 1) == pytest.approx(math.pi, rel=1e-15)
    assert weighted_chebyshev_norm(X, 2) == pytest.approx(math.pi / 2, rel=1e-12)
    base = weighted_chebyshev_norm(X, 1.7)
    for n in range(2, 7):
        Tn = MonicPolynomial(tuple(chebyshev_t_nodes(n)))
        # |2^(n-1) Q(cos u)| = |cos nu| and ∫|cos nu|^p is independent of n
        val = weighted_chebyshev_norm(Tn, 1.7) * 2.0 ** ((n - 1) * 1.7)
        assert val == pytest.approx(base, rel=1e-10)


def test_sup_norm_interior_and_endpoint():
    P = MonicPolynomial((0.0, 0.0))
    assert sup_norm(P, CANONICAL).value == 1.0
    Q = MonicPolynomial((-0.5, 0.5))
    assert sup_norm(Q, CANONICAL).value == pytest.approx(0.75)


def test_integrate_generic():
    assert integrate(np.exp, 0.0, 1.0).value == pytest.approx(math.e - 1, rel=1e-13)
    assert integrate(lambda x: x ** -0.5, 0.0, 1.0).value == pytest.approx(2.0, rel=1e-9)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.floats(-1, 1), min_size=1, max_size=4), st.floats(0.5, 8), st.floats(0.5, 8))
def test_norm_monotone_in_p_on_unit_measure(roots, p, q):
    # on [0,1] (measure one) ||Q||_p is nondecreasing in p
    P = MonicPolynomial(tuple(0.5 * (np.asarray(roots) + 1)))
    lo, hi = sorted((p, q))
    assert lp_norm(P, UNIT, lo).value <= lp_norm(P, UNIT, hi).value * (1 + 1e-10)


def test_validation():
    with pytest.raises(InvalidTolerance):
        lp_norm(X, CANONICAL, 2, rel_tol=1e-16)
    with pytest.raises(InvalidTolerance):
        lp_norm(X, CANONICAL, 2, rel_tol=0.1)
    with pytest.raises(InvalidP):
        PNorm(0.0)
    with pytest.raises(InvalidP):
        PNorm(-1.0)
    with pytest.raises(InvalidP):
        lp_norm_p_power(X, CANONICAL, math.inf)
    assert PNorm.parse("inf").is_infinite and str(PNorm.parse("2")) == "2"
    assert PNorm(math.inf).inverse == 0.0

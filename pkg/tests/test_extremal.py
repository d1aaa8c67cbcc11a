import math

import numpy as np
import pytest

from lpextremal.errors import CheckFailed, DegreeOutOfRange, InvalidP, NotConverged
from lpextremal.extremal import (
    Method,
    SolverOptions,
    equioscillation_check,
    oracle_extremal,
    solve_extremal,
    stationarity_residual,
    with_interval,
)
from lpextremal.polynomials import CANONICAL, UNIT, Interval, MonicPolynomial, chebyshev_t_nodes
from lpextremal.quadrature import lp_norm

NUMERIC = SolverOptions(force_numeric=True)


@pytest.mark.parametrize("opts", [SolverOptions(), NUMERIC])
def test_n2_examples(opts):
    s = solve_extremal(2, math.inf, opts=opts)
    assert s.roots.positive_roots[0] == pytest.approx(1 / math.sqrt(2), abs=1e-9)
    assert s.norm_value == pytest.approx(0.5, rel=1e-10)
    s = solve_extremal(2, 2, opts=opts)
    assert s.roots.positive_roots[0] == pytest.approx(1 / math.sqrt(3), abs=1e-9)
    assert s.norm_value == pytest.approx(2 / 3 * math.sqrt(2 / 5), rel=1e-10)
    s = solve_extremal(2, 1, opts=opts)
    assert s.roots.positive_roots[0] == pytest.approx(0.5, abs=1e-9)
    assert s.norm_value == pytest.approx(0.5, rel=1e-10)


@pytest.mark.parametrize("p", [0.3, 1.0, 2.0, 7.5])
def test_n1(p):
    s = solve_extremal(1, p)
    assert s.roots.positive_roots == () and s.interval_roots == (0.0,)
    assert s.norm_value == pytest.approx((2 / (p + 1)) ** (1 / p), rel=1e-14)
    assert s.method is Method.CLOSED_FORM


def test_numeric_n3_p2_is_legendre():
    s = solve_extremal(3, 2, opts=NUMERIC)
    assert s.method is Method.NUMERIC and s.converged
    assert s.roots.positive_roots[0] == pytest.approx(math.sqrt(3 / 5), abs=1e-8)
    assert s.stationarity_residual < 1e-10


@pytest.mark.parametrize("n, p, ref", [
    # oracle fixtures (grid search, independent quadrature)
    (2, 0.5, (0.39853682,)),
    (3, 0.75, (0.66856214,)),
    (4, 0.5, (0.26342957, 0.71981106)),
    (4, 3.0, (0.3522288, 0.8799089)),
])
def test_regression_fixtures(n, p, ref):
    s = solve_extremal(n, p)
    np.testing.assert_allclose(s.roots.positive_roots, ref, atol=1e-6)


def test_n2_p_half_below_p1_root_and_matches_oracle():
    s = solve_extremal(2, 0.5)
    o = oracle_extremal(2, 0.5)
    assert 0 < s.roots.positive_roots[0] < 0.5
    assert s.roots.positive_roots[0] == pytest.approx(o.roots.positive_roots[0], abs=1e-4)
    assert s.canonical_norm <= o.canonical_norm + 1e-9


def test_oracle_examples():
    o = oracle_extremal(2, 1)
    assert o.roots.positive_roots[0] == pytest.approx(0.5, abs=1e-4)
    o = oracle_extremal(3, 2)
    assert o.roots.positive_roots[0] == pytest.approx(math.sqrt(0.6), abs=1e-4)
    assert o.method is Method.ORACLE
    with pytest.raises(DegreeOutOfRange):
        oracle_extremal(5, 2)
    with pytest.raises(InvalidP):
        oracle_extremal(2, math.inf)


def test_solution_is_symmetric_and_minimal():
    s = solve_extremal(5, 1.4)
    Q = s.canonical_polynomial
    x = np.linspace(-1, 1, 9)
    np.testing.assert_allclose(Q(-x), -Q(x), atol=1e-14)
    assert lp_norm(Q, CANONICAL, 1.4).value == pytest.approx(s.canonical_norm, rel=1e-10)
    rng = np.random.default_rng(1)
    for _ in range(10):
        other = MonicPolynomial(tuple(np.asarray(Q.roots) + rng.normal(0, 1e-3, 5)))
        assert lp_norm(other, CANONICAL, 1.4).value >= s.canonical_norm * (1 - 1e-12)


def test_interval_scaling():
    I = Interval(2.0, 5.0)
    s = solve_extremal(3, 1.5, I)
    c = solve_extremal(3, 1.5)
    assert s.norm_value == pytest.approx(c.canonical_norm * 1.5 ** (3 + 1 / 1.5), rel=1e-12)
    assert lp_norm(s.polynomial, I, 1.5).value == pytest.approx(s.norm_value, rel=1e-9)
    moved = with_interval(c, I)
    np.testing.assert_allclose(moved.interval_roots, s.interval_roots, atol=1e-12)


@pytest.mark.parametrize("n", [2, 3, 4, 6])
def test_p64_close_to_sup(n):
    big = solve_extremal(n, 64).canonical_norm
    sup = solve_extremal(n, math.inf).canonical_norm
    assert abs(big / sup - 1) < 0.05


@pytest.mark.parametrize("n", [2, 3, 4])
def test_norm_decreases_towards_small_p_on_unit(n):
    # on [0,1], the least p-norm is nondecreasing in p
    vals = [solve_extremal(n, p, UNIT).norm_value for p in (0.5, 1.0, 1.7, 3.0, math.inf)]
    assert all(a <= b * (1 + 1e-10) for a, b in zip(vals, vals[1:]))


def test_equioscillation_examples():
    r = equioscillation_check(solve_extremal(2, math.inf))
    np.testing.assert_allclose(r.points, [-1, 0, 1], atol=1e-12)
    np.testing.assert_allclose(r.values, [0.5, -0.5, 0.5], atol=1e-12)
    r = equioscillation_check(solve_extremal(1, math.inf))
    np.testing.assert_allclose(r.points, [-1, 1])
    np.testing.assert_allclose(r.values, [-1, 1])
    r = equioscillation_check(solve_extremal(3, math.inf))
    np.testing.assert_allclose(sorted(r.points), np.cos(np.arange(3, -1, -1) * math.pi / 3), atol=1e-9)


def test_equioscillation_failure():
    s = solve_extremal(2, 2)
    with pytest.raises(InvalidP):
        equioscillation_check(s)
    from dataclasses import replace
    from lpextremal.polynomials import SymmetricRootVector
    bad = replace(solve_extremal(2, math.inf), roots=SymmetricRootVector(2, (0.6,)))
    with pytest.raises(CheckFailed) as exc:
        equioscillation_check(bad)
    assert exc.value.points


def test_stationarity_residual():
    good = MonicPolynomial((-(1 / 3) ** 0.5, (1 / 3) ** 0.5))
    assert stationarity_residual(good, 2) < 1e-14
    assert stationarity_residual(MonicPolynomial((-0.7, 0.7)), 2) > 1e-3


def test_distinct_minima_none_for_convex_case():
    assert solve_extremal(4, 1.5).distinct_minima == ()


def test_warm_start_and_determinism():
    a = solve_extremal(4, 0.8)
    b = solve_extremal(4, 0.8)
    assert a.roots == b.roots and a.canonical_norm == b.canonical_norm
    w = solve_extremal(4, 0.8, opts=SolverOptions(initial=a.roots.positive_roots, restarts=1))
    np.testing.assert_allclose(w.roots.positive_roots, a.roots.positive_roots, atol=1e-8)


def test_strict_non_convergence_raises():
    opts = SolverOptions(max_iter=3, restarts=1, polish=False, strict=True, force_numeric=True)
    with pytest.raises(NotConverged) as exc:
        solve_extremal(6, 1.3, opts=opts)
    assert exc.value.solution.converged is False


def test_degree_validation():
    for n in (0, -1, 21, 2.5):
        with pytest.raises(DegreeOutOfRange):
            solve_extremal(n, 2)
    with pytest.raises(InvalidP):
        solve_extremal(2, 0)


@pytest.mark.parametrize("n", [5, 8])
def test_numeric_sup_matches_chebyshev(n):
    s = solve_extremal(n, math.inf, opts=NUMERIC)
    np.testing.assert_allclose(s.roots.positive_roots, chebyshev_t_nodes(n)[-(n // 2):], atol=1e-8)
    assert s.canonical_norm == pytest.approx(2.0 ** (1 - n), rel=1e-9)

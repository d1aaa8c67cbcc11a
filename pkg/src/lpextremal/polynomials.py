"""Monic polynomials in root form, the classical orthogonal families and
affine interval maps.

Root form is canonical: a ``MonicPolynomial`` is the product of ``(x - r)``
over its roots, and the coefficient vector is derived only on request.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np
from numpy.polynomial import polynomial as npoly


@dataclass(frozen=True)
class Interval:
    """Bounded segment ``[a, b]`` with ``a < b``."""

    a: float
    b: float

    def __post_init__(self):
        a, b = float(self.a), float(self.b)
        if not (math.isfinite(a) and math.isfinite(b)) or not a < b:
            raise ValueError(f"invalid interval [{self.a}, {self.b}]")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def length(self) -> float:
        return self.b - self.a

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.a + self.b)

    def to_canonical(self, x):
        """Affine map of this interval onto [-1, 1]."""
        return (2.0 * np.asarray(x, dtype=float) - (self.a + self.b)) / self.length

    def from_canonical(self, u):
        """Affine map of [-1, 1] onto this interval."""
        return self.midpoint + 0.5 * self.length * np.asarray(u, dtype=float)

    def as_tuple(self) -> tuple[float, float]:
        return (self.a, self.b)


CANONICAL = Interval(-1.0, 1.0)
UNIT = Interval(0.0, 1.0)


@dataclass(frozen=True)
class MonicPolynomial:
    """Monic real polynomial ``prod(x - r)`` held by its (real) roots."""

    roots: tuple[float, ...]

    def __post_init__(self):
        r = tuple(sorted(float(v) for v in self.roots))
        if any(not math.isfinite(v) for v in r):
            raise ValueError("roots must be finite")
        object.__setattr__(self, "roots", r)

    @classmethod
    def from_roots(cls, roots: Sequence[float]) -> MonicPolynomial:
        return cls(tuple(roots))

    @property
    def degree(self) -> int:
        return len(self.roots)

    @cached_property
    def coefficients(self) -> np.ndarray:
        """Coefficients in increasing-power order; the last one is exactly 1."""
        if not self.roots:
            return np.ones(1)
        c = npoly.polyfromroots(self.roots)
        c[-1] = 1.0
        return c

    def __call__(self, x):
        return evaluate(self, x)

    def derivative(self, x):
        """Value of Q'(x), by the product rule on the root form."""
        x = np.asarray(x, dtype=float)
        r = np.asarray(self.roots)
        if r.size == 0:
            return np.zeros_like(x)
        diffs = x[..., None] - r
        total = np.zeros_like(x)
        for j in range(r.size):
            total = total + np.prod(np.delete(diffs, j, axis=-1), axis=-1)
        return total

    def critical_points(self) -> np.ndarray:
        """Real zeros of Q', one between each pair of consecutive roots.

        Q'/Q = sum 1/(x - r_j) is strictly decreasing between consecutive
        distinct roots, so a bracketed Newton iteration seeded at the midpoint
        always converges. A repeated root is itself a critical point.
        """
        r = np.asarray(self.roots)
        if r.size < 2:
            return np.zeros(0)
        return _log_derivative_zeros(r, r[:-1].copy(), r[1:].copy())


def _log_derivative_zeros(r: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Bracketed Newton on sum 1/(x - r_j), all brackets at once."""
    x = 0.5 * (a + b)
    live = b > a
    width = b - a
    for _ in range(100):
        with np.errstate(divide="ignore", invalid="ignore"):
            inv = 1.0 / (x[:, None] - r)
            g = np.sum(inv, axis=1)
            gp = -np.sum(inv * inv, axis=1)
            a = np.where(live & (g > 0), x, a)
            b = np.where(live & (g < 0), x, b)
            xn = x - g / gp
        bad = ~((xn > a) & (xn < b))
        xn = np.where(bad, 0.5 * (a + b), xn)
        xn = np.where(live, xn, x)
        # quadratic convergence: one step past 1e-9 relative is at round-off
        done = np.abs(xn - x) <= 1e-9 * width
        x = xn
        if np.all(done | ~live):
            break
        live = live & ~done
    return x


def evaluate(P: MonicPolynomial, x):
    """Evaluate ``P`` at ``x`` (scalar or array) as ``prod(x - r_j)``."""
    x = np.asarray(x, dtype=float)
    if not P.roots:
        return np.ones_like(x)[()]
    return np.prod(x[..., None] - np.asarray(P.roots), axis=-1)[()]


@dataclass(frozen=True)
class SymmetricRootVector:
    """Positive roots of an odd/even polynomial ``x^eps prod(x^2 - x_i^2)``.

    ``n = 2k + eps``; ``positive_roots`` holds the ``k`` strictly increasing
    values in (0, 1].
    """

    n: int
    positive_roots: tuple[float, ...]

    def __post_init__(self):
        pr = tuple(float(v) for v in self.positive_roots)
        if self.n < 0 or len(pr) != self.n // 2:
            raise ValueError(f"degree {self.n} needs {self.n // 2} positive roots, got {len(pr)}")
        object.__setattr__(self, "positive_roots", pr)

    @property
    def k(self) -> int:
        return self.n // 2

    @property
    def epsilon(self) -> int:
        return self.n % 2

    def is_valid(self) -> bool:
        pr = self.positive_roots
        ok = all(0.0 < v <= 1.0 for v in pr)
        return ok and all(u < v for u, v in zip(pr[:-1], pr[1:]))

    @classmethod
    def from_squares(cls, n: int, squares: Sequence[float]) -> SymmetricRootVector:
        return cls(n, tuple(math.sqrt(max(float(y), 0.0)) for y in sorted(squares)))

    @property
    def squares(self) -> np.ndarray:
        return np.asarray(self.positive_roots) ** 2

    def all_roots(self) -> tuple[float, ...]:
        pr = self.positive_roots
        mid = (0.0,) if self.epsilon else ()
        return tuple(-v for v in reversed(pr)) + mid + pr

    def to_polynomial(self) -> MonicPolynomial:
        return MonicPolynomial(self.all_roots())


def rescale(P: MonicPolynomial, source: Interval, target: Interval) -> MonicPolynomial:
    """Carry the roots of ``P`` through the affine bijection source -> target.

    For finite p, ``||rescaled||_p = s**(n + 1/p) * ||P||_p`` with
    ``s = target.length / source.length``.
    """
    if not P.roots:
        return P
    u = source.to_canonical(np.asarray(P.roots))
    return MonicPolynomial(tuple(np.atleast_1d(target.from_canonical(u)).tolist()))


# -- classical families ------------------------------------------------------


@dataclass(frozen=True)
class ClassicalPolynomial:
    """A classical polynomial in coefficient form together with its roots.

    ``monic_scale`` is the factor turning it monic (1 / leading coefficient).
    """

    name: str
    n: int
    coefficients: np.ndarray = field(repr=False)
    roots: tuple[float, ...] = field(repr=False)

    @property
    def leading_coefficient(self) -> float:
        return float(self.coefficients[-1])

    @property
    def monic_scale(self) -> float:
        return 1.0 / self.leading_coefficient

    @property
    def monic_coefficients(self) -> np.ndarray:
        c = self.coefficients * self.monic_scale
        c[-1] = 1.0
        return c

    def monic(self) -> MonicPolynomial:
        return MonicPolynomial(self.roots)

    def __call__(self, x):
        return npoly.polyval(np.asarray(x, dtype=float), self.coefficients)


def _three_term(n: int, first: np.ndarray) -> list[np.ndarray]:
    """T/U style recurrence p_{j+1} = 2x p_j - p_{j-1}."""
    seq = [np.array([1.0]), first]
    for _ in range(1, n):
        nxt = npoly.polysub(2.0 * npoly.polymulx(seq[-1]), seq[-2])
        seq.append(nxt)
    return seq[: n + 1]


def chebyshev_t_nodes(n: int) -> np.ndarray:
    j = np.arange(n, 0, -1)
    nodes = np.cos((2 * j - 1) * np.pi / (2 * n))
    return _symmetrize(nodes)


def chebyshev_u_nodes(n: int) -> np.ndarray:
    j = np.arange(n, 0, -1)
    return _symmetrize(np.cos(j * np.pi / (n + 1)))


def _symmetrize(nodes: np.ndarray) -> np.ndarray:
    # cos() leaves ~1e-17 noise at the nominal zero and breaks exact +-pairs
    nodes = np.sort(nodes)
    sym = 0.5 * (nodes - nodes[::-1])
    if nodes.size % 2:
        sym[nodes.size // 2] = 0.0
    return sym


def legendre_nodes(n: int) -> np.ndarray:
    """Zeros of P_n by Newton's method from the usual cosine seeds."""
    if n == 0:
        return np.zeros(0)
    i = np.arange(1, n + 1)
    x = np.cos(np.pi * (i - 0.25) / (n + 0.5))
    for _ in range(100):
        p, dp = _legendre_value_and_derivative(n, x)
        dx = p / dp
        x = x - dx
        if np.max(np.abs(dx)) < 1e-16:
            break
    return _symmetrize(x)


def _legendre_value_and_derivative(n: int, x: np.ndarray):
    p0, p1 = np.ones_like(x), x.copy()
    if n == 0:
        return p0, np.zeros_like(x)
    for j in range(1, n):
        p0, p1 = p1, ((2 * j + 1) * x * p1 - j * p0) / (j + 1)
    dp = n * (x * p1 - p0) / (x * x - 1.0)
    return p1, dp


def chebyshev_T(n: int) -> ClassicalPolynomial:
    """Chebyshev polynomial of the first kind, ``T_n(cos t) = cos(n t)``.

    Leading coefficient ``2**(n-1)`` for n >= 1; monic form ``2**(1-n) T_n``.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    coeffs = _three_term(n, np.array([0.0, 1.0]))[n]
    roots = tuple(chebyshev_t_nodes(n).tolist()) if n else ()
    return ClassicalPolynomial("T", n, coeffs, roots)


def chebyshev_U(n: int) -> ClassicalPolynomial:
    """Chebyshev polynomial of the second kind (leading coefficient ``2**n``)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    coeffs = _three_term(n, np.array([0.0, 2.0]))[n]
    roots = tuple(chebyshev_u_nodes(n).tolist()) if n else ()
    return ClassicalPolynomial("U", n, coeffs, roots)


def legendre_P(n: int) -> ClassicalPolynomial:
    """Legendre polynomial by the Bonnet recurrence.

    The monic multiple is ``2**n (n!)**2 / (2n)! * P_n``.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    seq = [np.array([1.0]), np.array([0.0, 1.0])]
    for j in range(1, n):
        nxt = npoly.polysub((2 * j + 1) * npoly.polymulx(seq[-1]), j * seq[-2])
        seq.append(nxt / (j + 1))
    coeffs = seq[n]
    roots = tuple(legendre_nodes(n).tolist())
    return ClassicalPolynomial("P", n, np.asarray(coeffs, dtype=float), roots)


def legendre_monic_scale(n: int) -> float:
    return 2.0**n * math.factorial(n) ** 2 / math.factorial(2 * n)

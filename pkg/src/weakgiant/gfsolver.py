"""Generating-function machinery for weak (undirected-sense) components.

Let ``U(z, w) = sum u(n, k) z^n w^k``.  Following an edge forward lands on a
vertex whose remaining degree law has generating function

    U_in(z, w)  = (1/mu) dU/dz   (one in-degree consumed),
    U_out(z, w) = (1/mu) dU/dw   (one out-degree consumed),

and the weak-component size generating functions solve the joint system

    W_in(z)  = z U_in(W_out(z), W_in(z)),
    W_out(z) = z U_out(W_out(z), W_in(z)),
    W(z)     = z U(W_out(z), W_in(z)).

At ``z = 1`` the system reduces to a scalar fixed point whose smallest
solution in [0, 1]^2 gives the probability that an edge leads into a finite
component; ``1 - U`` at that point is the giant-component vertex fraction.
Picard iteration from (0, 0) converges monotonically to that smallest
solution, both for the scalar problem and coefficientwise for the truncated
power series.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .degdist import BALANCE_TOL, BivariateDegreeDist, require_edge_balanced
from .errors import NoConvergence

#: Default fixed-point tolerance and iteration budget.
FP_TOL = 1e-12
MAX_ITER = 10**6


@dataclass(frozen=True)
class FixedPointSolution:
    """Smallest fixed point of the edge-following system at z = 1."""

    s_out: float
    s_in: float
    iterations: int
    residual: float


@dataclass(frozen=True)
class TruncatedSeries:
    """Power series kept to a fixed truncation order.

    ``coefficients[i]`` multiplies ``z**i``; all operations discard orders
    above ``order``.
    """

    coefficients: np.ndarray

    @classmethod
    def zero(cls, order: int) -> "TruncatedSeries":
        return cls(np.zeros(order + 1))

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        c = np.zeros(order + 1)
        c[0] = 1.0
        return cls(c)

    @property
    def order(self) -> int:
        return self.coefficients.size - 1

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        full = np.convolve(self.coefficients, other.coefficients)
        return TruncatedSeries(full[: self.coefficients.size])

    def scaled(self, a: float) -> "TruncatedSeries":
        return TruncatedSeries(a * self.coefficients)

    def plus(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return TruncatedSeries(self.coefficients + other.coefficients)

    def shifted_up(self) -> "TruncatedSeries":
        """Multiplication by z."""
        c = np.empty_like(self.coefficients)
        c[0] = 0.0
        c[1:] = self.coefficients[:-1]
        return TruncatedSeries(c)


class _Prepared:
    """Support arrays shared by the scalar and series evaluators."""

    def __init__(self, d: BivariateDegreeDist):
        items = sorted(d.entries.items())
        self.ns = np.array([n for (n, _k), _p in items], dtype=np.int64)
        self.ks = np.array([k for (_n, k), _p in items], dtype=np.int64)
        self.ps = np.array([p for _key, p in items], dtype=float)
        self.mu = 0.5 * (d.moment(1, 0) + d.moment(0, 1))

    def eval_u(self, x: float, y: float) -> float:
        return float(np.sum(self.ps * x**self.ns * y**self.ks))

    def eval_u_in(self, x: float, y: float) -> float:
        m = self.ns >= 1
        return float(
            np.sum(self.ns[m] * self.ps[m] * x ** (self.ns[m] - 1) * y ** self.ks[m]) / self.mu
        )

    def eval_u_out(self, x: float, y: float) -> float:
        m = self.ks >= 1
        return float(
            np.sum(self.ks[m] * self.ps[m] * x ** self.ns[m] * y ** (self.ks[m] - 1)) / self.mu
        )


def interior_fixed_point(
    d: BivariateDegreeDist,
    *,
    tol: float = FP_TOL,
    max_iter: int = MAX_ITER,
    balance_tol: float = BALANCE_TOL,
) -> FixedPointSolution:
    """Smallest solution of ``s_in = U_in(s_out, s_in), s_out = U_out(...)``.

    Starts at (0, 0); iterates are monotone nondecreasing and bounded by 1,
    which is asserted each step (with a one-ulp slack for roundoff).  A
    distribution with no edges short-circuits to (1, 1).
    """
    prep = _Prepared(d)
    require_edge_balanced(d, balance_tol)
    if prep.mu == 0.0:
        return FixedPointSolution(s_out=1.0, s_in=1.0, iterations=0, residual=0.0)

    s_out, s_in = 0.0, 0.0
    residual = math.inf
    for iteration in range(1, max_iter + 1):
        new_in = prep.eval_u_in(s_out, s_in)
        new_out = prep.eval_u_out(s_out, s_in)
        assert new_in >= s_in - 1e-12 and new_out >= s_out - 1e-12
        assert new_in <= 1.0 + 1e-12 and new_out <= 1.0 + 1e-12
        new_in = min(new_in, 1.0)
        new_out = min(new_out, 1.0)
        residual = max(abs(new_in - s_in), abs(new_out - s_out))
        s_out, s_in = new_out, new_in
        if residual <= tol:
            return FixedPointSolution(s_out=s_out, s_in=s_in, iterations=iteration, residual=residual)
    raise NoConvergence("fixed-point iteration did not converge", max_iter, residual)


def giant_weak_fraction(
    d: BivariateDegreeDist,
    *,
    tol: float = FP_TOL,
    max_iter: int = MAX_ITER,
    balance_tol: float = BALANCE_TOL,
) -> float:
    """Fraction of vertices in the giant weak component (0 if subcritical)."""
    sol = interior_fixed_point(d, tol=tol, max_iter=max_iter, balance_tol=balance_tol)
    prep = _Prepared(d)
    return max(0.0, 1.0 - prep.eval_u(sol.s_out, sol.s_in))


def _series_powers(base: TruncatedSeries, top: int) -> list[TruncatedSeries]:
    powers = [TruncatedSeries.one(base.order)]
    for _ in range(top):
        powers.append(powers[-1] * base)
    return powers


def _series_apply(
    terms: list[tuple[float, int, int]],
    pow_out: list[TruncatedSeries],
    pow_in: list[TruncatedSeries],
    order: int,
) -> TruncatedSeries:
    """Evaluate ``sum coef * W_out^a * W_in^b`` grouping by the out-exponent."""
    by_a: dict[int, np.ndarray] = {}
    for coef, a, b in terms:
        acc = by_a.get(a)
        if acc is None:
            acc = np.zeros(order + 1)
            by_a[a] = acc
        acc += coef * pow_in[b].coefficients
    total = np.zeros(order + 1)
    for a, acc in by_a.items():
        if a == 0:
            total += acc
        else:
            total += (pow_out[a] * TruncatedSeries(acc)).coefficients
    return TruncatedSeries(total)


def weak_size_distribution(
    d: BivariateDegreeDist,
    order: int,
    *,
    tol: float = FP_TOL,
    max_iter: int = MAX_ITER,
    balance_tol: float = BALANCE_TOL,
) -> list[float]:
    """Probabilities ``w(1), ..., w(order)`` that a random vertex lies in a
    finite weak component of each size.

    Computed by Picard iteration on the truncated series system; in the
    supercritical phase the coefficients still converge, to the finite-
    component size law (summing to one minus the giant fraction).
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    prep = _Prepared(d)
    require_edge_balanced(d, balance_tol)
    if prep.mu == 0.0:
        return [1.0] + [0.0] * (order - 1)

    u_terms = [(float(p), int(n), int(k)) for n, k, p in zip(prep.ns, prep.ks, prep.ps)]
    in_terms = [(n * p / prep.mu, n - 1, k) for p, n, k in u_terms if n >= 1]
    out_terms = [(k * p / prep.mu, n, k - 1) for p, n, k in u_terms if k >= 1]
    max_out_pow = max((a for _c, a, _b in u_terms), default=0)
    max_in_pow = max((b for _c, _a, b in u_terms), default=0)

    w_in = TruncatedSeries.zero(order)
    w_out = TruncatedSeries.zero(order)
    residual = math.inf
    for _iteration in range(1, max_iter + 1):
        pow_out = _series_powers(w_out, max_out_pow)
        pow_in = _series_powers(w_in, max_in_pow)
        new_in = _series_apply(in_terms, pow_out, pow_in, order).shifted_up()
        new_out = _series_apply(out_terms, pow_out, pow_in, order).shifted_up()
        residual = max(
            float(np.max(np.abs(new_in.coefficients - w_in.coefficients))),
            float(np.max(np.abs(new_out.coefficients - w_out.coefficients))),
        )
        w_in, w_out = new_in, new_out
        if residual <= tol:
            break
    else:
        raise NoConvergence("series iteration did not converge", max_iter, residual)

    pow_out = _series_powers(w_out, max_out_pow)
    pow_in = _series_powers(w_in, max_in_pow)
    w = _series_apply(u_terms, pow_out, pow_in, order).shifted_up()
    coeffs = np.maximum(w.coefficients, 0.0)  # clamp roundoff
    assert math.fsum(coeffs[1:].tolist()) <= 1.0 + 1e-9
    return [float(c) for c in coeffs[1 : order + 1]]

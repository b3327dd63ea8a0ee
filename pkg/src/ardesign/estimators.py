"""Regression functions, signed designs and estimator variances.

All variances refer to the one-parameter model ``y_j = theta f(t_j) + eps_j``
with unit-variance errors.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
import scipy.linalg

from .covariance import build_sigma, integer_lags, inverse_sigma
from .errors import DegenerateDesignError, InvalidRegressionError, SingularMatrixError, SizeError

# ---------------------------------------------------------------------------
# regression functions


class RegressionFn:
    """Scalar regression function with derivatives up to order three."""

    name = "custom"

    def __call__(self, t):
        return self.deriv(t, 0)

    def deriv(self, t, n: int, h: Optional[float] = None):
        raise NotImplementedError

    def values(self, points) -> np.ndarray:
        return np.asarray(self(np.asarray(points, dtype=float)), dtype=float) * np.ones(np.shape(points))


class Constant(RegressionFn):
    name = "const"

    def deriv(self, t, n, h=None):
        t = np.asarray(t, dtype=float)
        return np.ones_like(t) if n == 0 else np.zeros_like(t)

    def __repr__(self):
        return "Constant()"


class Monomial(RegressionFn):
    """``f(t) = t**alpha``."""

    def __init__(self, alpha: float):
        self.alpha = float(alpha)

    @property
    def name(self):
        a = self.alpha
        return f"mono:{int(a) if a.is_integer() else a}"

    def deriv(self, t, n, h=None):
        t = np.asarray(t, dtype=float)
        c = 1.0
        for i in range(n):
            c *= self.alpha - i
        if c == 0.0:
            return np.zeros_like(t)
        return c * t ** (self.alpha - n)

    def __repr__(self):
        return f"Monomial({self.alpha!r})"


class Exponential(RegressionFn):
    """``f(t) = e^t``."""

    name = "exp"

    def deriv(self, t, n, h=None):
        return np.exp(np.asarray(t, dtype=float))

    def __repr__(self):
        return "Exponential()"


class Custom(RegressionFn):
    """User-supplied ``f`` with optional derivative callables.

    Missing derivatives are replaced by central differences with step ``h``
    (``O(h**2)`` error), differencing the highest supplied lower derivative.
    """

    def __init__(self, f: Callable, d1: Optional[Callable] = None,
                 d2: Optional[Callable] = None, d3: Optional[Callable] = None,
                 h: float = 1e-4, name: str = "custom"):
        self._d = [f, d1, d2, d3]
        self.h = h
        self.name = name

    def deriv(self, t, n, h=None):
        t = np.asarray(t, dtype=float)
        if self._d[n] is not None:
            return np.asarray(self._d[n](t), dtype=float)
        h = self.h if h is None else h
        m = max(i for i in range(n) if self._d[i] is not None)
        g = self._d[m]
        gap = n - m
        if gap == 1:
            return (g(t + h) - g(t - h)) / (2 * h)
        if gap == 2:
            return (g(t + h) - 2 * g(t) + g(t - h)) / h ** 2
        return (g(t + 2 * h) - 2 * g(t + h) + 2 * g(t - h) - g(t - 2 * h)) / (2 * h ** 3)


def nonzero_values(f: RegressionFn, points) -> np.ndarray:
    x = f.values(points)
    bad = np.flatnonzero(x == 0)
    if bad.size:
        raise InvalidRegressionError(f"f vanishes at t = {np.asarray(points)[bad[0]]!r}")
    return x


# ---------------------------------------------------------------------------
# designs and variances


@dataclass(frozen=True)
class SignedDesign:
    """Observation points with real (possibly negative) weights."""

    points: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        t = np.atleast_1d(np.asarray(self.points, dtype=float))
        w = np.atleast_1d(np.asarray(self.weights, dtype=float))
        if t.shape != w.shape:
            raise ValueError("points and weights must have the same length")
        if t.size > 1 and np.any(np.diff(t) <= 0):
            raise ValueError("design points must be strictly increasing")
        object.__setattr__(self, "points", t)
        object.__setattr__(self, "weights", w)

    @property
    def signs(self) -> np.ndarray:
        return np.sign(self.weights)

    def normalized(self) -> "SignedDesign":
        """Same design rescaled so that ``sum |w_i| = 1``."""
        return SignedDesign(self.points, self.weights / np.abs(self.weights).sum())


def _cholesky(sigma):
    try:
        return scipy.linalg.cho_factor(sigma, lower=True)
    except np.linalg.LinAlgError as exc:
        raise SingularMatrixError("covariance matrix is not positive definite") from exc


def wlse_variance(points, diag_weights, f: RegressionFn, kernel) -> float:
    """Sandwich variance of the WLSE with diagonal weight matrix ``W``.

    ``(X'WX)^{-1} X'W Sigma W X (X'WX)^{-1}``, a scalar in this model.
    """
    t = np.atleast_1d(np.asarray(points, dtype=float))
    w = np.atleast_1d(np.asarray(diag_weights, dtype=float))
    x = f.values(t)
    normal = float(np.sum(w * x * x))
    scale = float(np.sum(np.abs(w) * x * x))
    if scale == 0.0 or abs(normal) <= 1e-14 * scale:
        raise DegenerateDesignError("sum of w_i f(t_i)^2 vanishes")
    v = w * x
    return float(v @ build_sigma(t, kernel) @ v) / normal ** 2


def slse_variance(design: SignedDesign, f: RegressionFn, kernel) -> float:
    """Variance ``D(xi)`` of the signed least squares estimator for ``design``."""
    return wlse_variance(design.points, design.weights, f, kernel)


def lse_variance(points, f: RegressionFn, kernel) -> float:
    """Variance of ordinary least squares on ``points``."""
    return wlse_variance(points, np.ones(np.size(points)), f, kernel)


def optimal_signed_weights(points, f: RegressionFn, kernel) -> SignedDesign:
    """Weights ``w_i = (Sigma^{-1} f)_i / f_i`` making the SLSE as good as the BLUE.

    Always uses a dense Cholesky solve; weights are not normalised.
    """
    t = np.atleast_1d(np.asarray(points, dtype=float))
    x = nonzero_values(f, t)
    sol = scipy.linalg.cho_solve(_cholesky(build_sigma(t, kernel)), x)
    return SignedDesign(t, sol / x)


DENSE_MAX = 512


def _contiguous_run(t, kernel):
    idx = integer_lags(t, kernel.delta)
    return idx is not None and np.array_equal(idx, np.arange(t.size))


def blue_variance(points, f: RegressionFn, kernel) -> float:
    """``1 / (f' Sigma^{-1} f)``.

    Dense Cholesky up to ``DENSE_MAX`` points.  Larger full runs of
    consecutive grid points use the closed-form banded inverse, whose band
    sums cancel heavily for small ``delta`` (about 1e-9 relative at
    ``lambda * delta = 0.01``).
    """
    t = np.atleast_1d(np.asarray(points, dtype=float))
    x = f.values(t)
    if t.size > DENSE_MAX and _contiguous_run(t, kernel):
        info = float(x @ inverse_sigma(kernel, t.size).matvec(x))
    else:
        info = float(x @ scipy.linalg.cho_solve(_cholesky(build_sigma(t, kernel)), x))
    if not info > 0:
        raise DegenerateDesignError("f' Sigma^{-1} f must be positive")
    return 1.0 / info


def explicit_weights_ar1(f_values, a: float) -> np.ndarray:
    """Optimal weights on a full AR(1) grid from the tridiagonal inverse."""
    x = np.asarray(f_values, dtype=float)
    if x.size < 2:
        raise SizeError("need at least 2 points")
    if np.any(x == 0):
        raise InvalidRegressionError("f must not vanish on the grid")
    S, k0, k1 = 1 - a * a, 1 + a * a, -a
    num = np.empty_like(x)
    num[1:-1] = k1 * x[:-2] + k0 * x[1:-1] + k1 * x[2:]
    num[0] = x[0] + k1 * x[1]
    num[-1] = x[-1] + k1 * x[-2]
    return num / (S * x)


def explicit_weights_ar2(f_values, a1: float, a2: float) -> np.ndarray:
    """Optimal weights on a full AR(2) grid from the five-diagonal inverse.

    The weight at ``t_{N-1}`` uses ``k2`` for the ``f_{N-3}`` term, the mirror
    image of the ``t_2`` weight.
    """
    x = np.asarray(f_values, dtype=float)
    n = x.size
    if n < 5:
        raise SizeError("explicit AR(2) weights need N >= 5")
    if np.any(x == 0):
        raise InvalidRegressionError("f must not vanish on the grid")
    S = (1 + a1 - a2) * (1 - a1 - a2) * (1 + a2) / (1 - a2)
    k0, k1, k2 = 1 + a1 ** 2 + a2 ** 2, -a1 + a1 * a2, -a2
    k11, k12, k22 = 1.0, -a1, 1 + a1 ** 2
    num = np.empty_like(x)
    num[2:-2] = k2 * x[:-4] + k1 * x[1:-3] + k0 * x[2:-2] + k1 * x[3:-1] + k2 * x[4:]
    num[0] = k11 * x[0] + k12 * x[1] + k2 * x[2]
    num[1] = k12 * x[0] + k22 * x[1] + k1 * x[2] + k2 * x[3]
    num[-1] = k11 * x[-1] + k12 * x[-2] + k2 * x[-3]
    num[-2] = k12 * x[-1] + k22 * x[-2] + k1 * x[-3] + k2 * x[-4]
    return num / (S * x)


def explicit_weights(f_values, kernel) -> np.ndarray:
    if kernel.order == 1:
        return explicit_weights_ar1(f_values, kernel.a)
    return explicit_weights_ar2(f_values, kernel.a1, kernel.a2)


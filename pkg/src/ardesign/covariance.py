"""Covariance matrices on observation points and their banded inverses."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ar_process import is_stationary
from .errors import InvalidParameterError, OffGridError, SingularMatrixError, SizeError

# relative tolerance for recognising a lag as an integer multiple of delta
LAG_RTOL = 1e-8


@dataclass(frozen=True)
class EquidistantGrid:
    """Candidate points ``t_j = A + (j-1) delta``, ``j = 1..N``, with ``t_N = B``."""

    A: float
    B: float
    N: int

    def __post_init__(self):
        if not self.A < self.B:
            raise ValueError(f"grid needs A < B, got [{self.A}, {self.B}]")
        if int(self.N) != self.N or self.N < 2:
            raise SizeError(f"grid needs N >= 2 points, got {self.N}")

    @property
    def delta(self) -> float:
        return (self.B - self.A) / (self.N - 1)

    def point(self, j: int) -> float:
        """Grid point with zero-based index ``j``."""
        if not 0 <= j < self.N:
            raise IndexError(f"grid index {j} out of range 0..{self.N - 1}")
        if j == self.N - 1:
            return float(self.B)
        return self.A + j * self.delta

    @property
    def points(self) -> np.ndarray:
        t = self.A + np.arange(self.N) * self.delta
        t[-1] = self.B
        return t

    def round_index(self, x: float) -> int:
        """Index of the grid point nearest to ``x``; ties go to the smaller index."""
        u = (x - self.A) / self.delta
        j = int(np.floor(u))
        if u - j > 0.5:
            j += 1
        return min(max(j, 0), self.N - 1)

    def index_of(self, t: float, rtol: float = LAG_RTOL) -> int:
        """Index of grid member ``t``; raises :class:`OffGridError` otherwise."""
        u = (t - self.A) / self.delta
        j = int(round(u))
        if not 0 <= j < self.N or abs(u - j) > rtol * max(1.0, abs(u)):
            raise OffGridError(t)
        return j


def integer_lags(points, delta: float):
    """Offsets ``(t_i - t_0)/delta`` as integers if all are integral, else None."""
    t = np.asarray(points, dtype=float)
    u = (t - t[0]) / delta
    j = np.rint(u)
    if np.all(np.abs(u - j) <= LAG_RTOL * np.maximum(1.0, np.abs(u))):
        return j.astype(int)
    return None


def build_sigma(points, kernel) -> np.ndarray:
    """Covariance matrix ``Sigma_ij = rho(t_i - t_j)`` of observations at ``points``.

    When every pairwise lag is an integer multiple of ``kernel.delta`` the
    discrete autocovariances ``r_|i-j|`` are used; otherwise the continuous
    kernel ``rho``.
    """
    t = np.atleast_1d(np.asarray(points, dtype=float))
    if t.ndim != 1 or t.size == 0:
        raise ValueError("points must be a non-empty 1-d sequence")
    if t.size > 1 and np.any(np.diff(t) <= 0):
        raise SingularMatrixError("points must be strictly increasing (duplicates make Sigma singular)")
    idx = integer_lags(t, kernel.delta)
    if idx is not None:
        return np.asarray(kernel.r(np.abs(idx[:, None] - idx[None, :])), dtype=float)
    return np.asarray(kernel.rho(t[:, None] - t[None, :]), dtype=float)


@dataclass(frozen=True)
class BandedInverse:
    """Closed-form inverse covariance ``(1/S) * band`` on a full grid.

    The band has a constant interior ``(k2, k1, k0, k1, k2)`` and persymmetric
    2x2 corner blocks ``[[k11, k12], [k21, k22]]``.  AR(1) uses ``k2 = 0``
    and only the outermost diagonal entries differ from ``k0``.
    """

    order: int
    N: int
    S: float
    k0: float
    k1: float
    k2: float = 0.0
    k11: float = 1.0
    k12: float = 0.0
    k22: float = 0.0

    @property
    def k21(self) -> float:
        return self.k12

    def diagonals(self):
        """Main, first and second super-diagonals of ``S * Sigma^{-1}``."""
        n = self.N
        d0 = np.full(n, self.k0)
        d1 = np.full(n - 1, self.k1)
        d2 = np.full(max(n - 2, 0), self.k2)
        d0[0] = d0[-1] = self.k11
        if self.order == 2:
            d0[1] = d0[-2] = self.k22
            d1[0] = d1[-1] = self.k12
        return d0, d1, d2

    def to_dense(self) -> np.ndarray:
        d0, d1, d2 = self.diagonals()
        m = np.diag(d0) + np.diag(d1, 1) + np.diag(d1, -1)
        if d2.size:
            m += np.diag(d2, 2) + np.diag(d2, -2)
        return m / self.S

    def matvec(self, x) -> np.ndarray:
        """``Sigma^{-1} x`` using only the band."""
        x = np.asarray(x, dtype=float)
        d0, d1, d2 = self.diagonals()
        y = d0 * x
        y[:-1] += d1 * x[1:]
        y[1:] += d1 * x[:-1]
        if d2.size:
            y[:-2] += d2 * x[2:]
            y[2:] += d2 * x[:-2]
        return y / self.S


def inverse_sigma_ar1(a: float, N: int) -> BandedInverse:
    """Tridiagonal inverse of the AR(1) covariance ``a^{|i-j|}``."""
    if not 0.0 < a < 1.0:
        raise InvalidParameterError(f"AR(1) parameter a must lie in (0, 1), got {a!r}")
    if N < 2:
        raise SizeError("AR(1) inverse needs N >= 2")
    return BandedInverse(order=1, N=N, S=1 - a * a, k0=1 + a * a, k1=-a, k11=1.0, k12=-a, k22=1 + a * a)


def inverse_sigma_ar2(a1: float, a2: float, N: int) -> BandedInverse:
    """Five-diagonal inverse of the unit-variance AR(2) covariance."""
    if not is_stationary(a1, a2):
        raise InvalidParameterError(f"non-stationary AR(2) coefficients ({a1}, {a2})")
    if N < 5:
        raise SizeError("AR(2) inverse needs N >= 5")
    S = (1 + a1 - a2) * (1 - a1 - a2) * (1 + a2) / (1 - a2)
    return BandedInverse(
        order=2, N=N, S=S,
        k0=1 + a1 ** 2 + a2 ** 2, k1=-a1 + a1 * a2, k2=-a2,
        k11=1.0, k12=-a1, k22=1 + a1 ** 2,
    )


def inverse_sigma(kernel, N: int) -> BandedInverse:
    """Banded inverse for a discrete AR(1) or AR(2) process on a full grid."""
    if kernel.order == 1:
        return inverse_sigma_ar1(kernel.a, N)
    return inverse_sigma_ar2(kernel.a1, kernel.a2, N)

"""Practical K+2 and K+4 point designs derived from a continuous design.

The continuous part ``p(t) dt`` is replaced by ``K`` equally weighted points
placed at the quantiles ``i/(K+1)`` of the normalised density
``phi = kappa |p|`` and rounded to the candidate grid.  Each interior point
carries weight ``s_i (B-A)/(kappa K)`` with ``s_i = sign p(t_i)``.  The
K+4 variant adds ``A + delta`` and ``B - delta`` so that the derivative
terms of an AR(2) design can be replaced by one-sided differences.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy.optimize import brentq

from .ar_process import discretize
from .asymptotic_design import ContinuousDesign, continuous_design, dstar
from .covariance import EquidistantGrid
from .errors import DegenerateDesignError, SizeError
from .estimators import RegressionFn, blue_variance, lse_variance, wlse_variance
from .quadrature import integrate

_ZERO_SCAN = 4097


def _density_zeros(p, A, B):
    t = np.linspace(A, B, _ZERO_SCAN)
    v = np.asarray(p(t), dtype=float) * np.ones_like(t)
    zeros = []
    for i in range(len(t) - 1):
        if v[i] == 0.0:
            if 0 < i:
                zeros.append(float(t[i]))
        elif v[i] * v[i + 1] < 0:
            zeros.append(brentq(lambda x: float(p(x)), t[i], t[i + 1], xtol=1e-15))
    return zeros


@dataclass(frozen=True)
class NormalizedDensity:
    """``phi = kappa |p|`` on ``[A, B]`` and its distribution function ``F``."""

    kappa: float
    density: Callable
    A: float
    B: float
    breakpoints: tuple
    cumulative: tuple  # integral of |p| from A to each breakpoint

    def phi(self, t):
        return self.kappa * np.abs(self.density(t))

    def _abs_p(self, t):
        return np.abs(self.density(t))

    def cdf(self, x: float) -> float:
        if x <= self.A:
            return 0.0
        if x >= self.B:
            return 1.0
        i = int(np.searchsorted(self.breakpoints, x, side="right")) - 1
        mass = self.cumulative[i] + integrate(self._abs_p, self.breakpoints[i], x, rtol=1e-13)
        return min(max(self.kappa * mass, 0.0), 1.0)

    def quantile(self, q: float) -> float:
        """Smallest ``x`` with ``F(x) >= q`` (bisection)."""
        if q <= 0:
            return self.A
        lo, hi = self.A, self.B
        while hi - lo > 1e-14 * (self.B - self.A):
            mid = 0.5 * (lo + hi)
            if self.cdf(mid) >= q:
                hi = mid
            else:
                lo = mid
        return hi


def normalize_density(design: ContinuousDesign) -> NormalizedDensity:
    """Normalise ``|p|`` to a probability density on ``[A, B]``."""
    A, B, p = design.A, design.B, design.density
    bps = [A, *_density_zeros(p, A, B), B]
    cum = [0.0]
    for lo, hi in zip(bps[:-1], bps[1:]):
        cum.append(cum[-1] + integrate(lambda t: np.abs(p(t)), lo, hi, rtol=1e-13))
    total = cum[-1]
    scale = max(1.0, abs(design.P_A), abs(design.P_B))
    if not np.isfinite(total) or total <= 1e-13 * (B - A) * scale:
        raise DegenerateDesignError("density p vanishes identically on (A, B)")
    return NormalizedDensity(1.0 / total, p, A, B, tuple(bps), tuple(cum))


def quantile_points(nd: NormalizedDensity, K: int, grid: EquidistantGrid):
    """Grid indices, points and signs of ``R(F^{-1}(i/(K+1)))``, ``i = 1..K``.

    ``R`` rounds to the nearest grid point (ties to the smaller one).
    """
    if K < 1:
        raise ValueError("K must be >= 1")
    idx = [grid.round_index(nd.quantile(i / (K + 1))) for i in range(1, K + 1)]
    pts = np.array([grid.point(j) for j in idx])
    vals = np.asarray(nd.density(pts), dtype=float) * np.ones_like(pts)
    bad = np.flatnonzero(vals == 0)
    if bad.size:
        raise DegenerateDesignError(f"density vanishes at emitted point {pts[bad[0]]!r}")
    return idx, pts, np.sign(vals).astype(int)


@dataclass(frozen=True)
class ExecutableDesign:
    """Grid-member observation points with the diagonal of the weight matrix."""

    indices: tuple
    weights: np.ndarray
    signs: tuple
    K: int
    variant: str
    grid: EquidistantGrid = field(repr=False)

    @property
    def points(self) -> np.ndarray:
        return np.array([self.grid.point(j) for j in self.indices])

    def __len__(self):
        return len(self.indices)


def _interior(design, nd, K, grid, lo, hi):
    """Interior indices clipped to ``[lo, hi]``, merged, with their weights."""
    if K == 0:
        return [], [], []
    if nd is None:
        nd = normalize_density(design)
    idx, _, signs = quantile_points(nd, K, grid)
    mass = (grid.B - grid.A) / (nd.kappa * K)
    merged = {}
    for j, s in zip(idx, signs):
        j = min(max(j, lo), hi)
        merged[j] = merged.get(j, 0.0) + s * mass
    if len(merged) < len(idx):
        warnings.warn(f"{len(idx) - len(merged)} quantile point(s) merged after rounding", stacklevel=3)
    keys = sorted(merged)
    pts = np.array([grid.point(j) for j in keys])
    point_signs = np.sign(np.asarray(design.density(pts), dtype=float) * np.ones_like(pts)).astype(int)
    return keys, [merged[j] for j in keys], list(point_signs)


def assemble_k2(design: ContinuousDesign, nd: Optional[NormalizedDensity], K: int,
                grid: EquidistantGrid) -> ExecutableDesign:
    """Points ``A, t_1..t_K, B`` with weights ``P_A, s_i (B-A)/(kappa K), P_B``.

    Interior points that round onto an endpoint move one grid step inward.
    """
    if K + 2 > grid.N:
        raise SizeError(f"K+2 = {K + 2} exceeds grid size {grid.N}")
    keys, w, s = _interior(design, nd, K, grid, 1, grid.N - 2)
    return ExecutableDesign(
        (0, *keys, grid.N - 1),
        np.array([design.P_A, *w, design.P_B]),
        tuple(s), K, "K+2", grid)


def assemble_k4(design: ContinuousDesign, nd: Optional[NormalizedDensity], K: int,
                grid: EquidistantGrid) -> ExecutableDesign:
    """K+2 design plus ``A + delta`` and ``B - delta``.

    The weight matrix diagonal is::

        P_A/2 + Q_A/delta, P_A/2 - Q_A/delta, s_i (B-A)/(kappa K) ...,
        P_B/2 - Q_B/delta, P_B/2 + Q_B/delta
    """
    if design.order != 2:
        raise ValueError("the K+4 design needs an order-2 (AR(2)) continuous design")
    if K + 4 > grid.N:
        raise SizeError(f"K+4 = {K + 4} exceeds grid size {grid.N}")
    keys, w, s = _interior(design, nd, K, grid, 2, grid.N - 3)
    d = grid.delta
    W = [design.P_A / 2 + design.Q_A / d, design.P_A / 2 - design.Q_A / d, *w,
         design.P_B / 2 - design.Q_B / d, design.P_B / 2 + design.Q_B / d]
    return ExecutableDesign((0, 1, *keys, grid.N - 2, grid.N - 1), np.array(W), tuple(s), K, "K+4", grid)


def modified_slse_variance(design: ContinuousDesign, k2: ExecutableDesign, f: RegressionFn, form) -> float:
    """Variance of the modified SLSE on a K+2 design.

    For AR(2) errors the estimator also uses the path derivatives ``y'(A)``
    and ``y'(B)``; their covariances come from the continuous kernel
    ``form`` and its first two derivatives.  For AR(1) this is the WLSE with
    the K+2 weights.
    """
    t = k2.points
    if design.order == 1:
        return wlse_variance(t, k2.weights, f, discretize(form, k2.grid.delta))
    A, B = design.A, design.B
    x = f.values(t)
    c = k2.weights * x
    h = (B - A) * 1e-4
    gA = -design.Q_A * float(f(A))
    gB = design.Q_B * float(f(B))
    info = (gB * float(f.deriv(B, 1, h)) + gA * float(f.deriv(A, 1, h)) + float(np.sum(k2.weights * x * x)))
    if info == 0:
        raise DegenerateDesignError("modified SLSE has zero information")
    var = float(c @ form.rho(t[:, None] - t[None, :]) @ c)
    var += 2 * float(np.sum(c * (gA * form.d_rho(A - t) + gB * form.d_rho(B - t))))
    var += -(gA ** 2 + gB ** 2) * float(form.d2_rho(0.0)) - 2 * gA * gB * float(form.d2_rho(A - B))
    return var / info ** 2


@dataclass(frozen=True)
class Scenario:
    """Regression function, error model, interval, grid size and K."""

    f: RegressionFn
    form: object
    A: float
    B: float
    N: int
    K: int

    @property
    def grid(self) -> EquidistantGrid:
        return EquidistantGrid(self.A, self.B, self.N)

    @property
    def kernel(self):
        return discretize(self.form, self.grid.delta)


@dataclass
class VarianceReport:
    """Variances of the competing estimators for one scenario."""

    K: int
    interior_points: np.ndarray
    var_lse_k2: float
    var_mslse_k2: float
    var_wlse_k4: Optional[float]
    var_blue_k2: float
    var_blue_k4: Optional[float]
    dstar: float
    var_blue_full: float
    design_k2: ExecutableDesign = field(repr=False)
    design_k4: Optional[ExecutableDesign] = field(default=None, repr=False)


def report_design(scenario: Scenario, design: Optional[ContinuousDesign] = None,
                  nd: Optional[NormalizedDensity] = None) -> VarianceReport:
    """All variances compared in the reference tables, for one scenario."""
    f, grid, kernel = scenario.f, scenario.grid, scenario.kernel
    cont = getattr(scenario.form, "continuous", scenario.form)
    if design is None:
        design = continuous_design(f, scenario.form, scenario.A, scenario.B)
    if nd is None and scenario.K > 0:
        nd = normalize_density(design)
    k2 = assemble_k2(design, nd, scenario.K, grid)
    t2 = k2.points
    k4 = None
    var_wlse = var_blue4 = None
    if design.order == 2:
        k4 = assemble_k4(design, nd, scenario.K, grid)
        var_wlse = wlse_variance(k4.points, k4.weights, f, kernel)
        var_blue4 = blue_variance(k4.points, f, kernel)
    elif scenario.K + 4 <= grid.N:
        pts = np.array([grid.point(j) for j in sorted({0, 1, *k2.indices, grid.N - 2, grid.N - 1})])
        var_blue4 = blue_variance(pts, f, kernel)
    return VarianceReport(
        K=scenario.K,
        interior_points=t2[1:-1],
        var_lse_k2=lse_variance(t2, f, kernel),
        var_mslse_k2=modified_slse_variance(design, k2, f, cont),
        var_wlse_k4=var_wlse,
        var_blue_k2=blue_variance(t2, f, kernel),
        var_blue_k4=var_blue4,
        dstar=dstar(design, f),
        var_blue_full=blue_variance(grid.points, f, kernel),
        design_k2=k2,
        design_k4=k4,
    )


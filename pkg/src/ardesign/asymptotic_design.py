"""Continuous limits of the optimal signed designs.

As the grid step tends to zero, the optimal weights on a full grid behave
like a signed density ``p(t)`` on ``(A, B)`` plus point masses ``P_A, P_B``
at the ends.  For AR(2) errors the two outermost weights on each side blow
up like ``Q/delta`` with opposite signs, which in the limit act on the
derivative of the observed path; ``Q_A, Q_B`` carry that part.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .ar_process import Ar1Form, Ar1Params, ConstantSet, discretize, taylor_constants
from .covariance import EquidistantGrid
from .errors import DegenerateDesignError, InvalidRegressionError
from .estimators import RegressionFn, explicit_weights
from .quadrature import integrate


@dataclass(frozen=True)
class ContinuousDesign:
    """Signed measure ``P_A delta_A + P_B delta_B + p(t) dt`` (+ derivative terms)."""

    order: int
    density: Callable
    P_A: float
    P_B: float
    A: float
    B: float
    Q_A: float = 0.0
    Q_B: float = 0.0

    def p(self, t):
        return self.density(t)


def _fd_step(A, B):
    return (B - A) * 1e-4


def _check_nonzero(f, A, B):
    t = np.linspace(A, B, 1001)
    v = f.values(t)
    if np.any(v == 0) or np.any(np.sign(v) != np.sign(v[0])):
        raise InvalidRegressionError(f"f must not vanish on [{A}, {B}]")


def continuous_design_ar1(f: RegressionFn, lam: float, A: float, B: float) -> ContinuousDesign:
    """Limit design for AR(1) errors with rate ``lam``."""
    _check_nonzero(f, A, B)
    h = _fd_step(A, B)

    def density(t):
        return -(f.deriv(t, 2, h) - lam ** 2 * f.deriv(t, 0)) / (2 * lam * f.deriv(t, 0))

    fa, fb = float(f(A)), float(f(B))
    P_A = (-float(f.deriv(A, 1, h)) + lam * fa) / (2 * lam * fa)
    P_B = (float(f.deriv(B, 1, h)) + lam * fb) / (2 * lam * fb)
    return ContinuousDesign(1, density, P_A, P_B, A, B)


def continuous_design_ar2(f: RegressionFn, constants: ConstantSet, A: float, B: float) -> ContinuousDesign:
    """Limit design for AR(2) errors described by ``constants``."""
    _check_nonzero(f, A, B)
    c = constants
    h = _fd_step(A, B)

    def density(t):
        return -(c.tau2 * f.deriv(t, 2, h) - c.tau0 * f.deriv(t, 0)) / (c.s3 * f.deriv(t, 0))

    def d(t, n):
        return float(f.deriv(t, n, h))

    fa, fb = d(A, 0), d(B, 0)
    P_A = (d(A, 3) - c.gamma1 * d(A, 1) + c.gamma0 * fa) / (c.s3 * fa)
    P_B = (-d(B, 3) + c.gamma1 * d(B, 1) + c.gamma0 * fb) / (c.s3 * fb)
    Q_A = (d(A, 2) - c.beta1 * d(A, 1) + c.beta0 * fa) / (c.s3 * fa)
    Q_B = (d(B, 2) + c.beta1 * d(B, 1) + c.beta0 * fb) / (c.s3 * fb)
    return ContinuousDesign(2, density, P_A, P_B, A, B, Q_A, Q_B)


def continuous_design(f: RegressionFn, form, A: float, B: float) -> ContinuousDesign:
    """Dispatch on the error model: an AR(1) or AR(2) form (or discrete process)."""
    if isinstance(form, (Ar1Form, Ar1Params)):
        return continuous_design_ar1(f, form.lam, A, B)
    return continuous_design_ar2(f, taylor_constants(getattr(form, "form", form)), A, B)


def information(design: ContinuousDesign, f: RegressionFn) -> float:
    """Reciprocal of :func:`dstar`."""
    A, B = design.A, design.B
    h = _fd_step(A, B)
    fa, fb = float(f(A)), float(f(B))
    total = design.P_A * fa ** 2 + design.P_B * fb ** 2
    if design.order == 2:
        total += design.Q_B * fb * float(f.deriv(B, 1, h)) - design.Q_A * fa * float(f.deriv(A, 1, h))
    total += integrate(lambda t: design.p(t) * f.deriv(t, 0) ** 2, A, B, rtol=1e-13)
    return total


def dstar(design: ContinuousDesign, f: RegressionFn) -> float:
    """Limiting variance of the optimal SLSE as the grid is refined."""
    total = information(design, f)
    if total == 0.0:
        raise DegenerateDesignError("continuous design has zero information")
    return 1.0 / total


def _fd(g, h=1e-5):
    return lambda t: (g(t + h) - g(t - h)) / (2 * h)


def triangular_kernel_design(f: RegressionFn, u: Callable, v: Callable, A: float, B: float, *,
                             du: Optional[Callable] = None, d2u: Optional[Callable] = None,
                             dv: Optional[Callable] = None, d2v: Optional[Callable] = None) -> ContinuousDesign:
    """Limit design for a triangular kernel ``K(s, t) = u(s) v(t)``, ``s <= t``.

    With ``q = u/v`` and ``h = f/v``::

        p(t) = -[h'/q']'(t) / (f(t) v(t))
        P_A  = (f(A) u'(A)/u(A) - f'(A)) / (f(A) v(A)^2 q'(A))
        P_B  = h'(B) / (f(B) v(B) q'(B))

    Derivatives of ``u`` and ``v`` that are not supplied are taken by central
    differences, which limits accuracy to roughly 1e-9.
    """
    _check_nonzero(f, A, B)
    du = du or _fd(u)
    dv = dv or _fd(v)
    d2u = d2u or _fd(du)
    d2v = d2v or _fd(dv)
    step = _fd_step(A, B)

    def fd(t, n):
        return f.deriv(t, n, step)

    def qprime_num(t):
        # q' = (u'v - u v') / v^2
        return du(t) * v(t) - u(t) * dv(t)

    for t in np.linspace(A, B, 101):
        if qprime_num(t) == 0:
            raise DegenerateDesignError(f"q'(t) vanishes at t = {t}")

    def density(t):
        t = np.asarray(t, dtype=float)
        num = fd(t, 1) * v(t) - fd(t, 0) * dv(t)
        den = qprime_num(t)
        dnum = fd(t, 2) * v(t) - fd(t, 0) * d2v(t)
        dden = d2u(t) * v(t) - u(t) * d2v(t)
        return -((dnum * den - num * dden) / den ** 2) / (fd(t, 0) * v(t))

    fa, fb = float(fd(A, 0)), float(fd(B, 0))
    qa = qprime_num(A) / v(A) ** 2
    qb = qprime_num(B) / v(B) ** 2
    P_A = (fa * du(A) / u(A) - float(fd(A, 1))) / (fa * v(A) ** 2 * qa)
    hb = (float(fd(B, 1)) * v(B) - fb * dv(B)) / v(B) ** 2
    P_B = hb / (fb * v(B) * qb)
    return ContinuousDesign(1, density, float(P_A), float(P_B), A, B)


@dataclass(frozen=True)
class ProbeRow:
    """Deviation of the optimal N-point weights from their continuous limit."""

    N: int
    delta: float
    interior: float
    P_A: float
    P_B: float
    Q_A: float = float("nan")
    Q_B: float = float("nan")


def convergence_probe(f: RegressionFn, form, A: float, B: float, N_list) -> list[ProbeRow]:
    """Compare exact optimal weights on refining grids with the limit design.

    Interior rows report ``max |w_i/delta - p(t_i)|``; boundary entries are
    ``|w_1 - P_A|`` (AR(1)) or ``|(w_1 f_1 + w_2 f_2)/f_1 - P_A|`` and
    ``|delta w_1 - Q_A|`` (AR(2)), and the mirrored quantities at ``B``.
    For AR(2) the plain sum ``w_1 + w_2`` tends to ``P_A + Q_A f'(A)/f(A)``,
    so it matches ``P_A`` only when ``f'(A) = 0``.
    """
    design = continuous_design(f, form, A, B)
    rows = []
    for N in N_list:
        grid = EquidistantGrid(A, B, N)
        kernel = discretize(form, grid.delta)
        t = grid.points
        x = f.values(t)
        w = explicit_weights(x, kernel)
        d = grid.delta
        if design.order == 1:
            inner = slice(1, N - 1)
            rows.append(ProbeRow(
                N, d,
                float(np.max(np.abs(w[inner] / d - design.p(t[inner])))),
                float(abs(w[0] - design.P_A)), float(abs(w[-1] - design.P_B))))
        else:
            inner = slice(2, N - 2)
            rows.append(ProbeRow(
                N, d,
                float(np.max(np.abs(w[inner] / d - design.p(t[inner])))),
                float(abs((w[0] * x[0] + w[1] * x[1]) / x[0] - design.P_A)),
                float(abs((w[-1] * x[-1] + w[-2] * x[-2]) / x[-1] - design.P_B)),
                float(abs(d * w[0] - design.Q_A)), float(abs(d * w[-1] - design.Q_B))))
    return rows

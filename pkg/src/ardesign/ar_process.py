"""AR(1) and AR(2) error processes on an equidistant grid.

Every kernel is normalised to unit variance, ``r_0 = rho(0) = 1``.

A continuous AR(2) covariance comes in one of three forms::

    Form1   rho(t) = (l2 e^{-l1|t|} - l1 e^{-l2|t|}) / (l2 - l1)
    Form2   rho(t) = e^{-l|t|} (cos(q|t|) + (l/q) sin(q|t|))
    Form3   rho(t) = e^{-l|t|} (1 + l|t|)

Sampling with step ``delta`` gives the matching discrete AR(2) autocovariance
``r_k`` (see :class:`Ar2Discrete`), whose coefficients ``a1, a2`` follow from
the Yule-Walker equations.  Note that ``r_k`` and ``rho(k delta)`` agree only
to leading order in ``delta`` for AR(2); for AR(1) they coincide exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .errors import InvalidParameterError, SingularInputError

# relative gap below which Form1 is treated as the repeated-root case
FORM1_DEGENERACY_RTOL = 1e-8


def _positive(name, value):
    if not (np.isfinite(value) and value > 0):
        raise InvalidParameterError(f"{name} must be a positive real, got {value!r}")


@dataclass(frozen=True)
class Ar1Form:
    """Continuous AR(1) covariance ``rho(t) = e^{-lam|t|}``."""

    lam: float

    def __post_init__(self):
        _positive("lam", self.lam)

    def rho(self, t):
        return np.exp(-self.lam * np.abs(np.asarray(t, dtype=float)))

    def d_rho(self, t):
        t = np.asarray(t, dtype=float)
        return -self.lam * np.sign(t) * np.exp(-self.lam * np.abs(t))

    def discretize(self, delta: float) -> "Ar1Params":
        return Ar1Params(self.lam, delta)


@dataclass(frozen=True)
class Ar1Params:
    """AR(1) errors ``eps_j - a eps_{j-1} = z_j`` with ``a = exp(-lam*delta)``."""

    lam: float
    delta: float

    order = 1

    def __post_init__(self):
        _positive("lam", self.lam)
        _positive("delta", self.delta)

    @classmethod
    def from_a(cls, a: float, delta: float) -> "Ar1Params":
        if not 0.0 < a < 1.0:
            raise InvalidParameterError(f"AR(1) parameter a must lie in (0, 1), got {a!r}")
        return cls(-math.log(a) / delta, delta)

    @property
    def a(self) -> float:
        return math.exp(-self.lam * self.delta)

    @property
    def continuous(self) -> Ar1Form:
        return Ar1Form(self.lam)

    def discretize(self, delta: float) -> "Ar1Params":
        return Ar1Params(self.lam, delta)

    def r(self, k):
        k = np.abs(np.asarray(k))
        return self.a ** k

    def rho(self, t):
        return np.exp(-self.lam * np.abs(np.asarray(t, dtype=float)))

    @property
    def sigma_z_sq(self) -> float:
        return 1.0 - self.a ** 2


@dataclass(frozen=True)
class Form1:
    """Two distinct real decay rates."""

    lam1: float
    lam2: float

    def __post_init__(self):
        _positive("lam1", self.lam1)
        _positive("lam2", self.lam2)
        if abs(self.lam1 - self.lam2) < FORM1_DEGENERACY_RTOL * max(self.lam1, self.lam2):
            raise InvalidParameterError(
                "Form1 needs lam1 != lam2; use Form3 for a repeated rate")

    def rho(self, t):
        s = np.abs(np.asarray(t, dtype=float))
        l1, l2 = self.lam1, self.lam2
        return (l2 * np.exp(-l1 * s) - l1 * np.exp(-l2 * s)) / (l2 - l1)

    def d_rho(self, t):
        t = np.asarray(t, dtype=float)
        s = np.abs(t)
        l1, l2 = self.lam1, self.lam2
        return np.sign(t) * l1 * l2 * (np.exp(-l2 * s) - np.exp(-l1 * s)) / (l2 - l1)

    def d2_rho(self, t):
        s = np.abs(np.asarray(t, dtype=float))
        l1, l2 = self.lam1, self.lam2
        return l1 * l2 * (l1 * np.exp(-l1 * s) - l2 * np.exp(-l2 * s)) / (l2 - l1)


@dataclass(frozen=True)
class Form2:
    """Damped oscillation with decay ``lam`` and angular frequency ``q``."""

    lam: float
    q: float

    def __post_init__(self):
        _positive("lam", self.lam)
        _positive("q", self.q)

    def rho(self, t):
        s = np.abs(np.asarray(t, dtype=float))
        return np.exp(-self.lam * s) * (np.cos(self.q * s) + self.lam / self.q * np.sin(self.q * s))

    def d_rho(self, t):
        t = np.asarray(t, dtype=float)
        s = np.abs(t)
        c = (self.lam ** 2 + self.q ** 2) / self.q
        return -np.sign(t) * c * np.exp(-self.lam * s) * np.sin(self.q * s)

    def d2_rho(self, t):
        s = np.abs(np.asarray(t, dtype=float))
        c = (self.lam ** 2 + self.q ** 2) / self.q
        return -c * np.exp(-self.lam * s) * (self.q * np.cos(self.q * s) - self.lam * np.sin(self.q * s))


@dataclass(frozen=True)
class Form3:
    """Repeated real rate, ``rho(t) = e^{-lam|t|}(1 + lam|t|)``."""

    lam: float

    def __post_init__(self):
        _positive("lam", self.lam)

    def rho(self, t):
        s = np.abs(np.asarray(t, dtype=float))
        return np.exp(-self.lam * s) * (1.0 + self.lam * s)

    def d_rho(self, t):
        t = np.asarray(t, dtype=float)
        return -self.lam ** 2 * t * np.exp(-self.lam * np.abs(t))

    def d2_rho(self, t):
        s = np.abs(np.asarray(t, dtype=float))
        return -self.lam ** 2 * np.exp(-self.lam * s) * (1.0 - self.lam * s)


Ar2Form = Union[Form1, Form2, Form3]


def is_stationary(a1: float, a2: float) -> bool:
    """AR(2) stationarity triangle."""
    return a2 + a1 < 1 and a2 - a1 < 1 and abs(a2) < 1


def yule_walker_ar2(r1: float, r2: float) -> tuple[float, float]:
    """AR(2) coefficients from the first two autocorrelations."""
    den = 1.0 - r1 * r1
    if den == 0.0:
        raise SingularInputError("Yule-Walker system is singular for r1**2 == 1")
    if abs(r1) > 1:
        raise InvalidParameterError(f"|r1| must be < 1, got {r1!r}")
    return r1 * (1.0 - r2) / den, (r2 - r1 * r1) / den


def innovation_variance(a1: float, a2: float, sigma_sq: float = 1.0) -> float:
    """Variance of ``z_j`` that makes the AR(2) process have variance ``sigma_sq``.

    Equal to ``sigma_sq * (1+a2)((1-a2)^2 - a1^2)/(1-a2)``, which coincides
    with the scale ``S`` of the five-diagonal inverse covariance.
    """
    return sigma_sq * (1.0 + a2) * ((1.0 - a2) ** 2 - a1 ** 2) / (1.0 - a2)


@dataclass(frozen=True)
class Ar2Discrete:
    """Discrete AR(2) process obtained by sampling ``form`` with step ``delta``.

    Discrete parameters: ``p1, p2`` (Form1), ``p, b`` (Form2), ``p`` (Form3),
    and the mixing constant ``C`` of the corresponding ``r_k`` expression.
    """

    form: Ar2Form
    delta: float
    a1: float = field(init=False)
    a2: float = field(init=False)

    order = 2

    def __post_init__(self):
        _positive("delta", self.delta)
        if isinstance(self.form, Form2):
            b = self.form.q * self.delta
            if math.isclose(math.remainder(b, math.pi), 0.0, abs_tol=1e-14):
                raise InvalidParameterError("Form2 requires b = q*delta != pi (mod pi)")
            if b >= math.pi:
                raise InvalidParameterError(
                    f"Form2 requires q*delta < pi for an alias-free embedding, got {b!r}")
        elif not isinstance(self.form, (Form1, Form3)):
            raise TypeError(f"unknown AR(2) form {self.form!r}")
        a1, a2 = self._root_coefficients()
        if not is_stationary(a1, a2):
            raise InvalidParameterError(f"non-stationary AR(2) coefficients ({a1}, {a2})")
        object.__setattr__(self, "a1", a1)
        object.__setattr__(self, "a2", a2)

    def _root_coefficients(self):
        # a1 = p1 + p2, a2 = -p1 p2 from the characteristic roots; equal to the
        # Yule-Walker solution but without the 1 - r1**2 cancellation
        par = self.params
        if isinstance(self.form, Form1):
            return par["p1"] + par["p2"], -par["p1"] * par["p2"]
        p = par["p"]
        if isinstance(self.form, Form2):
            return 2 * p * math.cos(par["b"]), -p * p
        return 2 * p, -p * p

    @property
    def continuous(self) -> Ar2Form:
        return self.form

    def discretize(self, delta: float) -> "Ar2Discrete":
        return Ar2Discrete(self.form, delta)

    @property
    def params(self) -> dict:
        d = self.delta
        f = self.form
        if isinstance(f, Form1):
            return {"p1": math.exp(-f.lam1 * d), "p2": math.exp(-f.lam2 * d)}
        if isinstance(f, Form2):
            return {"p": math.exp(-f.lam * d), "b": f.q * d}
        return {"p": math.exp(-f.lam * d)}

    @property
    def C(self) -> float:
        f = self.form
        par = self.params
        if isinstance(f, Form1):
            p1, p2 = par["p1"], par["p2"]
            return (1 - p2 ** 2) * p1 / ((1 - p2 ** 2) * p1 - (1 - p1 ** 2) * p2)
        p = par["p"]
        if isinstance(f, Form2):
            return (1 - p * p) / (1 + p * p) / math.tan(par["b"])
        return (1 - p * p) / (1 + p * p)

    def r(self, k):
        k = np.abs(np.asarray(k))
        f = self.form
        par = self.params
        C = self.C
        if isinstance(f, Form1):
            return C * par["p1"] ** k + (1 - C) * par["p2"] ** k
        p = par["p"]
        if isinstance(f, Form2):
            b = par["b"]
            return p ** k * (np.cos(b * k) + C * np.sin(b * k))
        return p ** k * (1 + k * C)

    def rho(self, t):
        return self.form.rho(t)

    @property
    def sigma_z_sq(self) -> float:
        return innovation_variance(self.a1, self.a2)


Process = Union[Ar1Params, Ar2Discrete]


def autocov_discrete(process: Process, k: int) -> float:
    """Lag-``k`` autocovariance of the discrete process (``r_0 = 1``)."""
    if k < 0:
        raise ValueError("lag must be nonnegative")
    return float(process.r(k))


def autocov_continuous(form, t: float) -> float:
    """Continuous autocovariance ``rho(t)`` of an AR(1) or AR(2) form.

    Discrete processes are accepted too and evaluated through their
    continuous counterpart.
    """
    return float(form.rho(t))


@dataclass(frozen=True)
class ConstantSet:
    """Rate constants entering the continuous AR(2) design."""

    tau0: float
    tau2: float
    beta1: float
    beta0: float
    gamma1: float
    gamma0: float
    s3: float


def taylor_constants(form: Ar2Form) -> ConstantSet:
    """Constants of the continuous AR(2) design for the given covariance form."""
    if isinstance(form, Form1):
        l1, l2 = form.lam1, form.lam2
        return ConstantSet(
            tau0=l1 ** 2 * l2 ** 2,
            tau2=l1 ** 2 + l2 ** 2,
            beta1=l1 + l2,
            beta0=l1 * l2,
            gamma1=l1 ** 2 + l1 * l2 + l2 ** 2,
            gamma0=l1 * l2 * (l1 + l2),
            s3=2 * l1 * l2 * (l1 + l2),
        )
    if isinstance(form, Form2):
        lam, q = form.lam, form.q
        m = lam ** 2 + q ** 2
        return ConstantSet(
            tau0=m ** 2,
            tau2=2 * (lam ** 2 - q ** 2),
            beta1=2 * lam,
            beta0=m,
            gamma1=3 * lam ** 2 - q ** 2,
            gamma0=2 * lam * m,
            s3=4 * lam * m,
        )
    if isinstance(form, Form3):
        lam = form.lam
        return ConstantSet(
            tau0=lam ** 4,
            tau2=2 * lam ** 2,
            beta1=2 * lam,
            beta0=lam ** 2,
            gamma1=3 * lam ** 2,
            gamma0=2 * lam ** 3,
            s3=4 * lam ** 3,
        )
    raise TypeError(f"unknown AR(2) form {form!r}")


def discretize(form, delta: float) -> Process:
    """Discrete process on a grid with step ``delta`` for a continuous form."""
    if isinstance(form, (Ar1Form, Ar1Params, Ar2Discrete)):
        return form.discretize(delta)
    return Ar2Discrete(form, delta)

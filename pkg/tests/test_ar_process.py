import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ardesign.ar_process import (
    Ar1Form,
    Ar1Params,
    Ar2Discrete,
    Form1,
    Form2,
    Form3,
    autocov_continuous,
    autocov_discrete,
    discretize,
    innovation_variance,
    is_stationary,
    taylor_constants,
    yule_walker_ar2,
)
from ardesign.errors import InvalidParameterError, SingularInputError

rates = st.floats(0.1, 5.0)


def test_ar1_params_roundtrip():
    p = Ar1Params(1.7, 0.01)
    assert 0 < p.a < 1
    assert abs(-math.log(p.a) / p.delta - p.lam) < 1e-12
    q = Ar1Params.from_a(0.5, 0.01)
    assert abs(q.a - 0.5) < 1e-15


@pytest.mark.parametrize("bad", [0.0, -1.0, 1.0, 1.5])
def test_ar1_from_a_rejects(bad):
    with pytest.raises(InvalidParameterError):
        Ar1Params.from_a(bad, 0.01)


@pytest.mark.parametrize("proc", [
    Ar1Params(1.0, 0.01), Ar2Discrete(Form1(1.0, 2.0), 0.01),
    Ar2Discrete(Form2(1.0, 1.0), 0.01), Ar2Discrete(Form3(1.0), 0.01),
])
def test_lag_zero_is_one(proc):
    assert autocov_discrete(proc, 0) == pytest.approx(1.0, abs=1e-15)
    assert autocov_continuous(proc.continuous, 0.0) == pytest.approx(1.0, abs=1e-15)


def test_form3_r1_hand_value():
    # p = 0.5: C = 0.75/1.25 = 0.6, r1 = 0.5 * 1.6
    delta = 0.01
    lam = -math.log(0.5) / delta
    proc = Ar2Discrete(Form3(lam), delta)
    assert proc.C == pytest.approx(0.6, abs=1e-14)
    assert autocov_discrete(proc, 1) == pytest.approx(0.8, abs=1e-14)


def test_form1_r3_formula_oracle():
    delta = 0.01
    p1, p2 = 0.9, 0.5
    proc = Ar2Discrete(Form1(-math.log(p1) / delta, -math.log(p2) / delta), delta)
    C = (1 - p2 ** 2) * p1 / ((1 - p2 ** 2) * p1 - (1 - p1 ** 2) * p2)
    assert abs(autocov_discrete(proc, 3) - (C * p1 ** 3 + (1 - C) * p2 ** 3)) < 1e-14


def test_form3_continuous_hand_value():
    assert autocov_continuous(Form3(1.0), 1.0) == pytest.approx(2 * math.exp(-1), abs=1e-10)
    assert abs(2 * math.exp(-1) - 0.7357588823) < 1e-10


@pytest.mark.parametrize("form", [Ar1Form(1.0), Form1(1.0, 2.5), Form2(1.5, 2.0), Form3(1.0)])
def test_continuous_is_even(form):
    t = np.linspace(0, 3, 17)
    assert np.allclose(form.rho(t), form.rho(-t), rtol=0, atol=1e-15)


def test_ar1_grid_consistency():
    form = Ar1Form(1.3)
    proc = discretize(form, 0.01)
    for k in range(11):
        assert abs(form.rho(k * 0.01) - proc.r(k)) < 1e-10


@pytest.mark.parametrize("form", [Form1(1.0, 2.5), Form2(1.5, 2.0), Form3(1.0)])
def test_ar2_grid_consistency_is_second_order(form):
    # the sampled continuous kernel is not exactly an AR(2) sequence: the
    # mismatch vanishes as delta**2 (or faster), not to round-off
    errs = []
    for delta in (0.02, 0.01):
        proc = discretize(form, delta)
        errs.append(max(abs(form.rho(k * delta) - proc.r(k)) for k in range(11)))
    assert errs[1] < 1e-4
    assert errs[0] / errs[1] > 3.5


def test_form1_rejects_equal_rates():
    with pytest.raises(InvalidParameterError):
        Form1(1.0, 1.0)
    with pytest.raises(InvalidParameterError):
        Form1(1.0, 1.0 + 1e-10)


def test_form2_rejects_pi_multiple():
    with pytest.raises(InvalidParameterError):
        Ar2Discrete(Form2(1.0, math.pi / 0.01), 0.01)
    with pytest.raises(InvalidParameterError):
        Ar2Discrete(Form2(1.0, 4.0 / 0.01), 0.01)


def test_yule_walker_hand_values():
    assert yule_walker_ar2(0.0, 0.0) == (0.0, 0.0)
    a1, a2 = yule_walker_ar2(0.8, 0.55)
    assert a1 == pytest.approx(1.0, abs=1e-14)
    assert a2 == pytest.approx(-0.25, abs=1e-14)


def test_yule_walker_singular():
    with pytest.raises(SingularInputError):
        yule_walker_ar2(1.0, 0.5)


def test_yule_walker_taylor_expansion():
    lam, d = 1.0, 0.001
    p = Ar2Discrete(Form3(lam), d)
    assert abs(p.a1 - (2 - 2 * lam * d + lam ** 2 * d ** 2)) < 10 * d ** 3
    assert abs(p.a2 - (-1 + 2 * lam * d - 2 * lam ** 2 * d ** 2)) < 10 * d ** 3


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(["f1", "f2", "f3"]), rates, rates, st.floats(0.005, 0.2))
def test_recursion_property(kind, l1, l2, delta):
    if kind == "f1":
        if abs(l1 - l2) < 0.05:
            l2 = l1 + 0.5
        form = Form1(l1, l2)
    elif kind == "f2":
        form = Form2(l1, l2)
        if l2 * delta >= math.pi:
            return
    else:
        form = Form3(l1)
    p = Ar2Discrete(form, delta)
    a1, a2 = yule_walker_ar2(float(p.r(1)), float(p.r(2)))
    assert is_stationary(a1, a2)
    r = [float(p.r(k)) for k in range(51)]
    for k in range(2, 51):
        assert abs(r[k] - (a1 * r[k - 1] + a2 * r[k - 2])) < 1e-12
    assert all(abs(float(p.r(k))) <= 1 + 1e-15 for k in range(101))


def test_form1_small_p2_tends_to_ar1():
    delta = 0.01
    p1 = 0.7
    prev = None
    for p2 in (1e-2, 1e-4, 1e-6):
        proc = Ar2Discrete(Form1(-math.log(p1) / delta, -math.log(p2) / delta), delta)
        err = max(abs(float(proc.r(k)) - p1 ** k) for k in range(1, 8))
        if prev is not None:
            assert err < prev
        prev = err
    assert prev < 1e-5


def test_innovation_variance_matches_recursion():
    # sigma_z^2 = r0 - a1 r1 - a2 r2 for a unit-variance AR(2)
    p = Ar2Discrete(Form2(1.0, 3.0), 0.05)
    direct = 1 - p.a1 * float(p.r(1)) - p.a2 * float(p.r(2))
    assert p.sigma_z_sq == pytest.approx(direct, rel=1e-12)
    assert innovation_variance(1.0, -0.25) == pytest.approx(0.3375, abs=1e-14)


def test_taylor_constants_form3():
    c = taylor_constants(Form3(1.0))
    assert (c.tau0, c.tau2, c.beta1, c.beta0, c.gamma1, c.gamma0, c.s3) == (1, 2, 2, 1, 3, 2, 4)


@given(rates)
def test_taylor_constants_form3_identities(lam):
    c = taylor_constants(Form3(lam))
    assert abs(c.tau0 - c.beta0 ** 2) <= 1e-12 * c.tau0
    assert abs(c.tau2 - 2 * c.beta0) <= 1e-12 * c.tau2
    assert abs(c.s3 - 4 * lam ** 3) <= 1e-12 * c.s3


def test_taylor_constants_form2():
    c = taylor_constants(Form2(1.0, 1.0))
    assert (c.tau0, c.tau2, c.beta1, c.beta0, c.gamma1, c.gamma0, c.s3) == (4, 0, 2, 2, 2, 4, 8)


def test_taylor_constants_form1_degenerate_limit():
    lam, eps = 1.3, 1e-6
    a = taylor_constants(Form1(lam, lam + eps))
    b = taylor_constants(Form3(lam))
    for name in ("tau0", "tau2", "beta1", "beta0", "gamma1", "gamma0", "s3"):
        assert getattr(a, name) == pytest.approx(getattr(b, name), rel=1e-5)


@given(rates, rates, rates)
def test_s3_positive(l1, l2, q):
    assert taylor_constants(Form3(l1)).s3 > 0
    assert taylor_constants(Form2(l1, q)).s3 > 0
    if abs(l1 - l2) > 1e-3:
        assert taylor_constants(Form1(l1, l2)).s3 > 0


@pytest.mark.parametrize("form", [Form1(1.0, 2.5), Form2(1.5, 2.0), Form3(1.7)])
def test_kernel_derivatives_by_finite_differences(form):
    h = 1e-5
    for t in (0.3, 0.9, 2.0):
        fd1 = (form.rho(t + h) - form.rho(t - h)) / (2 * h)
        fd2 = (form.rho(t + h) - 2 * form.rho(t) + form.rho(t - h)) / h ** 2
        assert form.d_rho(t) == pytest.approx(fd1, rel=1e-7, abs=1e-9)
        assert form.d2_rho(t) == pytest.approx(fd2, rel=1e-4, abs=1e-5)

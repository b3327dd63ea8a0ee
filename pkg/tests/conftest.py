import numpy as np
import pytest

from ardesign.ar_process import Ar1Form, Form1, Form2, Form3


def double_loop_variance(t, w, x, cov):
    """Oracle: D = sum_ij cov(t_i - t_j) w_i w_j x_i x_j / (sum w x^2)^2, by plain loops."""
    num = 0.0
    for i in range(len(t)):
        for j in range(len(t)):
            num += cov(t[i] - t[j]) * w[i] * w[j] * x[i] * x[j]
    den = sum(w[i] * x[i] ** 2 for i in range(len(t)))
    return num / den ** 2


ALL_FORMS = [
    Ar1Form(1.0),
    Ar1Form(3.0),
    Form1(1.0, 2.5),
    Form2(1.5, 2.0),
    Form3(1.0),
    Form3(2.0),
]


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)

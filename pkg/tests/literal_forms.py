"""Hand-transcribed closed forms used as independent oracles.

Each function returns (P_A, P_B, p(t)) or (P_A, P_B, p(t), Q_A, Q_B) for the
built-in regression functions, written out term by term.
"""

import math

import numpy as np


def table1(name, lam, A, B, t):
    h = 0.5
    if name == "1":
        return h, h, lam / 2
    if name == "t":
        return h - 1 / (2 * A * lam), h + 1 / (2 * B * lam), lam / 2
    if name == "t^2":
        return h - 1 / (A * lam), h + 1 / (B * lam), lam / 2 - 1 / (lam * t ** 2)
    if name == "t^3":
        return h - 3 / (2 * A * lam), h + 3 / (2 * B * lam), lam / 2 - 3 / (lam * t ** 2)
    if name == "t^4":
        return h - 2 / (A * lam), h + 2 / (B * lam), lam / 2 - 6 / (lam * t ** 2)
    if name == "e^t":
        return h - 1 / (2 * lam), h + 1 / (2 * lam), lam / 2 - 1 / (2 * lam)
    raise KeyError(name)


def table2(name, lam, A, B, t):
    L = lam
    q0 = 1 / (4 * L)
    if name == "1":
        return 0.5, 0.5, L / 4, q0, q0
    if name == "t":
        return (0.5 - 3 / (4 * A * L), 0.5 + 3 / (4 * B * L), L / 4,
                q0 - 1 / (2 * A * L ** 2), q0 + 1 / (2 * B * L ** 2))
    if name == "t^2":
        return (0.5 - 3 / (2 * A * L), 0.5 + 3 / (2 * B * L), L / 4 - 1 / (L * t ** 2),
                q0 - 1 / (A * L ** 2) + 1 / (2 * A ** 2 * L ** 3),
                q0 + 1 / (B * L ** 2) + 1 / (2 * B ** 2 * L ** 3))
    if name == "t^3":
        return (0.5 - 9 / (4 * A * L) + 3 / (2 * A ** 3 * L ** 3),
                0.5 + 9 / (4 * B * L) - 3 / (2 * B ** 3 * L ** 3),
                L / 4 - 3 / (L * t ** 2),
                q0 - 3 / (2 * A * L ** 2) + 3 / (2 * A ** 2 * L ** 3),
                q0 + 3 / (2 * B * L ** 2) + 3 / (2 * B ** 2 * L ** 3))
    if name == "t^4":
        return (0.5 - 3 / (A * L) + 6 / (A ** 3 * L ** 3),
                0.5 + 3 / (B * L) - 6 / (B ** 3 * L ** 3),
                L / 4 - 6 / (L * t ** 2),
                q0 - 2 / (A * L ** 2) + 3 / (A ** 2 * L ** 3),
                q0 + 2 / (B * L ** 2) + 3 / (B ** 2 * L ** 3))
    if name == "e^t":
        return (0.5 - 3 / (4 * L) + 1 / (4 * L ** 3),
                0.5 + 3 / (4 * L) - 1 / (4 * L ** 3),
                L / 4 - 1 / (2 * L),
                q0 - 1 / (2 * L ** 2) + 1 / (4 * L ** 3),
                q0 + 1 / (2 * L ** 2) + 1 / (4 * L ** 3))
    raise KeyError(name)


def prop_two_rates(f, l1, l2, A, B, t):
    """Two distinct real rates."""
    s3 = 2 * l1 * l2 * (l1 + l2)
    p = -((l1 ** 2 + l2 ** 2) * f(t, 2) - l1 ** 2 * l2 ** 2 * f(t, 0)) / (s3 * f(t, 0))
    QA = (f(A, 2) - (l1 + l2) * f(A, 1) + l1 * l2 * f(A, 0)) / (s3 * f(A, 0))
    QB = (f(B, 2) + (l1 + l2) * f(B, 1) + l1 * l2 * f(B, 0)) / (s3 * f(B, 0))
    g1 = l1 ** 2 + l1 * l2 + l2 ** 2
    g0 = l1 * l2 * (l1 + l2)
    PA = (f(A, 3) - g1 * f(A, 1) + g0 * f(A, 0)) / (s3 * f(A, 0))
    PB = (-f(B, 3) + g1 * f(B, 1) + g0 * f(B, 0)) / (s3 * f(B, 0))
    return PA, PB, p, QA, QB


def prop_oscillating(f, lam, q, A, B, t):
    """Damped oscillation."""
    m = lam ** 2 + q ** 2
    s3 = 4 * lam * m
    p = -(2 * (lam ** 2 - q ** 2) * f(t, 2) - m ** 2 * f(t, 0)) / (s3 * f(t, 0))
    QA = (f(A, 2) - 2 * lam * f(A, 1) + m * f(A, 0)) / (s3 * f(A, 0))
    QB = (f(B, 2) + 2 * lam * f(B, 1) + m * f(B, 0)) / (s3 * f(B, 0))
    PA = (f(A, 3) - (3 * lam ** 2 - q ** 2) * f(A, 1) + 2 * lam * m * f(A, 0)) / (s3 * f(A, 0))
    PB = (-f(B, 3) + (3 * lam ** 2 - q ** 2) * f(B, 1) + 2 * lam * m * f(B, 0)) / (s3 * f(B, 0))
    return PA, PB, p, QA, QB


def prop_repeated(f, lam, A, B, t):
    """Repeated rate."""
    s3 = 4 * lam ** 3
    p = -(2 * lam ** 2 * f(t, 2) - lam ** 4 * f(t, 0)) / (s3 * f(t, 0))
    QA = (f(A, 2) - 2 * lam * f(A, 1) + lam ** 2 * f(A, 0)) / (s3 * f(A, 0))
    QB = (f(B, 2) + 2 * lam * f(B, 1) + lam ** 2 * f(B, 0)) / (s3 * f(B, 0))
    PA = (f(A, 3) - 3 * lam ** 2 * f(A, 1) + 2 * lam ** 3 * f(A, 0)) / (s3 * f(A, 0))
    PB = (-f(B, 3) + 3 * lam ** 2 * f(B, 1) + 2 * lam ** 3 * f(B, 0)) / (s3 * f(B, 0))
    return PA, PB, p, QA, QB


def monomial(alpha):
    def f(t, n):
        c = 1.0
        for k in range(n):
            c *= alpha - k
        return c * t ** (alpha - n) if c else 0.0 * t
    return f


def exponential(t, n):
    return np.exp(t)


def close(a, b, tol=1e-12):
    return math.isclose(a, b, rel_tol=tol, abs_tol=tol)

"""Builders for the four reference tables (limit designs and finite-sample variances)."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

from .ar_process import Form3, taylor_constants
from .asymptotic_design import continuous_design, continuous_design_ar1, continuous_design_ar2, dstar
from .discretizer import Scenario, normalize_density, report_design
from .estimators import Constant, Exponential, Monomial

TABLE_FUNCTIONS = [
    ("1", Constant()),
    ("t", Monomial(1)),
    ("t^2", Monomial(2)),
    ("t^3", Monomial(3)),
    ("t^4", Monomial(4)),
    ("e^t", Exponential()),
]

# (f, error form, A, B, N, K values)
SCENARIOS = {
    "table3": (Constant(), Form3(1.0), 0.0, 1.0, 101, (2, 3, 4, 5)),
    "table4": (Monomial(2), Form3(2.0), 0.1, 1.1, 101, (2, 3, 4, 5)),
}

# digits after the decimal point in the printed tables
PRINTED_DECIMALS = {
    "var_lse_k2": 3,
    "var_wlse_k4": 5,
    "var_blue_k2": 5,
    "var_blue_k4": 8,
    "dstar": 5,
    "var_blue_full": 8,
}

TABLE_NAMES = ("table1", "table2", "table3", "table4")


def table1_rows(lam=1.0, A=0.1, B=1.1):
    """AR(1) limit designs; ``p`` evaluated at ``A``, the midpoint and ``B``."""
    rows = []
    mid = 0.5 * (A + B)
    for label, f in TABLE_FUNCTIONS:
        d = continuous_design_ar1(f, lam, A, B)
        rows.append({
            "f": label, "lambda": lam, "A": A, "B": B,
            "P_A": d.P_A, "P_B": d.P_B,
            "p_A": float(d.p(A)), "p_mid": float(d.p(mid)), "p_B": float(d.p(B)),
        })
    return rows


def table2_rows(lam=1.0, A=0.1, B=1.1):
    """AR(2) limit designs for the repeated-rate covariance."""
    c = taylor_constants(Form3(lam))
    rows = []
    mid = 0.5 * (A + B)
    for label, f in TABLE_FUNCTIONS:
        d = continuous_design_ar2(f, c, A, B)
        rows.append({
            "f": label, "lambda": lam, "A": A, "B": B,
            "P_A": d.P_A, "P_B": d.P_B,
            "p_A": float(d.p(A)), "p_mid": float(d.p(mid)), "p_B": float(d.p(B)),
            "Q_A": d.Q_A, "Q_B": d.Q_B,
        })
    return rows


def variance_rows(f, form, A, B, N, Ks, jobs=1):
    """One row of estimator variances per ``K``; shared pieces computed once."""
    design = continuous_design(f, form, A, B)
    nd = normalize_density(design)

    def one(K):
        r = report_design(Scenario(f, form, A, B, N, K), design=design, nd=nd)
        return {
            "K": K,
            "points": [float(x) for x in r.interior_points],
            "var_lse_k2": r.var_lse_k2,
            "var_wlse_k4": r.var_wlse_k4,
            "var_blue_k2": r.var_blue_k2,
            "var_blue_k4": r.var_blue_k4,
            "var_mslse_k2": r.var_mslse_k2,
            "dstar": r.dstar,
            "var_blue_full": r.var_blue_full,
        }

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(one, Ks))
    return [one(K) for K in Ks]


def scenario_rows(name, jobs=1):
    f, form, A, B, N, Ks = SCENARIOS[name]
    return variance_rows(f, form, A, B, N, Ks, jobs=jobs)


def build_table(name, lam=1.0, A=None, B=None, jobs=1):
    if name not in TABLE_NAMES:
        raise KeyError(f"unknown table {name!r}; valid names: {', '.join(TABLE_NAMES)}")
    if name == "table1":
        return table1_rows(lam, 0.1 if A is None else A, 1.1 if B is None else B)
    if name == "table2":
        return table2_rows(lam, 0.1 if A is None else A, 1.1 if B is None else B)
    return scenario_rows(name, jobs=jobs)


def limit_variance(name):
    f, form, A, B, _, _ = SCENARIOS[name]
    return dstar(continuous_design(f, form, A, B), f)


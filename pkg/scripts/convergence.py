"""Convergence of the optimal N-point weights and variance to the continuous limit.

For each scenario prints, per N: the largest interior gap |w_i/delta - p(t_i)|,
the boundary gaps, and |Var_N(BLUE) - D*|.

    python scripts/convergence.py --N 26,51,101,201,401
"""

import argparse

from ardesign.ar_process import Ar1Form, Form1, Form2, Form3, discretize
from ardesign.asymptotic_design import continuous_design, convergence_probe, dstar
from ardesign.covariance import EquidistantGrid
from ardesign.estimators import Constant, Exponential, Monomial, blue_variance

SCENARIOS = {
    "const-ar1": (Constant(), Ar1Form(1.0), 0.0, 1.0),
    "t2-ar1": (Monomial(2), Ar1Form(1.0), 0.1, 1.1),
    "const-lin": (Constant(), Form3(1.0), 0.0, 1.0),
    "t2-lin": (Monomial(2), Form3(2.0), 0.1, 1.1),
    "exp-twofold": (Exponential(), Form1(1.0, 3.0), 0.0, 1.0),
    "t2-cos": (Monomial(2), Form2(2.0, 1.0), 0.1, 1.1),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--N", default="26,51,101,201", help="comma separated grid sizes")
    ap.add_argument("--only", help="comma separated scenario names")
    args = ap.parse_args()
    Ns = [int(x) for x in args.N.split(",")]
    names = args.only.split(",") if args.only else list(SCENARIOS)
    for name in names:
        f, form, A, B = SCENARIOS[name]
        ds = dstar(continuous_design(f, form, A, B), f)
        print(f"\n{name}  D* = {ds:.10f}")
        print(f"{'N':>5} {'interior':>10} {'P_A':>10} {'P_B':>10} {'Q_A':>10} {'Q_B':>10} {'|Var-D*|':>10}")
        for row in convergence_probe(f, form, A, B, Ns):
            g = EquidistantGrid(A, B, row.N)
            gap = abs(blue_variance(g.points, f, discretize(form, g.delta)) - ds)
            print(f"{row.N:>5} {row.interior:10.3e} {row.P_A:10.3e} {row.P_B:10.3e} "
                  f"{row.Q_A:10.3e} {row.Q_B:10.3e} {gap:10.3e}")


if __name__ == "__main__":
    main()

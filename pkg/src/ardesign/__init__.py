"""Optimal signed designs for one-parameter regression with AR(1)/AR(2) errors."""

from .ar_process import Ar1Form, Ar1Params, Ar2Discrete, Form1, Form2, Form3, discretize, taylor_constants
from .asymptotic_design import (
    ContinuousDesign,
    continuous_design,
    continuous_design_ar1,
    continuous_design_ar2,
    convergence_probe,
    dstar,
    triangular_kernel_design,
)
from .covariance import EquidistantGrid, build_sigma, inverse_sigma
from .discretizer import Scenario, assemble_k2, assemble_k4, normalize_density, report_design
from .estimators import (
    Constant,
    Custom,
    Exponential,
    Monomial,
    SignedDesign,
    blue_variance,
    explicit_weights,
    lse_variance,
    optimal_signed_weights,
    slse_variance,
    wlse_variance,
)

__version__ = "0.1.0"

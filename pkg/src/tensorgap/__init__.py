"""Injective versus projective tensor norms on finite-dimensional spaces."""
from .certified import CertifiedInterval
from .config import BUDGET, TOL, Budgets, Tolerances
from .errors import BudgetError, TensorGapError, ValidationError
from .spaces import Kind, Space, dual_norm, hexagon, l1, l2, linf, norm, polytope, regular_polygon
from .tensors import (
    Tensor,
    injective_norm,
    projective_norm,
    ratio_witness,
    rho_search,
    trace_ratio_bound,
)

__all__ = [
    "BUDGET", "TOL", "Budgets", "Tolerances", "CertifiedInterval",
    "TensorGapError", "ValidationError", "BudgetError",
    "Kind", "Space", "norm", "dual_norm", "l1", "l2", "linf", "polytope", "hexagon",
    "regular_polygon", "Tensor", "injective_norm", "projective_norm", "ratio_witness",
    "rho_search", "trace_ratio_bound",
]

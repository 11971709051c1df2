"""Numerical tolerances and budget caps shared by every module."""
from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    feas: float = 1e-9          # LP primal feasibility
    obj: float = 1e-9           # LP objective agreement
    eq: float = 1e-9            # generic equality (vertex dedup, invariants)
    report: float = 1e-7        # golden-value comparisons
    sym: float = 1e-12          # symmetry of input matrices
    pivot: float = 1e-11        # smallest admissible simplex pivot


@dataclass(frozen=True)
class Budgets:
    max_cone_dim: int = 12
    max_ball_dim: int = 8
    max_linf_vertex_dim: int = 20
    max_lp_vars: int = 5000
    max_vertex_pairs: int = 4_000_000
    max_min_generators: int = 10_000
    max_quantum_dim: int = 8
    max_auerbach_dim: int = 6


TOL = Tolerances()
BUDGET = Budgets()

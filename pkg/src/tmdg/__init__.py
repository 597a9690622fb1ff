"""Entropy-stable nodal DG schemes for the ten-moment Gaussian closure equations."""
from .analysis import (
    ErrorReport,
    convergence_study,
    diagonal_midpoint_density,
    entropy_series,
    error_norms,
    extract_diagonal,
    max_entropy_increase,
    observed_orders,
)
from .cases import CASES, CaseSpec, available_cases, exact_smooth, exact_smooth_source, get_case
from .fluxcheck import FluxReport, check_fluxes
from .fluxes import ec_flux_x, ec_flux_y, lax_friedrichs_x, lax_friedrichs_y, log_mean
from .limiters import LimiterConfig, apply_limiters, bound_preserving_limit, tvb_limit_1d
from .model import (
    InadmissibleStateError,
    entropy,
    entropy_flux_x,
    entropy_flux_y,
    entropy_potential_x,
    entropy_potential_y,
    entropy_variables,
    flux_x,
    flux_y,
    is_admissible,
    to_conserved,
    to_primitive,
)
from .runner import RunResult, run_case
from .sbp import QuadratureRule, SbpOperators, build_sbp, gauss_lobatto, sbp_operators
from .solver1d import Mesh1D, residual_1d, total_conserved, total_entropy
from .solver2d import Mesh2D, residual_2d, total_conserved_2d, total_entropy_2d
from .timestepping import TimeConfig, compute_dt_1d, compute_dt_2d, integrate, ssp_rk_step

__version__ = "0.1.0"

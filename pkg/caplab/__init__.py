"""caplab - numerical lab for moving-plane caps and a priori bounds

Maximal caps and the optimal cap set of planar domains, Kelvin transforms at
boundary points, finite-difference and shooting solvers for -Δu = f(u), and
numerical checks of the estimates built from them.
"""

__version__ = "1.0.0"

# Core models and errors
from .core.models import (
    Grid,
    RegionMask,
    CapSpec,
    Field,
    GridFunction,
    EigenPair,
    RadialSolution,
)
from .core.errors import (
    CaplabError,
    ConfigError,
    DomainError,
    ArgumentError,
    GeometryError,
    FrameError,
    SolverError,
    ConvergenceError,
    NewtonStagnationError,
    PositivityError,
    BracketError,
    CheckError,
    CertificateError,
)
from .core.config import RunConfig, load_config

# Geometry, Kelvin transform, solvers
from .core.geometry import compute_lambda_star, maximal_caps, optimal_cap_set, interior_region
from .core.kelvin import KelvinFrame, build_frame, kelvin_transform, check_kelvin_pde
from .core.solver import (
    principal_eigenpair,
    solve_semilinear,
    solve_with_amplitude_ladder,
    solve_radial,
    critical_points,
)
from .core.convexity import make_boundary_graph, certify, figure_curves
from .core.verify import (
    CheckReport,
    VerificationRun,
    check_cap_monotonicity,
    check_max_location,
    check_global_bound,
    check_kelvin_no_critical,
    check_g_reflection,
    boundedness_experiment,
)
from .core.experiment import Experiment, ExperimentResult, run_subcommand

from .domains import get_domain, domain_from_spec, list_domains
from .nonlinearities import get_nonlinearity, nonlinearity_from_spec, check_hypotheses

__all__ = [
    "Grid", "RegionMask", "CapSpec", "Field", "GridFunction", "EigenPair", "RadialSolution",
    "CaplabError", "ConfigError", "DomainError", "ArgumentError", "GeometryError", "FrameError",
    "SolverError", "ConvergenceError", "NewtonStagnationError", "PositivityError",
    "BracketError", "CheckError", "CertificateError",
    "RunConfig", "load_config",
    "compute_lambda_star", "maximal_caps", "optimal_cap_set", "interior_region",
    "KelvinFrame", "build_frame", "kelvin_transform", "check_kelvin_pde",
    "principal_eigenpair", "solve_semilinear", "solve_with_amplitude_ladder", "solve_radial",
    "critical_points",
    "make_boundary_graph", "certify", "figure_curves",
    "CheckReport", "VerificationRun", "check_cap_monotonicity", "check_max_location",
    "check_global_bound", "check_kelvin_no_critical", "check_g_reflection",
    "boundedness_experiment",
    "Experiment", "ExperimentResult", "run_subcommand",
    "get_domain", "domain_from_spec", "list_domains",
    "get_nonlinearity", "nonlinearity_from_spec", "check_hypotheses",
]

"""Exception hierarchy for caplab

Every error carries a machine-readable payload so the CLI can emit it as JSON.
"""

from typing import Any, Dict, Optional


class CaplabError(Exception):
    """Base class for all caplab errors"""

    kind = "error"

    def __init__(self, message: str, **details: Any):
        super().__init__(message)
        self.message = message
        self.details: Dict[str, Any] = details

    def to_dict(self) -> Dict[str, Any]:
        return {
            "error": self.kind,
            "type": type(self).__name__,
            "message": self.message,
            "details": self.details,
        }


class ConfigError(CaplabError, ValueError):
    """Invalid or unknown configuration"""
    kind = "config"


class DomainError(CaplabError, ValueError):
    """Evaluation outside a map's domain (inversion centre, ψ radius, ...)"""
    kind = "domain"


class ArgumentError(CaplabError, ValueError):
    """Invalid argument such as a non-unit direction or misordered parameters"""
    kind = "argument"


class GeometryError(CaplabError):
    """Empty masks and other geometric preconditions"""
    kind = "geometry"


class FrameError(GeometryError):
    """Exterior sphere at the base point is penetrated by the domain"""
    kind = "frame"

    def __init__(self, message: str, penetration: float, **details: Any):
        super().__init__(message, penetration=penetration, **details)
        self.penetration = penetration


class SolverError(CaplabError, RuntimeError):
    """Base class for solver failures"""
    kind = "solver"


class ConvergenceError(SolverError):
    """Iteration did not converge within its budget"""
    kind = "convergence"


class NewtonStagnationError(SolverError):
    """Newton iteration stalled"""
    kind = "newton_stagnation"

    def __init__(self, message: str, residual: float, **details: Any):
        super().__init__(message, residual=residual, **details)
        self.residual = residual


class PositivityError(SolverError):
    """Converged iterate is not a positive solution"""
    kind = "positivity"


class BracketError(SolverError):
    """Shooting scan found no sign change"""
    kind = "bracket"


class CheckError(CaplabError):
    """A verification check could not be run (preconditions failed)"""
    kind = "check"


class CertificateError(CaplabError):
    """Convexity certificate construction failed"""
    kind = "certificate"

    def __init__(self, message: str, certificate: Optional[Dict[str, Any]] = None, **details: Any):
        super().__init__(message, certificate=certificate, **details)
        self.certificate = certificate

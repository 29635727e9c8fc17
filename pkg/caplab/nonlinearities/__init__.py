"""Nonlinearities f(s) and their hypothesis checks"""

from typing import Any, Dict, Type

from ..core.errors import ConfigError
from .base import Nonlinearity


_nonlinearities: Dict[str, Type[Nonlinearity]] = {}


def register_nonlinearity(kind: str, nonlinearity_class: Type[Nonlinearity]):
    """Register a nonlinearity kind"""
    _nonlinearities[kind.lower()] = nonlinearity_class


def get_nonlinearity(kind: str, **kwargs) -> Nonlinearity:
    """Get nonlinearity instance by kind"""
    kind = kind.lower()
    if kind not in _nonlinearities:
        raise ConfigError(f"No nonlinearity registered for: {kind}",
                          available=list_nonlinearities())
    try:
        return _nonlinearities[kind](**kwargs)
    except TypeError as exc:
        raise ConfigError(f"Bad parameters for nonlinearity {kind}: {exc}") from exc


def list_nonlinearities() -> list:
    """List all available nonlinearity kinds"""
    return list(_nonlinearities.keys())


def nonlinearity_from_spec(spec: Dict[str, Any]) -> Nonlinearity:
    """Build from a config section {"kind": ..., params...}"""
    params = dict(spec)
    kind = params.pop("kind", None)
    if kind is None:
        raise ConfigError("nonlinearity spec needs a 'kind'")
    params.pop("n_star", None)
    return get_nonlinearity(kind, **params)


def make_log_critical(N: int = 3) -> Nonlinearity:
    """f₁(s) = s^{N*} / ln(s + 2)"""
    return get_nonlinearity("log_critical", N=N)


def make_staircase(p: float, q: float, a1: float, N: int = 3, n_levels: int = 4) -> Nonlinearity:
    """Staircase between s^p and s^q"""
    return get_nonlinearity("staircase", p=p, q=q, a1=a1, N=N, n_levels=n_levels)


# Import and register available kinds
from .power import PowerNonlinearity, ExponentialNonlinearity
from .log_critical import LogCriticalNonlinearity
from .staircase import StaircaseNonlinearity, StaircaseParams, exponent_profile, count_crossings
from .table import TableNonlinearity
from .hypotheses import HypothesisReport, check_hypotheses

register_nonlinearity("power", PowerNonlinearity)
register_nonlinearity("exponential", ExponentialNonlinearity)
register_nonlinearity("log_critical", LogCriticalNonlinearity)
register_nonlinearity("staircase", StaircaseNonlinearity)
register_nonlinearity("custom_table", TableNonlinearity)

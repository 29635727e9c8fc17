"""Domain presets"""

from typing import Any, Dict, Type

from ..core.errors import ConfigError
from .base import Domain


_domains: Dict[str, Type[Domain]] = {}


def register_domain(name: str, domain_class: Type[Domain]):
    """Register a domain preset"""
    _domains[name.lower()] = domain_class


def get_domain(name: str, **kwargs) -> Domain:
    """Get domain instance by preset name"""
    name = name.lower()
    if name not in _domains:
        raise ConfigError(f"No domain preset registered for: {name}", available=list_domains())
    try:
        return _domains[name](**kwargs)
    except TypeError as exc:
        raise ConfigError(f"Bad parameters for domain preset {name}: {exc}") from exc


def list_domains() -> list:
    """List all available domain presets"""
    return list(_domains.keys())


def domain_from_spec(spec: Dict[str, Any]) -> Domain:
    """Build a domain from a config section {preset, params, rho, grid_h}"""
    params = dict(spec.get("params") or {})
    if spec.get("rho") is not None:
        params["rho"] = spec["rho"]
    if spec.get("grid_h") is not None:
        params["grid_h"] = spec["grid_h"]
    preset = spec.get("preset", "disk")
    if preset == "custom" and "file" in params:
        from ..importers import importer_for
        path = params.pop("file")
        params["vertices"] = importer_for(path).import_vertices(path)
    return get_domain(preset, **params)


# Import and register available presets
from .presets import DiskDomain, AnnulusDomain, SquareDomain
from .polygon import PolygonDomain, GraphBoundaryDomain

register_domain("disk", DiskDomain)
register_domain("annulus", AnnulusDomain)
register_domain("square", SquareDomain)
register_domain("graph_boundary", GraphBoundaryDomain)
register_domain("custom", PolygonDomain)

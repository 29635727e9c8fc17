"""Run configuration: one JSON document per run, unknown keys rejected"""

import json
import os
from dataclasses import dataclass, field, fields, is_dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from .errors import ConfigError

THREADS_ENV = "CAPLAB_THREADS"

CHECK_NAMES = ("cap_monotonicity", "max_location", "global_bound", "kelvin_no_critical",
               "g_reflection", "boundedness")


@dataclass
class DomainConfig:
    preset: str = "disk"
    params: Dict[str, Any] = field(default_factory=dict)
    rho: Optional[float] = None
    grid_h: float = 1.0 / 64


@dataclass
class SolverConfig:
    """mode "grid" (embedded finite differences) or "radial" (shooting)"""
    mode: str = "grid"
    h: Optional[float] = None
    tol: float = 1e-8
    max_iter: int = 50
    init_amplitudes: List[float] = field(default_factory=lambda: [1.0, 2.0, 4.0, 8.0, 16.0])
    N: int = 3
    geometry: str = "ball"
    radial_tol: float = 1e-10
    center: List[float] = field(default_factory=lambda: [0.0, 0.0])


@dataclass
class CapsConfig:
    n_directions: int = 64
    tol: float = 1e-6


@dataclass
class KelvinConfig:
    x0: Optional[List[float]] = None
    N: int = 3
    image_h: Optional[float] = None
    threshold: float = 0.05


@dataclass
class CapCheckConfig:
    n_lambda: int = 16
    tol: Optional[float] = None


@dataclass
class MaxLocationConfig:
    tol: Optional[float] = None


@dataclass
class GlobalBoundConfig:
    delta: float = 0.1
    C: Optional[float] = None


@dataclass
class NoCriticalConfig:
    theta: float = 1e-3


@dataclass
class GReflectionConfig:
    n_samples: int = 1000
    s_max: float = 20.0


@dataclass
class BoundednessConfig:
    delta: float = 0.1
    family: Optional[List[Dict[str, Any]]] = None


@dataclass
class ChecksConfig:
    enabled: List[str] = field(default_factory=lambda: list(CHECK_NAMES[:5]))
    cap_monotonicity: CapCheckConfig = field(default_factory=CapCheckConfig)
    max_location: MaxLocationConfig = field(default_factory=MaxLocationConfig)
    global_bound: GlobalBoundConfig = field(default_factory=GlobalBoundConfig)
    kelvin_no_critical: NoCriticalConfig = field(default_factory=NoCriticalConfig)
    g_reflection: GReflectionConfig = field(default_factory=GReflectionConfig)
    boundedness: BoundednessConfig = field(default_factory=BoundednessConfig)


@dataclass
class AppendixConfig:
    curve: str = "gamma2"
    n_samples: int = 4001
    epsilon: float = 1e-5
    delta_prime: float = 0.1
    include_zoom: bool = False
    graphs: List[str] = field(default_factory=lambda: ["constant", "quadratic", "quartic"])
    random_quadratics: int = 20


@dataclass
class NonlinConfig:
    lambda1: Optional[float] = None
    s_max: float = 1e8
    n_samples: int = 2000
    h2_threshold: float = 0.1


@dataclass
class RunConfig:
    """Effective configuration of one run"""
    domain: DomainConfig = field(default_factory=DomainConfig)
    nonlinearity: Dict[str, Any] = field(default_factory=lambda: {"kind": "power", "p": 3.0})
    solver: SolverConfig = field(default_factory=SolverConfig)
    caps: CapsConfig = field(default_factory=CapsConfig)
    kelvin: KelvinConfig = field(default_factory=KelvinConfig)
    checks: ChecksConfig = field(default_factory=ChecksConfig)
    appendix: AppendixConfig = field(default_factory=AppendixConfig)
    nonlin: NonlinConfig = field(default_factory=NonlinConfig)
    output_dir: str = "caplab_output"
    seed: int = 0
    threads: Optional[int] = None

    def __post_init__(self):
        unknown = [name for name in self.checks.enabled if name not in CHECK_NAMES]
        if unknown:
            raise ConfigError(f"unknown checks: {unknown}", available=list(CHECK_NAMES))
        if self.solver.mode not in ("grid", "radial"):
            raise ConfigError(f"solver.mode must be 'grid' or 'radial', got {self.solver.mode}")
        if "kind" not in self.nonlinearity:
            raise ConfigError("nonlinearity needs a 'kind'")

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "RunConfig":
        """Create from dictionary; unknown keys raise ConfigError naming their path"""
        return _build(cls, data, "")

    def to_dict(self) -> Dict[str, Any]:
        return _dump(self)

    def resolved_threads(self) -> int:
        """Explicit setting, else CAPLAB_THREADS, else 1"""
        if self.threads is not None:
            return max(1, int(self.threads))
        raw = os.environ.get(THREADS_ENV)
        if not raw:
            return 1
        try:
            return max(1, int(raw))
        except ValueError:
            raise ConfigError(f"{THREADS_ENV} must be an integer, got {raw!r}")


def _build(cls, data: Any, path: str):
    if not isinstance(data, dict):
        raise ConfigError(f"expected an object at '{path or '<root>'}'",
                          got=type(data).__name__)
    known = {f.name: f for f in fields(cls)}
    unknown = sorted(set(data) - set(known))
    if unknown:
        where = f"{path}." if path else ""
        raise ConfigError(f"unknown config key(s): {', '.join(where + k for k in unknown)}",
                          path=path or "<root>", keys=unknown)
    kwargs = {}
    for name, value in data.items():
        default = known[name].default_factory() if callable(known[name].default_factory) \
            else known[name].default
        if is_dataclass(default) and value is not None:
            kwargs[name] = _build(type(default), value, f"{path}.{name}" if path else name)
        else:
            kwargs[name] = value
    try:
        return cls(**kwargs)
    except TypeError as exc:
        raise ConfigError(f"invalid config at '{path or '<root>'}': {exc}") from exc


def _dump(obj) -> Dict[str, Any]:
    out = {}
    for f in fields(obj):
        value = getattr(obj, f.name)
        out[f.name] = _dump(value) if is_dataclass(value) else value
    return out


def load_config(path: Optional[Union[str, Path]] = None) -> RunConfig:
    """Read a JSON config; no path gives the defaults"""
    if path is None:
        return RunConfig()
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file not found: {path}")
    try:
        with open(path, 'r', encoding='utf-8') as f:
            data = json.load(f)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}", path=str(path)) from exc
    return RunConfig.from_dict(data)

"""Core data models for the laboratory"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, List, Optional, Tuple
import math

import numpy as np
from scipy.interpolate import CubicHermiteSpline, RegularGridInterpolator

from .errors import ArgumentError, GeometryError


class PresetTag(Enum):
    """Domain preset family"""
    DISK = "disk"
    ANNULUS = "annulus"
    SQUARE = "square"
    GRAPH_BOUNDARY = "graph_boundary"
    CUSTOM = "custom"
    INVERTED = "inverted"


@dataclass(frozen=True)
class Grid:
    """Uniform Cartesian grid anchored at integer multiples of h.

    Node (i, j) sits at (x0 + i*h, y0 + j*h); arrays are indexed [i, j].
    """
    x0: float
    y0: float
    h: float
    nx: int
    ny: int

    @classmethod
    def covering(cls, xmin: float, xmax: float, ymin: float, ymax: float,
                 h: float, pad: int = 2) -> "Grid":
        """Smallest anchored grid covering the box with `pad` extra nodes per side"""
        if h <= 0:
            raise ArgumentError(f"grid spacing must be positive, got {h}")
        i0 = int(math.floor(xmin / h + 1e-9)) - pad
        i1 = int(math.ceil(xmax / h - 1e-9)) + pad
        j0 = int(math.floor(ymin / h + 1e-9)) - pad
        j1 = int(math.ceil(ymax / h - 1e-9)) + pad
        return cls(x0=i0 * h, y0=j0 * h, h=h, nx=i1 - i0 + 1, ny=j1 - j0 + 1)

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.nx, self.ny)

    def axes(self) -> Tuple[np.ndarray, np.ndarray]:
        return (self.x0 + self.h * np.arange(self.nx),
                self.y0 + self.h * np.arange(self.ny))

    def mesh(self) -> Tuple[np.ndarray, np.ndarray]:
        ax, ay = self.axes()
        return np.meshgrid(ax, ay, indexing="ij")

    def points(self) -> np.ndarray:
        """Node coordinates, shape (nx, ny, 2)"""
        X, Y = self.mesh()
        return np.stack([X, Y], axis=-1)

    def header(self) -> str:
        return f"{self.nx} {self.ny} {self.h!r} {self.x0!r} {self.y0!r}"

    def to_dict(self) -> Dict[str, Any]:
        return {"x0": self.x0, "y0": self.y0, "h": self.h, "nx": self.nx, "ny": self.ny}


@dataclass
class RegionMask:
    """Boolean node set on a grid (carrier for caps, Ω★, Ω_δ)"""
    grid: Grid
    inside: np.ndarray
    flags: List[str] = field(default_factory=list)

    def __post_init__(self):
        self.inside = np.asarray(self.inside, dtype=bool)
        if self.inside.shape != self.grid.shape:
            raise GeometryError(
                f"mask shape {self.inside.shape} does not match grid {self.grid.shape}")

    @property
    def h(self) -> float:
        return self.grid.h

    @property
    def count(self) -> int:
        return int(self.inside.sum())

    @property
    def is_empty(self) -> bool:
        return not self.inside.any()

    def points(self) -> np.ndarray:
        """Coordinates of the nodes in the mask, shape (k, 2), in C order"""
        return self.grid.points()[self.inside]

    def _check_grid(self, other: "RegionMask"):
        if other.grid != self.grid:
            raise GeometryError("mask operations need identical grids")

    def union(self, other: "RegionMask") -> "RegionMask":
        self._check_grid(other)
        return RegionMask(self.grid, self.inside | other.inside, list(self.flags))

    def intersection(self, other: "RegionMask") -> "RegionMask":
        self._check_grid(other)
        return RegionMask(self.grid, self.inside & other.inside, list(self.flags))

    def difference(self, other: "RegionMask") -> "RegionMask":
        self._check_grid(other)
        return RegionMask(self.grid, self.inside & ~other.inside, list(self.flags))

    def to_text(self) -> str:
        """Grid format: header `nx ny h x0 y0`, then one 0/1 row per j (ascending y)"""
        lines = [self.grid.header()]
        for j in range(self.grid.ny):
            lines.append(" ".join("1" if v else "0" for v in self.inside[:, j]))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "RegionMask":
        rows = [line.split() for line in text.strip().splitlines()]
        nx, ny = int(rows[0][0]), int(rows[0][1])
        h, x0, y0 = (float(v) for v in rows[0][2:5])
        data = np.array([[int(v) for v in row] for row in rows[1:]], dtype=bool)
        if data.shape != (ny, nx):
            raise GeometryError(f"mask body has shape {data.shape}, header says {(ny, nx)}")
        return cls(Grid(x0=x0, y0=y0, h=h, nx=nx, ny=ny), data.T.copy())


@dataclass
class CapSpec:
    """Moving-plane data for one direction"""
    direction: np.ndarray
    lambda0: float
    lambda_star: float
    tol: float = 1e-6
    degenerate: bool = False

    def __post_init__(self):
        self.direction = np.asarray(self.direction, dtype=float)
        if abs(np.linalg.norm(self.direction) - 1.0) > 1e-12:
            raise ArgumentError("cap direction must be a unit vector",
                                norm=float(np.linalg.norm(self.direction)))
        if self.lambda_star < self.lambda0:
            raise ArgumentError("lambda_star must not lie below lambda0",
                                lambda0=self.lambda0, lambda_star=self.lambda_star)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "direction": [float(v) for v in self.direction],
            "lambda0": float(self.lambda0),
            "lambda_star": float(self.lambda_star),
            "tol": float(self.tol),
            "degenerate": self.degenerate,
        }


@dataclass
class Field:
    """N-dimensional scalar field given by a vectorized callable on (..., N) points"""
    func: Callable[[np.ndarray], np.ndarray]
    dim: int
    label: str = ""

    def __call__(self, points: np.ndarray) -> np.ndarray:
        return np.asarray(self.func(np.asarray(points, dtype=float)), dtype=float)


@dataclass
class GridFunction:
    """Node values on a grid with an interior mask.

    Values outside the mask are zero (homogeneous Dirichlet extension).
    `arms` holds the Shortley-Weller arm fractions (E, W, N, S) when the
    function came from a solver.
    """
    grid: Grid
    values: np.ndarray
    mask: np.ndarray
    arms: Optional[np.ndarray] = None
    label: str = ""

    def __post_init__(self):
        self.mask = np.asarray(self.mask, dtype=bool)
        values = np.asarray(self.values, dtype=float)
        self.values = np.where(self.mask, values, 0.0)
        if not np.all(np.isfinite(self.values)):
            raise GeometryError("grid function has non-finite values on its mask")

    @classmethod
    def from_callable(cls, grid: Grid, mask: np.ndarray,
                      func: Callable[[np.ndarray], np.ndarray], label: str = "") -> "GridFunction":
        mask = np.asarray(mask, dtype=bool)
        values = np.zeros(grid.shape)
        values[mask] = np.asarray(func(grid.points()[mask]), dtype=float)
        return cls(grid, values, mask, label=label)

    @property
    def h(self) -> float:
        return self.grid.h

    def region(self) -> RegionMask:
        return RegionMask(self.grid, self.mask.copy())

    def max(self, region: Optional[np.ndarray] = None) -> float:
        sel = self.mask if region is None else (self.mask & region)
        if not sel.any():
            raise GeometryError("maximum over an empty node set")
        return float(self.values[sel].max())

    def argmax(self, region: Optional[np.ndarray] = None) -> np.ndarray:
        sel = self.mask if region is None else (self.mask & region)
        if not sel.any():
            raise GeometryError("maximum over an empty node set")
        masked = np.where(sel, self.values, -np.inf)
        i, j = np.unravel_index(int(np.argmax(masked)), masked.shape)
        return self.grid.points()[i, j]

    def interpolate(self, points: np.ndarray) -> np.ndarray:
        """Bilinear interpolation; NaN outside the grid hull"""
        interp = RegularGridInterpolator(self.grid.axes(), self.values, method="linear",
                                         bounds_error=False, fill_value=np.nan)
        pts = np.asarray(points, dtype=float)
        return interp(pts.reshape(-1, 2)).reshape(pts.shape[:-1])

    def gradient(self) -> Tuple[np.ndarray, np.ndarray]:
        """Centered differences on the mask, one-sided where a neighbour is outside.

        Entries off the mask are NaN.
        """
        return (_masked_diff(self.values, self.mask, self.grid.h, axis=0),
                _masked_diff(self.values, self.mask, self.grid.h, axis=1))

    def grad_norm(self) -> np.ndarray:
        gx, gy = self.gradient()
        return np.hypot(gx, gy)

    def to_text(self) -> str:
        lines = [self.grid.header()]
        for j in range(self.grid.ny):
            lines.append(" ".join(repr(float(v)) for v in self.values[:, j]))
        return "\n".join(lines) + "\n"


def _masked_diff(values: np.ndarray, mask: np.ndarray, h: float, axis: int) -> np.ndarray:
    pad = [(0, 0), (0, 0)]
    pad[axis] = (1, 1)
    v = np.pad(values, pad)
    m = np.pad(mask, pad)
    sl = [slice(None), slice(None)]

    def shifted(arr, k):
        s = list(sl)
        s[axis] = slice(1 + k, arr.shape[axis] - 1 + k)
        return arr[tuple(s)]

    plus_ok, minus_ok = shifted(m, 1), shifted(m, -1)
    vp, v0, vm = shifted(v, 1), shifted(v, 0), shifted(v, -1)
    out = np.full(values.shape, np.nan)
    both = mask & plus_ok & minus_ok
    out[both] = ((vp - vm) / (2 * h))[both]
    fwd = mask & plus_ok & ~minus_ok
    out[fwd] = ((vp - v0) / h)[fwd]
    bwd = mask & ~plus_ok & minus_ok
    out[bwd] = ((v0 - vm) / h)[bwd]
    lone = mask & ~plus_ok & ~minus_ok
    out[lone] = 0.0
    return out


@dataclass
class EigenPair:
    """Principal Dirichlet eigenpair"""
    lambda1: float
    phi: GridFunction
    iterations: int = 0
    history: List[float] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "lambda1": self.lambda1,
            "iterations": self.iterations,
            "history": list(self.history),
            "h": self.phi.h,
            "interior_nodes": int(self.phi.mask.sum()),
        }


@dataclass
class RadialSolution:
    """Radial profile u(r) on a ball [0, r_out] or an annulus [r_in, r_out]"""
    N: int
    r: np.ndarray
    u: np.ndarray
    du: np.ndarray
    geometry: str = "ball"
    r_in: float = 0.0
    r_out: float = 1.0
    shooting_parameter: float = 0.0
    label: str = ""

    def __post_init__(self):
        self.r = np.asarray(self.r, dtype=float)
        self.u = np.asarray(self.u, dtype=float)
        self.du = np.asarray(self.du, dtype=float)
        self._spline = CubicHermiteSpline(self.r, self.u, self.du, extrapolate=False)

    def profile(self, radius: np.ndarray) -> np.ndarray:
        """u at the given radii; zero outside [r_in, r_out]"""
        rr = np.asarray(radius, dtype=float)
        clipped = np.clip(rr, self.r[0], self.r[-1])
        values = self._spline(clipped)
        return np.where((rr >= self.r_in) & (rr <= self.r_out), values, 0.0)

    def derivative(self, radius: np.ndarray) -> np.ndarray:
        rr = np.asarray(radius, dtype=float)
        clipped = np.clip(rr, self.r[0], self.r[-1])
        return np.asarray(self._spline(clipped, 1))

    def as_field(self, center: Optional[np.ndarray] = None, dim: Optional[int] = None) -> Field:
        """Field U(|x - c|) in `dim` dimensions (default N)"""
        dim = self.N if dim is None else dim
        c = np.zeros(dim)
        if center is not None:
            center = np.asarray(center, dtype=float)
            c[:len(center)] = center

        def func(points: np.ndarray) -> np.ndarray:
            return self.profile(np.linalg.norm(points - c, axis=-1))

        return Field(func, dim, label=self.label or f"radial N={self.N}")

    @property
    def sup_norm(self) -> float:
        return float(np.max(self.u))

    @property
    def r_max(self) -> float:
        return float(self.r[int(np.argmax(self.u))])

    def to_rows(self) -> List[Tuple[float, float, float]]:
        return [(float(a), float(b), float(c)) for a, b, c in zip(self.r, self.u, self.du)]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "N": self.N,
            "geometry": self.geometry,
            "r_in": self.r_in,
            "r_out": self.r_out,
            "shooting_parameter": self.shooting_parameter,
            "sup_norm": self.sup_norm,
            "r_max": self.r_max,
            "samples": len(self.r),
        }

"""Base class for planar domains given by a signed distance"""

from abc import ABC, abstractmethod
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from ..core.errors import ArgumentError
from ..core.models import Grid, PresetTag, RegionMask


class Domain(ABC):
    """Bounded planar domain.

    Subclasses supply the signed distance (negative inside), the bounding box
    and a boundary curve sampler returning points with outward unit normals.
    Discretizations are cached per grid spacing.
    """

    preset: PresetTag = PresetTag.CUSTOM
    dim: int = 2

    def __init__(self, rho: Optional[float] = None, grid_h: float = 1.0 / 64):
        if grid_h <= 0:
            raise ArgumentError(f"grid_h must be positive, got {grid_h}")
        self.grid_h = float(grid_h)
        self.rho = float(rho) if rho is not None else self.default_rho()
        if self.rho <= 0:
            raise ArgumentError(f"exterior radius must be positive, got {self.rho}")
        self._grids: Dict[float, Tuple[Grid, np.ndarray]] = {}
        self._samples: Dict[Tuple[float, int], Tuple[np.ndarray, np.ndarray]] = {}

    @abstractmethod
    def signed_distance(self, points: np.ndarray) -> np.ndarray:
        """Signed distance of (..., 2) points"""
        pass

    @abstractmethod
    def bbox(self) -> Tuple[float, float, float, float]:
        """(xmin, xmax, ymin, ymax)"""
        pass

    @abstractmethod
    def boundary_curve(self, spacing: float) -> Tuple[np.ndarray, np.ndarray]:
        """Boundary points (k, 2) at roughly `spacing` apart and outward normals (k, 2)"""
        pass

    @abstractmethod
    def params(self) -> Dict[str, Any]:
        pass

    def boundary_rings(self, spacing: float) -> List[np.ndarray]:
        """Boundary as closed polylines, one (k, 2) array per component, in sampling order"""
        points, _ = self.boundary_curve(spacing)
        return [points]

    def default_rho(self) -> float:
        xmin, xmax, ymin, ymax = self.bbox()
        return 0.1 * max(xmax - xmin, ymax - ymin)

    def scaled(self, t: float) -> "Domain":
        """Dilation x -> t x of the domain"""
        raise NotImplementedError(f"{type(self).__name__} does not support scaling")

    @property
    def circumbound(self) -> float:
        """Radius of a ball (about the bbox centre) containing the domain"""
        xmin, xmax, ymin, ymax = self.bbox()
        return 0.5 * float(np.hypot(xmax - xmin, ymax - ymin))

    @property
    def diameter_scale(self) -> float:
        xmin, xmax, ymin, ymax = self.bbox()
        return float(max(xmax - xmin, ymax - ymin))

    def grid_and_distance(self, h: Optional[float] = None) -> Tuple[Grid, np.ndarray]:
        h = self.grid_h if h is None else float(h)
        if h not in self._grids:
            grid = Grid.covering(*self.bbox(), h=h)
            self._grids[h] = (grid, self.signed_distance(grid.points()))
        return self._grids[h]

    def interior(self, h: Optional[float] = None) -> RegionMask:
        grid, sd = self.grid_and_distance(h)
        return RegionMask(grid, sd < 0)

    def boundary_samples(self, h: Optional[float] = None,
                         supersample: int = 4) -> Tuple[np.ndarray, np.ndarray]:
        """Boundary points and outward normals at spacing h / supersample"""
        h = self.grid_h if h is None else float(h)
        key = (h, supersample)
        if key not in self._samples:
            self._samples[key] = self.boundary_curve(h / supersample)
        return self._samples[key]

    def normal_at(self, x: np.ndarray, step: float = 1e-6) -> np.ndarray:
        """Outward normal from the centred gradient of the signed distance"""
        x = np.asarray(x, dtype=float)
        e = np.eye(2) * step * max(1.0, self.diameter_scale)
        grad = np.array([
            (self.signed_distance(x + e[k]) - self.signed_distance(x - e[k])) / (2 * e[k, k])
            for k in range(2)
        ])
        norm = np.linalg.norm(grad)
        if norm == 0:
            raise ArgumentError("signed distance gradient vanishes at base point", point=x.tolist())
        return grad / norm

    def to_dict(self) -> Dict[str, Any]:
        return {
            "preset": self.preset.value,
            "params": self.params(),
            "rho": self.rho,
            "grid_h": self.grid_h,
            "circumbound": self.circumbound,
        }

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.params()}, rho={self.rho})"


def densify_ring(vertices: np.ndarray, spacing: float) -> np.ndarray:
    """Closed polyline through the corners with segments subdivided to `spacing`"""
    a = np.asarray(vertices, dtype=float)
    b = np.roll(a, -1, axis=0)
    pieces = []
    for start, end in zip(a, b):
        n = max(1, int(np.ceil(float(np.hypot(*(end - start))) / spacing)))
        t = np.arange(n) / n
        pieces.append(start + t[:, None] * (end - start))
    return np.vstack(pieces)

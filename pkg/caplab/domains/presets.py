"""Analytic presets: disk, annulus, square"""

from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..core.errors import ArgumentError
from ..core.models import PresetTag
from .base import Domain, densify_ring


def _circle_samples(center: np.ndarray, radius: float, spacing: float,
                    inward: bool = False) -> Tuple[np.ndarray, np.ndarray]:
    n = max(16, int(np.ceil(2 * np.pi * radius / spacing)))
    theta = 2 * np.pi * np.arange(n) / n
    normals = np.stack([np.cos(theta), np.sin(theta)], axis=-1)
    points = center + radius * normals
    return points, (-normals if inward else normals)


class DiskDomain(Domain):
    """Disk |x - c| < r"""

    preset = PresetTag.DISK

    def __init__(self, center: Sequence[float] = (0.0, 0.0), radius: float = 1.0,
                 rho: Optional[float] = None, grid_h: float = 1.0 / 64):
        if radius <= 0:
            raise ArgumentError(f"disk radius must be positive, got {radius}")
        self.center = np.asarray(center, dtype=float)
        self.radius = float(radius)
        super().__init__(rho=rho, grid_h=grid_h)

    def default_rho(self) -> float:
        return self.radius

    def signed_distance(self, points: np.ndarray) -> np.ndarray:
        return np.linalg.norm(np.asarray(points, dtype=float) - self.center, axis=-1) - self.radius

    def bbox(self) -> Tuple[float, float, float, float]:
        cx, cy = self.center
        r = self.radius
        return (cx - r, cx + r, cy - r, cy + r)

    def boundary_curve(self, spacing: float) -> Tuple[np.ndarray, np.ndarray]:
        return _circle_samples(self.center, self.radius, spacing)

    @property
    def circumbound(self) -> float:
        return self.radius

    def scaled(self, t: float) -> "DiskDomain":
        return DiskDomain(self.center * t, self.radius * t, rho=self.rho * t, grid_h=self.grid_h * t)

    def params(self) -> Dict[str, Any]:
        return {"center": [float(v) for v in self.center], "radius": self.radius}


class AnnulusDomain(Domain):
    """Annulus r_in < |x - c| < r_out"""

    preset = PresetTag.ANNULUS

    def __init__(self, center: Sequence[float] = (0.0, 0.0), r_in: float = 1.0,
                 r_out: float = 2.0, rho: Optional[float] = None, grid_h: float = 1.0 / 64):
        if not 0 < r_in < r_out:
            raise ArgumentError("annulus radii must satisfy 0 < r_in < r_out",
                                r_in=r_in, r_out=r_out)
        self.center = np.asarray(center, dtype=float)
        self.r_in = float(r_in)
        self.r_out = float(r_out)
        super().__init__(rho=rho, grid_h=grid_h)

    def default_rho(self) -> float:
        return 0.5 * self.r_in

    def signed_distance(self, points: np.ndarray) -> np.ndarray:
        r = np.linalg.norm(np.asarray(points, dtype=float) - self.center, axis=-1)
        return np.maximum(self.r_in - r, r - self.r_out)

    def bbox(self) -> Tuple[float, float, float, float]:
        cx, cy = self.center
        r = self.r_out
        return (cx - r, cx + r, cy - r, cy + r)

    def boundary_curve(self, spacing: float) -> Tuple[np.ndarray, np.ndarray]:
        outer, n_out = _circle_samples(self.center, self.r_out, spacing)
        inner, n_in = _circle_samples(self.center, self.r_in, spacing, inward=True)
        return np.vstack([outer, inner]), np.vstack([n_out, n_in])

    def boundary_rings(self, spacing: float) -> List[np.ndarray]:
        outer, _ = _circle_samples(self.center, self.r_out, spacing)
        inner, _ = _circle_samples(self.center, self.r_in, spacing)
        return [outer, inner]

    @property
    def circumbound(self) -> float:
        return self.r_out

    def scaled(self, t: float) -> "AnnulusDomain":
        return AnnulusDomain(self.center * t, self.r_in * t, self.r_out * t,
                             rho=self.rho * t, grid_h=self.grid_h * t)

    def params(self) -> Dict[str, Any]:
        return {"center": [float(v) for v in self.center], "r_in": self.r_in, "r_out": self.r_out}


class SquareDomain(Domain):
    """Axis-aligned square [origin, origin + side]²"""

    preset = PresetTag.SQUARE

    def __init__(self, origin: Sequence[float] = (0.0, 0.0), side: float = 1.0,
                 rho: Optional[float] = None, grid_h: float = 1.0 / 64):
        if side <= 0:
            raise ArgumentError(f"square side must be positive, got {side}")
        self.origin = np.asarray(origin, dtype=float)
        self.side = float(side)
        super().__init__(rho=rho, grid_h=grid_h)

    def default_rho(self) -> float:
        return self.side

    def signed_distance(self, points: np.ndarray) -> np.ndarray:
        half = 0.5 * self.side
        d = np.abs(np.asarray(points, dtype=float) - (self.origin + half)) - half
        outside = np.linalg.norm(np.maximum(d, 0.0), axis=-1)
        inside = np.minimum(np.max(d, axis=-1), 0.0)
        return outside + inside

    def bbox(self) -> Tuple[float, float, float, float]:
        x0, y0 = self.origin
        return (x0, x0 + self.side, y0, y0 + self.side)

    def boundary_curve(self, spacing: float) -> Tuple[np.ndarray, np.ndarray]:
        # midpoints of sub-segments, so corners are never sampled
        n = max(4, int(np.ceil(self.side / spacing)))
        t = (np.arange(n) + 0.5) / n * self.side
        x0, y0 = self.origin
        s = self.side
        zeros, ones = np.zeros(n), np.ones(n)
        points = np.vstack([
            np.stack([x0 + t, y0 + zeros], -1),
            np.stack([x0 + s + zeros, y0 + t], -1),
            np.stack([x0 + s - t, y0 + s + zeros], -1),
            np.stack([x0 + zeros, y0 + s - t], -1),
        ])
        normals = np.vstack([
            np.stack([zeros, -ones], -1),
            np.stack([ones, zeros], -1),
            np.stack([zeros, ones], -1),
            np.stack([-ones, zeros], -1),
        ])
        return points, normals

    def boundary_rings(self, spacing: float) -> List[np.ndarray]:
        x0, y0 = self.origin
        s = self.side
        corners = np.array([[x0, y0], [x0 + s, y0], [x0 + s, y0 + s], [x0, y0 + s]])
        return [densify_ring(corners, spacing)]

    def scaled(self, t: float) -> "SquareDomain":
        return SquareDomain(self.origin * t, self.side * t, rho=self.rho * t, grid_h=self.grid_h * t)

    def params(self) -> Dict[str, Any]:
        return {"origin": [float(v) for v in self.origin], "side": self.side}

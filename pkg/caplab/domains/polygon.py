"""Polygonal domains: custom vertex lists and graph-bounded regions"""

from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..core.errors import ArgumentError
from ..core.models import PresetTag
from .base import Domain, densify_ring

_SEGMENT_CHUNK = 32


class PolygonDomain(Domain):
    """Simple polygon; signed distance by projection onto the closed polyline"""

    preset = PresetTag.CUSTOM

    def __init__(self, vertices: Sequence[Sequence[float]], rho: Optional[float] = None,
                 grid_h: float = 1.0 / 64):
        verts = np.asarray(vertices, dtype=float)
        if verts.ndim != 2 or verts.shape[1] != 2 or len(verts) < 3:
            raise ArgumentError("polygon needs at least three 2D vertices")
        if np.allclose(verts[0], verts[-1]):
            verts = verts[:-1]
        # counter-clockwise orientation so (dy, -dx) is outward
        area = 0.5 * np.sum(verts[:, 0] * np.roll(verts[:, 1], -1)
                            - np.roll(verts[:, 0], -1) * verts[:, 1])
        if area == 0:
            raise ArgumentError("polygon has zero area")
        if area < 0:
            verts = verts[::-1]
        self.vertices = verts
        super().__init__(rho=rho, grid_h=grid_h)

    @property
    def segments(self) -> Tuple[np.ndarray, np.ndarray]:
        return self.vertices, np.roll(self.vertices, -1, axis=0)

    def signed_distance(self, points: np.ndarray) -> np.ndarray:
        pts = np.asarray(points, dtype=float)
        flat = pts.reshape(-1, 2)
        a_all, b_all = self.segments
        dist = np.full(len(flat), np.inf)
        inside = np.zeros(len(flat), dtype=bool)
        px, py = flat[:, 0:1], flat[:, 1:2]
        for start in range(0, len(a_all), _SEGMENT_CHUNK):
            a = a_all[start:start + _SEGMENT_CHUNK]
            b = b_all[start:start + _SEGMENT_CHUNK]
            ab = b - a
            ap_x, ap_y = px - a[:, 0], py - a[:, 1]
            t = np.clip((ap_x * ab[:, 0] + ap_y * ab[:, 1]) / np.sum(ab * ab, axis=1), 0.0, 1.0)
            dx = ap_x - t * ab[:, 0]
            dy = ap_y - t * ab[:, 1]
            dist = np.minimum(dist, np.sqrt(dx * dx + dy * dy).min(axis=1))
            # even-odd crossings of the ray to +x
            crosses = (a[:, 1] > py) != (b[:, 1] > py)
            with np.errstate(divide="ignore", invalid="ignore"):
                x_cross = a[:, 0] + (py - a[:, 1]) * ab[:, 0] / ab[:, 1]
            hits = crosses & (px < x_cross)
            inside ^= (np.count_nonzero(hits, axis=1) % 2).astype(bool)
        return np.where(inside, -dist, dist).reshape(pts.shape[:-1])

    def bbox(self) -> Tuple[float, float, float, float]:
        lo = self.vertices.min(axis=0)
        hi = self.vertices.max(axis=0)
        return (float(lo[0]), float(hi[0]), float(lo[1]), float(hi[1]))

    def boundary_curve(self, spacing: float) -> Tuple[np.ndarray, np.ndarray]:
        points, normals = [], []
        for a, b in zip(*self.segments):
            ab = b - a
            length = float(np.hypot(*ab))
            n = max(1, int(np.ceil(length / spacing)))
            t = (np.arange(n) + 0.5) / n
            points.append(a + t[:, None] * ab)
            normals.append(np.tile(np.array([ab[1], -ab[0]]) / length, (n, 1)))
        return np.vstack(points), np.vstack(normals)

    def boundary_rings(self, spacing: float) -> List[np.ndarray]:
        return [densify_ring(self.vertices, spacing)]

    def scaled(self, t: float) -> "PolygonDomain":
        return PolygonDomain(self.vertices * t, rho=self.rho * t, grid_h=self.grid_h * t)

    def params(self) -> Dict[str, Any]:
        return {"vertices": self.vertices.tolist()}


def _graph_function(curve: str, coefficients: Optional[Sequence[float]],
                    amplitude: float) -> Callable[[np.ndarray], np.ndarray]:
    if curve == "cubic":
        return lambda x: 0.5 * x ** 3 + 1.0
    if curve == "sine":
        return lambda x: 1.0 + amplitude * np.sin(np.pi * x)
    if curve == "polynomial":
        if not coefficients:
            raise ArgumentError("polynomial graph needs coefficients")
        return lambda x: np.polyval(np.asarray(coefficients, dtype=float), x)
    raise ArgumentError(f"unknown graph curve: {curve}")


class GraphBoundaryDomain(PolygonDomain):
    """Region {a < x < b, base < y < ψ(x)} with the graph sampled as a polyline"""

    preset = PresetTag.GRAPH_BOUNDARY

    def __init__(self, curve: str = "cubic", interval: Sequence[float] = (-np.pi / 4, np.pi / 4),
                 base: float = 0.0, coefficients: Optional[Sequence[float]] = None,
                 amplitude: float = 0.1, n_vertices: int = 400,
                 rho: Optional[float] = None, grid_h: float = 1.0 / 64):
        a, b = float(interval[0]), float(interval[1])
        if not a < b:
            raise ArgumentError("graph interval must satisfy a < b", interval=[a, b])
        psi = _graph_function(curve, coefficients, amplitude)
        x = np.linspace(b, a, n_vertices)
        top = np.stack([x, psi(x)], axis=-1)
        if np.any(top[:, 1] <= base):
            raise ArgumentError("graph must stay above the base line", base=base)
        self.curve = curve
        self.interval = (a, b)
        self.base = float(base)
        self.coefficients = list(coefficients) if coefficients else None
        self.amplitude = float(amplitude)
        self.n_vertices = int(n_vertices)
        vertices = np.vstack([[[a, base], [b, base]], top])
        super().__init__(vertices, rho=rho, grid_h=grid_h)

    def params(self) -> Dict[str, Any]:
        return {
            "curve": self.curve,
            "interval": list(self.interval),
            "base": self.base,
            "coefficients": self.coefficients,
            "amplitude": self.amplitude,
            "n_vertices": self.n_vertices,
        }

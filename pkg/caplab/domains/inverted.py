"""Image of a domain under a Kelvin frame followed by unit inversion"""

from typing import Any, Dict, Optional, Tuple

import numpy as np
from scipy.spatial import cKDTree

from ..core.geometry import invert_points
from ..core.models import PresetTag
from .base import Domain

# nearest polyline vertices whose adjacent segments are projected onto
_NEIGHBOURS = 8


class InvertedDomain(Domain):
    """h(T(Ω)) inside the annulus 1/R ≤ |y| ≤ 1.

    The sign comes from the source domain at the back-mapped point, which the
    inversion preserves exactly. The magnitude is the distance to the image of
    the source boundary rings, sampled as closed polylines at a quarter of the
    grid spacing.
    """

    preset = PresetTag.INVERTED

    def __init__(self, frame, source: Domain, rho: Optional[float] = None,
                 grid_h: Optional[float] = None):
        self.frame = frame
        self.source = source
        grid_h = frame.scale * source.grid_h if grid_h is None else grid_h
        self._build_polyline(0.25 * grid_h)
        pts = self._vertices
        pad = 2 * grid_h
        self._bbox = (float(pts[:, 0].min()) - pad, float(pts[:, 0].max()) + pad,
                      float(pts[:, 1].min()) - pad, float(pts[:, 1].max()) + pad)
        super().__init__(rho=rho, grid_h=grid_h)

    def _build_polyline(self, spacing: float):
        rings = [invert_points(self.frame.apply(ring))
                 for ring in self.source.boundary_rings(spacing / self.frame.scale)]
        following = []
        offset = 0
        for ring in rings:
            k = len(ring)
            following.append(offset + (np.arange(k) + 1) % k)
            offset += k
        self._vertices = np.vstack(rings)
        self._next = np.concatenate(following)
        self._prev = np.empty_like(self._next)
        self._prev[self._next] = np.arange(len(self._next))
        self._tree = cKDTree(self._vertices)

    def _back_map(self, points: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        y = np.asarray(points, dtype=float)
        r = np.linalg.norm(y, axis=-1)
        safe = np.where(r[..., None] > 0, y, 1.0)
        return self.frame.inverse(invert_points(safe)), r

    def boundary_distance(self, points: np.ndarray) -> np.ndarray:
        """Unsigned distance to the image boundary polyline"""
        pts = np.asarray(points, dtype=float)
        flat = pts.reshape(-1, 2)
        k = min(_NEIGHBOURS, len(self._vertices))
        _, idx = self._tree.query(flat, k=k)
        idx = idx.reshape(len(flat), k)
        V = self._vertices
        best = np.full(len(flat), np.inf)
        for col in idx.T:
            for a_idx, b_idx in ((self._prev[col], col), (col, self._next[col])):
                a, b = V[a_idx], V[b_idx]
                ab = b - a
                ap = flat - a
                t = np.clip(np.sum(ap * ab, axis=1) / np.sum(ab * ab, axis=1), 0.0, 1.0)
                best = np.minimum(best, np.linalg.norm(ap - t[:, None] * ab, axis=1))
        return best.reshape(pts.shape[:-1])

    def signed_distance(self, points: np.ndarray) -> np.ndarray:
        x, r = self._back_map(points)
        inside = (self.source.signed_distance(x) < 0) & (r > 0)
        inside &= (r <= 1.0) & (r >= 1.0 / self.frame.R)
        dist = self.boundary_distance(points)
        return np.where(inside, -dist, dist)

    def bbox(self) -> Tuple[float, float, float, float]:
        return self._bbox

    def boundary_curve(self, spacing: float) -> Tuple[np.ndarray, np.ndarray]:
        pts, normals = self.source.boundary_curve(spacing / self.frame.scale)
        z = self.frame.apply(pts)
        n = normals @ self.frame.rotation.T
        zhat = z / np.linalg.norm(z, axis=-1, keepdims=True)
        n = n - 2.0 * np.sum(zhat * n, axis=-1, keepdims=True) * zhat
        return invert_points(z), n / np.linalg.norm(n, axis=-1, keepdims=True)

    @property
    def inner_radius(self) -> float:
        return 1.0 / self.frame.R

    def params(self) -> Dict[str, Any]:
        return {
            "source": self.source.preset.value,
            "base_point": [float(v) for v in self.frame.base_point],
            "source_rho": self.frame.rho,
            "R": self.frame.R,
        }

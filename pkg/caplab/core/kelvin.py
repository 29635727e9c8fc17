"""Kelvin frames, the Kelvin transform and the transformed equation"""

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Union

import numpy as np

from .errors import ArgumentError, CheckError, DomainError, FrameError
from .geometry import exterior_penetration, invert_points
from .models import Field, Grid, GridFunction

logger = logging.getLogger(__name__)


@dataclass
class KelvinFrame:
    """Similarity T(x) = scale·Q(x − c) taking the exterior ball B_ρ(c) to the unit ball
    and the base point x₀ to e₁. Acts on the first two coordinates; the rest are scaled.
    """
    rotation: np.ndarray
    translation: np.ndarray
    scale: float
    base_point: np.ndarray
    center: np.ndarray
    rho: float
    R: float = 1.0
    normal: Optional[np.ndarray] = None

    def apply(self, points: np.ndarray) -> np.ndarray:
        pts = np.asarray(points, dtype=float)
        return self.scale * pts @ self.rotation.T + self.translation

    def inverse(self, points: np.ndarray) -> np.ndarray:
        pts = np.asarray(points, dtype=float)
        return (pts - self.translation) @ self.rotation / self.scale

    def apply_nd(self, points: np.ndarray) -> np.ndarray:
        pts = np.array(points, dtype=float)
        pts[..., :2] = self.apply(pts[..., :2])
        pts[..., 2:] *= self.scale
        return pts

    def inverse_nd(self, points: np.ndarray) -> np.ndarray:
        pts = np.array(points, dtype=float)
        pts[..., :2] = self.inverse(pts[..., :2])
        pts[..., 2:] /= self.scale
        return pts

    def to_dict(self) -> Dict[str, Any]:
        return {
            "rotation": self.rotation.tolist(),
            "translation": [float(v) for v in self.translation],
            "scale": self.scale,
            "x0": [float(v) for v in self.base_point],
            "center": [float(v) for v in self.center],
            "rho": self.rho,
            "R": self.R,
        }


def frame_from_normal(x0, normal, rho: float) -> KelvinFrame:
    """Frame for the exterior ball of radius ρ tangent at x₀ with outward normal n"""
    x0 = np.asarray(x0, dtype=float)
    n = np.asarray(normal, dtype=float)
    n = n / np.linalg.norm(n)
    c, s = -n
    rotation = np.array([[c, s], [-s, c]])
    center = x0 + rho * n
    scale = 1.0 / rho
    translation = -scale * rotation @ center
    return KelvinFrame(rotation=rotation, translation=translation, scale=scale,
                       base_point=x0, center=center, rho=float(rho), normal=n)


def build_frame(domain, x0, rho: Optional[float] = None, h: Optional[float] = None,
                tolerance: Optional[float] = None) -> KelvinFrame:
    """Normalize the boundary point x₀ and its exterior ball to (e₁, unit ball).

    R is the largest |T(x)| over boundary samples and interior nodes.
    """
    h = domain.grid_h if h is None else float(h)
    rho = domain.rho if rho is None else float(rho)
    if rho <= 0:
        raise ArgumentError(f"rho must be positive, got {rho}")
    x0 = np.asarray(x0, dtype=float)
    offset = float(domain.signed_distance(x0))
    if abs(offset) > h:
        raise ArgumentError("base point is not on the boundary", x0=x0.tolist(),
                            signed_distance=offset)
    normal = domain.normal_at(x0)
    tolerance = 0.5 * h if tolerance is None else tolerance
    penetration = float(exterior_penetration(domain, x0[None, :], normal[None, :], rho, h)[0])
    if penetration > tolerance:
        raise FrameError(f"exterior ball of radius {rho:g} at x0 penetrates the domain "
                         f"by {penetration:.6g}", penetration=penetration,
                         x0=x0.tolist(), rho=rho)

    frame = frame_from_normal(x0, normal, rho)
    boundary, _ = domain.boundary_samples(h)
    radii = np.linalg.norm(frame.apply(np.vstack([boundary, domain.interior(h).points()])),
                           axis=-1)
    frame.R = float(max(1.0, radii.max()))
    inner = float(radii.min())
    if inner < 1.0 - frame.scale * tolerance:
        logger.warning("sampled domain points reach |T(x)|=%.6g inside the unit ball", inner)
    return frame


class TransformedNonlinearity:
    """g(y, s) = |y|^{−(N+2)} f(|y|^{N−2} s)"""

    def __init__(self, f, N: int):
        if N < 3:
            raise ArgumentError("the Kelvin transform here needs N >= 3", N=N)
        self.f = f
        self.N = int(N)

    def radial(self, r, s) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        if np.any(r == 0):
            raise DomainError("g(y, s) is undefined at y = 0")
        return r ** (-(self.N + 2)) * self.f(r ** (self.N - 2) * np.asarray(s, dtype=float))

    def __call__(self, y, s) -> np.ndarray:
        return self.radial(np.linalg.norm(np.asarray(y, dtype=float), axis=-1), s)

    @property
    def label(self) -> str:
        return f"g[{self.f.label}, N={self.N}]"


def transformed_nonlinearity(f, N: int) -> TransformedNonlinearity:
    return TransformedNonlinearity(f, N)


@dataclass
class TransformedField:
    """Kelvin image v of u on the image grid, with the image domain and validity mask"""
    v: GridFunction
    domain: Any
    image_mask: np.ndarray
    frame: KelvinFrame
    N: int
    analytic: Optional[Field] = None
    invalid: int = 0
    notes: List[str] = field(default_factory=list)

    @property
    def grid(self) -> Grid:
        return self.v.grid

    def to_dict(self) -> Dict[str, Any]:
        return {
            "N": self.N,
            "frame": self.frame.to_dict(),
            "grid": self.grid.to_dict(),
            "image_nodes": int(self.image_mask.sum()),
            "valid_nodes": int(self.v.mask.sum()),
            "invalid_nodes": self.invalid,
            "max": float(self.v.values[self.v.mask].max()) if self.v.mask.any() else None,
            "notes": list(self.notes),
        }


def _cell_inside(u: GridFunction, points: np.ndarray) -> np.ndarray:
    """True where all four corners of the bilinear cell containing the point are on u's mask"""
    g = u.grid
    fi = (points[..., 0] - g.x0) / g.h
    fj = (points[..., 1] - g.y0) / g.h
    ok = np.isfinite(fi) & np.isfinite(fj)
    i = np.floor(np.where(ok, fi, -1)).astype(int)
    j = np.floor(np.where(ok, fj, -1)).astype(int)
    ok &= (i >= 0) & (j >= 0) & (i < g.nx - 1) & (j < g.ny - 1)
    i, j = np.where(ok, i, 0), np.where(ok, j, 0)
    m = u.mask
    return ok & m[i, j] & m[i + 1, j] & m[i, j + 1] & m[i + 1, j + 1]


def kelvin_field(u: Field, frame: KelvinFrame, N: int) -> Field:
    """v(y) = |y|^{2−N} u(T⁻¹(y/|y|²)) as an N-dimensional field"""
    if u.dim != N:
        raise ArgumentError(f"field dimension {u.dim} does not match N={N}")

    def func(points: np.ndarray) -> np.ndarray:
        r = np.linalg.norm(points, axis=-1)
        if np.any(r == 0):
            raise DomainError("Kelvin transform is undefined at y = 0")
        x = frame.inverse_nd(invert_points(points))
        return r ** (2 - N) * u(x)

    return Field(func, N, label=f"K[{u.label}]")


def image_domain(frame: KelvinFrame, source, image_h: Optional[float] = None):
    from ..domains.inverted import InvertedDomain
    if image_h is None:
        image_h = min(frame.scale * source.grid_h, (1.0 - 1.0 / frame.R) / 32.0)
    return InvertedDomain(frame, source, grid_h=image_h)


def kelvin_transform(u: Union[GridFunction, Field], frame: KelvinFrame, N: int, source,
                     image_h: Optional[float] = None) -> TransformedField:
    """v(y) = |y|^{−(N−2)} u(y/|y|²) on a fresh grid over h(T(Ω)).

    Grid functions are read by bilinear interpolation; image nodes whose
    back-mapped cell leaves u's mask are marked invalid and dropped from the mask.
    """
    if N < 3:
        raise ArgumentError("the Kelvin transform here needs N >= 3", N=N)
    target = image_domain(frame, source, image_h)
    grid, sd = target.grid_and_distance()
    y = grid.points()
    r = np.linalg.norm(y, axis=-1)
    inside = (sd < 0) & (r >= 1.0 / frame.R) & (r <= 1.0)
    values = np.zeros(grid.shape)
    ys = y[inside]
    rs = r[inside]
    z = invert_points(ys)
    analytic = None
    if isinstance(u, GridFunction):
        x = frame.inverse(z)
        ok = _cell_inside(u, x)
        raw = np.where(ok, u.interpolate(x), 0.0)
        ok &= np.isfinite(raw)
    elif isinstance(u, Field):
        analytic = kelvin_field(u, frame, N)
        lifted = np.zeros(ys.shape[:-1] + (N,))
        lifted[..., :2] = z
        raw = u(frame.inverse_nd(lifted))
        ok = np.isfinite(raw)
    else:
        raise ArgumentError(f"cannot Kelvin-transform {type(u).__name__}")
    valid = np.zeros(grid.shape, dtype=bool)
    valid[inside] = ok
    values[inside] = np.where(ok, rs ** (2 - N) * np.where(ok, raw, 0.0), 0.0)
    invalid = int(inside.sum() - ok.sum())
    result = TransformedField(
        v=GridFunction(grid, values, valid, label=f"K[{getattr(u, 'label', '')}]"),
        domain=target, image_mask=inside, frame=frame, N=N, analytic=analytic, invalid=invalid)
    if invalid:
        result.notes.append(f"{invalid} image nodes back-map outside u's mask")
        logger.info("Kelvin transform dropped %d of %d image nodes", invalid, int(inside.sum()))
    return result


def kelvin_pullback(v: TransformedField, target: GridFunction) -> GridFunction:
    """Transform v back onto the nodes of `target` (the Kelvin map is an involution)"""
    frame, N = v.frame, v.N
    pts = target.grid.points()[target.mask]
    z = frame.apply(pts)
    rz = np.linalg.norm(z, axis=-1)
    y = invert_points(z)
    ok = _cell_inside(v.v, y)
    raw = np.where(ok, v.v.interpolate(y), 0.0)
    ok &= np.isfinite(raw)
    values = np.zeros(target.grid.shape)
    mask = np.zeros(target.grid.shape, dtype=bool)
    mask[target.mask] = ok
    values[target.mask] = np.where(ok, rz ** (2 - N) * np.where(ok, raw, 0.0), 0.0)
    return GridFunction(target.grid, values, mask, label=f"K[{v.v.label}]")


@dataclass
class KelvinResidualReport:
    """‖Δv + g(y, v)/scale²‖ on the meridian slice of the image"""
    N: int
    image_h: float
    n_nodes: int
    max_residual: float
    l2_residual: float
    worst_point: List[float]
    threshold: float
    reference: float = 1.0

    @property
    def relative_residual(self) -> float:
        return self.max_residual / self.reference

    @property
    def passed(self) -> bool:
        return self.relative_residual <= self.threshold

    def to_dict(self) -> Dict[str, Any]:
        return {
            "N": self.N,
            "image_h": self.image_h,
            "n_nodes": self.n_nodes,
            "max_residual": self.max_residual,
            "l2_residual": self.l2_residual,
            "worst_point": self.worst_point,
            "reference": self.reference,
            "relative_residual": self.relative_residual,
            "threshold": self.threshold,
            "pass": self.passed,
        }


def check_kelvin_pde(u: Field, f, frame: KelvinFrame, N: int, source,
                     image_h: Optional[float] = None, threshold: float = 0.05,
                     min_nodes: int = 100) -> KelvinResidualReport:
    """2N-point Laplacian of v at image nodes whose stencil stays inside h(T(Ω)).

    In frame coordinates u solves −Δu = f(u)/scale², so the residual is
    Δv + g(y, v)/scale². The verdict compares max|residual| against
    threshold · max(1, max|g/scale²|).
    """
    if isinstance(u, GridFunction) or not isinstance(u, Field):
        raise ArgumentError("check_kelvin_pde needs an N-dimensional field")
    transformed = kelvin_transform(u, frame, N, source, image_h)
    target = transformed.domain
    k = target.grid_h
    grid, sd = target.grid_and_distance()
    sel = transformed.image_mask & (sd < -2.0 * k)
    r = np.linalg.norm(grid.points(), axis=-1)
    sel &= (r - 2.0 * k >= 1.0 / frame.R) & (r + 2.0 * k <= 1.0)
    count = int(sel.sum())
    if count < min_nodes:
        raise CheckError("insufficient interior image nodes for the residual",
                         nodes=count, required=min_nodes)
    Y = np.zeros((count, N))
    Y[:, :2] = grid.points()[sel]
    v = transformed.analytic
    center = v(Y)
    lap = np.zeros(count)
    for axis in range(N):
        step = np.zeros(N)
        step[axis] = k
        lap += (v(Y + step) + v(Y - step) - 2.0 * center) / k ** 2
    g = transformed_nonlinearity(f, N)
    source_term = g(Y, center) / frame.scale ** 2
    residual = np.abs(lap + source_term)
    worst = int(np.argmax(residual))
    return KelvinResidualReport(
        N=N, image_h=k, n_nodes=count,
        max_residual=float(residual[worst]),
        l2_residual=float(math.sqrt(np.sum(residual ** 2) * k ** 2)),
        worst_point=[float(c) for c in Y[worst, :2]],
        threshold=float(threshold),
        reference=float(max(1.0, np.abs(source_term).max())),
    )

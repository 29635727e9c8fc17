"""Moving-plane geometry: reflections, inversions, caps and region masks"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np
from scipy.spatial import cKDTree

from .errors import ArgumentError, DomainError, GeometryError
from .models import CapSpec, RegionMask

logger = logging.getLogger(__name__)

UNIT_TOL = 1e-12


def invert_point(x) -> np.ndarray:
    """Inversion through the unit sphere, x / |x|²"""
    x = np.asarray(x, dtype=float)
    r2 = float(np.dot(x, x))
    if r2 == 0.0:
        raise DomainError("inversion centre: cannot invert the origin")
    return x / r2


def invert_points(points: np.ndarray) -> np.ndarray:
    """Vectorized inversion of (..., d) points"""
    pts = np.asarray(points, dtype=float)
    r2 = np.sum(pts * pts, axis=-1, keepdims=True)
    if np.any(r2 == 0.0):
        raise DomainError("inversion centre: cannot invert the origin")
    return pts / r2


def _check_unit(nu: np.ndarray) -> np.ndarray:
    nu = np.asarray(nu, dtype=float)
    norm = float(np.linalg.norm(nu))
    if abs(norm - 1.0) > UNIT_TOL:
        raise ArgumentError("reflection direction must be a unit vector", norm=norm)
    return nu


def reflect_point(x, nu, lam: float) -> np.ndarray:
    """x^λ = x + 2(λ - x·ν)ν"""
    nu = _check_unit(nu)
    x = np.asarray(x, dtype=float)
    return x + 2.0 * (lam - float(np.dot(x, nu))) * nu


def reflect_points(points: np.ndarray, nu, lam: float) -> np.ndarray:
    nu = _check_unit(nu)
    pts = np.asarray(points, dtype=float)
    return pts + 2.0 * (lam - pts @ nu)[..., None] * nu


def direction_samples(n: int, dim: int = 2) -> np.ndarray:
    """Uniform angles on the circle, Fibonacci points on the sphere"""
    if dim == 2:
        theta = 2 * np.pi * np.arange(n) / n
        return np.stack([np.cos(theta), np.sin(theta)], axis=-1)
    if dim == 3:
        k = np.arange(n) + 0.5
        z = 1 - 2 * k / n
        phi = np.pi * (1 + 5 ** 0.5) * k
        s = np.sqrt(1 - z * z)
        dirs = np.stack([s * np.cos(phi), s * np.sin(phi), z], axis=-1)
        return dirs / np.linalg.norm(dirs, axis=-1, keepdims=True)
    raise ArgumentError(f"direction sampling supports dim 2 or 3, got {dim}")


def _interior_mask(domain, h: Optional[float]) -> RegionMask:
    mask = domain.interior(h)
    if mask.is_empty:
        raise GeometryError("domain mask is empty at this grid spacing",
                            h=mask.h, preset=domain.preset.value)
    return mask


def compute_lambda_star(domain, nu, tol: float = 1e-6, h: Optional[float] = None) -> CapSpec:
    """Maximal cap in direction ν.

    Sweeps λ upward from λ0 in steps of h, testing that every sampled cap
    point (interior nodes and supersampled boundary points with x·ν < λ)
    reflects to a point with negative signed distance, then bisects the first
    failing step down to `tol`. A failing window of λ narrower than h that
    lies between two passing sweep points is not resolved at this grid.
    """
    if tol <= 0:
        raise ArgumentError(f"tol must be positive, got {tol}")
    nu = _check_unit(nu)
    mask = _interior_mask(domain, h)
    step_h = mask.h
    boundary, _ = domain.boundary_samples(step_h)
    cand = np.vstack([mask.points(), boundary])
    proj = cand @ nu
    order = np.argsort(proj, kind="stable")
    proj, cand = proj[order], cand[order]
    lambda0 = float(proj[0])
    lambda_max = float(proj[-1])
    eps = 1e-10 * domain.diameter_scale

    def contained(lam: float) -> bool:
        k = int(np.searchsorted(proj, lam, side="left"))
        if k == 0:
            return True
        reflected = reflect_points(cand[:k], nu, lam)
        return bool(np.all(domain.signed_distance(reflected) < eps))

    step = step_h
    lo = lambda0
    hi = None
    lam = lambda0 + step
    while lam < lambda_max:
        if not contained(lam):
            hi = lam
            break
        lo = lam
        lam += step
    if hi is None:
        hi = lambda_max
        if contained(hi):
            lo = hi
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if contained(mid):
            lo = mid
        else:
            hi = mid
    lambda_star = lo
    degenerate = lambda_star <= lambda0 + 2 * step_h
    if degenerate:
        logger.warning("degenerate cap in direction %s: lambda*=%.6g, lambda0=%.6g",
                       nu.tolist(), lambda_star, lambda0)
    return CapSpec(direction=nu, lambda0=lambda0, lambda_star=lambda_star, tol=tol,
                   degenerate=degenerate)


def cap_region(domain, cap: CapSpec, lam: Optional[float] = None,
               h: Optional[float] = None) -> RegionMask:
    """Nodes of Σ_λ(ν); defaults to the maximal cap {x·ν < λ* - tol}"""
    mask = domain.interior(h)
    cut = (cap.lambda_star - cap.tol) if lam is None else lam
    below = (mask.grid.points() @ cap.direction) < cut
    return RegionMask(mask.grid, mask.inside & below,
                      ["degenerate"] if cap.degenerate else [])


def maximal_caps(domain, n_directions: int, tol: float = 1e-6, h: Optional[float] = None,
                 threads: int = 1) -> List[CapSpec]:
    """Maximal caps for uniformly sampled directions, in direction index order"""
    directions = direction_samples(n_directions, domain.dim)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(lambda nu: compute_lambda_star(domain, nu, tol, h), directions))
    return [compute_lambda_star(domain, nu, tol, h) for nu in directions]


def optimal_cap_set(domain, n_directions: int, tol: float = 1e-6, h: Optional[float] = None,
                    threads: int = 1, caps: Optional[List[CapSpec]] = None) -> RegionMask:
    """Ω★: union of the maximal caps, accumulated in direction index order"""
    if domain.dim == 2 and n_directions < 4:
        raise ArgumentError("optimal cap set needs at least 4 directions", n_directions=n_directions)
    if caps is None:
        caps = maximal_caps(domain, n_directions, tol, h, threads)
    union = RegionMask(domain.interior(h).grid, np.zeros(domain.interior(h).grid.shape, bool))
    degenerate = []
    for index, cap in enumerate(caps):
        union = union.union(cap_region(domain, cap, h=h))
        if cap.degenerate:
            degenerate.append(index)
    if degenerate:
        union.flags.append(f"degenerate_directions:{degenerate}")
    return union


def interior_region(domain, delta: float, h: Optional[float] = None) -> RegionMask:
    """Ω_δ: nodes with signed distance below -δ"""
    if delta < 0:
        raise ArgumentError(f"delta must be nonnegative, got {delta}")
    grid, sd = domain.grid_and_distance(h)
    region = RegionMask(grid, sd < -delta)
    if region.is_empty:
        logger.warning("interior region is empty for delta=%.6g (inradius %.6g)",
                       delta, largest_inscribed_radius(domain, h))
        region.flags.append("empty")
    return region


def largest_inscribed_radius(domain, h: Optional[float] = None) -> float:
    _, sd = domain.grid_and_distance(h)
    return float(max(0.0, -sd.min()))


@dataclass
class ExteriorSphereReport:
    """Outcome of the exterior ball scan"""
    rho: float
    passed: bool
    worst_penetration: float
    worst_point: List[float]
    tolerance: float
    n_samples: int
    notes: List[str] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "rho": self.rho,
            "pass": self.passed,
            "worst_penetration": self.worst_penetration,
            "worst_point": self.worst_point,
            "tolerance": self.tolerance,
            "n_samples": self.n_samples,
            "notes": list(self.notes),
        }


def exterior_penetration(domain, points: np.ndarray, normals: np.ndarray, rho: float,
                         h: Optional[float] = None) -> np.ndarray:
    """ρ minus the distance from each exterior ball centre to the nearest interior node"""
    mask = _interior_mask(domain, h)
    tree = cKDTree(mask.points())
    centers = np.asarray(points, dtype=float) + rho * np.asarray(normals, dtype=float)
    dist, _ = tree.query(centers)
    return rho - dist


def validate_exterior_sphere(domain, rho: float, h: Optional[float] = None,
                             tolerance: Optional[float] = None) -> ExteriorSphereReport:
    """Check that exterior balls of radius ρ at the boundary samples avoid interior nodes"""
    if rho <= 0:
        raise ArgumentError(f"rho must be positive, got {rho}")
    step_h = domain.grid_h if h is None else h
    tolerance = 0.5 * step_h if tolerance is None else tolerance
    points, normals = domain.boundary_samples(step_h)
    pen = exterior_penetration(domain, points, normals, rho, h)
    worst = int(np.argmax(pen))
    worst_pen = float(pen[worst])
    report = ExteriorSphereReport(
        rho=float(rho),
        passed=worst_pen <= tolerance,
        worst_penetration=worst_pen,
        worst_point=[float(v) for v in points[worst]],
        tolerance=float(tolerance),
        n_samples=len(points),
    )
    if not report.passed:
        report.notes.append(f"exterior ball penetrates the domain by {worst_pen:.6g}")
    return report

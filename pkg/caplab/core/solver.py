"""Test-solution solvers: embedded-grid Newton, principal eigenpair, radial shooting"""

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy import ndimage
from scipy.integrate import solve_ivp
from scipy.optimize import brentq
from scipy.sparse import coo_matrix, csr_matrix, diags
from scipy.sparse.linalg import splu, spsolve

from .errors import (ArgumentError, BracketError, ConvergenceError, GeometryError,
                     NewtonStagnationError, PositivityError)
from .models import Grid, GridFunction, RadialSolution, RegionMask, EigenPair

logger = logging.getLogger(__name__)

THETA_MIN = 1e-3
ARMIJO_C = 1e-4
DAMPING_FLOOR = 2.0 ** -10
DEFAULT_AMPLITUDES = (1.0, 2.0, 4.0, 8.0, 16.0)

# E, W, N, S
_OFFSETS = ((1, 0), (-1, 0), (0, 1), (0, -1))


@dataclass
class Discretization:
    """Interior nodes of a domain with Shortley-Weller arm fractions"""
    grid: Grid
    mask: np.ndarray
    sd: np.ndarray
    arms: np.ndarray
    index: np.ndarray

    @property
    def n(self) -> int:
        return int(self.mask.sum())

    @property
    def h(self) -> float:
        return self.grid.h

    def to_grid_function(self, vector: np.ndarray, label: str = "") -> GridFunction:
        values = np.zeros(self.grid.shape)
        values[self.mask] = vector
        return GridFunction(self.grid, values, self.mask, arms=self.arms, label=label)

    def restrict(self, u: GridFunction) -> np.ndarray:
        if u.grid != self.grid:
            raise GeometryError("grid function lives on a different grid")
        return u.values[self.mask].copy()


def _shift(arr: np.ndarray, di: int, dj: int, fill) -> np.ndarray:
    """out[i, j] = arr[i + di, j + dj]"""
    out = np.full(arr.shape, fill, dtype=arr.dtype)
    nx, ny = arr.shape
    src_i = slice(max(di, 0), nx + min(di, 0))
    dst_i = slice(max(-di, 0), nx + min(-di, 0))
    src_j = slice(max(dj, 0), ny + min(dj, 0))
    dst_j = slice(max(-dj, 0), ny + min(-dj, 0))
    out[dst_i, dst_j] = arr[src_i, src_j]
    return out


def discretize(domain, h: Optional[float] = None) -> Discretization:
    """Interior mask and arm fractions θ = sd_P / (sd_P - sd_Q) toward boundary crossings"""
    grid, sd = domain.grid_and_distance(h)
    mask = sd < 0
    if not mask.any():
        raise GeometryError("no interior nodes at this grid spacing", h=grid.h)
    arms = np.ones(grid.shape + (4,))
    for k, (di, dj) in enumerate(_OFFSETS):
        sd_q = _shift(sd, di, dj, np.inf)
        outside = mask & (sd_q >= 0)
        with np.errstate(divide="ignore", invalid="ignore"):
            theta = sd / (sd - sd_q)
        theta = np.where(np.isfinite(theta), theta, 1.0)
        arms[..., k] = np.where(outside, np.clip(theta, THETA_MIN, 1.0), 1.0)
    index = np.full(grid.shape, -1, dtype=np.int64)
    index[mask] = np.arange(int(mask.sum()))
    return Discretization(grid=grid, mask=mask, sd=sd, arms=arms, index=index)


def assemble_laplacian(disc: Discretization) -> csr_matrix:
    """Sparse −Δ_h with Shortley-Weller closure and homogeneous Dirichlet data"""
    h = disc.h
    rows, cols, vals = [], [], []
    diag = np.zeros(disc.n)
    for axis, (plus, minus) in enumerate(((0, 1), (2, 3))):
        a = disc.arms[..., minus][disc.mask] * h
        b = disc.arms[..., plus][disc.mask] * h
        diag += 2.0 / (a * b)
        for k, span, other in ((plus, b, a), (minus, a, b)):
            di, dj = _OFFSETS[k]
            neighbour = _shift(disc.index, di, dj, -1)[disc.mask]
            interior = (disc.arms[..., k][disc.mask] == 1.0) & (neighbour >= 0)
            rows.append(np.nonzero(interior)[0])
            cols.append(neighbour[interior])
            vals.append(-2.0 / (span * (a + b))[interior])
    rows.append(np.arange(disc.n))
    cols.append(np.arange(disc.n))
    vals.append(diag)
    matrix = coo_matrix((np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
                        shape=(disc.n, disc.n))
    return matrix.tocsr()


def principal_eigenpair(domain, h: Optional[float] = None, tol: float = 1e-10,
                        max_iter: int = 500) -> EigenPair:
    """Inverse power iteration with a sparse LU factorization of −Δ_h"""
    disc = discretize(domain, h)
    diameter_nodes = domain.diameter_scale / disc.h
    if diameter_nodes < 32:
        logger.warning("grid resolves the domain with only %.0f nodes per diameter", diameter_nodes)
    L = assemble_laplacian(disc)
    lu = splu(L.tocsc())
    x = np.ones(disc.n) / math.sqrt(disc.n)
    history: List[float] = []
    previous = None
    for iteration in range(1, max_iter + 1):
        y = lu.solve(x)
        x = y / np.linalg.norm(y)
        rayleigh = float(x @ (L @ x))
        history.append(rayleigh)
        if previous is not None and abs(rayleigh - previous) < tol * abs(rayleigh):
            break
        previous = rayleigh
    else:
        raise ConvergenceError("inverse power iteration did not converge",
                               iterations=max_iter, trace=history[-10:])
    if x.sum() < 0:
        x = -x
    phi = x / x.max()
    if np.any(phi <= 0):
        raise PositivityError("principal eigenvector is not positive at interior nodes",
                              nonpositive=int(np.count_nonzero(phi <= 0)),
                              min=float(phi.min()), iterations=iteration)
    return EigenPair(lambda1=history[-1], phi=disc.to_grid_function(phi, label="phi1"),
                     iterations=iteration, history=history)


@dataclass
class NewtonTrace:
    """Residual history of a Newton solve"""
    residuals: List[float] = field(default_factory=list)
    steps: List[float] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {"residuals": list(self.residuals), "steps": list(self.steps)}


def _newton(L: csr_matrix, f, u: np.ndarray, tol: float, max_iter: int,
            trace: NewtonTrace) -> np.ndarray:
    def residual(v):
        return L @ v - f(v)

    F = residual(u)
    norm = float(np.linalg.norm(F))
    trace.residuals.append(float(np.abs(F).max()))
    for _ in range(max_iter):
        if np.abs(F).max() < tol:
            return u
        J = (L - diags(f.derivative(u))).tocsc()
        du = spsolve(J, -F)
        if not np.all(np.isfinite(du)):
            raise NewtonStagnationError("singular Newton system", residual=trace.residuals[-1])
        t = 1.0
        while True:
            trial = u + t * du
            F_trial = residual(trial)
            norm_trial = float(np.linalg.norm(F_trial))
            if np.isfinite(norm_trial) and norm_trial <= (1.0 - ARMIJO_C * t) * norm:
                break
            t *= 0.5
            if t < DAMPING_FLOOR:
                raise NewtonStagnationError("Armijo backtracking hit the damping floor",
                                            residual=trace.residuals[-1], step=t)
        u, F, norm = trial, F_trial, norm_trial
        trace.residuals.append(float(np.abs(F).max()))
        trace.steps.append(t)
    if np.abs(F).max() < tol:
        return u
    raise NewtonStagnationError("Newton iteration did not reach the tolerance",
                                residual=trace.residuals[-1], iterations=max_iter)


def solve_semilinear(domain, f, h: Optional[float] = None, init: Optional[GridFunction] = None,
                     tol: float = 1e-8, max_iter: int = 50,
                     trace: Optional[NewtonTrace] = None) -> GridFunction:
    """Damped Newton for −Δ_h u = f(u), u = 0 on the boundary"""
    disc = discretize(domain, h)
    L = assemble_laplacian(disc)
    if init is None:
        u0 = np.ones(disc.n)
    else:
        u0 = disc.restrict(init)
    if np.any(u0 <= 0):
        raise ArgumentError("initial guess must be positive on interior nodes")
    trace = trace if trace is not None else NewtonTrace()
    u = _newton(L, f, u0, tol, max_iter, trace)
    if u.min() <= 0 or u.max() < 1e-8:
        raise PositivityError("Newton converged to a non-positive iterate; "
                              "try a different init amplitude",
                              min=float(u.min()), max=float(u.max()))
    return disc.to_grid_function(u, label=f"u[{f.label}]")


def solve_with_amplitude_ladder(domain, f, h: Optional[float] = None,
                                amplitudes: Sequence[float] = DEFAULT_AMPLITUDES,
                                tol: float = 1e-8, eigen: Optional[EigenPair] = None
                                ) -> Tuple[GridFunction, float]:
    """Try init = c·φ₁ for each c; return the first positive solution and its c"""
    eigen = eigen if eigen is not None else principal_eigenpair(domain, h)
    failures = []
    for c in amplitudes:
        init = GridFunction(eigen.phi.grid, c * eigen.phi.values, eigen.phi.mask)
        try:
            return solve_semilinear(domain, f, h, init, tol), float(c)
        except (PositivityError, NewtonStagnationError) as exc:
            logger.info("amplitude %.4g failed: %s", c, exc.message)
            failures.append({"amplitude": c, "error": exc.to_dict()})
    raise PositivityError("no positive solution found on the amplitude ladder",
                          attempts=failures)


def poisson_error_study(domain, h_values: Sequence[float], exact) -> Dict[str, Any]:
    """Max-norm errors of −Δu = 1 against an exact solution and successive ratios"""
    from ..nonlinearities import get_nonlinearity
    source = get_nonlinearity("power", p=0.0, N=2)
    errors = []
    for h in h_values:
        u = solve_semilinear(domain, source, h)
        pts = u.grid.points()[u.mask]
        errors.append(float(np.abs(u.values[u.mask] - exact(pts)).max()))
    ratios = [errors[i] / errors[i + 1] for i in range(len(errors) - 1)]
    return {"h": list(h_values), "errors": errors, "ratios": ratios}


def sample_radial(solution: RadialSolution, domain, h: Optional[float] = None,
                  center: Optional[Sequence[float]] = None) -> GridFunction:
    """Radial profile evaluated on a planar section of the domain"""
    mask = domain.interior(h)
    c = np.zeros(2) if center is None else np.asarray(center, dtype=float)
    field_2d = solution.as_field(c, dim=2)
    return GridFunction.from_callable(mask.grid, mask.inside, field_2d, label=solution.label)


# radial shooting

def _radial_rhs(N: int, f):
    def rhs(r, y):
        u, du = y
        return [du, -(N - 1) / r * du - float(f(max(u, 0.0)))]
    return rhs


def _zero_event(r, y):
    return y[0]


_zero_event.terminal = True
_zero_event.direction = -1


def _first_zero(N: int, f, r0: float, y0, r_end: float, tol: float) -> float:
    sol = solve_ivp(_radial_rhs(N, f), (r0, r_end), y0, method="DOP853",
                    rtol=tol, atol=tol * 1e-2, events=_zero_event)
    if sol.t_events[0].size:
        return float(sol.t_events[0][0])
    return math.inf


def _ball_start(N: int, f, alpha: float, r0: float):
    fa = float(f(alpha))
    return [alpha - fa * r0 ** 2 / (2 * N), -fa * r0 / N]


def _shoot_bracket(g, grid: np.ndarray) -> Tuple[float, float, float, float]:
    values = [g(x) for x in grid]
    for i in range(len(grid) - 1):
        a, b = values[i], values[i + 1]
        if (a < 0) != (b < 0) or a == 0:
            return grid[i], grid[i + 1], a, b
    raise BracketError("no positive solution bracketed",
                       bracket=[float(grid[0]), float(grid[-1])])


def _refine(g, lo: float, hi: float, g_lo: float, g_hi: float, xtol: float) -> float:
    # shrink until both ends are finite so brentq can take over
    for _ in range(200):
        if math.isfinite(g_lo) and math.isfinite(g_hi):
            break
        mid = 0.5 * (lo + hi)
        g_mid = g(mid)
        if (g_mid < 0) == (g_lo < 0):
            lo, g_lo = mid, g_mid
        else:
            hi, g_hi = mid, g_mid
    if g_lo == 0:
        return lo
    return brentq(g, lo, hi, xtol=xtol, rtol=4 * np.finfo(float).eps, maxiter=200)


def solve_radial(N: int, f, geometry: str = "ball", tol: float = 1e-10,
                 radius: float = 1.0, r_in: float = 1.0, r_out: float = 2.0,
                 bracket: Tuple[float, float] = (0.1, 1e3), n_scan: int = 120,
                 n_samples: int = 2001) -> RadialSolution:
    """Shooting for u'' + (N−1)/r u' + f(u) = 0 with Dirichlet ends.

    Ball: shoot on α = u(0), zero at `radius`. Annulus: shoot on β = u'(r_in)
    from u(r_in) = 0, first zero at r_out.
    """
    if N < 2:
        raise ArgumentError(f"N must be at least 2, got {N}")
    scan = np.geomspace(bracket[0], bracket[1], n_scan)
    rhs = _radial_rhs(N, f)

    if geometry == "ball":
        r0 = 1e-6 * radius

        def miss(alpha):
            return _first_zero(N, f, r0, _ball_start(N, f, alpha, r0), 1.5 * radius, tol) - radius

        lo, hi, g_lo, g_hi = _shoot_bracket(miss, scan)
        alpha = _refine(miss, lo, hi, g_lo, g_hi, xtol=1e-13 * hi)
        t_eval = np.linspace(r0, radius, n_samples - 1)
        sol = solve_ivp(rhs, (r0, radius), _ball_start(N, f, alpha, r0), method="DOP853",
                        rtol=tol, atol=tol * 1e-2, t_eval=t_eval)
        r = np.concatenate([[0.0], sol.t])
        u = np.concatenate([[alpha], sol.y[0]])
        du = np.concatenate([[0.0], sol.y[1]])
        lower, param = 0.0, alpha
        upper = radius
    elif geometry == "annulus":
        if not 0 < r_in < r_out:
            raise ArgumentError("annulus needs 0 < r_in < r_out", r_in=r_in, r_out=r_out)

        def miss(beta):
            return _first_zero(N, f, r_in, [0.0, beta], r_in + 1.5 * (r_out - r_in), tol) - r_out

        lo, hi, g_lo, g_hi = _shoot_bracket(miss, scan)
        beta = _refine(miss, lo, hi, g_lo, g_hi, xtol=1e-13 * hi)
        t_eval = np.linspace(r_in, r_out, n_samples)
        sol = solve_ivp(rhs, (r_in, r_out), [0.0, beta], method="DOP853",
                        rtol=tol, atol=tol * 1e-2, t_eval=t_eval)
        r, u, du = sol.t, sol.y[0], sol.y[1]
        lower, param, upper = r_in, beta, r_out
    else:
        raise ArgumentError(f"unknown radial geometry: {geometry}")

    if not sol.success:
        raise ConvergenceError(f"radial integration failed: {sol.message}")
    label = f"radial N={N} {geometry} f={f.label}"
    result = RadialSolution(N=N, r=r, u=u, du=du, geometry=geometry, r_in=lower,
                            r_out=upper, shooting_parameter=float(param), label=label)
    interior = u[1:-1]
    if interior.size and interior.min() <= 0:
        raise PositivityError("shooting produced a sign-changing profile",
                              min=float(interior.min()))
    return result


def bessel_j0_first_zero() -> float:
    """First positive zero of J₀ from its power series"""
    def j0(x):
        total, term = 0.0, 1.0
        for k in range(1, 80):
            total += term
            term *= -(x / 2.0) ** 2 / (k * k)
        return total

    return brentq(j0, 2.0, 3.0, xtol=1e-15)


# critical points

@dataclass
class CriticalPointReport:
    """Nodes where |∇u| ≤ θ·max|∇u|"""
    nodes: List[List[float]]
    clusters: List[List[float]]
    min_grad: float
    min_grad_location: List[float]
    max_grad: float
    theta: float

    @property
    def empty(self) -> bool:
        return not self.nodes

    def to_dict(self) -> Dict[str, Any]:
        return {
            "count": len(self.nodes),
            "clusters": self.clusters,
            "min_grad": self.min_grad,
            "min_grad_location": self.min_grad_location,
            "max_grad": self.max_grad,
            "theta": self.theta,
        }


def gradient_norm(u: Union[GridFunction, RadialSolution], region: RegionMask,
                  center: Optional[Sequence[float]] = None) -> Tuple[np.ndarray, float]:
    """|∇u| on the region's grid (NaN off the region) and the global max of |∇u|"""
    if isinstance(u, RadialSolution):
        c = np.zeros(2) if center is None else np.asarray(center, dtype=float)
        radius = np.linalg.norm(region.grid.points() - c, axis=-1)
        inside = (radius >= u.r_in) & (radius <= u.r_out)
        grad = np.where(inside, np.abs(u.derivative(radius)), np.nan)
        return np.where(region.inside, grad, np.nan), float(np.max(np.abs(u.du)))
    if u.grid != region.grid:
        raise GeometryError("region and grid function live on different grids")
    grad = u.grad_norm()
    return np.where(region.inside, grad, np.nan), float(np.nanmax(grad))


def critical_points(u: Union[GridFunction, RadialSolution], region: RegionMask,
                    theta: float = 1e-3,
                    center: Optional[Sequence[float]] = None) -> CriticalPointReport:
    """Nodes of `region` with |∇_h u| ≤ θ·max|∇_h u|, grouped into clusters"""
    if region.is_empty:
        raise GeometryError("critical point search over an empty region")
    grad, grad_max = gradient_norm(u, region, center)
    sel = region.inside & np.isfinite(grad)
    if not sel.any():
        raise GeometryError("gradient undefined on the whole region")
    points = region.grid.points()
    flagged = sel & (grad <= theta * grad_max)
    masked = np.where(sel, grad, np.inf)
    i, j = np.unravel_index(int(np.argmin(masked)), masked.shape)
    labels, count = ndimage.label(flagged, structure=np.ones((3, 3)))
    clusters = []
    for k in range(1, count + 1):
        clusters.append([float(v) for v in points[labels == k].mean(axis=0)])
    return CriticalPointReport(
        nodes=[[float(a), float(b)] for a, b in points[flagged]],
        clusters=clusters,
        min_grad=float(masked[i, j]),
        min_grad_location=[float(v) for v in points[i, j]],
        max_grad=grad_max,
        theta=theta,
    )

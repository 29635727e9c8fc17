"""Local convexity of an inverted boundary near its tangent point.

The boundary near x₀ = e_N is the graph y_N = ψ(y′) with ψ(0′) = 1 and
∇ψ(0′) = 0′. After inversion it becomes y_N = φ(y′), found from the implicit
equation F(y′, y_N) = 0, and the cap graph G(y′) = g/(|y′|² + g²) with
g(y′) = ψ(y′/(|y′|² + φ²)) has Hessian −(2I + A) at 0′, A = D²ψ(0′).
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np

from .errors import ArgumentError, CertificateError, ConvergenceError, DomainError
from .geometry import direction_samples

logger = logging.getLogger(__name__)

PHI_TOL = 1e-13
NEWTON_DERIVATIVE_FLOOR = 1e-3
HESSIAN_TOL = 1e-4
DEFAULT_EPSILON = 1e-5


class BoundaryGraph:
    """ψ: B_a(0′) ⊂ ℝ^{N−1} → ℝ with ψ(0′) = 1 and ∇ψ(0′) = 0′"""

    def __init__(self, func: Callable[[np.ndarray], np.ndarray], dim: int = 1,
                 radius: float = 1.0, name: str = "custom",
                 params: Optional[Dict[str, Any]] = None,
                 d1: Optional[Callable] = None, d2: Optional[Callable] = None):
        if dim < 1:
            raise ArgumentError(f"graph dimension must be positive, got {dim}")
        self.func = func
        self.dim = int(dim)
        self.radius = float(radius)
        self.name = name
        self.params = dict(params or {})
        self.d1 = d1
        self.d2 = d2
        self._validate()

    def __call__(self, y) -> np.ndarray:
        y = np.asarray(y, dtype=float)
        if y.ndim == 0:
            y = y[None]
        if y.shape[-1] != self.dim:
            raise ArgumentError(f"ψ expects {self.dim} coordinates, got {y.shape[-1]}")
        if np.any(np.linalg.norm(y, axis=-1) > self.radius):
            raise DomainError("argument of ψ outside its evaluation domain",
                              radius=self.radius, graph=self.name)
        return np.asarray(self.func(y), dtype=float)

    def _validate(self):
        zero = np.zeros(self.dim)
        value = float(self(zero))
        if abs(value - 1.0) > 1e-12:
            raise ArgumentError("ψ(0′) must equal 1", value=value, graph=self.name)
        step = 1e-5 * self.radius
        grad = [(float(self(zero + step * e)) - float(self(zero - step * e))) / (2 * step)
                for e in np.eye(self.dim)]
        if np.max(np.abs(grad)) > 1e-8:
            raise ArgumentError("∇ψ(0′) must vanish", gradient=grad, graph=self.name)

    def to_dict(self) -> Dict[str, Any]:
        return {"name": self.name, "dim": self.dim, "radius": self.radius, "params": self.params}


def _x(y: np.ndarray) -> np.ndarray:
    return y[..., 0]


def _gamma2(y):
    x = _x(y)
    safe = np.where(x == 0, 1.0, x)
    return np.where(x == 0, 1.0, 1.0 + safe ** 5 * np.sin(1.0 / safe))


def gamma2_d1(x):
    """ψ′ for ψ = 1 + x⁵ sin(1/x), limit 0 at x = 0"""
    x = np.asarray(x, dtype=float)
    s = np.where(x == 0, 1.0, x)
    return np.where(x == 0, 0.0, 5 * s ** 4 * np.sin(1 / s) - s ** 3 * np.cos(1 / s))


def gamma2_d2(x):
    """ψ″ = 20x³ sin(1/x) − 8x² cos(1/x) − x sin(1/x), limit 0 at x = 0"""
    x = np.asarray(x, dtype=float)
    s = np.where(x == 0, 1.0, x)
    value = 20 * s ** 3 * np.sin(1 / s) - 8 * s ** 2 * np.cos(1 / s) - s * np.sin(1 / s)
    return np.where(x == 0, 0.0, value)


def _quadratic(A: np.ndarray):
    def func(y):
        return 1.0 + 0.5 * np.einsum("...i,ij,...j->...", y, A, y)
    return func


def make_boundary_graph(name: str, dim: int = 1, **params) -> BoundaryGraph:
    """Preset graphs: constant, quadratic (A or c), quartic, gamma1, gamma2"""
    if name == "constant":
        return BoundaryGraph(lambda y: np.ones(y.shape[:-1]), dim, params.get("radius", 1.0),
                             name, params)
    if name == "quadratic":
        if "A" in params:
            A = np.asarray(params["A"], dtype=float)
            if A.shape != (dim, dim):
                raise ArgumentError(f"A must be {dim}x{dim}", shape=list(A.shape))
            A = 0.5 * (A + A.T)
            params = {"A": A.tolist()}
        else:
            c = float(params.get("c", 0.5))
            A = c * np.eye(dim)
            params = {"c": c}
        return BoundaryGraph(_quadratic(A), dim, 1.0, name, params)
    if name == "quartic":
        return BoundaryGraph(lambda y: 1.0 + _x(y) ** 4, dim, 1.0, name, {})
    if name == "gamma2":
        return BoundaryGraph(_gamma2, 1, 0.5, name, {}, d1=gamma2_d1, d2=gamma2_d2)
    if name == "gamma1":
        return BoundaryGraph(lambda y: 0.5 * _x(y) ** 3 + 1.0, 1, 1.0, name, {},
                             d1=lambda x: 1.5 * np.asarray(x) ** 2,
                             d2=lambda x: 3.0 * np.asarray(x))
    raise ArgumentError(f"unknown boundary graph preset: {name}",
                        available=["constant", "quadratic", "quartic", "gamma1", "gamma2"])


def implicit_F(psi: BoundaryGraph) -> Callable[[np.ndarray, float], float]:
    """F(y′, y_N) = y_N[|y′|² + ψ(w)²] − ψ(w), w = y′/(|y′|² + y_N²)"""

    def F(y_prime, y_n: float) -> float:
        yp = np.asarray(y_prime, dtype=float).reshape(psi.dim)
        r2 = float(yp @ yp)
        denom = r2 + y_n * y_n
        if denom == 0:
            raise DomainError("F is undefined at the origin")
        value = float(psi(yp / denom))
        return y_n * (r2 + value * value) - value

    return F


def solve_phi(psi: BoundaryGraph, y_prime, tol: float = PHI_TOL, max_iter: int = 50) -> float:
    """Newton in y_N from 1 for F(y′, y_N) = 0, then one polishing step"""
    F = implicit_F(psi)
    yp = np.asarray(y_prime, dtype=float).reshape(psi.dim)
    y_n = 1.0
    value = F(yp, y_n)
    polished = False
    for _ in range(max_iter):
        if abs(value) < tol:
            if polished:
                return y_n
            polished = True
        step = 1e-7 * max(1.0, abs(y_n))
        slope = (F(yp, y_n + step) - F(yp, y_n - step)) / (2 * step)
        if abs(slope) < NEWTON_DERIVATIVE_FLOOR:
            raise DomainError("implicit function neighborhood exceeded",
                              y_prime=yp.tolist(), derivative=slope)
        update = value / slope
        y_n -= update
        value = F(yp, y_n)
        if polished and abs(value) < tol:
            return y_n
    if abs(value) < tol:
        return y_n
    raise ConvergenceError("implicit solve for φ did not converge",
                           y_prime=yp.tolist(), residual=value)


def cap_graph(psi: BoundaryGraph) -> Callable[[np.ndarray], float]:
    """G(y′) = g/(|y′|² + g²), g(y′) = ψ(y′/(|y′|² + φ(y′)²))"""

    def G(y_prime) -> float:
        yp = np.asarray(y_prime, dtype=float).reshape(psi.dim)
        r2 = float(yp @ yp)
        phi = solve_phi(psi, yp)
        g = float(psi(yp / (r2 + phi * phi)))
        return g / (r2 + g * g)

    return G


def richardson_hessian(func: Callable[[np.ndarray], float], x0: np.ndarray,
                       step: float) -> np.ndarray:
    """Central-difference Hessian at steps s and s/2 combined as (4·D(s/2) − D(s))/3"""
    x0 = np.asarray(x0, dtype=float)
    d = x0.size
    eye = np.eye(d)

    def central(s: float) -> np.ndarray:
        H = np.zeros((d, d))
        f0 = func(x0)
        for i in range(d):
            H[i, i] = (func(x0 + s * eye[i]) - 2 * f0 + func(x0 - s * eye[i])) / s ** 2
            for j in range(i + 1, d):
                pp = func(x0 + s * (eye[i] + eye[j]))
                pm = func(x0 + s * (eye[i] - eye[j]))
                mp = func(x0 - s * (eye[i] - eye[j]))
                mm = func(x0 - s * (eye[i] + eye[j]))
                H[i, j] = H[j, i] = (pp - pm - mp + mm) / (4 * s ** 2)
        return H

    return (4 * central(0.5 * step) - central(step)) / 3


@dataclass
class CapCertificate:
    """Hessian identity at 0′ plus the cap height over ∂B_{δ′}(0′)"""
    delta_prime: float
    A: np.ndarray
    hess_G: np.ndarray
    identity_error: float
    psd: bool
    negative_definite: bool
    gamma: Optional[float] = None
    height: Optional[float] = None
    tolerance: float = HESSIAN_TOL
    notes: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        height_ok = self.height is None or self.height > 0
        return (self.psd and self.negative_definite and height_ok
                and self.identity_error <= self.tolerance)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "A": self.A.tolist(),
            "hessG": self.hess_G.tolist(),
            "identity_error": self.identity_error,
            "delta_prime": self.delta_prime,
            "gamma": self.gamma,
            "height": self.height,
            "psd": self.psd,
            "negative_definite": self.negative_definite,
            "pass": self.passed,
            "notes": list(self.notes),
        }


def hessian_certificate(psi: BoundaryGraph, fd_step: Optional[float] = None,
                        delta_prime: float = 0.1, tolerance: float = HESSIAN_TOL,
                        psd_tol: float = 1e-8) -> CapCertificate:
    """A = D²ψ(0′) and D²G(0′), checked against D²G(0′) = −(2I + A)"""
    step = 1e-3 * delta_prime if fd_step is None else fd_step
    zero = np.zeros(psi.dim)
    A = richardson_hessian(lambda y: float(psi(y)), zero, step)
    hess_G = richardson_hessian(cap_graph(psi), zero, step)
    expected = -(2 * np.eye(psi.dim) + A)
    error = float(np.max(np.abs(hess_G - expected)))
    psd = bool(np.linalg.eigvalsh(A + np.eye(psi.dim)).min() >= -psd_tol)
    top = float(np.linalg.eigvalsh(expected).max())
    cert = CapCertificate(delta_prime=delta_prime, A=A, hess_G=hess_G, identity_error=error,
                          psd=psd, negative_definite=top < 0, tolerance=tolerance)
    if not psd:
        cert.notes.append("A + I is not positive semidefinite: no exterior tangent ball")
    if top >= 0:
        raise CertificateError("inverted neighborhood not convex",
                               certificate=cert.to_dict(), eigenvalue=top)
    if error > tolerance:
        logger.warning("Hessian identity off by %.3g for %s", error, psi.name)
        cert.notes.append(f"Hessian identity error {error:.3g} exceeds tolerance {tolerance:.3g}")
    return cert


def _sphere_samples(dim: int, radius: float, n_samples: int) -> np.ndarray:
    if dim == 1:
        return np.array([[-radius], [radius]])
    return radius * direction_samples(n_samples, dim)


def cap_height(psi: BoundaryGraph, delta_prime: float,
               n_samples: int = 64) -> Tuple[float, float]:
    """γ = max G over ∂B_{δ′}(0′) and the cap height (1 − γ)/2"""
    if delta_prime <= 0:
        raise ArgumentError(f"delta_prime must be positive, got {delta_prime}")
    G = cap_graph(psi)
    gamma = max(G(p) for p in _sphere_samples(psi.dim, delta_prime, n_samples))
    if gamma >= 1:
        raise CertificateError("cap height is not positive", gamma=gamma,
                               delta_prime=delta_prime)
    return gamma, (1 - gamma) / 2


def find_convexity_radius(psi: BoundaryGraph, delta_max: float = 0.25, n_samples: int = 8,
                          min_delta: float = 1e-4) -> float:
    """Halve δ′ until D²G is negative semidefinite at sampled points of B_{δ′}(0′)"""
    G = cap_graph(psi)
    delta = min(delta_max, 0.5 * psi.radius)
    while delta >= min_delta:
        points = [np.zeros(psi.dim)]
        for fraction in (0.5, 1.0):
            points.extend(_sphere_samples(psi.dim, fraction * delta, n_samples))
        try:
            concave = all(
                np.linalg.eigvalsh(richardson_hessian(G, p, 1e-3 * delta)).max() <= 1e-8
                for p in points)
        except DomainError:
            concave = False
        if concave:
            return delta
        delta *= 0.5
    raise CertificateError("no convexity radius found", min_delta=min_delta, graph=psi.name)


def certify(psi: BoundaryGraph, delta_prime: Optional[float] = None,
            n_samples: int = 64) -> CapCertificate:
    """Full certificate: Hessian identity, PSD check and cap height"""
    if delta_prime is None:
        delta_prime = find_convexity_radius(psi)
    cert = hessian_certificate(psi, delta_prime=delta_prime)
    try:
        cert.gamma, cert.height = cap_height(psi, delta_prime, n_samples)
    except CertificateError as exc:
        cert.gamma = exc.details.get("gamma")
        cert.height = None if cert.gamma is None else (1 - cert.gamma) / 2
        cert.notes.append(exc.message)
    return cert


# circle tangent to the graph at (0, 1)
def _circle(x):
    return np.sqrt(1 - np.asarray(x, dtype=float) ** 2)


def _circle_d1(x):
    x = np.asarray(x, dtype=float)
    return -x / np.sqrt(1 - x ** 2)


def _circle_d2(x):
    x = np.asarray(x, dtype=float)
    return -1.0 / (1 - x ** 2) ** 1.5


def limit_second_derivative_gap(step: float = 1e-3, levels: int = 3) -> float:
    """ψ″(0) − g″(0) for ψ = 1 + x⁵ sin(1/x), g = √(1 − x²), by Richardson-extrapolated
    central differences"""
    psi = make_boundary_graph("gamma2")

    def gap(x):
        return float(psi(np.array([x]))) - float(_circle(x))

    table = []
    s = step
    for _ in range(levels):
        table.append((gap(s) - 2 * gap(0.0) + gap(-s)) / s ** 2)
        s *= 0.5
    for k in range(1, levels):
        factor = 4 ** k
        table = [(factor * table[i + 1] - table[i]) / (factor - 1) for i in range(len(table) - 1)]
    return table[0]


def _punctured(interval: Tuple[float, float], n_samples: int, epsilon: float) -> np.ndarray:
    x = np.linspace(interval[0], interval[1], n_samples)
    return x[(x == 0) | (np.abs(x) >= epsilon)]


def _inverted(x: np.ndarray, values: np.ndarray):
    r2 = x ** 2 + values ** 2
    return x / r2, values / r2, r2


FIGURE_DATASETS = {
    "d": "psi' - g' of the graph against the unit circle",
    "e": "psi'' - g'' of the graph against the unit circle",
    "f": "inverted graph minus inverted line y=1, second coordinate",
    "g": "zoom of f",
    "h": "inverted graph minus inverted unit circle, second coordinate",
    "graph": "graph y = psi(x)",
    "inversion": "inverted graph, second coordinate against first",
}


def figure_curves(curve: str = "gamma2", interval: Optional[Tuple[float, float]] = None,
                  n_samples: int = 4001, epsilon: float = DEFAULT_EPSILON,
                  include_zoom: bool = False) -> Dict[str, Tuple[np.ndarray, np.ndarray]]:
    """Datasets {name: (x, value)} for the appendix curves.

    Inverted curves are compared with the closed-form images of the line y = 1
    (circle through 0 and e₂ of radius 1/2) and of the unit circle (itself),
    at equal first coordinate. Differences use the level-set identity
    w₂ − w₂ᶜ = F(w)/(w₂ + w₂ᶜ − c) to avoid cancellation.
    """
    if epsilon < 0:
        raise ArgumentError(f"epsilon must be nonnegative, got {epsilon}")
    if curve == "gamma1":
        psi = make_boundary_graph("gamma1")
        x = np.linspace(*(interval or (-0.5, 0.5)), n_samples)
        y = psi(x[:, None])
        w1, w2, _ = _inverted(x, y)
        return {"graph": (x, y), "inversion": (w1, w2)}
    if curve != "gamma2":
        raise ArgumentError(f"unknown appendix curve: {curve}", available=["gamma1", "gamma2"])

    wide = interval or (-0.01, 0.01)
    datasets: Dict[str, Tuple[np.ndarray, np.ndarray]] = {}
    x = _punctured(wide, n_samples, epsilon)
    datasets["d"] = (x, gamma2_d1(x) - _circle_d1(x))
    x = _punctured((-5e-4, 5e-4), n_samples, epsilon)
    datasets["e"] = (x, gamma2_d2(x) - _circle_d2(x))

    def against_line(span):
        x = _punctured(span, n_samples, epsilon)
        s = np.where(x == 0, 1.0, x)
        e = np.where(x == 0, 0.0, s ** 5 * np.sin(1 / s))
        w1, w2, r2 = _inverted(x, 1.0 + e)
        reference = 0.5 + np.sqrt(0.25 - w1 ** 2)
        return w1, (-e / r2) / (w2 + reference - 1.0)

    datasets["f"] = against_line(wide)
    if include_zoom:
        datasets["g"] = against_line((-2.5e-3, 2.5e-3))

    x = _punctured(wide, n_samples, epsilon)
    s = np.where(x == 0, 1.0, x)
    e = np.where(x == 0, 0.0, s ** 5 * np.sin(1 / s))
    w1, w2, r2 = _inverted(x, 1.0 + e)
    reference = np.sqrt(1.0 - w1 ** 2)
    level = -(x ** 2 + 2 * e + e ** 2) / r2
    datasets["h"] = (w1, level / (w2 + reference))
    return datasets


def sign_changes(values: np.ndarray) -> int:
    sign = np.sign(np.asarray(values, dtype=float))
    sign = sign[sign != 0]
    return int(np.count_nonzero(sign[1:] != sign[:-1]))


def derivative_sign_changes(x: np.ndarray, values: np.ndarray) -> int:
    """Sign changes of the forward-difference derivative"""
    return sign_changes(np.diff(values) / np.diff(x))


def random_quadratic_graphs(count: int, dim: int = 2, seed: int = 0) -> List[BoundaryGraph]:
    """Quadratic ψ with A + I positive semidefinite"""
    rng = np.random.default_rng(seed)
    graphs = []
    for _ in range(count):
        B = rng.normal(size=(dim, dim))
        A = B @ B.T / dim - np.eye(dim) * rng.uniform(0.0, 0.9)
        graphs.append(make_boundary_graph("quadratic", dim=dim, A=A))
    return graphs


def gap_at_zero() -> Dict[str, Any]:
    gap = limit_second_derivative_gap()
    return {"psi2_minus_g2_at_0": gap, "expected": 1.0, "error": abs(gap - 1.0),
            "pass": math.isclose(gap, 1.0, abs_tol=1e-6)}

"""Experiment runner: builds the pieces a RunConfig names and writes the artifacts"""

import logging
import math
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import numpy as np

from .. import __version__
from .config import RunConfig
from .convexity import (certify, derivative_sign_changes, figure_curves, gap_at_zero,
                        make_boundary_graph, random_quadratic_graphs, sign_changes)
from .errors import CheckError, ConfigError
from .geometry import maximal_caps, optimal_cap_set
from .kelvin import build_frame, check_kelvin_pde, kelvin_transform
from .models import GridFunction, RadialSolution
from .solver import (bessel_j0_first_zero, principal_eigenpair, solve_radial,
                     solve_with_amplitude_ladder)
from .verify import (CheckReport, VerificationRun, boundedness_experiment, check_caps,
                     check_g_reflection, check_global_bound, check_kelvin_no_critical,
                     check_max_location, default_family, transformed_cap)

logger = logging.getLogger(__name__)

SUBCOMMANDS = ("caps", "eigen", "solve", "kelvin", "verify", "appendix", "nonlin")


@dataclass
class ExperimentResult:
    """Report payload of one subcommand and the files written for it"""
    subcommand: str
    passed: bool
    report: Dict[str, Any]
    artifacts: List[str] = field(default_factory=list)

    def summary(self) -> Dict[str, Any]:
        return {"subcommand": self.subcommand, "pass": self.passed,
                "artifacts": list(self.artifacts)}


class Experiment:
    """Lazily builds domain, nonlinearity and solution for one run"""

    def __init__(self, config: RunConfig, output_dir: Optional[Union[str, Path]] = None,
                 report_format: str = "json"):
        self.config = config
        self.output_dir = Path(output_dir or config.output_dir)
        self.report_format = report_format
        self.threads = config.resolved_threads()
        self._domain = None
        self._f = None
        self._solution: Optional[Union[GridFunction, RadialSolution]] = None
        self._artifacts: List[str] = []

    # -- inputs -------------------------------------------------------------

    @property
    def domain(self):
        if self._domain is None:
            from ..domains import domain_from_spec
            self._domain = domain_from_spec(asdict(self.config.domain))
        return self._domain

    @property
    def f(self):
        if self._f is None:
            from ..nonlinearities import nonlinearity_from_spec
            spec = dict(self.config.nonlinearity)
            spec.setdefault("N", self.config.solver.N)
            self._f = nonlinearity_from_spec(spec)
        return self._f

    @property
    def h(self) -> float:
        return self.config.solver.h or self.domain.grid_h

    @property
    def N(self) -> int:
        return self.config.solver.N

    @property
    def kelvin_N(self) -> int:
        """Nominal dimension of the Kelvin weight and the bound constant"""
        return self.config.kelvin.N

    @property
    def center(self) -> np.ndarray:
        params = self.domain.params()
        return np.asarray(params.get("center", self.config.solver.center), dtype=float)

    def base_point(self) -> np.ndarray:
        """Configured x₀, else the boundary sample farthest along e₁"""
        if self.config.kelvin.x0 is not None:
            return np.asarray(self.config.kelvin.x0, dtype=float)
        points, _ = self.domain.boundary_samples(self.h)
        return points[int(np.argmax(points[:, 0]))]

    def solution(self) -> Union[GridFunction, RadialSolution]:
        if self._solution is not None:
            return self._solution
        cfg = self.config.solver
        if cfg.mode == "radial":
            params = self.domain.params()
            if cfg.geometry == "annulus":
                if "r_in" not in params:
                    raise ConfigError("radial annulus mode needs the annulus preset")
                self._solution = solve_radial(cfg.N, self.f, "annulus", cfg.radial_tol,
                                              r_in=params["r_in"], r_out=params["r_out"])
            else:
                radius = params.get("radius", 1.0)
                self._solution = solve_radial(cfg.N, self.f, "ball", cfg.radial_tol, radius=radius)
        else:
            u, amplitude = solve_with_amplitude_ladder(self.domain, self.f, self.h,
                                                       cfg.init_amplitudes, cfg.tol)
            logger.info("grid solution found from amplitude %.4g", amplitude)
            self._solution = u
        return self._solution

    # -- output -------------------------------------------------------------

    def _meta(self, subcommand: str) -> Dict[str, Any]:
        return {"subcommand": subcommand, "version": __version__,
                "generated_at": datetime.now(timezone.utc).isoformat()}

    def write(self, name: str, data: Dict[str, Any], fmt: str = "json") -> Path:
        from ..exporters import get_exporter
        exporter = get_exporter(fmt)
        path = self.output_dir / f"{name}{exporter.suffix}"
        exporter.export(data, path)
        self._artifacts.append(str(path))
        return path

    def write_curve(self, name: str, x, values, header=("x", "value")) -> Path:
        rows = [[float(a), float(b)] for a, b in zip(x, values)]
        return self.write(name, {"columns": list(header), "rows": rows}, "csv")

    def _finish(self, subcommand: str, passed: bool, report: Dict[str, Any]) -> ExperimentResult:
        report = dict(report)
        report["meta"] = self._meta(subcommand)
        report["pass"] = bool(passed)
        self.write(subcommand, report)
        self.write("effective_config", self.config.to_dict())
        result = ExperimentResult(subcommand, bool(passed), report, list(self._artifacts))
        self._artifacts = []
        return result

    def run(self, subcommand: str) -> ExperimentResult:
        if subcommand not in SUBCOMMANDS:
            raise ConfigError(f"unknown subcommand: {subcommand}", available=list(SUBCOMMANDS))
        return getattr(self, f"run_{subcommand}")()

    # -- subcommands --------------------------------------------------------

    def run_caps(self) -> ExperimentResult:
        cfg = self.config.caps
        caps = maximal_caps(self.domain, cfg.n_directions, cfg.tol, self.h, self.threads)
        omega_star = optimal_cap_set(self.domain, cfg.n_directions, cfg.tol, self.h, caps=caps)
        interior = self.domain.interior(self.h)
        complement = interior.difference(omega_star)
        self.write("omega_star", {"grid": omega_star}, "mask")
        self.write("complement", {"grid": complement}, "mask")
        report = {
            "domain": self.domain.to_dict(),
            "h": self.h,
            "caps": [dict(cap.to_dict(), index=i) for i, cap in enumerate(caps)],
            "omega_star": {"nodes": omega_star.count, "flags": list(omega_star.flags)},
            "complement": {"nodes": complement.count},
        }
        return self._finish("caps", True, report)

    def run_eigen(self) -> ExperimentResult:
        pair = principal_eigenpair(self.domain, self.h)
        self.write("phi1", {"grid": pair.phi}, "mask")
        report = {"domain": self.domain.to_dict(), "eigen": pair.to_dict()}
        reference = self._reference_eigenvalue()
        if reference is not None:
            report["reference"] = {"lambda1": reference,
                                   "relative_error": abs(pair.lambda1 - reference) / reference}
        return self._finish("eigen", True, report)

    def _reference_eigenvalue(self) -> Optional[float]:
        params = self.domain.params()
        preset = self.domain.preset.value
        if preset == "disk":
            return (bessel_j0_first_zero() / params["radius"]) ** 2
        if preset == "square":
            return 2 * math.pi ** 2 / params["side"] ** 2
        return None

    def run_solve(self) -> ExperimentResult:
        u = self.solution()
        report: Dict[str, Any] = {"domain": self.domain.to_dict(), "nonlinearity": self.f.to_dict()}
        if isinstance(u, RadialSolution):
            self.write("radial", {"columns": ["r", "u", "du"], "rows": u.to_rows()}, "csv")
            report["solution"] = u.to_dict()
        else:
            self.write("u", {"grid": u}, "mask")
            report["solution"] = {"max": u.max(), "argmax": u.argmax().tolist(),
                                  "h": u.h, "interior_nodes": int(u.mask.sum())}
        return self._finish("solve", True, report)

    def run_kelvin(self) -> ExperimentResult:
        cfg = self.config.kelvin
        frame = build_frame(self.domain, self.base_point(), h=self.h)
        u = self.solution()
        source = u.as_field(self.center, dim=cfg.N) if isinstance(u, RadialSolution) else u
        transformed = kelvin_transform(source, frame, cfg.N, self.domain, cfg.image_h)
        self.write("v", {"grid": transformed.v}, "mask")
        report: Dict[str, Any] = {"frame": frame.to_dict(), "transformed": transformed.to_dict()}
        passed = True
        if isinstance(u, RadialSolution):
            residual = check_kelvin_pde(source, self.f, frame, cfg.N, self.domain, cfg.image_h,
                                        threshold=cfg.threshold)
            report["pde_residual"] = residual.to_dict()
            passed = residual.passed
        else:
            report["pde_residual"] = None
            report["notes"] = ["PDE residual needs an N-dimensional field; use solver.mode=radial"]
        return self._finish("kelvin", passed, report)

    def run_verify(self) -> ExperimentResult:
        checks = self.config.checks
        run = VerificationRun()
        u = self.solution()
        center = self.center if isinstance(u, RadialSolution) else None
        caps = None
        for name in checks.enabled:
            try:
                if name == "cap_monotonicity":
                    caps = caps or maximal_caps(self.domain, self.config.caps.n_directions,
                                                self.config.caps.tol, self.h, self.threads)
                    run.extend(check_caps(u, self.domain, caps, checks.cap_monotonicity.tol,
                                          checks.cap_monotonicity.n_lambda, self.h, center,
                                          self.threads))
                elif name == "max_location":
                    caps = caps or maximal_caps(self.domain, self.config.caps.n_directions,
                                                self.config.caps.tol, self.h, self.threads)
                    omega_star = optimal_cap_set(self.domain, self.config.caps.n_directions,
                                                 h=self.h, caps=caps)
                    run.add(check_max_location(u, self.domain, omega_star,
                                               checks.max_location.tol, self.h, center))
                elif name == "global_bound":
                    frame = build_frame(self.domain, self.base_point(), h=self.h)
                    run.add(check_global_bound(u, self.domain, checks.global_bound.delta,
                                               checks.global_bound.C, self.kelvin_N, frame, self.h,
                                               center))
                elif name == "kelvin_no_critical":
                    run.add(check_kelvin_no_critical(u, self.domain, self.base_point(),
                                                     self.kelvin_N, h=self.h,
                                                     image_h=self.config.kelvin.image_h,
                                                     theta=checks.kelvin_no_critical.theta,
                                                     center=center))
                elif name == "g_reflection":
                    run.add(self._g_reflection(u))
                elif name == "boundedness":
                    run.add(_boundedness_report(self._boundedness().to_dict()))
            except CheckError as exc:
                logger.warning("check %s could not run: %s", name, exc.message)
                run.errors.append(dict(exc.to_dict(), check=name))

        from ..exporters import table_from_records
        table = table_from_records(run.to_rows())
        table["title"] = "checks"
        table["summary"] = {"all_passed": run.all_passed, "worst_margin": run.worst_margin,
                            "errors": len(run.errors)}
        fmt = {"excel": "xlsx"}.get(self.report_format, self.report_format)
        if fmt != "json":
            self.write("checks", table, fmt)
        report = {"domain": self.domain.to_dict(), "nonlinearity": self.f.to_dict(),
                  "verification": run.to_dict()}
        return self._finish("verify", run.all_passed, report)

    def _g_reflection(self, u):
        frame = build_frame(self.domain, self.base_point(), h=self.h)
        source = u.as_field(self.center, dim=self.kelvin_N) if isinstance(u, RadialSolution) else u
        transformed = kelvin_transform(source, frame, self.kelvin_N, self.domain,
                                       self.config.kelvin.image_h)
        cap, _ = transformed_cap(transformed, self.config.caps.tol)
        cfg = self.config.checks.g_reflection
        return check_g_reflection(self.f, frame, cap, self.kelvin_N, transformed.domain,
                                  cfg.n_samples, cfg.s_max, self.config.seed)

    def _boundedness(self):
        from ..nonlinearities import nonlinearity_from_spec
        cfg = self.config.checks.boundedness
        if cfg.family:
            family = [nonlinearity_from_spec(dict({"N": self.N}, **spec)) for spec in cfg.family]
        else:
            family = default_family(self.N)
        domain = None if self.config.solver.mode == "radial" else self.domain
        radius = self.domain.params().get("radius", 1.0)
        return boundedness_experiment(family, domain, self.N, cfg.delta, self.h,
                                      self.config.solver.init_amplitudes, radius)

    def run_appendix(self) -> ExperimentResult:
        cfg = self.config.appendix
        certificates = {}
        for name in cfg.graphs:
            dim = 2 if name == "quadratic" else 1
            certificates[name] = certify(make_boundary_graph(name, dim=dim), cfg.delta_prime)
        randoms = random_quadratic_graphs(cfg.random_quadratics, seed=self.config.seed)
        for k, graph in enumerate(randoms):
            certificates[f"random_quadratic_{k:02d}"] = certify(graph, cfg.delta_prime)
        for name, cert in certificates.items():
            self.write(f"certificate_{name}", cert.to_dict())

        curves = figure_curves(cfg.curve, n_samples=cfg.n_samples, epsilon=cfg.epsilon,
                               include_zoom=cfg.include_zoom)
        for name, (x, values) in curves.items():
            self.write_curve(f"{cfg.curve}_{name}", x, values)

        report: Dict[str, Any] = {
            "certificates": {k: c.to_dict() for k, c in certificates.items()},
            "curve": cfg.curve,
            "datasets": sorted(curves),
        }
        passed = all(c.passed for c in certificates.values())
        if cfg.curve == "gamma2":
            gap = gap_at_zero()
            x_f, f_values = curves["f"]
            report["gap_at_zero"] = gap
            report["facts"] = {
                "e_strictly_positive": bool(np.all(curves["e"][1] > 0)),
                "f_derivative_sign_changes": derivative_sign_changes(x_f, f_values),
                "h_sign_changes": sign_changes(curves["h"][1]),
                "epsilon": cfg.epsilon,
            }
            passed = passed and gap["pass"] and report["facts"]["e_strictly_positive"]
        return self._finish("appendix", passed, report)

    def run_nonlin(self) -> ExperimentResult:
        from ..nonlinearities import check_hypotheses
        cfg = self.config.nonlin
        lambda1 = cfg.lambda1
        if lambda1 is None:
            lambda1 = principal_eigenpair(self.domain, self.h).lambda1
        report_obj = check_hypotheses(self.f, lambda1, cfg.s_max, cfg.n_samples, cfg.h2_threshold)
        report: Dict[str, Any] = {"nonlinearity": self.f.to_dict(),
                                  "hypotheses": report_obj.to_dict()}
        if hasattr(self.f, "breakpoints"):
            report["breakpoints"] = self.f.breakpoints()
        return self._finish("nonlin", report_obj.passed, report)


def _boundedness_report(table: Dict[str, Any]):
    bounded = table["in_hypothesis_bounded"]
    report = CheckReport(name="boundedness", margin=0.0 if bounded else -1.0, tolerance=0.0,
                         details=table)
    report.notes.extend(table["notes"])
    for label in table["flagged"]:
        report.notes.append(f"flagged: {label}")
    return report


def run_subcommand(subcommand: str, config: RunConfig,
                   output_dir: Optional[Union[str, Path]] = None,
                   report_format: str = "json") -> ExperimentResult:
    """Run one subcommand; CaplabError propagates to the caller"""
    return Experiment(config, output_dir, report_format).run(subcommand)

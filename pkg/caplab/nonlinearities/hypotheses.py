"""Finite-sample surrogates for the growth hypotheses on f"""

from dataclasses import dataclass, field
from typing import Any, Dict, List

import numpy as np

from ..core.errors import ArgumentError
from .base import Nonlinearity

SURROGATE_NOTE = ("verdicts are finite-sample surrogates of limit statements on "
                  "[1e-3, s_max]; they cannot prove the hypotheses")


@dataclass
class HypothesisReport:
    """H1: f(s)/s^{N*} nonincreasing; H2: f(s)/s^{N*} -> 0; H3: liminf f(s)/s > λ₁"""
    label: str
    N: int
    s_max: float
    n_samples: int
    lambda1: float
    h1: Dict[str, Any] = field(default_factory=dict)
    h2: Dict[str, Any] = field(default_factory=dict)
    h3: Dict[str, Any] = field(default_factory=dict)
    notes: List[str] = field(default_factory=lambda: [SURROGATE_NOTE])

    @property
    def passed(self) -> bool:
        return bool(self.h1.get("pass") and self.h2.get("pass") and self.h3.get("pass"))

    def get_summary(self) -> str:
        flags = ", ".join(f"{name}={'pass' if part.get('pass') else 'fail'}"
                          for name, part in (("H1", self.h1), ("H2", self.h2), ("H3", self.h3)))
        return f"{self.label} (N={self.N}, s_max={self.s_max:g}): {flags}"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "label": self.label,
            "N": self.N,
            "s_max": self.s_max,
            "n_samples": self.n_samples,
            "lambda1": self.lambda1,
            "H1": self.h1,
            "H2": self.h2,
            "H3": self.h3,
            "pass": self.passed,
            "notes": list(self.notes),
        }


def critical_ratio(f: Nonlinearity, s: np.ndarray) -> np.ndarray:
    """f(s) / s^{N*}"""
    s = np.asarray(s, dtype=float)
    return f(s) / s ** f.critical_exponent()


def _nonincreasing(values: np.ndarray, rel_tol: float):
    """Largest relative increase between consecutive samples"""
    scale = np.maximum(np.abs(values[:-1]), np.finfo(float).tiny)
    rises = (values[1:] - values[:-1]) / scale
    worst = int(np.argmax(rises))
    return bool(rises[worst] <= rel_tol), float(rises[worst]), worst


def check_hypotheses(f: Nonlinearity, lambda1: float, s_max: float = 1e8,
                     n_samples: int = 2000, h2_threshold: float = 0.1,
                     rel_tol: float = 1e-10) -> HypothesisReport:
    """Sample f on a geometric grid over [1e-3, s_max] and judge H1-H3"""
    if lambda1 <= 0:
        raise ArgumentError(f"lambda1 must be positive, got {lambda1}")
    if s_max <= 1:
        raise ArgumentError(f"s_max must exceed 1, got {s_max}")
    if f.N < 3:
        raise ArgumentError("growth hypotheses need N >= 3")

    s = np.geomspace(1e-3, s_max, n_samples)
    with np.errstate(over="ignore", invalid="ignore"):
        values = f(s)
        ratio = critical_ratio(f, s)
    if not (np.all(np.isfinite(values)) and np.all(np.isfinite(ratio))):
        bad = float(s[~np.isfinite(values) | ~np.isfinite(ratio)][0])
        raise ArgumentError(f"non-finite f values for {f.label} at s={bad:.6g}; lower s_max",
                            s=bad)

    report = HypothesisReport(label=f.label, N=f.N, s_max=float(s_max),
                              n_samples=int(n_samples), lambda1=float(lambda1))

    ok, rise, at = _nonincreasing(ratio, rel_tol)
    report.h1 = {"pass": ok, "max_relative_increase": rise, "at_s": float(s[at]),
                 "ratio_first": float(ratio[0]), "ratio_last": float(ratio[-1])}

    top = s >= s_max / 10.0
    tail_ok, tail_rise, _ = _nonincreasing(ratio[top], rel_tol)
    final = float(ratio[-1])
    report.h2 = {"pass": bool(final < h2_threshold and tail_ok), "ratio_at_s_max": final,
                 "threshold": h2_threshold, "tail_nonincreasing": tail_ok,
                 "tail_max_relative_increase": tail_rise}

    linear = values[top] / s[top]
    worst = float(linear.min())
    report.h3 = {"pass": bool(worst > lambda1), "min_f_over_s_top_decade": worst,
                 "lambda1": float(lambda1)}
    return report

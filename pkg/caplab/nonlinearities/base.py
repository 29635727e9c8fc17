"""Base class for nonlinearities f(s)"""

from abc import ABC, abstractmethod
from fractions import Fraction
from typing import Any, Dict, Optional

import numpy as np

from ..core.errors import ArgumentError


class Nonlinearity(ABC):
    """Nonlinearity f: [0, ∞) → ℝ for −Δu = f(u).

    N fixes the critical exponent N* = (N+2)/(N−2), stored as a Fraction.
    Negative arguments are clipped to zero.
    """

    kind = "base"

    def __init__(self, N: int = 3, label: Optional[str] = None):
        if N < 2:
            raise ArgumentError(f"dimension must be at least 2, got {N}")
        self.N = int(N)
        self._label = label

    @property
    def n_star(self) -> Optional[Fraction]:
        if self.N <= 2:
            return None
        return Fraction(self.N + 2, self.N - 2)

    def critical_exponent(self) -> float:
        if self.n_star is None:
            raise ArgumentError("critical exponent is undefined for N=2")
        return float(self.n_star)

    @abstractmethod
    def evaluate(self, s: np.ndarray) -> np.ndarray:
        """f(s) for s ≥ 0"""
        pass

    def derivative(self, s: np.ndarray) -> np.ndarray:
        """f'(s); central differences unless a subclass knows better"""
        s = np.maximum(np.asarray(s, dtype=float), 0.0)
        d = 1e-6 * np.maximum(1.0, s)
        lower = np.maximum(s - d, 0.0)
        return (self.evaluate(s + d) - self.evaluate(lower)) / (s + d - lower)

    def __call__(self, s):
        return self.evaluate(s)

    @property
    def label(self) -> str:
        return self._label or self.default_label()

    def default_label(self) -> str:
        return self.kind

    def params(self) -> Dict[str, Any]:
        return {}

    def to_dict(self) -> Dict[str, Any]:
        data = {"kind": self.kind, "N": self.N, "label": self.label}
        data.update(self.params())
        if self.n_star is not None:
            data["n_star"] = f"{self.n_star.numerator}/{self.n_star.denominator}"
        return data

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.label}, N={self.N})"


def clip(s) -> np.ndarray:
    return np.maximum(np.asarray(s, dtype=float), 0.0)

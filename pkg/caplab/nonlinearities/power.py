"""Power and exponential nonlinearities"""

from typing import Any, Dict, Optional

import numpy as np

from ..core.errors import ArgumentError
from .base import Nonlinearity, clip


class PowerNonlinearity(Nonlinearity):
    """f(s) = c·s^p (p = 0 gives the constant source, p = 1 the linear one)"""

    kind = "power"

    def __init__(self, p: float = 3.0, coefficient: float = 1.0, N: int = 3,
                 label: Optional[str] = None):
        if p < 0:
            raise ArgumentError(f"power exponent must be nonnegative, got {p}")
        super().__init__(N=N, label=label)
        self.p = float(p)
        self.coefficient = float(coefficient)

    def evaluate(self, s):
        s = clip(s)
        if self.p == 0:
            return np.full_like(s, self.coefficient)
        return self.coefficient * s ** self.p

    def derivative(self, s):
        s = clip(s)
        if self.p == 0:
            return np.zeros_like(s)
        if self.p == 1:
            return np.full_like(s, self.coefficient)
        with np.errstate(divide="ignore"):
            return self.coefficient * self.p * s ** (self.p - 1)

    def default_label(self) -> str:
        if self.coefficient == 1.0:
            return f"s^{self.p:g}"
        return f"{self.coefficient:g}*s^{self.p:g}"

    def params(self) -> Dict[str, Any]:
        return {"p": self.p, "coefficient": self.coefficient}


class ExponentialNonlinearity(Nonlinearity):
    """f(s) = c·e^s"""

    kind = "exponential"

    def __init__(self, coefficient: float = 1.0, N: int = 3, label: Optional[str] = None):
        super().__init__(N=N, label=label)
        self.coefficient = float(coefficient)

    def evaluate(self, s):
        with np.errstate(over="ignore"):
            return self.coefficient * np.exp(clip(s))

    def derivative(self, s):
        return self.evaluate(s)

    def default_label(self) -> str:
        return "e^s" if self.coefficient == 1.0 else f"{self.coefficient:g}*e^s"

    def params(self) -> Dict[str, Any]:
        return {"coefficient": self.coefficient}

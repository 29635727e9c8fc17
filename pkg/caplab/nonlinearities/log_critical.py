"""Critical power damped by a logarithm: f(s) = s^{N*} / ln(s + 2)"""

from typing import Optional

import numpy as np

from ..core.errors import ArgumentError
from .base import Nonlinearity, clip


class LogCriticalNonlinearity(Nonlinearity):
    kind = "log_critical"

    def __init__(self, N: int = 3, label: Optional[str] = None):
        if N < 3:
            raise ArgumentError(f"log_critical needs N >= 3, got {N}")
        super().__init__(N=N, label=label)
        self.exponent = float(self.n_star)

    def evaluate(self, s):
        s = clip(s)
        return s ** self.exponent / np.log(s + 2.0)

    def derivative(self, s):
        s = clip(s)
        log = np.log(s + 2.0)
        e = self.exponent
        return e * s ** (e - 1) / log - s ** e / ((s + 2.0) * log ** 2)

    def default_label(self) -> str:
        return f"s^{self.exponent:g}/ln(s+2)"

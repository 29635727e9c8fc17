"""Staircase nonlinearity squeezed between s^p and s^q without a power limit"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np

from ..core.errors import ArgumentError
from .base import Nonlinearity, clip

logger = logging.getLogger(__name__)


@dataclass
class StaircaseParams:
    """Breakpoints a_1 < b_1 < a_2 < ... with b_j = a_j^{(N*-p)/(N*-q)}, a_{j+1} = b_j^{q/p}"""
    p: float
    q: float
    a1: float
    n_star: float
    n_levels: int
    a: List[float] = field(default_factory=list)
    b: List[float] = field(default_factory=list)

    def __post_init__(self):
        if not 1 < self.p < self.q < self.n_star:
            raise ArgumentError("staircase needs 1 < p < q < N*",
                                p=self.p, q=self.q, n_star=self.n_star)
        if self.a1 <= 1:
            raise ArgumentError(f"staircase needs a1 > 1, got {self.a1}")
        if self.n_levels < 1:
            raise ArgumentError(f"n_levels must be positive, got {self.n_levels}")
        if not self.a:
            self._build()

    def _build(self):
        ratio = (self.n_star - self.p) / (self.n_star - self.q)
        a = self.a1
        for _ in range(self.n_levels):
            b = a ** ratio
            if not np.isfinite(b):
                raise ArgumentError("staircase breakpoints overflow; lower n_levels",
                                    n_levels=self.n_levels)
            self.a.append(a)
            self.b.append(b)
            a = b ** (self.q / self.p)

    def knots(self) -> np.ndarray:
        """[a_1, b_1, a_2, b_2, ...]"""
        return np.ravel(np.column_stack([self.a, self.b]))

    def to_dict(self) -> Dict[str, Any]:
        return {"p": self.p, "q": self.q, "a1": self.a1, "n_levels": self.n_levels,
                "a": list(self.a), "b": list(self.b)}


class StaircaseNonlinearity(Nonlinearity):
    """s^p on [0, a_1]; s^{N*}/a_j^{N*-p} on [a_j, b_j]; f(b_j) on [b_j, a_{j+1}].

    Past b_n the last constant level is extended. Breakpoints take the left
    derivative.
    """

    kind = "staircase"

    def __init__(self, p: float = 2.0, q: float = 3.0, a1: float = 2.0, N: int = 3,
                 n_levels: int = 4, label: Optional[str] = None):
        if N < 3:
            raise ArgumentError(f"staircase needs N >= 3, got {N}")
        super().__init__(N=N, label=label)
        self.staircase = StaircaseParams(p=float(p), q=float(q), a1=float(a1),
                                         n_star=float(self.n_star), n_levels=int(n_levels))
        self._knots = self.staircase.knots()
        self._log_a = np.log(np.asarray(self.staircase.a))
        self._levels = np.asarray(self.staircase.b) ** self.staircase.q

    def _locate(self, s: np.ndarray) -> np.ndarray:
        idx = np.searchsorted(self._knots, s, side="left")
        if np.any(idx == len(self._knots)):
            logger.warning("staircase evaluated beyond b_%d=%.6g; extending the last level",
                           self.staircase.n_levels, self._knots[-1])
        return idx

    def evaluate(self, s):
        shape = np.shape(s)
        s = clip(s).reshape(-1)
        idx = self._locate(s)
        p, e = self.staircase.p, float(self.n_star)
        out = np.empty_like(s)
        first = idx == 0
        out[first] = s[first] ** p
        rising = idx % 2 == 1
        j = (idx[rising] - 1) // 2
        out[rising] = np.exp(e * np.log(s[rising]) - (e - p) * self._log_a[j])
        flat = (idx % 2 == 0) & ~first
        out[flat] = self._levels[idx[flat] // 2 - 1]
        return out.reshape(shape)

    def derivative(self, s):
        shape = np.shape(s)
        s = clip(s).reshape(-1)
        idx = self._locate(s)
        p, e = self.staircase.p, float(self.n_star)
        out = np.zeros_like(s)
        first = idx == 0
        with np.errstate(divide="ignore"):
            out[first] = p * s[first] ** (p - 1)
        rising = idx % 2 == 1
        j = (idx[rising] - 1) // 2
        out[rising] = e * np.exp((e - 1) * np.log(s[rising]) - (e - p) * self._log_a[j])
        return out.reshape(shape)

    def default_label(self) -> str:
        sc = self.staircase
        return f"staircase(p={sc.p:g},q={sc.q:g},a1={sc.a1:g})"

    def params(self) -> Dict[str, Any]:
        sc = self.staircase
        return {"p": sc.p, "q": sc.q, "a1": sc.a1, "n_levels": sc.n_levels}

    def breakpoints(self) -> Dict[str, Any]:
        return self.staircase.to_dict()


def exponent_profile(f: Nonlinearity, s: np.ndarray) -> np.ndarray:
    """log f(s) / log s for s > 1"""
    s = np.asarray(s, dtype=float)
    if np.any(s <= 1):
        raise ArgumentError("exponent profile needs s > 1")
    return np.log(f(s)) / np.log(s)


def count_crossings(values: np.ndarray, level: float) -> int:
    """Number of sign changes of values - level"""
    sign = np.sign(np.asarray(values, dtype=float) - level)
    sign = sign[sign != 0]
    return int(np.count_nonzero(sign[1:] != sign[:-1]))

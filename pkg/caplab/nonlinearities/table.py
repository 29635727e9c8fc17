"""Nonlinearity interpolated from a sampled table"""

import logging
from pathlib import Path
from typing import Any, Dict, Optional, Sequence, Union

import numpy as np
from scipy.interpolate import PchipInterpolator

from ..core.errors import ArgumentError
from .base import Nonlinearity, clip

logger = logging.getLogger(__name__)


class TableNonlinearity(Nonlinearity):
    """Shape-preserving (PCHIP) interpolation of (s, f(s)) samples.

    The table comes inline (`table=[[s, f], ...]`) or from a CSV / JSON /
    Excel file (`file=...`). Evaluation beyond the last sample extrapolates
    the end piece and logs a warning.
    """

    kind = "custom_table"

    def __init__(self, table: Optional[Sequence[Sequence[float]]] = None,
                 file: Optional[Union[str, Path]] = None, N: int = 3,
                 label: Optional[str] = None):
        super().__init__(N=N, label=label)
        if table is None and file is None:
            raise ArgumentError("custom_table needs `table` or `file`")
        self.file = str(file) if file is not None else None
        if table is None:
            from ..importers import importer_for
            table = importer_for(file).import_table(Path(file))
        data = np.asarray(table, dtype=float)
        if data.ndim != 2 or data.shape[1] != 2 or len(data) < 2:
            raise ArgumentError("custom_table needs at least two (s, f) rows")
        data = data[np.argsort(data[:, 0])]
        if np.any(np.diff(data[:, 0]) <= 0):
            raise ArgumentError("custom_table s values must be distinct")
        if data[0, 0] < 0:
            raise ArgumentError("custom_table s values must be nonnegative")
        self.table = data
        self._interp = PchipInterpolator(data[:, 0], data[:, 1], extrapolate=True)
        self._slope = self._interp.derivative()

    def _warn_range(self, s: np.ndarray):
        if np.any(s > self.table[-1, 0]):
            logger.warning("custom_table %s extrapolated past s=%.6g", self.label, self.table[-1, 0])

    def evaluate(self, s):
        s = clip(s)
        self._warn_range(s)
        return np.asarray(self._interp(s), dtype=float)

    def derivative(self, s):
        s = clip(s)
        return np.asarray(self._slope(s), dtype=float)

    def default_label(self) -> str:
        return f"table[{len(self.table)}]" if self.file is None else f"table:{Path(self.file).name}"

    def params(self) -> Dict[str, Any]:
        if self.file is not None:
            return {"file": self.file}
        return {"table": self.table.tolist()}

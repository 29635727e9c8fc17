"""Base class for artifact exporters"""

import math
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, Dict

import numpy as np


class BaseExporter(ABC):
    """Base class for all artifact exporters"""

    suffix = ""

    @abstractmethod
    def export(self, data: Dict[str, Any], output_path: Path):
        """
        Write one artifact.

        Args:
            data: Report dictionary, or a table {"columns": [...], "rows": [[...]]}
            output_path: Path to output file
        """
        pass

    def ensure_output_dir(self, output_path: Path):
        """Ensure output directory exists"""
        output_path = Path(output_path)
        output_path.parent.mkdir(parents=True, exist_ok=True)


def to_plain(value: Any) -> Any:
    """numpy scalars and arrays to builtins; non-finite floats to strings"""
    if isinstance(value, dict):
        return {str(k): to_plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return [to_plain(v) for v in value.tolist()]
    if isinstance(value, (np.bool_, bool)):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, (np.floating, float)):
        value = float(value)
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return value
    return value


def format_cell(value: Any) -> str:
    """Round-trip text for floats, plain str otherwise"""
    value = to_plain(value)
    if isinstance(value, float):
        return repr(value)
    if value is None:
        return ""
    return str(value)

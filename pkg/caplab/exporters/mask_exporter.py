"""Grid-format writer for region masks and grid functions"""

import logging
from pathlib import Path
from typing import Any, Dict

from ..core.errors import ArgumentError
from .base import BaseExporter

logger = logging.getLogger(__name__)


class MaskExporter(BaseExporter):
    """Header `nx ny h x0 y0`, then one row per j; data {"grid": RegionMask | GridFunction}"""

    suffix = ".mask"

    def export(self, data: Dict[str, Any], output_path: Path):
        grid_object = data.get("grid")
        if grid_object is None or not hasattr(grid_object, "to_text"):
            raise ArgumentError("mask export needs a 'grid' entry with a text form")
        self.ensure_output_dir(output_path)
        with open(output_path, 'w', encoding='utf-8') as f:
            f.write(grid_object.to_text())
        logger.info("Exported grid: %s", output_path)

"""JSON report exporter"""

import json
import logging
from pathlib import Path
from typing import Any, Dict

from .base import BaseExporter, to_plain

logger = logging.getLogger(__name__)


def dumps(data: Dict[str, Any]) -> str:
    """Sorted keys; floats keep Python's shortest round-trip repr"""
    return json.dumps(to_plain(data), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


class JsonExporter(BaseExporter):
    """Export a report dictionary to JSON"""

    suffix = ".json"

    def export(self, data: Dict[str, Any], output_path: Path):
        self.ensure_output_dir(output_path)
        with open(output_path, 'w', encoding='utf-8') as f:
            f.write(dumps(data))
        logger.info("Exported JSON: %s", output_path)

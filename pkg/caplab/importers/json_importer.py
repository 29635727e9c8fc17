"""JSON table importer"""

import json
from pathlib import Path
from typing import List, Tuple

from ..core.errors import ConfigError
from .base import BaseImporter


class JsonTableImporter(BaseImporter):
    """Import tables from JSON.

    Accepted layouts: a list of pairs, {"table": [...]}, {"vertices": [...]}
    or two parallel columns such as {"s": [...], "f": [...]} / {"x": [...], "y": [...]}.
    """

    def import_table(self, file_path: Path) -> List[Tuple[float, float]]:
        file_path = Path(file_path)
        with open(file_path, 'r', encoding='utf-8') as f:
            data = json.load(f)

        if isinstance(data, dict):
            for key in ("table", "vertices", "rows"):
                if key in data:
                    return self.parse_rows(data[key], file_path)
            for first, second in (("s", "f"), ("x", "y"), ("x", "value")):
                if first in data and second in data:
                    return self.parse_rows(zip(data[first], data[second]), file_path)
            raise ConfigError(f"Unrecognized table layout in {file_path}", keys=sorted(data))
        return self.parse_rows(data, file_path)

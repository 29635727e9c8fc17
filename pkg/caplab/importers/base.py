"""Base class for table importers"""

from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, Iterable, List, Tuple

from ..core.errors import ConfigError


class BaseImporter(ABC):
    """Base class for two-column numeric table importers"""

    @abstractmethod
    def import_table(self, file_path: Path) -> List[Tuple[float, float]]:
        """
        Import a file and return its rows as (first, second) float pairs.

        Used for custom nonlinearity tables (s, f(s)) and polygon
        vertices (x, y). A leading non-numeric row is taken as a header.
        """
        pass

    def import_vertices(self, file_path: Path) -> List[Tuple[float, float]]:
        """Polygon vertices in boundary order"""
        return self.import_table(file_path)

    def parse_rows(self, rows: Iterable[Iterable[Any]], source: Path) -> List[Tuple[float, float]]:
        """Convert raw rows to float pairs, skipping one header row and blank rows"""
        pairs = []
        for index, row in enumerate(rows):
            cells = [c for c in row if c is not None and str(c).strip() != ""]
            if not cells:
                continue
            try:
                pairs.append((float(cells[0]), float(cells[1])))
            except (ValueError, IndexError):
                if index == 0 and not pairs:
                    continue
                raise ConfigError(f"Row {index + 1} of {source} is not a numeric pair",
                                  row=[str(c) for c in cells])
        if not pairs:
            raise ConfigError(f"No numeric rows found in {source}")
        return pairs

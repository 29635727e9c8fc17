"""CSV table importer"""

import csv
from pathlib import Path
from typing import List, Tuple

from .base import BaseImporter


class CsvTableImporter(BaseImporter):
    """Import comma- or tab-separated numeric tables"""

    def __init__(self, encoding: str = 'utf-8-sig'):
        self.encoding = encoding

    def import_table(self, file_path: Path) -> List[Tuple[float, float]]:
        file_path = Path(file_path)
        with open(file_path, 'r', encoding=self.encoding, newline='') as f:
            first_line = f.readline()
            f.seek(0)
            delimiter = '\t' if '\t' in first_line and ',' not in first_line else ','
            rows = list(csv.reader(f, delimiter=delimiter))
        return self.parse_rows(rows, file_path)

"""Excel table importer"""

from pathlib import Path
from typing import List, Optional, Tuple

from ..core.errors import ConfigError
from .base import BaseImporter


class ExcelTableImporter(BaseImporter):
    """Import the first two columns of a worksheet (first sheet by default)"""

    def __init__(self, sheet_name: Optional[str] = None):
        self.sheet_name = sheet_name

    def import_table(self, file_path: Path) -> List[Tuple[float, float]]:
        try:
            from openpyxl import load_workbook
        except ImportError as exc:
            raise ConfigError("openpyxl is required to read Excel tables. "
                              "Install with: pip install openpyxl") from exc

        file_path = Path(file_path)
        workbook = load_workbook(file_path, read_only=True, data_only=True)
        try:
            if self.sheet_name is None:
                worksheet = workbook.worksheets[0]
            elif self.sheet_name in workbook.sheetnames:
                worksheet = workbook[self.sheet_name]
            else:
                raise ConfigError(f"Sheet '{self.sheet_name}' not found",
                                  available=list(workbook.sheetnames))
            rows = [row[:2] for row in worksheet.iter_rows(values_only=True)]
        finally:
            workbook.close()
        return self.parse_rows(rows, file_path)

"""Import system for numeric tables"""

from pathlib import Path
from typing import Dict, Type, Union

from ..core.errors import ConfigError
from .base import BaseImporter


_importers: Dict[str, Type[BaseImporter]] = {}


def register_importer(format: str, importer_class: Type[BaseImporter]):
    """Register an importer for a specific format"""
    _importers[format.lower()] = importer_class


def get_importer(format: str) -> BaseImporter:
    """Get importer instance for a specific format"""
    format = format.lower()
    if format not in _importers:
        raise ConfigError(f"No importer registered for format: {format}")
    return _importers[format]()


def importer_for(path: Union[str, Path]) -> BaseImporter:
    """Pick an importer from the file suffix"""
    suffix = Path(path).suffix.lower().lstrip(".")
    return get_importer(suffix or "csv")


# Import and register available importers
from .csv_importer import CsvTableImporter
from .json_importer import JsonTableImporter
from .excel_importer import ExcelTableImporter

register_importer("csv", CsvTableImporter)
register_importer("tsv", CsvTableImporter)
register_importer("txt", CsvTableImporter)
register_importer("json", JsonTableImporter)
register_importer("xlsx", ExcelTableImporter)
register_importer("excel", ExcelTableImporter)

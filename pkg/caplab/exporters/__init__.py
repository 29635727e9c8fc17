"""Export system for reports, tables, curves and grids"""

from typing import Dict, Type

from ..core.errors import ConfigError
from .base import BaseExporter


_exporters: Dict[str, Type[BaseExporter]] = {}


def register_exporter(format: str, exporter_class: Type[BaseExporter]):
    """Register an exporter for a specific format"""
    _exporters[format.lower()] = exporter_class


def get_exporter(format: str) -> BaseExporter:
    """Get exporter instance for a specific format"""
    format = format.lower()
    if format not in _exporters:
        raise ConfigError(f"No exporter registered for format: {format}",
                          available=list_exporters())
    return _exporters[format]()


def list_exporters() -> list:
    return list(_exporters.keys())


# Import and register available exporters
from .json_exporter import JsonExporter, dumps
from .table_exporter import CsvExporter, ExcelExporter, TextExporter, render_text, table_from_records
from .mask_exporter import MaskExporter

register_exporter("json", JsonExporter)
register_exporter("csv", CsvExporter)
register_exporter("excel", ExcelExporter)
register_exporter("xlsx", ExcelExporter)
register_exporter("text", TextExporter)
register_exporter("txt", TextExporter)
register_exporter("mask", MaskExporter)

"""Table exporters: CSV, Excel and aligned text"""

import csv
import logging
from pathlib import Path
from typing import Any, Dict, List

try:
    import openpyxl
    from openpyxl.styles import Alignment, Font, PatternFill
    EXCEL_AVAILABLE = True
except ImportError:
    EXCEL_AVAILABLE = False

from .base import BaseExporter, format_cell, to_plain

logger = logging.getLogger(__name__)


def _table(data: Dict[str, Any]):
    columns = list(data.get("columns", []))
    rows = [list(row) for row in data.get("rows", [])]
    if rows and isinstance(rows[0], dict):
        rows = [[row.get(c) for c in columns] for row in data["rows"]]
    return columns, rows


def table_from_records(records: List[Dict[str, Any]]) -> Dict[str, Any]:
    """{"columns", "rows"} from a list of flat dictionaries (column order of the first)"""
    columns = list(records[0].keys()) if records else []
    return {"columns": columns, "rows": [[r.get(c) for c in columns] for r in records]}


class CsvExporter(BaseExporter):
    """Export a table to CSV (header row, round-trip floats)"""

    suffix = ".csv"

    def export(self, data: Dict[str, Any], output_path: Path):
        self.ensure_output_dir(output_path)
        columns, rows = _table(data)
        with open(output_path, 'w', encoding='utf-8', newline='') as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(columns)
            for row in rows:
                writer.writerow([format_cell(v) for v in row])
        logger.info("Exported CSV: %s", output_path)


class ExcelExporter(BaseExporter):
    """Export a table to Excel with a styled header and a summary sheet"""

    suffix = ".xlsx"

    PASS_FILL = "D5E8D4"
    FAIL_FILL = "F8CECC"

    def __init__(self):
        if not EXCEL_AVAILABLE:
            raise ImportError("openpyxl is required for Excel export. Install with: pip install openpyxl")

    def export(self, data: Dict[str, Any], output_path: Path):
        self.ensure_output_dir(output_path)
        columns, rows = _table(data)

        wb = openpyxl.Workbook()
        ws = wb.active
        ws.title = data.get("title", "Checks")[:31]
        self._add_headers(ws, columns)

        status_col = columns.index("pass") + 1 if "pass" in columns else None
        for row_idx, row in enumerate(rows, 2):
            for col_idx, value in enumerate(row, 1):
                value = to_plain(value)
                if isinstance(value, (list, dict)):
                    value = format_cell(value)
                cell = ws.cell(row=row_idx, column=col_idx, value=value)
                if col_idx == status_col:
                    color = self.PASS_FILL if value else self.FAIL_FILL
                    cell.fill = PatternFill(start_color=color, end_color=color, fill_type="solid")

        self._adjust_column_widths(ws)
        if data.get("summary"):
            self._add_summary_sheet(wb, data["summary"])
        wb.save(output_path)
        logger.info("Exported Excel: %s", output_path)

    def _add_headers(self, ws, headers):
        for col, header in enumerate(headers, 1):
            cell = ws.cell(row=1, column=col, value=header)
            cell.font = Font(bold=True, color="FFFFFF")
            cell.fill = PatternFill(start_color="366092", end_color="366092", fill_type="solid")
            cell.alignment = Alignment(horizontal="center")

    def _adjust_column_widths(self, ws):
        for column in ws.columns:
            longest = max((len(str(c.value)) for c in column if c.value is not None), default=0)
            ws.column_dimensions[column[0].column_letter].width = min(longest + 2, 50)

    def _add_summary_sheet(self, wb, summary: Dict[str, Any]):
        ws = wb.create_sheet("Summary")
        for row_idx, (label, value) in enumerate(sorted(summary.items()), 1):
            ws.cell(row=row_idx, column=1, value=label).font = Font(bold=True)
            value = to_plain(value)
            ws.cell(row=row_idx, column=2,
                    value=format_cell(value) if isinstance(value, (list, dict)) else value)
        self._adjust_column_widths(ws)


def render_text(data: Dict[str, Any]) -> str:
    """Aligned plain-text table followed by `key: value` summary lines"""
    columns, rows = _table(data)
    cells = [[format_cell(v) for v in row] for row in rows]
    widths = [max([len(c)] + [len(r[i]) for r in cells]) for i, c in enumerate(columns)]
    lines = []
    if data.get("title"):
        lines.append(str(data["title"]))
    if columns:
        lines.append("  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip())
        lines.append("  ".join("-" * w for w in widths))
        for row in cells:
            lines.append("  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip())
    for key, value in sorted((data.get("summary") or {}).items()):
        lines.append(f"{key}: {format_cell(value)}")
    return "\n".join(lines) + "\n"


class TextExporter(BaseExporter):
    """Export a table as aligned text for humans"""

    suffix = ".txt"

    def export(self, data: Dict[str, Any], output_path: Path):
        self.ensure_output_dir(output_path)
        with open(output_path, 'w', encoding='utf-8') as f:
            f.write(render_text(data))
        logger.info("Exported text: %s", output_path)

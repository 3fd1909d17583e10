# cli_report/exports.py
import csv
import json
from io import StringIO
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

from tabulate import tabulate

from rank_core import ABSENT_MARK


def dumps_json(data: Any) -> str:
    """Pretty JSON with a trailing newline; key order is insertion order."""
    return json.dumps(data, indent=2, ensure_ascii=False, allow_nan=False) + "\n"


def dumps_record(data: Any) -> str:
    """One-line JSON for error records on stderr."""
    return json.dumps(data, ensure_ascii=False, separators=(",", ":"))


def _cell(value: Any) -> Any:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    return value


def generate_csv(rows: List[Dict[str, Any]], fieldnames: Optional[Sequence[str]] = None, delimiter: str = ",") -> str:
    """CSV text from row dicts. None becomes an empty cell, booleans true/false."""
    if fieldnames is None:
        fieldnames = list(rows[0].keys()) if rows else []
    output = StringIO()
    writer = csv.DictWriter(output, fieldnames=fieldnames, delimiter=delimiter, lineterminator="\n")
    writer.writeheader()
    writer.writerows({k: _cell(row.get(k)) for k in fieldnames} for row in rows)
    return output.getvalue()


def generate_tsv(rows: List[Dict[str, Any]], fieldnames: Optional[Sequence[str]] = None) -> str:
    return generate_csv(rows, fieldnames, delimiter="\t")


def generate_text(rows: List[Dict[str, Any]], fieldnames: Optional[Sequence[str]] = None, floatfmt: str = ".4f") -> str:
    """Aligned plain-text table; absent cells print as the absence mark."""
    if fieldnames is None:
        fieldnames = list(rows[0].keys()) if rows else []
    body = [[ABSENT_MARK if row.get(k) is None else row.get(k) for k in fieldnames] for row in rows]
    return tabulate(body, headers=list(fieldnames), tablefmt="simple", floatfmt=floatfmt) + "\n"


def generate_excel(rows: List[Dict[str, Any]], path: Union[str, Path], title: str = "Summary") -> Path:
    """Write rows to an .xlsx workbook with a bold, shaded header row."""
    from openpyxl import Workbook
    from openpyxl.styles import Font, PatternFill

    path = Path(path)
    wb = Workbook()
    ws = wb.active
    ws.title = title[:31]

    headers = list(rows[0].keys()) if rows else []
    for col_num, header in enumerate(headers, 1):
        cell = ws.cell(row=1, column=col_num, value=header)
        cell.font = Font(bold=True)
        cell.fill = PatternFill(start_color="CCCCCC", end_color="CCCCCC", fill_type="solid")

    for row_num, row_data in enumerate(rows, 2):
        for col_num, header in enumerate(headers, 1):
            ws.cell(row=row_num, column=col_num, value=row_data.get(header))

    # Auto-size columns
    for column in ws.columns:
        width = max(len(str(cell.value)) if cell.value is not None else 0 for cell in column)
        ws.column_dimensions[column[0].column_letter].width = min(width + 2, 50)

    if path.parent and not path.parent.exists():
        path.parent.mkdir(parents=True, exist_ok=True)
    wb.save(path)
    return path

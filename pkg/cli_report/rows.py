"""Long-format report rows (`series,year,ns,...`) shared between commands."""
from __future__ import annotations

import csv
import io
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple, Union

from ingest.gp_csv import decode_utf8
from utilities.errors import DataError, DomainError, ParseError, StructuralError

log = logging.getLogger(__name__)

REQUIRED_COLUMNS = ("series", "year", "ns")


@dataclass(frozen=True)
class ReportRow:
    series: str
    year: int
    ns: float
    fields: Mapping[str, str] = field(default_factory=dict, compare=False)

    def key(self, columns: Sequence[str]) -> str:
        return "/".join(str(getattr(self, c)) if c in REQUIRED_COLUMNS else self.fields.get(c, "") for c in columns)


def parse_report_rows(data: bytes) -> List[ReportRow]:
    text = decode_utf8(data)
    reader = csv.DictReader(io.StringIO(text, newline=""), strict=True)
    try:
        header = reader.fieldnames or []
    except csv.Error as e:
        raise ParseError(f"Malformed CSV header: {e}", line=1)
    missing = [c for c in REQUIRED_COLUMNS if c not in header]
    if missing:
        raise ParseError(f"Report rows need the columns {', '.join(REQUIRED_COLUMNS)}; missing {', '.join(missing)}.", line=1)

    rows: List[ReportRow] = []
    try:
        for record in reader:
            line = reader.line_num
            if None in record or any(v is None for v in record.values()):
                raise ParseError("Row has a different number of fields than the header.", line=line)
            series = record["series"].strip()
            if not series:
                raise ParseError("Empty series name.", line=line)
            try:
                year = int(record["year"])
            except ValueError:
                raise ParseError(f"Invalid year {record['year']!r}.", line=line)
            try:
                ns = float(record["ns"])
            except ValueError:
                raise ParseError(f"Invalid ns value {record['ns']!r}.", line=line)
            if not math.isfinite(ns):
                raise ParseError(f"ns must be finite, got {record['ns']!r}.", line=line)
            rows.append(ReportRow(series=series, year=year, ns=ns, fields=dict(record)))
    except csv.Error as e:
        raise ParseError(f"Malformed CSV: {e}", line=reader.line_num)
    log.debug("Parsed %d report rows", len(rows))
    return rows


def read_report_rows(paths: Iterable[Union[str, Path]]) -> List[ReportRow]:
    """Concatenate the rows of several files, in argument order."""
    rows: List[ReportRow] = []
    for path in paths:
        path = Path(path)
        try:
            data = path.read_bytes()
        except OSError as e:
            raise DataError(f"Cannot read rows file {path}: {e.strerror or e}", {"path": str(path)})
        try:
            rows.extend(parse_report_rows(data))
        except ParseError as e:
            raise e.with_path(str(path))
    return rows


def group_rows(rows: Sequence[ReportRow], columns: Sequence[str]) -> Dict[str, List[ReportRow]]:
    """Group rows by the joined values of `columns`, groups in first-seen order."""
    if not rows:
        raise DomainError("No report rows to group.")
    for c in columns:
        if c not in REQUIRED_COLUMNS and c not in rows[0].fields:
            raise DataError(f"Unknown group-by column {c!r}.", {"column": c})
    groups: Dict[str, List[ReportRow]] = {}
    for row in rows:
        groups.setdefault(row.key(columns), []).append(row)
    return groups


def series_by_year(rows: Sequence[ReportRow], series: str) -> Dict[int, float]:
    """year -> ns for one series; each year at most once."""
    values: Dict[int, float] = {}
    for row in rows:
        if row.series != series:
            continue
        if row.year in values:
            raise DataError(f"Series {series!r} has more than one row for {row.year}.", {"series": series, "year": row.year})
        values[row.year] = row.ns
    if not values:
        raise StructuralError(f"Series {series!r} is missing from the report rows.", {"series": series})
    return values


def aligned(xs: Mapping[int, float], ys: Mapping[int, float], names: Tuple[str, str]) -> Tuple[List[float], List[float]]:
    """Values of two series over the same years, year ascending."""
    if set(xs) != set(ys):
        raise StructuralError(
            f"Series {names[0]!r} and {names[1]!r} cover different years.",
            {names[0]: sorted(set(xs) - set(ys)), names[1]: sorted(set(ys) - set(xs))},
        )
    years = sorted(xs)
    return [xs[y] for y in years], [ys[y] for y in years]

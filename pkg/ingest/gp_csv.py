"""One Grand Prix classification per CSV file.

Format (UTF-8, comma delimited, LF or CRLF):

    entrant_id,name,status,position,fastest_lap
    vettel,Sebastian Vettel,FIN,2,0
    massa,Felipe Massa,DNF,,0

`position` is empty exactly when status is not FIN; `fastest_lap` is 0 or 1.
Absent in the ranking sense is an empty position cell, never a sentinel.
"""
from __future__ import annotations

import csv
import io
import logging
import re
from typing import Dict, Iterable, List, Sequence

from f1_model import EntryStatus, GpClassification, RaceEntry
from utilities.errors import ParseError

log = logging.getLogger(__name__)

GP_HEADER = ["entrant_id", "name", "status", "position", "fastest_lap"]
_POSITIVE_INT = re.compile(r"[1-9][0-9]*")
_STATUSES = {s.value: s for s in EntryStatus}


def decode_utf8(data: bytes) -> str:
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as e:
        raise ParseError(f"File is not valid UTF-8 ({e.reason} at byte {e.start}).")


def read_csv_rows(text: str):
    """Yield (line_number, row) pairs; csv handles LF and CRLF alike."""
    reader = csv.reader(io.StringIO(text, newline=""), delimiter=",", strict=True)
    try:
        for row in reader:
            yield reader.line_num, row
    except csv.Error as e:
        raise ParseError(f"Malformed CSV: {e}", line=reader.line_num)


def parse_positive_int(cell: str, line: int, what: str) -> int:
    if not _POSITIVE_INT.fullmatch(cell):
        raise ParseError(f"{what} must be a positive integer, got {cell!r}.", line=line)
    return int(cell)


def parse_gp_csv(data: bytes, label: str = "GP") -> GpClassification:
    text = decode_utf8(data)
    rows = read_csv_rows(text)

    first = next(rows, None)
    if first is None:
        raise ParseError("Empty file: expected a header row.", line=1)
    line, header = first
    if header != GP_HEADER:
        raise ParseError(f"Header must be exactly {','.join(GP_HEADER)}.", line=line)

    entries: List[RaceEntry] = []
    seen_ids: Dict[str, int] = {}
    seen_positions: Dict[int, int] = {}

    for line, row in rows:
        if len(row) != len(GP_HEADER):
            raise ParseError(f"Expected {len(GP_HEADER)} fields, got {len(row)}.", line=line)
        entrant_id, name, status_cell, position_cell, fastest_cell = row

        if not entrant_id:
            raise ParseError("entrant_id must not be empty.", line=line)
        if entrant_id in seen_ids:
            raise ParseError(
                f"Duplicate entrant {entrant_id!r} (first seen on line {seen_ids[entrant_id]}).", line=line
            )
        seen_ids[entrant_id] = line

        status = _STATUSES.get(status_cell)
        if status is None:
            raise ParseError(f"status must be one of FIN, DNF, DNS, DSQ; got {status_cell!r}.", line=line)

        position = None
        if status is EntryStatus.FIN:
            if position_cell == "":
                raise ParseError(f"{entrant_id}: FIN row needs a position.", line=line)
            position = parse_positive_int(position_cell, line, "position")
            if position in seen_positions:
                raise ParseError(
                    f"Position {position} is repeated (first on line {seen_positions[position]}).", line=line
                )
            seen_positions[position] = line
        elif position_cell != "":
            raise ParseError(f"{entrant_id}: position must be empty when status is {status.value}.", line=line)

        if fastest_cell not in ("0", "1"):
            raise ParseError(f"fastest_lap must be 0 or 1, got {fastest_cell!r}.", line=line)

        entries.append(RaceEntry(
            entrant_id=entrant_id,
            status=status,
            position=position,
            fastest_lap=fastest_cell == "1",
            name=name,
        ))

    finishers = len(seen_positions)
    if finishers == 0:
        raise ParseError("No FIN rows: a classification needs at least one finisher.", line=line)
    # Distinct positions all within 1..k means they are exactly 1..k.
    for position in sorted(seen_positions):
        if position > finishers:
            raise ParseError(
                f"Finishing positions must be contiguous 1..{finishers}; found {position}.",
                line=seen_positions[position],
            )

    log.debug("%s: parsed %d entries, %d finishers", label, len(entries), finishers)
    return GpClassification(label=label, entries=tuple(entries))


def write_csv_rows(rows: Iterable[Sequence[object]]) -> bytes:
    """LF-terminated UTF-8 CSV. Rows holding a "\\r" are fully quoted so it stays inside its field."""
    out = io.StringIO(newline="")
    plain = csv.writer(out, lineterminator="\n")
    quoted = csv.writer(out, lineterminator="\n", quoting=csv.QUOTE_ALL)
    for row in rows:
        writer = quoted if any("\r" in str(cell) for cell in row) else plain
        writer.writerow(row)
    return out.getvalue().encode("utf-8")


def write_gp_csv(gp: GpClassification) -> bytes:
    """Serialize a classification in the exact format parse_gp_csv reads."""
    rows: List[List[str]] = [GP_HEADER]
    for entry in gp.entries:
        rows.append([
            entry.entrant_id,
            entry.name,
            entry.status.value,
            "" if entry.position is None else str(entry.position),
            "1" if entry.fastest_lap else "0",
        ])
    return write_csv_rows(rows)

"""Error hierarchy shared by every rankdrift package.

Every failure a caller can act on is a RankdriftError with a stable machine
`code`, a human `message` and optional `details`. The CLI turns these into a
single JSON error record (see cli_report.commands).
"""
from __future__ import annotations

from typing import Any, Dict, Optional

SCHEMA_VERSION = 1


class RankdriftError(Exception):
    """Raise anywhere to produce a structured error record."""

    code = "rankdrift_error"

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None, code: Optional[str] = None):
        super().__init__(message)
        self.message = message
        self.details = details
        if code:
            self.code = code

    def to_record(self) -> Dict[str, Any]:
        body: Dict[str, Any] = {"code": self.code, "message": self.message}
        if self.details:
            body["details"] = self.details
        return {"schema_version": SCHEMA_VERSION, "error": body}


class StructuralError(RankdriftError):
    """Shapes don't line up: universe sizes, series length, ragged input."""

    code = "structural_error"


class DomainError(RankdriftError):
    """A value is outside the domain the operation is defined on."""

    code = "domain_error"


class NoComparablePairs(RankdriftError):
    code = "no_comparable_pairs"


class AllPairsIncomparable(RankdriftError):
    code = "all_pairs_incomparable"


class DegenerateSampleError(DomainError):
    """Zero variance or identical data where a statistic needs spread."""

    code = "degenerate_sample"


class DataError(RankdriftError):
    """The dataset is well-formed but inconsistent (unknown entrant, missing team)."""

    code = "data_error"


class ParseError(RankdriftError):
    """A file violates its format. Carries the path and 1-based line when known."""

    code = "parse_error"

    def __init__(
        self,
        message: str,
        line: Optional[int] = None,
        path: Optional[str] = None,
        details: Optional[Dict[str, Any]] = None,
    ):
        self.line = line
        self.path = path
        super().__init__(message, details)

    def with_path(self, path: str) -> "ParseError":
        self.path = path
        return self

    def to_record(self) -> Dict[str, Any]:
        record = super().to_record()
        if self.path is not None:
            record["error"]["path"] = self.path
        if self.line is not None:
            record["error"]["line"] = self.line
        return record

    def __str__(self) -> str:
        where = self.path or "<input>"
        if self.line is not None:
            where = f"{where}:{self.line}"
        return f"{where}: {self.message}"

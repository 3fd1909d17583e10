from .errors import (
    SCHEMA_VERSION,
    RankdriftError,
    StructuralError,
    DomainError,
    NoComparablePairs,
    AllPairsIncomparable,
    DegenerateSampleError,
    DataError,
    ParseError,
)
from .logger import setup_logger

__all__ = [
    "SCHEMA_VERSION",
    "RankdriftError",
    "StructuralError",
    "DomainError",
    "NoComparablePairs",
    "AllPairsIncomparable",
    "DegenerateSampleError",
    "DataError",
    "ParseError",
    "setup_logger",
]

"""File parsers: GP classification CSVs, season manifests, standings matrices."""

from .gp_csv import GP_HEADER, parse_gp_csv, write_gp_csv
from .manifest import load_season_manifest, parse_season_manifest
from .standings import (
    StandingsMatrix,
    parse_standings_matrix,
    read_standings_matrix,
    write_standings_matrix,
)

__all__ = [
    "GP_HEADER",
    "parse_gp_csv",
    "write_gp_csv",
    "load_season_manifest",
    "parse_season_manifest",
    "StandingsMatrix",
    "parse_standings_matrix",
    "read_standings_matrix",
    "write_standings_matrix",
]

"""Championship model: points, classifications, driver and constructor rankings."""

from .points import POINTS_SINCE_2010, PointsScheme, points_for_entry
from .race import (
    Entity,
    EntryStatus,
    GpClassification,
    RaceEntry,
    RosterEntry,
    SeasonDataset,
    Team,
)
from .rankings import (
    SeriesMethod,
    accumulate_standings,
    constructor_scores,
    constructors_ranking_m1,
    constructors_ranking_m2,
    drivers_ranking,
    race_ranking,
    season_series,
)

__all__ = [
    "POINTS_SINCE_2010",
    "PointsScheme",
    "points_for_entry",
    "Entity",
    "EntryStatus",
    "GpClassification",
    "RaceEntry",
    "RosterEntry",
    "SeasonDataset",
    "Team",
    "SeriesMethod",
    "accumulate_standings",
    "constructor_scores",
    "constructors_ranking_m1",
    "constructors_ranking_m2",
    "drivers_ranking",
    "race_ranking",
    "season_series",
]

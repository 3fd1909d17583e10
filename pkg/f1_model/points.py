"""Points schemes for Grand Prix classifications."""
from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping, Optional

from utilities.errors import DomainError

# Race points since 2010, positions 1-10. Everything beyond 10th scores 0.
POINTS_SINCE_2010: Mapping[int, int] = MappingProxyType(
    {1: 25, 2: 18, 3: 15, 4: 12, 5: 10, 6: 8, 7: 6, 8: 4, 9: 2, 10: 1}
)

# First season awarding a point for the fastest lap (top-10 finishers only).
FASTEST_LAP_FIRST_YEAR = 2019
FASTEST_LAP_MAX_POSITION = 10


@dataclass(frozen=True)
class PointsScheme:
    position_points: Mapping[int, int] = field(default_factory=lambda: POINTS_SINCE_2010)
    fastest_lap_bonus: bool = False
    fastest_lap_requires_top10: bool = field(default=True, init=False)

    def __post_init__(self):
        for position, points in self.position_points.items():
            if isinstance(position, bool) or not isinstance(position, int) or position < 1:
                raise DomainError(f"Points scheme positions must be positive integers, got {position!r}.")
            if points < 0:
                raise DomainError(f"Points must be non-negative, position {position} has {points}.")
        object.__setattr__(self, "position_points", MappingProxyType(dict(self.position_points)))

    @classmethod
    def for_year(cls, year: int, fastest_lap_bonus: Optional[bool] = None) -> "PointsScheme":
        """Default scheme for a season; the bonus switches on from 2019 unless overridden."""
        if fastest_lap_bonus is None:
            fastest_lap_bonus = year >= FASTEST_LAP_FIRST_YEAR
        return cls(fastest_lap_bonus=fastest_lap_bonus)

    def points_for_position(self, position: int) -> int:
        return self.position_points.get(position, 0)


def points_for_entry(entry, scheme: PointsScheme) -> int:
    """Points earned by one RaceEntry; non-finishers score nothing."""
    if not entry.finished:
        return 0
    points = scheme.points_for_position(entry.position)
    if scheme.fastest_lap_bonus and entry.fastest_lap and entry.position <= FASTEST_LAP_MAX_POSITION:
        points += 1
    return points

"""Race and season model: classifications, entries, rosters."""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Tuple

from utilities.errors import DataError, StructuralError

from .points import PointsScheme


class EntryStatus(str, Enum):
    FIN = "FIN"
    DNF = "DNF"
    DNS = "DNS"
    DSQ = "DSQ"


class Entity(str, Enum):
    DRIVERS = "drivers"
    CONSTRUCTORS = "constructors"


@dataclass(frozen=True)
class RaceEntry:
    entrant_id: str
    status: EntryStatus
    position: Optional[int] = None
    fastest_lap: bool = False
    name: str = ""

    def __post_init__(self):
        if (self.status is EntryStatus.FIN) != (self.position is not None):
            raise DataError(
                f"{self.entrant_id}: a position is required exactly when status is FIN.",
                {"entrant_id": self.entrant_id, "status": self.status.value},
            )
        if self.position is not None and self.position < 1:
            raise DataError(f"{self.entrant_id}: position must be >= 1.")

    @property
    def finished(self) -> bool:
        return self.status is EntryStatus.FIN


@dataclass(frozen=True)
class GpClassification:
    label: str
    entries: Tuple[RaceEntry, ...]

    def __post_init__(self):
        entries = tuple(self.entries)
        object.__setattr__(self, "entries", entries)

        ids = [e.entrant_id for e in entries]
        dupes = sorted({i for i in ids if ids.count(i) > 1})
        if dupes:
            raise DataError(f"{self.label}: duplicate entrants {dupes}.", {"race": self.label})

        positions = sorted(e.position for e in entries if e.finished)
        if not positions or positions != list(range(1, len(positions) + 1)):
            raise DataError(
                f"{self.label}: finishing positions must form 1..k with no gaps or repeats.",
                {"race": self.label, "positions": positions},
            )

    def entry_for(self, entrant_id: str) -> Optional[RaceEntry]:
        for entry in self.entries:
            if entry.entrant_id == entrant_id:
                return entry
        return None


@dataclass(frozen=True)
class RosterEntry:
    entrant_id: str
    name: str
    team: Optional[str] = None


@dataclass(frozen=True)
class Team:
    team_id: str
    name: str


@dataclass(frozen=True)
class SeasonDataset:
    year: int
    entity: Entity
    races: Tuple[GpClassification, ...]
    roster: Tuple[RosterEntry, ...]
    scheme: PointsScheme = field(default_factory=PointsScheme)
    teams: Tuple[Team, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "races", tuple(self.races))
        object.__setattr__(self, "roster", tuple(self.roster))

        ids = [r.entrant_id for r in self.roster]
        if len(set(ids)) != len(ids):
            raise DataError(f"Season {self.year}: duplicate roster ids.")
        known = set(ids)
        for race in self.races:
            for entry in race.entries:
                if entry.entrant_id not in known:
                    raise DataError(
                        f"Season {self.year}, {race.label}: entrant {entry.entrant_id!r} is not in the roster.",
                        {"race": race.label, "entrant_id": entry.entrant_id},
                    )

        # Teams default to first-appearance order in the roster.
        teams = tuple(self.teams)
        if not teams:
            seen: Dict[str, Team] = {}
            for r in self.roster:
                if r.team and r.team not in seen:
                    seen[r.team] = Team(r.team, r.team)
            teams = tuple(seen.values())
        object.__setattr__(self, "teams", teams)

        if self.entity is Entity.CONSTRUCTORS:
            team_ids = {t.team_id for t in teams}
            for r in self.roster:
                if not r.team:
                    raise DataError(
                        f"Season {self.year}: driver {r.entrant_id!r} has no team.",
                        {"entrant_id": r.entrant_id},
                    )
                if r.team not in team_ids:
                    raise DataError(
                        f"Season {self.year}: driver {r.entrant_id!r} maps to unknown team {r.team!r}.",
                        {"entrant_id": r.entrant_id, "team": r.team},
                    )

    @property
    def roster_ids(self) -> List[str]:
        return [r.entrant_id for r in self.roster]

    @property
    def team_of(self) -> Dict[str, str]:
        return {r.entrant_id: r.team for r in self.roster if r.team}

    @property
    def team_ids(self) -> List[str]:
        return [t.team_id for t in self.teams]

    def display_name(self, entrant_id: str) -> str:
        for r in self.roster:
            if r.entrant_id == entrant_id:
                return r.name
        for t in self.teams:
            if t.team_id == entrant_id:
                return t.name
        return entrant_id

    def require_races(self, minimum: int = 2) -> None:
        if len(self.races) < minimum:
            raise StructuralError(
                f"Season {self.year} has {len(self.races)} race(s); at least {minimum} are required.",
                {"races": len(self.races)},
            )

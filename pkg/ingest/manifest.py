"""Season manifests: one JSON document naming the race files of a season.

    {
      "year": 2012,
      "entity": "constructors",
      "races": ["gp01.csv", {"label": "GP2", "path": "gp02.csv"}],
      "roster": [{"id": "vettel", "name": "Sebastian Vettel", "team": "red_bull"}],
      "teams": [{"id": "red_bull", "name": "Red Bull Racing"}],
      "fastest_lap_bonus": false
    }

Race paths are relative to the manifest. `teams` (display order and names)
and `fastest_lap_bonus` are optional; the bonus defaults to the year rule.
"""
from __future__ import annotations

import json
import logging
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from f1_model import Entity, GpClassification, PointsScheme, RosterEntry, SeasonDataset, Team
from utilities.errors import DataError, ParseError, StructuralError

from .gp_csv import parse_gp_csv

log = logging.getLogger(__name__)

DEFAULT_WORKERS = 4


def _require(doc: Dict[str, Any], key: str, kind, what: str):
    if key not in doc:
        raise ParseError(f"Manifest is missing '{key}'.")
    value = doc[key]
    if isinstance(value, bool) and kind is not bool:
        raise ParseError(f"'{key}' must be {what}.")
    if not isinstance(value, kind):
        raise ParseError(f"'{key}' must be {what}.")
    return value


def _clean_str(value: Any, field: str) -> str:
    if not isinstance(value, str) or not value.strip():
        raise ParseError(f"'{field}' must be a non-empty string.")
    return value.strip()


def _race_refs(races: List[Any]) -> List[Tuple[str, str]]:
    refs = []
    for i, item in enumerate(races, start=1):
        if isinstance(item, str):
            refs.append((f"GP{i}", _clean_str(item, f"races[{i - 1}]")))
        elif isinstance(item, dict):
            refs.append((
                _clean_str(item.get("label"), f"races[{i - 1}].label"),
                _clean_str(item.get("path"), f"races[{i - 1}].path"),
            ))
        else:
            raise ParseError(f"races[{i - 1}] must be a path or a {{label, path}} object.")
    labels = [label for label, _ in refs]
    if len(set(labels)) != len(labels):
        raise DataError("Race labels must be unique.", {"labels": labels})
    return refs


def _roster(items: List[Any]) -> List[RosterEntry]:
    roster = []
    for i, item in enumerate(items):
        if not isinstance(item, dict):
            raise ParseError(f"roster[{i}] must be an object with id, name and team.")
        team = item.get("team")
        if team is not None:
            team = _clean_str(team, f"roster[{i}].team")
        roster.append(RosterEntry(
            entrant_id=_clean_str(item.get("id"), f"roster[{i}].id"),
            name=_clean_str(item.get("name"), f"roster[{i}].name"),
            team=team,
        ))
    ids = [r.entrant_id for r in roster]
    dupes = sorted({x for x in ids if ids.count(x) > 1})
    if dupes:
        raise DataError(f"Duplicate roster ids: {dupes}.", {"ids": dupes})
    return roster


def _teams(items: Optional[List[Any]]) -> List[Team]:
    if items is None:
        return []
    if not isinstance(items, list):
        raise ParseError("'teams' must be a list of {id, name} objects.")
    teams = []
    for i, item in enumerate(items):
        if not isinstance(item, dict):
            raise ParseError(f"teams[{i}] must be an object with id and name.")
        teams.append(Team(_clean_str(item.get("id"), f"teams[{i}].id"), _clean_str(item.get("name"), f"teams[{i}].name")))
    ids = [t.team_id for t in teams]
    if len(set(ids)) != len(ids):
        raise DataError("Duplicate team ids in 'teams'.", {"ids": ids})
    return teams


def _load_race(base_dir: Path, label: str, rel_path: str) -> GpClassification:
    path = base_dir / rel_path
    try:
        data = path.read_bytes()
    except FileNotFoundError:
        raise DataError(f"Race file not found: {path}", {"race": label, "path": str(path)})
    except OSError as e:
        raise DataError(f"Cannot read race file {path}: {e}", {"race": label, "path": str(path)})
    try:
        return parse_gp_csv(data, label=label)
    except ParseError as e:
        raise e.with_path(str(path))


def parse_season_manifest(
    data: bytes,
    base_dir: Union[str, Path] = ".",
    max_workers: int = DEFAULT_WORKERS,
) -> SeasonDataset:
    try:
        doc = json.loads(data.decode("utf-8"))
    except UnicodeDecodeError:
        raise ParseError("Manifest is not valid UTF-8.")
    except json.JSONDecodeError as e:
        raise ParseError(f"Manifest is not valid JSON: {e.msg}", line=e.lineno)
    if not isinstance(doc, dict):
        raise ParseError("Manifest must be a JSON object.")

    year = _require(doc, "year", int, "an integer")
    entity_raw = _require(doc, "entity", str, "'drivers' or 'constructors'")
    try:
        entity = Entity(entity_raw)
    except ValueError:
        raise ParseError(f"'entity' must be 'drivers' or 'constructors', got {entity_raw!r}.")
    races = _require(doc, "races", list, "a list of race files")
    roster = _roster(_require(doc, "roster", list, "a list of roster entries"))
    teams = _teams(doc.get("teams"))

    bonus = doc.get("fastest_lap_bonus")
    if bonus is not None and not isinstance(bonus, bool):
        raise ParseError("'fastest_lap_bonus' must be true, false or omitted.")

    refs = _race_refs(races)
    if len(refs) < 2:
        raise StructuralError(f"Season {year} lists {len(refs)} race(s); at least 2 are required.")

    base_dir = Path(base_dir)
    # executor.map keeps race order regardless of completion order
    with ThreadPoolExecutor(max_workers=max(1, max_workers)) as pool:
        classifications = list(pool.map(lambda ref: _load_race(base_dir, *ref), refs))

    season = SeasonDataset(
        year=year,
        entity=entity,
        races=tuple(classifications),
        roster=tuple(roster),
        scheme=PointsScheme.for_year(year, bonus),
        teams=tuple(teams),
    )
    log.info("Loaded season %s (%s): %d races, %d entrants, %d teams",
             year, entity.value, len(season.races), len(season.roster), len(season.teams))
    return season


def load_season_manifest(path: Union[str, Path], max_workers: int = DEFAULT_WORKERS) -> SeasonDataset:
    path = Path(path)
    try:
        data = path.read_bytes()
    except OSError as e:
        raise DataError(f"Cannot read manifest {path}: {e.strerror or e}", {"path": str(path)})
    try:
        return parse_season_manifest(data, base_dir=path.parent, max_workers=max_workers)
    except ParseError as e:
        if e.path is None:
            e.with_path(str(path))
        raise

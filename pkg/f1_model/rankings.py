"""Rankings built from race classifications.

Drivers rank by finishing position, non-finishers absent. Constructors rank
by race score with dense ranks (1, 2, 2, 3); zero-score constructors are
tied last (Method 1) or absent (Method 2).
"""
from __future__ import annotations

import logging
from collections import Counter, defaultdict
from enum import Enum
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from rank_core import ABSENT, Ranking, RankingSeries
from utilities.errors import DataError, DomainError

from .points import PointsScheme, points_for_entry
from .race import Entity, GpClassification, SeasonDataset

log = logging.getLogger(__name__)


class SeriesMethod(str, Enum):
    DRIVERS = "drivers"
    CONSTRUCTORS_M1 = "m1"
    CONSTRUCTORS_M2 = "m2"

    @property
    def is_constructors(self) -> bool:
        return self is not SeriesMethod.DRIVERS


def drivers_ranking(gp: GpClassification, roster: Sequence[str]) -> Ranking:
    """Finishing positions over the roster universe; everyone else is absent."""
    index = {entrant_id: i for i, entrant_id in enumerate(roster)}
    slots: List[Optional[int]] = [ABSENT] * len(roster)
    for entry in gp.entries:
        if entry.entrant_id not in index:
            raise DataError(
                f"{gp.label}: entrant {entry.entrant_id!r} is missing from the roster.",
                {"race": gp.label, "entrant_id": entry.entrant_id},
            )
        if entry.finished:
            slots[index[entry.entrant_id]] = entry.position
    return Ranking(tuple(slots))


def constructor_scores(
    gp: GpClassification,
    team_of: Mapping[str, str],
    scheme: PointsScheme,
    teams: Optional[Sequence[str]] = None,
) -> Dict[str, int]:
    """Per-team sum of its entries' points in one race, in team order."""
    if teams is None:
        teams = list(dict.fromkeys(team_of.values()))
    scores: Dict[str, int] = {team: 0 for team in teams}
    for entry in gp.entries:
        team = team_of.get(entry.entrant_id)
        if team is None:
            raise DataError(
                f"{gp.label}: driver {entry.entrant_id!r} is not mapped to a team.",
                {"race": gp.label, "entrant_id": entry.entrant_id},
            )
        if team not in scores:
            raise DataError(f"{gp.label}: team {team!r} is not part of the season.", {"team": team})
        scores[team] += points_for_entry(entry, scheme)
    return scores


def _dense_ranks(scores: Mapping[str, float]) -> Dict[float, int]:
    for team, score in scores.items():
        if score < 0:
            raise DomainError(f"Constructor {team!r} has a negative score ({score}).")
    distinct = sorted({s for s in scores.values() if s > 0}, reverse=True)
    return {score: rank for rank, score in enumerate(distinct, start=1)}


def constructors_ranking_m1(scores: Mapping[str, float]) -> Ranking:
    """Dense ranks by score; every zero-score team tied at the next rank."""
    ranks = _dense_ranks(scores)
    last = len(ranks) + 1
    return Ranking(tuple(ranks[s] if s > 0 else last for s in scores.values()))


def constructors_ranking_m2(scores: Mapping[str, float]) -> Ranking:
    """Dense ranks by score; zero-score teams absent."""
    ranks = _dense_ranks(scores)
    return Ranking(tuple(ranks[s] if s > 0 else ABSENT for s in scores.values()))


def race_ranking(season: SeasonDataset, gp: GpClassification, method: SeriesMethod) -> Ranking:
    if method is SeriesMethod.DRIVERS:
        return drivers_ranking(gp, season.roster_ids)
    scores = constructor_scores(gp, season.team_of, season.scheme, season.team_ids)
    if method is SeriesMethod.CONSTRUCTORS_M1:
        return constructors_ranking_m1(scores)
    return constructors_ranking_m2(scores)


def season_series(season: SeasonDataset, method: SeriesMethod) -> RankingSeries:
    """One ranking per GP, in race order."""
    method = SeriesMethod(method)
    season.require_races(2)
    rankings = tuple(race_ranking(season, gp, method) for gp in season.races)
    log.debug("Season %s (%s): built %d rankings over %d entrants",
              season.year, method.value, len(rankings), rankings[0].universe_size)
    return RankingSeries(rankings, tuple(gp.label for gp in season.races))


def _totals_and_finishes(season: SeasonDataset, by_team: bool) -> Tuple[Dict[str, int], Dict[str, Counter]]:
    totals: Dict[str, int] = defaultdict(int)
    finishes: Dict[str, Counter] = defaultdict(Counter)
    team_of = season.team_of
    for gp in season.races:
        for entry in gp.entries:
            key = entry.entrant_id
            if by_team:
                key = team_of.get(key)
                if key is None:
                    raise DataError(f"{gp.label}: driver {entry.entrant_id!r} is not mapped to a team.")
            totals[key] += points_for_entry(entry, season.scheme)
            if entry.finished:
                finishes[key][entry.position] += 1
    return totals, finishes


def accumulate_standings(season: SeasonDataset, entity: Optional[Entity] = None) -> List[Tuple[str, int]]:
    """Final classification: total points, then countback, then roster order.

    `entity` defaults to the season's own; pass Entity.CONSTRUCTORS to rank
    teams from a drivers dataset that carries team assignments.
    """
    by_team = Entity(entity or season.entity) is Entity.CONSTRUCTORS
    order = season.team_ids if by_team else season.roster_ids
    totals, finishes = _totals_and_finishes(season, by_team)

    deepest = max((max(c) for c in finishes.values() if c), default=0)

    def sort_key(item):
        index, entrant_id = item
        countback = tuple(-finishes[entrant_id][pos] for pos in range(1, deepest + 1))
        return (-totals[entrant_id], countback, index)

    ranked = sorted(enumerate(order), key=sort_key)
    return [(entrant_id, totals[entrant_id]) for _, entrant_id in ranked]

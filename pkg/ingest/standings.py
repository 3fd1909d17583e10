"""League standings matrices: one row per team, one column per round.

    entrant_id,R1,R2,R3
    barcelona,1,1,2
    real_madrid,2,3,1
    ...

Every column must be a complete, untied permutation of 1..n: published
tables break ties on goal difference, so football rankings carry no ties.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Tuple

from rank_core import Ranking, RankingSeries
from utilities.errors import ParseError, StructuralError

from .gp_csv import decode_utf8, parse_positive_int, read_csv_rows, write_csv_rows

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class StandingsMatrix:
    entrants: Tuple[str, ...]
    rounds: Tuple[str, ...]
    positions: Tuple[Tuple[int, ...], ...]  # positions[row][column]

    def column(self, j: int) -> Tuple[int, ...]:
        return tuple(row[j] for row in self.positions)

    def to_series(self) -> RankingSeries:
        return RankingSeries(
            tuple(Ranking(self.column(j)) for j in range(len(self.rounds))),
            self.rounds,
        )


def read_standings_matrix(data: bytes) -> StandingsMatrix:
    rows = read_csv_rows(decode_utf8(data))

    first = next(rows, None)
    if first is None:
        raise ParseError("Empty file: expected a header row.", line=1)
    line, header = first
    if not header or header[0] != "entrant_id":
        raise ParseError("First column must be 'entrant_id'.", line=line)
    rounds = header[1:]
    if any(not r for r in rounds):
        raise ParseError("Round labels must not be empty.", line=line)
    if len(set(rounds)) != len(rounds):
        raise ParseError("Round labels must be unique.", line=line)
    if len(rounds) < 2:
        raise StructuralError(f"A standings series needs at least 2 rounds, got {len(rounds)}.")

    entrants: List[str] = []
    positions: List[Tuple[int, ...]] = []
    for line, row in rows:
        if len(row) != len(header):
            raise ParseError(f"Ragged row: expected {len(header)} fields, got {len(row)}.", line=line)
        entrant_id = row[0]
        if not entrant_id:
            raise ParseError("entrant_id must not be empty.", line=line)
        if entrant_id in entrants:
            raise ParseError(f"Duplicate entrant {entrant_id!r}.", line=line)
        entrants.append(entrant_id)
        positions.append(tuple(parse_positive_int(cell, line, "position") for cell in row[1:]))

    n = len(entrants)
    if n < 2:
        raise StructuralError(f"A standings table needs at least 2 entrants, got {n}.")

    expected = list(range(1, n + 1))
    for j, label in enumerate(rounds):
        column = sorted(row[j] for row in positions)
        if column != expected:
            raise ParseError(
                f"Round {label!r} is not a permutation of 1..{n}.",
                details={"round": label, "positions": column},
            )

    log.debug("Parsed standings: %d entrants x %d rounds", n, len(rounds))
    return StandingsMatrix(tuple(entrants), tuple(rounds), tuple(positions))


def parse_standings_matrix(data: bytes) -> RankingSeries:
    return read_standings_matrix(data).to_series()


def write_standings_matrix(matrix: StandingsMatrix) -> bytes:
    rows = [["entrant_id", *matrix.rounds]]
    rows.extend([entrant_id, *row] for entrant_id, row in zip(matrix.entrants, matrix.positions))
    return write_csv_rows(rows)

"""Ranking value types.

A ranking over a universe V = {v_1, ..., v_n} is the vector of positions
[a_1, ..., a_n]; equal positions are ties and `None` (ABSENT) marks an
element that was not ranked.
"""
from __future__ import annotations

import numbers
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence, Tuple, Union

from utilities.errors import DomainError, StructuralError

ABSENT = None
ABSENT_MARK = "•"

Slot = Optional[int]


def _coerce_slot(value: Union[int, str, None], index: int) -> Slot:
    if value is None or value == ABSENT_MARK:
        return ABSENT
    if isinstance(value, bool) or not isinstance(value, numbers.Integral):
        raise DomainError(
            f"Position at slot {index} must be a positive integer or absent, got {value!r}.",
            {"slot": index},
        )
    if value < 1:
        raise DomainError(f"Position at slot {index} must be >= 1, got {value}.", {"slot": index})
    return int(value)


@dataclass(frozen=True)
class Ranking:
    entries: Tuple[Slot, ...]

    def __post_init__(self):
        entries = tuple(_coerce_slot(v, i) for i, v in enumerate(self.entries))
        if len(entries) < 2:
            raise StructuralError(f"A ranking needs a universe of n > 1 elements, got {len(entries)}.")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def of(cls, *values: Union[int, str, None]) -> "Ranking":
        """Ranking.of(1, 2, "•"): positional shorthand for the constructor."""
        return cls(tuple(values))

    @property
    def universe_size(self) -> int:
        return len(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[Slot]:
        return iter(self.entries)

    def present(self) -> Tuple[int, ...]:
        """Indices of ranked (non-absent) elements."""
        return tuple(i for i, v in enumerate(self.entries) if v is not ABSENT)

    @property
    def is_complete(self) -> bool:
        return all(v is not ABSENT for v in self.entries)

    @property
    def has_ties(self) -> bool:
        ranked = [v for v in self.entries if v is not ABSENT]
        return len(set(ranked)) != len(ranked)

    def permuted(self, order: Sequence[int]) -> "Ranking":
        """Relabel the universe: slot k of the result is slot order[k] of self."""
        if sorted(order) != list(range(len(self.entries))):
            raise StructuralError("Relabeling order must be a permutation of the universe indices.")
        return Ranking(tuple(self.entries[i] for i in order))

    def render(self) -> str:
        return "[" + ",".join(ABSENT_MARK if v is ABSENT else str(v) for v in self.entries) + "]"


@dataclass(frozen=True)
class RankingSeries:
    rankings: Tuple[Ranking, ...]
    labels: Optional[Tuple[str, ...]] = None

    def __post_init__(self):
        rankings = tuple(self.rankings)
        if len(rankings) < 2:
            raise StructuralError(f"A ranking series needs m >= 2 rankings, got {len(rankings)}.")
        sizes = {r.universe_size for r in rankings}
        if len(sizes) != 1:
            raise StructuralError(
                "All rankings in a series must share the same universe size.",
                {"sizes": sorted(sizes)},
            )
        object.__setattr__(self, "rankings", rankings)
        if self.labels is not None:
            labels = tuple(self.labels)
            if len(labels) != len(rankings):
                raise StructuralError(
                    f"Got {len(labels)} labels for {len(rankings)} rankings."
                )
            object.__setattr__(self, "labels", labels)

    @classmethod
    def from_lists(cls, rows: Iterable[Sequence[Union[int, str, None]]], labels=None) -> "RankingSeries":
        return cls(tuple(Ranking(tuple(r)) for r in rows), labels)

    @property
    def m(self) -> int:
        return len(self.rankings)

    @property
    def universe_size(self) -> int:
        return self.rankings[0].universe_size

    def label(self, index: int) -> str:
        if self.labels is None:
            return f"R{index + 1}"
        return self.labels[index]

    def consecutive_pairs(self) -> Iterator[Tuple[int, Ranking, Ranking]]:
        for k in range(len(self.rankings) - 1):
            yield k, self.rankings[k], self.rankings[k + 1]

    def permuted(self, order: Sequence[int]) -> "RankingSeries":
        return RankingSeries(tuple(r.permuted(order) for r in self.rankings), self.labels)


@dataclass(frozen=True)
class PenaltyConfig:
    """Cost assigned to a pair tied in exactly one of the two rankings."""

    p: float = 0.5

    def __post_init__(self):
        p = self.p
        if isinstance(p, bool) or not isinstance(p, (int, float)) or not (0.0 <= p <= 0.5):
            raise DomainError(f"Penalty parameter p must lie in [0, 1/2], got {p!r}.", {"p": p})
        object.__setattr__(self, "p", float(p))

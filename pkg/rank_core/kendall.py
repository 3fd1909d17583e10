"""Pairwise Kendall coefficients for two rankings over the same universe.

Only pairs whose two elements are ranked in both rankings ("comparable"
pairs) take part. Each comparable pair is exactly one of:

    concordant     same strict order in both rankings
    discordant     opposite strict orders
    tie_penalized  tied in exactly one ranking (costs p)
    tied_both      tied in both rankings (costs nothing)
"""
from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from utilities.errors import DomainError, NoComparablePairs, StructuralError

from .rankings import ABSENT, PenaltyConfig, Ranking

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class PairTally:
    concordant: int
    discordant: int
    tie_penalized: int
    tied_both: int
    comparable: int

    @property
    def P(self) -> int:
        return self.concordant

    @property
    def Q(self) -> int:
        return self.discordant


def _check_same_universe(a: Ranking, b: Ranking) -> None:
    if a.universe_size != b.universe_size:
        raise StructuralError(
            f"Rankings have different universe sizes ({a.universe_size} vs {b.universe_size}).",
            {"left": a.universe_size, "right": b.universe_size},
        )


def tally_pairs(a: Ranking, b: Ranking) -> PairTally:
    _check_same_universe(a, b)

    both = [i for i in range(a.universe_size) if a.entries[i] is not ABSENT and b.entries[i] is not ABSENT]
    k = len(both)
    if k < 2:
        return PairTally(0, 0, 0, 0, 0)

    av = np.array([a.entries[i] for i in both], dtype=np.int64)
    bv = np.array([b.entries[i] for i in both], dtype=np.int64)
    upper = np.triu_indices(k, 1)
    sa = np.sign(av[:, None] - av[None, :])[upper]
    sb = np.sign(bv[:, None] - bv[None, :])[upper]

    agreement = sa * sb
    tied_a = sa == 0
    tied_b = sb == 0
    return PairTally(
        concordant=int(np.count_nonzero(agreement > 0)),
        discordant=int(np.count_nonzero(agreement < 0)),
        tie_penalized=int(np.count_nonzero(tied_a ^ tied_b)),
        tied_both=int(np.count_nonzero(tied_a & tied_b)),
        comparable=k * (k - 1) // 2,
    )


def kendall_tau_classic(a: Ranking, b: Ranking) -> float:
    """Kendall's tau = 2(P - Q) / n(n - 1) for complete, strictly ordered rankings."""
    _check_same_universe(a, b)
    for name, r in (("first", a), ("second", b)):
        if not r.is_complete or r.has_ties:
            raise DomainError(
                f"The {name} ranking has ties or absent elements; "
                "use tau_corrected_pair for incomplete or tied rankings.",
                {"ranking": r.render()},
            )
    n = a.universe_size
    tally = tally_pairs(a, b)
    return 2.0 * (tally.concordant - tally.discordant) / (n * (n - 1))


def _distance_from_tally(tally: PairTally, cfg: PenaltyConfig) -> float:
    if tally.comparable == 0:
        raise NoComparablePairs("The two rankings share fewer than two ranked elements.")
    return (tally.discordant + cfg.p * tally.tie_penalized) / tally.comparable


def kendall_dist_p(a: Ranking, b: Ranking, cfg: PenaltyConfig = PenaltyConfig()) -> float:
    """Normalized Kendall distance with penalty p, in [0, 1]."""
    return _distance_from_tally(tally_pairs(a, b), cfg)


def tau_from_tally(tally: PairTally, cfg: PenaltyConfig) -> float:
    return 1.0 - 2.0 * _distance_from_tally(tally, cfg)


def tau_corrected_pair(a: Ranking, b: Ranking, cfg: PenaltyConfig = PenaltyConfig()) -> float:
    """Corrected two-ranking coefficient, normalized by comparable pairs."""
    return tau_from_tally(tally_pairs(a, b), cfg)

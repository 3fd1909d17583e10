"""Ranking mathematics: pair tallies, Kendall coefficients, Normalized Strength."""

from .rankings import ABSENT, ABSENT_MARK, PenaltyConfig, Ranking, RankingSeries
from .kendall import (
    PairTally,
    kendall_dist_p,
    kendall_tau_classic,
    tally_pairs,
    tau_corrected_pair,
)
from .evolutive import NsResult, PairDetail, normalized_strength, tau_evolutive

__all__ = [
    "ABSENT",
    "ABSENT_MARK",
    "PenaltyConfig",
    "Ranking",
    "RankingSeries",
    "PairTally",
    "kendall_dist_p",
    "kendall_tau_classic",
    "tally_pairs",
    "tau_corrected_pair",
    "NsResult",
    "PairDetail",
    "normalized_strength",
    "tau_evolutive",
]

"""Evolutive coefficient over a series of rankings and the Normalized Strength index."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional

from utilities.errors import AllPairsIncomparable, DomainError

from .kendall import tally_pairs, tau_from_tally
from .rankings import PenaltyConfig, RankingSeries

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class PairDetail:
    index: int
    from_label: str
    to_label: str
    tau: Optional[float]
    comparable: int
    skipped: bool

    def to_dict(self):
        return {
            "index": self.index,
            "from": self.from_label,
            "to": self.to_label,
            "tau": self.tau,
            "comparable": self.comparable,
            "skipped": self.skipped,
        }


@dataclass(frozen=True)
class NsResult:
    tau_ev: float
    ns: float
    pair_details: List[PairDetail] = field(default_factory=list)
    skipped_pairs: int = 0


def normalized_strength(tau_ev: float) -> float:
    """NS = (1 - tau_ev) / 2."""
    if isinstance(tau_ev, bool) or not isinstance(tau_ev, (int, float)) or not (-1.0 <= tau_ev <= 1.0):
        raise DomainError(f"tau_ev must lie in [-1, 1], got {tau_ev!r}.")
    return (1.0 - tau_ev) / 2.0


def tau_evolutive(series: RankingSeries, cfg: PenaltyConfig = PenaltyConfig()) -> NsResult:
    """Mean corrected coefficient over the m - 1 consecutive ranking pairs.

    Pairs with no comparable element pair are skipped and counted.
    """
    details: List[PairDetail] = []
    values: List[float] = []

    for k, a, b in series.consecutive_pairs():
        tally = tally_pairs(a, b)
        skipped = tally.comparable == 0
        tau = None if skipped else tau_from_tally(tally, cfg)
        details.append(PairDetail(
            index=k,
            from_label=series.label(k),
            to_label=series.label(k + 1),
            tau=tau,
            comparable=tally.comparable,
            skipped=skipped,
        ))
        if skipped:
            log.info("Skipping %s -> %s: no comparable pairs", series.label(k), series.label(k + 1))
        else:
            values.append(tau)
            log.debug("%s -> %s: tau=%.6f over %d pairs", series.label(k), series.label(k + 1), tau, tally.comparable)

    skipped_pairs = len(details) - len(values)
    if not values:
        raise AllPairsIncomparable(
            f"None of the {len(details)} consecutive ranking pairs has a comparable element pair.",
            {"pairs": len(details)},
        )

    tau_ev = math.fsum(values) / len(values)
    # fsum keeps the mean inside [-1, 1]; clamp guards the last ulp.
    tau_ev = min(1.0, max(-1.0, tau_ev))
    return NsResult(
        tau_ev=tau_ev,
        ns=normalized_strength(tau_ev),
        pair_details=details,
        skipped_pairs=skipped_pairs,
    )

"""Report builders behind the CLI commands.

Everything here works on parsed data and returns plain dicts or dataclasses;
`commands` owns files, output formats and exit codes.
"""
from __future__ import annotations

import logging
import math
import statistics
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Mapping, Optional, Sequence, Tuple

from config import Config
from f1_model import (
    Entity,
    SeasonDataset,
    SeriesMethod,
    accumulate_standings,
    constructor_scores,
    constructors_ranking_m1,
    constructors_ranking_m2,
    drivers_ranking,
    season_series,
)
from rank_core import ABSENT_MARK, PairDetail, PenaltyConfig, RankingSeries, tau_evolutive
from stats import (
    TestResult,
    shapiro_wilk,
    summarize,
    t_test_paired,
    t_test_two_sample_pooled,
    t_test_welch,
    variance_ratio,
)
from utilities.errors import SCHEMA_VERSION, DomainError, RankdriftError

from .rows import ReportRow, aligned, group_rows, series_by_year

log = logging.getLogger(__name__)

NS_COLUMNS = [
    "schema_version", "series", "year", "entity", "method", "tau_ev", "ns",
    "skipped_pairs", "m", "n", "published_ns", "flagged",
]
SUMMARY_COLUMNS = ["group", "n", "mean", "sample_std", "min", "q1", "median", "q3", "max"]
PLOT_COLUMNS = ["group", "min", "q1", "median", "q3", "max"]
F1_SERIES = ("drivers", "m1", "m2")

PublishedNs = Mapping[Tuple[str, int], float]


# --- ns ---------------------------------------------------------------------

@dataclass(frozen=True)
class SeasonReport:
    series: str
    year: int
    entity: str
    method: str
    tau_ev: float
    ns: float
    skipped_pairs: int
    m: int
    n: int
    published_ns: Optional[float] = None
    flagged: bool = False
    pair_details: Tuple[PairDetail, ...] = ()

    @property
    def sort_key(self) -> Tuple[int, str, str]:
        return (self.year, self.entity, self.method)

    def to_row(self) -> Dict[str, Any]:
        return {
            "schema_version": SCHEMA_VERSION,
            "series": self.series,
            "year": self.year,
            "entity": self.entity,
            "method": self.method,
            "tau_ev": self.tau_ev,
            "ns": self.ns,
            "skipped_pairs": self.skipped_pairs,
            "m": self.m,
            "n": self.n,
            "published_ns": self.published_ns,
            "flagged": self.flagged,
        }

    def to_dict(self, details: bool = False) -> Dict[str, Any]:
        data = self.to_row()
        del data["schema_version"]
        if details:
            data["pairs"] = [d.to_dict() for d in self.pair_details]
        return data


def published_lookup(rows: Sequence[ReportRow]) -> Dict[Tuple[str, int], float]:
    return {(r.series, r.year): r.ns for r in rows}


def _series_report(
    series: RankingSeries,
    *,
    name: str,
    year: int,
    entity: str,
    method: str,
    penalty: float,
    published: Optional[PublishedNs],
    tolerance: float,
) -> SeasonReport:
    result = tau_evolutive(series, PenaltyConfig(penalty))
    reference = (published or {}).get((name, year))
    flagged = reference is not None and abs(result.ns - reference) > tolerance
    if flagged:
        log.warning("%s %s: ns %.4f differs from the published %.4f by more than %g",
                    name, year, result.ns, reference, tolerance)
    return SeasonReport(
        series=name,
        year=year,
        entity=entity,
        method=method,
        tau_ev=result.tau_ev,
        ns=result.ns,
        skipped_pairs=result.skipped_pairs,
        m=series.m,
        n=series.universe_size,
        published_ns=reference,
        flagged=flagged,
        pair_details=tuple(result.pair_details),
    )


def season_ns_report(
    season: SeasonDataset,
    method: SeriesMethod,
    penalty: float = Config.DEFAULT_PENALTY,
    published: Optional[PublishedNs] = None,
    tolerance: float = Config.NS_FLAG_TOLERANCE,
) -> SeasonReport:
    """F1 pipeline: season -> ranking series -> tau_ev -> NS."""
    method = SeriesMethod(method)
    entity = Entity.CONSTRUCTORS if method.is_constructors else Entity.DRIVERS
    return _series_report(
        season_series(season, method),
        name=method.value,
        year=season.year,
        entity=entity.value,
        method=method.value,
        penalty=penalty,
        published=published,
        tolerance=tolerance,
    )


def standings_ns_report(
    series: RankingSeries,
    name: str,
    year: int,
    penalty: float = Config.DEFAULT_PENALTY,
    published: Optional[PublishedNs] = None,
    tolerance: float = Config.NS_FLAG_TOLERANCE,
) -> SeasonReport:
    """Football pipeline: matchday standings -> tau_ev -> NS."""
    return _series_report(
        series,
        name=name,
        year=year,
        entity="teams",
        method="standings",
        penalty=penalty,
        published=published,
        tolerance=tolerance,
    )


# --- summary ----------------------------------------------------------------

def summary_report(rows: Sequence[ReportRow], group_by: Sequence[str] = ("series",)) -> List[Dict[str, Any]]:
    """One StatSummary per group, groups in first-seen order."""
    out = []
    for name, members in group_rows(rows, group_by).items():
        try:
            summary = summarize([r.ns for r in members])
        except DomainError as e:
            raise DomainError(f"Group {name!r}: {e.message}", {"group": name, "n": len(members)})
        out.append({"group": name, **summary.to_dict()})
    return out


def plot_rows(summary: Sequence[Mapping[str, Any]]) -> List[Dict[str, Any]]:
    """Five-number summaries, one box per group."""
    return [{k: row[k] for k in PLOT_COLUMNS} for row in summary]


# --- tests ------------------------------------------------------------------

def _test_entry(name: str, samples: Sequence[str], result: TestResult, alpha: float) -> Dict[str, Any]:
    return {"name": name, "samples": list(samples), **result.to_dict(), "reject_null": result.rejects(alpha)}


def significance_report(
    rows: Sequence[ReportRow],
    alpha: float = Config.ALPHA,
    ratio_limit: float = Config.VARIANCE_RATIO_LIMIT,
) -> Dict[str, Any]:
    """Shapiro–Wilk per F1 series, paired m1 vs m2, then m1 vs drivers.

    The pooled two-sample test only runs when the variance ratio is within
    `ratio_limit`; otherwise the Welch test is reported. A test that cannot
    be computed lands in `errors` and the remaining tests still run.
    """
    values = {s: series_by_year(rows, s) for s in F1_SERIES}
    tests: List[Dict[str, Any]] = []
    errors: List[Dict[str, Any]] = []
    notes: List[str] = []

    def attempt(name: str, samples: Sequence[str], fn: Callable[..., Any], *args) -> Any:
        try:
            result = fn(*args)
        except RankdriftError as e:
            log.warning("%s on %s failed: %s", name, "/".join(samples), e.message)
            errors.append({"name": name, "samples": list(samples), **e.to_record()["error"]})
            return None
        if isinstance(result, TestResult):
            tests.append(_test_entry(name, samples, result, alpha))
        return result

    for s in F1_SERIES:
        attempt("shapiro_wilk", [s], shapiro_wilk, [values[s][year] for year in sorted(values[s])])

    m1, m2 = aligned(values["m1"], values["m2"], ("m1", "m2"))
    attempt("t_paired", ["m1", "m2"], t_test_paired, m1, m2)

    m1_all = [values["m1"][year] for year in sorted(values["m1"])]
    drivers_all = [values["drivers"][year] for year in sorted(values["drivers"])]
    gate: Dict[str, Any] = {"samples": ["m1", "drivers"], "ratio": None, "limit": ratio_limit, "pooled_allowed": False}
    ratio = attempt("variance_ratio", ["m1", "drivers"], variance_ratio, m1_all, drivers_all)
    if ratio is not None:
        gate["ratio"] = ratio if math.isfinite(ratio) else None
        gate["pooled_allowed"] = ratio <= ratio_limit
        if gate["pooled_allowed"]:
            attempt("t_pooled", ["m1", "drivers"], t_test_two_sample_pooled, m1_all, drivers_all)
        else:
            shown = f"{ratio:.2f}" if math.isfinite(ratio) else "infinite"
            note = f"Variance ratio {shown} exceeds {ratio_limit:g}; pooled t-test refused, Welch t-test reported instead."
            log.warning(note)
            notes.append(note)
            attempt("t_welch", ["m1", "drivers"], t_test_welch, m1_all, drivers_all)

    return {
        "schema_version": SCHEMA_VERSION,
        "alpha": alpha,
        "tests": tests,
        "variance_ratio": gate,
        "notes": notes,
        "errors": errors,
    }


# --- compare ----------------------------------------------------------------

def _group_means(rows: Sequence[ReportRow], what: str) -> List[Dict[str, Any]]:
    if not rows:
        raise DomainError(f"No {what} rows to compare.")
    return [
        {"series": name, "n": len(members), "mean": statistics.fmean(r.ns for r in members)}
        for name, members in group_rows(rows, ("series",)).items()
    ]


def compare_report(f1_rows: Sequence[ReportRow], football_rows: Sequence[ReportRow]) -> Dict[str, Any]:
    """mean(F1 NS) / mean(football NS) for every F1 series x football series pairing."""
    f1 = _group_means(f1_rows, "F1")
    football = _group_means(football_rows, "football")
    ratios = []
    for a in f1:
        for b in football:
            if b["mean"] == 0:
                raise DomainError(f"Football series {b['series']!r} has mean NS 0; the ratio is undefined.",
                                  {"series": b["series"]})
            ratios.append({"f1": a["series"], "football": b["series"], "ratio": a["mean"] / b["mean"]})
    return {"schema_version": SCHEMA_VERSION, "f1": f1, "football": football, "ratios": ratios}


# --- table ------------------------------------------------------------------

def ranking_table(season: SeasonDataset, entity: Optional[Entity] = None) -> Dict[str, Any]:
    """Per-race positions for every entrant, in final-standings order.

    Constructor rows also carry the race score and both ranking methods.
    """
    entity = Entity(entity or season.entity)
    labels = [gp.label for gp in season.races]
    standings = accumulate_standings(season, entity)
    rows = []

    if entity is Entity.DRIVERS:
        index = {entrant_id: i for i, entrant_id in enumerate(season.roster_ids)}
        per_race = [drivers_ranking(gp, season.roster_ids) for gp in season.races]
        for entrant_id, total in standings:
            i = index[entrant_id]
            cells = [{"race": label, "position": ranking.entries[i]} for label, ranking in zip(labels, per_race)]
            rows.append({"id": entrant_id, "name": season.display_name(entrant_id), "total": total, "cells": cells})
    else:
        team_ids = season.team_ids
        index = {team_id: i for i, team_id in enumerate(team_ids)}
        per_race = []
        for gp in season.races:
            scores = constructor_scores(gp, season.team_of, season.scheme, team_ids)
            per_race.append((scores, constructors_ranking_m1(scores), constructors_ranking_m2(scores)))
        for team_id, total in standings:
            i = index[team_id]
            cells = [
                {"race": label, "score": scores[team_id], "m1": m1.entries[i], "m2": m2.entries[i]}
                for label, (scores, m1, m2) in zip(labels, per_race)
            ]
            rows.append({"id": team_id, "name": season.display_name(team_id), "total": total, "cells": cells})

    return {
        "schema_version": SCHEMA_VERSION,
        "year": season.year,
        "entity": entity.value,
        "races": labels,
        "m": len(labels),
        "n": len(standings),
        "roster_size": len(season.roster),
        "team_count": len(season.teams),
        "rows": rows,
    }


def flatten_table(table: Mapping[str, Any]) -> Tuple[List[str], List[Dict[str, Any]]]:
    """Column names and flat rows for the csv/text renderings of a ranking table."""
    constructors = table["entity"] == Entity.CONSTRUCTORS.value
    fieldnames = ["id", "name", "total"]
    for label in table["races"]:
        fieldnames += [f"{label} pts", f"{label} m1", f"{label} m2"] if constructors else [label]

    def mark(value):
        return ABSENT_MARK if value is None else value

    flat = []
    for row in table["rows"]:
        out: Dict[str, Any] = {"id": row["id"], "name": row["name"], "total": row["total"]}
        for cell in row["cells"]:
            label = cell["race"]
            if constructors:
                out[f"{label} pts"] = cell["score"]
                out[f"{label} m1"] = mark(cell["m1"])
                out[f"{label} m2"] = mark(cell["m2"])
            else:
                out[label] = mark(cell["position"])
        flat.append(out)
    return fieldnames, flat

"""Ranking mathematics: tallies, Kendall coefficients, the evolutive mean and NS.

Worked examples first, then randomized properties checked with hypothesis
against a plain pair-by-pair enumerator.
"""
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rank_core import (
    PenaltyConfig,
    Ranking,
    RankingSeries,
    kendall_dist_p,
    kendall_tau_classic,
    normalized_strength,
    tally_pairs,
    tau_corrected_pair,
    tau_evolutive,
)
from utilities.errors import (
    AllPairsIncomparable,
    DomainError,
    NoComparablePairs,
    StructuralError,
)

R = Ranking.of
PENALTIES = [0.0, 0.25, 0.5]


def brute_tally(a, b):
    """Independent O(n^2) enumerator: (P, Q, tie_penalized, tied_both, comparable)."""
    a, b = list(a), list(b)
    P = Q = T = B = C = 0
    for i in range(len(a)):
        for j in range(i + 1, len(a)):
            if a[i] is None or a[j] is None or b[i] is None or b[j] is None:
                continue
            C += 1
            da = (a[i] > a[j]) - (a[i] < a[j])
            db = (b[i] > b[j]) - (b[i] < b[j])
            if da == 0 and db == 0:
                B += 1
            elif da == 0 or db == 0:
                T += 1
            elif da == db:
                P += 1
            else:
                Q += 1
    return P, Q, T, B, C


def slots(n):
    return st.lists(st.one_of(st.none(), st.integers(1, n)), min_size=n, max_size=n)


def permutation(n):
    return st.permutations(list(range(1, n + 1)))


partial_pairs = st.integers(2, 12).flatmap(lambda n: st.tuples(slots(n), slots(n)))
complete_pairs = st.integers(2, 10).flatmap(lambda n: st.tuples(permutation(n), permutation(n)))
series_with_order = st.integers(2, 8).flatmap(
    lambda n: st.tuples(
        st.lists(slots(n), min_size=2, max_size=6),
        st.permutations(list(range(n))),
    )
)


# --- Ranking types ------------------------------------------------------------

def test_ranking_accepts_absence_mark():
    r = R(1, "•", 2)
    assert r.entries == (1, None, 2)
    assert r.render() == "[1,•,2]"
    assert not r.is_complete
    assert r.present() == (0, 2)


def test_ranking_accepts_numpy_integers():
    r = Ranking(tuple(np.array([2, 1, 3])))
    assert r.entries == (2, 1, 3)
    assert all(type(v) is int for v in r.entries)
    with pytest.raises(DomainError):
        R(1, True)
    with pytest.raises(DomainError):
        Ranking((np.float64(1.0), 2))


def test_ranking_needs_two_slots():
    with pytest.raises(StructuralError):
        R(1)


@pytest.mark.parametrize("bad", [0, -3, 1.5, "2", True])
def test_ranking_rejects_bad_positions(bad):
    with pytest.raises(DomainError):
        R(1, bad)


def test_ties_are_detected():
    assert R(1, 1, 2).has_ties
    assert not R(1, None, 2).has_ties


def test_series_shape_checks():
    with pytest.raises(StructuralError):
        RankingSeries.from_lists([[1, 2]])
    with pytest.raises(StructuralError):
        RankingSeries.from_lists([[1, 2], [1, 2, 3]])
    with pytest.raises(StructuralError):
        RankingSeries.from_lists([[1, 2], [2, 1]], labels=["GP1"])


def test_series_default_labels():
    series = RankingSeries.from_lists([[1, 2], [2, 1], [1, 2]])
    assert series.m == 3
    assert series.universe_size == 2
    assert [series.label(i) for i in range(3)] == ["R1", "R2", "R3"]


@pytest.mark.parametrize("p", [-0.01, 0.51, 1, True, "0.5"])
def test_penalty_outside_range_is_rejected(p):
    with pytest.raises(DomainError):
        PenaltyConfig(p)


def test_penalty_default_is_half():
    assert PenaltyConfig().p == 0.5
    assert PenaltyConfig(0).p == 0.0


# --- Pair tallies ---------------------------------------------------------------

def test_tally_full_reversal():
    t = tally_pairs(R(1, 2, 3), R(3, 2, 1))
    assert (t.P, t.Q, t.comparable) == (0, 3, 3)


def test_tally_identity():
    t = tally_pairs(R(1, 2, 3), R(1, 2, 3))
    assert (t.P, t.Q, t.comparable) == (3, 0, 3)


def test_tally_only_pairs_present_in_both():
    t = tally_pairs(R(1, 2, None), R(2, 1, None))
    assert t.comparable == 1
    assert t.Q == 1


def test_tally_tie_in_one_ranking():
    t = tally_pairs(R(1, 1, 2), R(1, 2, 3))
    assert t.tie_penalized == 1
    assert t.concordant == 2
    assert t.comparable == 3


def test_tally_tie_in_both_rankings():
    t = tally_pairs(R(1, 1, 2), R(2, 2, 1))
    assert t.tied_both == 1
    assert t.discordant == 2


def test_tally_universe_mismatch():
    with pytest.raises(StructuralError):
        tally_pairs(R(1, 2), R(1, 2, 3))


# --- Coefficients ---------------------------------------------------------------

def test_classic_tau_examples():
    assert kendall_tau_classic(R(1, 2, 3), R(3, 2, 1)) == -1.0
    assert kendall_tau_classic(R(1, 2, 3), R(1, 2, 3)) == 1.0
    assert kendall_tau_classic(R(1, 2, 3, 4), R(2, 1, 4, 3)) == pytest.approx(1 / 3, abs=1e-15)


@pytest.mark.parametrize("a, b", [((1, 1, 2), (1, 2, 3)), ((1, None, 2), (1, 2, 3))])
def test_classic_tau_refuses_ties_and_absences(a, b):
    with pytest.raises(DomainError, match="tau_corrected_pair"):
        kendall_tau_classic(R(*a), R(*b))


def test_distance_examples():
    assert kendall_dist_p(R(1, 2, 3), R(1, 2, 3)) == 0.0
    assert kendall_dist_p(R(1, 2, 3), R(3, 2, 1)) == 1.0
    assert kendall_dist_p(R(1, 1, 2), R(1, 2, 3), PenaltyConfig(0.5)) == pytest.approx(1 / 6, abs=1e-15)


def test_distance_without_comparable_pairs():
    with pytest.raises(NoComparablePairs):
        kendall_dist_p(R(1, 2, None, None), R(None, None, 1, 2))


def test_corrected_tau_examples():
    assert tau_corrected_pair(R(1, 2, 3, 4), R(2, 1, 4, 3)) == pytest.approx(1 / 3, abs=1e-12)
    assert tau_corrected_pair(R(1, None, 2), R(2, None, 1)) == -1.0
    assert tau_corrected_pair(R(1, 2, None), R(1, 2, None)) == 1.0


# --- Evolutive coefficient and NS -------------------------------------------------

def test_identical_rankings_have_zero_ns():
    result = tau_evolutive(RankingSeries.from_lists([[1, 2, 3]] * 4))
    assert result.tau_ev == 1.0
    assert result.ns == 0.0
    assert result.skipped_pairs == 0
    assert len(result.pair_details) == 3


def test_alternating_reversals_have_ns_one():
    result = tau_evolutive(RankingSeries.from_lists([[1, 2, 3], [3, 2, 1], [1, 2, 3]]))
    assert result.tau_ev == -1.0
    assert result.ns == 1.0


def test_evolutive_mean_of_consecutive_pairs():
    result = tau_evolutive(RankingSeries.from_lists([[1, 2, 3], [2, 1, 3], [2, 1, 3]]))
    assert result.tau_ev == pytest.approx(2 / 3, abs=1e-12)
    assert result.ns == pytest.approx(1 / 6, abs=1e-12)


def test_incomparable_pair_is_skipped_and_counted():
    series = RankingSeries.from_lists(
        [[1, 2, None, None], [None, None, 1, 2], [None, None, 2, 1]],
        labels=["GP1", "GP2", "GP3"],
    )
    result = tau_evolutive(series)
    assert result.skipped_pairs == 1
    assert result.tau_ev == -1.0
    first, second = result.pair_details
    assert first.skipped and first.tau is None and first.comparable == 0
    assert first.to_dict() == {"index": 0, "from": "GP1", "to": "GP2", "tau": None, "comparable": 0, "skipped": True}
    assert not second.skipped and second.tau == -1.0


def test_all_pairs_incomparable():
    series = RankingSeries.from_lists([[1, 2, None, None], [None, None, 1, 2], [1, 2, None, None]])
    with pytest.raises(AllPairsIncomparable):
        tau_evolutive(series)


@pytest.mark.parametrize("tau, ns", [(1, 0.0), (-1, 1.0), (0.5, 0.25), (0.0, 0.5)])
def test_normalized_strength(tau, ns):
    assert normalized_strength(tau) == ns


@pytest.mark.parametrize("tau", [1.0001, -2, float("nan"), True, "0.5"])
def test_normalized_strength_domain(tau):
    with pytest.raises(DomainError):
        normalized_strength(tau)


# --- Properties -----------------------------------------------------------------

@settings(max_examples=1000, deadline=None)
@given(complete_pairs)
def test_corrected_tau_reduces_to_classic_tau(pair):
    a, b = (Ranking(tuple(x)) for x in pair)
    assert abs(tau_corrected_pair(a, b) - kendall_tau_classic(a, b)) <= 1e-12


@settings(max_examples=1000, deadline=None)
@given(partial_pairs, st.sampled_from(PENALTIES))
def test_tally_and_distance_match_enumerator(pair, p):
    a, b = (Ranking(tuple(x)) for x in pair)
    P, Q, T, B, C = brute_tally(a, b)
    t = tally_pairs(a, b)
    assert (t.concordant, t.discordant, t.tie_penalized, t.tied_both, t.comparable) == (P, Q, T, B, C)
    assert t.concordant + t.discordant + t.tie_penalized + t.tied_both == t.comparable
    if C == 0:
        with pytest.raises(NoComparablePairs):
            kendall_dist_p(a, b, PenaltyConfig(p))
    else:
        assert kendall_dist_p(a, b, PenaltyConfig(p)) == (Q + p * T) / C


@settings(max_examples=500, deadline=None)
@given(partial_pairs, st.sampled_from(PENALTIES))
def test_coefficients_stay_in_range_and_are_symmetric(pair, p):
    a, b = (Ranking(tuple(x)) for x in pair)
    if tally_pairs(a, b).comparable == 0:
        return
    cfg = PenaltyConfig(p)
    assert 0.0 <= kendall_dist_p(a, b, cfg) <= 1.0
    tau = tau_corrected_pair(a, b, cfg)
    assert -1.0 <= tau <= 1.0
    assert tau == tau_corrected_pair(b, a, cfg)


@settings(max_examples=500, deadline=None)
@given(partial_pairs)
def test_distance_is_monotone_in_penalty(pair):
    a, b = (Ranking(tuple(x)) for x in pair)
    t = tally_pairs(a, b)
    if t.comparable == 0:
        return
    d = [kendall_dist_p(a, b, PenaltyConfig(p)) for p in PENALTIES]
    if t.tie_penalized > 0:
        assert d[0] < d[1] < d[2]
    else:
        assert d[0] == d[1] == d[2]


@settings(max_examples=500, deadline=None)
@given(series_with_order)
def test_relabeling_leaves_tau_ev_unchanged(case):
    rows, order = case
    series = RankingSeries.from_lists(rows)
    try:
        expected = tau_evolutive(series)
    except AllPairsIncomparable:
        with pytest.raises(AllPairsIncomparable):
            tau_evolutive(series.permuted(order))
        return
    result = tau_evolutive(series.permuted(order))
    assert math.isclose(result.tau_ev, expected.tau_ev, abs_tol=1e-12)
    assert result.skipped_pairs == expected.skipped_pairs
    assert -1.0 <= result.tau_ev <= 1.0
    assert 0.0 <= result.ns <= 1.0
    assert result.ns == (1.0 - result.tau_ev) / 2.0

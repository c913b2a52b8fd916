from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from shiftbribery.election import (
    BORDA,
    Copeland,
    Election,
    apply_shift,
    candidate_blocks,
    check_shift_action,
    copeland_scores,
    is_winner,
    pairwise_margins,
    positional_scores,
    scores,
    winners,
)
from shiftbribery.exceptions import InvalidShiftAction
from shiftbribery.pricing import is_successful

from strategies import instances


def naive_copeland(prefs, alpha):
    """Pairwise tallies straight from the rankings."""
    m = len(prefs[0])
    rank = [{c: i for i, c in enumerate(order)} for order in prefs]
    out = []
    for c in range(m):
        total = Fraction(0)
        for d in range(m):
            if d == c:
                continue
            ahead = sum(1 for r in rank if r[c] < r[d])
            behind = len(prefs) - ahead
            total += 1 if ahead > behind else alpha if ahead == behind else 0
        out.append(total)
    return tuple(out)


def test_borda_scores_three_candidates():
    e = Election([[0, 1, 2], [1, 0, 2]])
    assert positional_scores(e) == (3, 3, 0)
    assert winners(e) == {0, 1}


def test_ranks_are_one_based():
    e = Election([[2, 0, 1]])
    assert e.rank(0, 2) == 1
    assert e.at_rank(0, 3) == 1
    assert e.ranks_of(1) == (3,)


def test_custom_scoring_vectors():
    e = Election([[0, 1], [1, 0]], scoring_vectors=[[2, 0], [1, 0]])
    assert positional_scores(e) == (2, 1)
    assert not e.is_borda
    assert e.weight_drop(0, 1) == 2


def test_rejects_non_permutation():
    with pytest.raises(ValueError, match="permutation"):
        Election([[0, 0, 1]])


def test_rejects_increasing_scoring_vector():
    with pytest.raises(ValueError, match="nonincreasing"):
        Election([[0, 1]], scoring_vectors=[[0, 1]])


def test_copeland_alpha_range():
    with pytest.raises(ValueError):
        Copeland(Fraction(3, 2))


def test_copeland_tie_points():
    e = Election([[0, 1, 2], [1, 0, 2]])
    assert copeland_scores(e, 0) == (1, 1, 0)
    assert copeland_scores(e, 1) == (2, 2, 0)


def test_apply_shift_moves_p_up():
    e = Election([[0, 1, 2], [1, 0, 2]])
    shifted = apply_shift(e, 2, (2, 1))
    assert shifted.prefs.tolist() == [[2, 0, 1], [1, 2, 0]]


def test_shift_beyond_top_rejected():
    e = Election([[0, 1, 2]])
    with pytest.raises(InvalidShiftAction):
        check_shift_action(e, 2, (3,))
    with pytest.raises(InvalidShiftAction):
        check_shift_action(e, 2, (1, 1))


def test_tie_at_top_counts_as_win(three_candidates):
    assert is_winner(Election([[2, 0, 1]]), 2)
    # (2, 0) leaves every candidate on 2 points
    assert is_successful(three_candidates, (2, 0))
    assert not is_successful(three_candidates, (1, 0))


def test_blocks_cover_all_candidates():
    e = Election([[0, 1, 2, 3], [2, 3, 0, 1]])
    blocks = [b.tolist() for b in candidate_blocks(e)]
    assert blocks == [[0, 1], [2, 3]]


@given(instances(), st.sampled_from([Fraction(0), Fraction(1, 2), Fraction(1)]))
def test_copeland_matches_pairwise_tally(instance, alpha):
    prefs = instance.election.prefs.tolist()
    assert copeland_scores(instance.election, alpha) == naive_copeland(prefs, alpha)


@given(instances())
def test_margins_antisymmetric(instance):
    N = pairwise_margins(instance.election)
    assert np.all(N + N.T == instance.n - instance.n * np.eye(instance.m, dtype=int))


@given(instances())
def test_borda_total_points(instance):
    m, n = instance.m, instance.n
    assert sum(positional_scores(instance.election)) == n * m * (m - 1) // 2


@given(instances(scoring=True), st.data())
def test_shift_preserves_relative_order_of_others(instance, data):
    action = tuple(data.draw(st.integers(0, T)) for T in instance.max_shifts)
    e, p = instance.election, instance.p
    shifted = apply_shift(e, p, action)
    for v, s in enumerate(action):
        assert shifted.rank(v, p) == e.rank(v, p) - s
        before = [c for c in e.prefs[v] if c != p]
        after = [c for c in shifted.prefs[v] if c != p]
        assert before == after


@given(instances(scoring=True), st.data())
def test_shift_never_hurts_p(instance, data):
    action = tuple(data.draw(st.integers(0, T)) for T in instance.max_shifts)
    before = scores(instance.election, BORDA)
    after = scores(apply_shift(instance.election, instance.p, action), BORDA)
    p = instance.p
    assert after[p] >= before[p]
    assert all(after[c] <= before[c] for c in range(instance.m) if c != p)

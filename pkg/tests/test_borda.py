import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from shiftbribery.borda import GapProfile, dp_min_cost, fpt_exact, gap_profile, greedy_uniform_aon, ptas_unit
from shiftbribery.election import Copeland, Election, apply_shift, positional_scores
from shiftbribery.exceptions import BudgetExceeded
from shiftbribery.io import random_instance
from shiftbribery.oracle import brute_force_min_unit_shifts, brute_force_opt
from shiftbribery.pricing import INF, PriceFunction, cost, is_successful, uniform_aon_instance, unit_instance, unit_shifts

from strategies import instances

EPS = st.sampled_from([Fraction(1, 4), Fraction(1, 2), Fraction(1), 0.5])


def test_gap_profile_values():
    profile = GapProfile((Fraction(0), Fraction(3), Fraction(3)), 0)
    assert profile.diffmax == 3
    assert profile.scrdiff_at(1) == 4
    assert profile.scrdiff_at(3) == 0
    assert profile.bad_set_at(1) == (1, 2)
    assert profile.bad_set_at(3) == ()
    assert profile.guesses() == [2, 3]


def test_no_guesses_when_winning():
    assert GapProfile((Fraction(2), Fraction(2)), 0).guesses() == []


def test_dp_reaches_required_losses(three_candidates):
    price, action = dp_min_cost(three_candidates, [(0, 1), (1, 1)])
    assert price == 2
    e = apply_shift(three_candidates.election, 2, action)
    before, after = positional_scores(three_candidates.election), positional_scores(e)
    assert before[0] - after[0] >= 1 and before[1] - after[1] >= 1


def test_dp_exact_shift_pin(three_candidates):
    price, action = dp_min_cost(three_candidates, [], exact_shifts=3)
    assert price == 3 and unit_shifts(action) == 3


def test_dp_unreachable_returns_none(three_candidates):
    assert dp_min_cost(three_candidates, [(0, 3)]) is None


def test_dp_rejects_bad_targets(three_candidates):
    with pytest.raises(ValueError):
        dp_min_cost(three_candidates, [(2, 1)])
    with pytest.raises(ValueError):
        dp_min_cost(three_candidates, [(0, 1), (0, 1)])
    with pytest.raises(BudgetExceeded):
        dp_min_cost(three_candidates, [(0, 5), (1, 5)], budget=10)


@given(instances(max_m=5, max_n=4))
def test_fpt_is_exact(inst):
    price, action = fpt_exact(inst)
    assert price == brute_force_opt(inst).opt_cost
    if action is not None:
        assert is_successful(inst, action) and cost(inst, action) == price


@given(instances(families=("unit",), max_m=5, max_n=5), EPS)
def test_ptas_unit_bound(inst, eps):
    action = ptas_unit(inst, eps)
    assert is_successful(inst, action)
    opt = brute_force_min_unit_shifts(inst)
    assert unit_shifts(action) <= math.floor((1 + Fraction(str(eps))) * opt)


@given(instances(families=("unit",), max_m=6, max_n=4), EPS)
def test_bad_set_smaller_than_inverse_eps(inst, eps):
    eps = Fraction(str(eps))
    profile = gap_profile(inst)
    for k in profile.guesses():
        assert len(profile.bad_set_at(k, eps * k)) < 1 / eps


@given(instances(families=("uniform-aon",), max_m=5, max_n=5))
def test_greedy_bound(inst):
    action = greedy_uniform_aon(inst)
    assert is_successful(inst, action)
    assert cost(inst, action) <= Fraction(3, 2) * brute_force_opt(inst).opt_cost + 1


def test_greedy_takes_lowest_rank_first():
    e = Election([[2, 0, 1, 3], [1, 0, 2, 3], [1, 0, 3, 2], [3, 2, 1, 0]])
    assert greedy_uniform_aon(uniform_aon_instance(e, 0)) == (0, 0, 0, 3)


def test_greedy_tie_break_by_top_score():
    # p=0 is second everywhere; the leader 1 tops voters 1 and 2, so voter 1 goes
    e = Election([[2, 0, 1], [1, 0, 2], [1, 0, 2]])
    assert greedy_uniform_aon(uniform_aon_instance(e, 0)) == (0, 1, 0)


def test_non_borda_rejected():
    inst = random_instance(1, 3, 3, "unit", rule=Copeland())
    with pytest.raises(ValueError):
        fpt_exact(inst)
    with pytest.raises(ValueError):
        ptas_unit(uniform_aon_instance(Election([[1, 2, 0]]), 0), 0.5)
    with pytest.raises(ValueError):
        ptas_unit(random_instance(1, 3, 3, "unit"), 0)
    with pytest.raises(ValueError):
        greedy_uniform_aon(random_instance(1, 3, 3, "unit", scoring=True))


def test_fpt_infinite_when_unreachable():
    e = Election([[1, 0]])
    inst = unit_instance(e, 0).with_prices([PriceFunction((0, INF))])
    assert fpt_exact(inst) == (INF, None)

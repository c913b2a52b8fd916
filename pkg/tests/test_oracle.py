import itertools
import math

import pytest
from hypothesis import given

from shiftbribery.borda import gap_profile
from shiftbribery.election import Copeland, Election
from shiftbribery.exceptions import BudgetExceeded
from shiftbribery.io import random_instance
from shiftbribery.oracle import brute_force_min_unit_shifts, brute_force_opt, min_aon_bribery
from shiftbribery.pricing import INF, PriceFunction, cost, is_successful, unit_instance

from strategies import copeland_instances, instances


def naive_opt(instance):
    best = INF
    for action in itertools.product(*(range(T + 1) for T in instance.max_shifts)):
        price = cost(instance, action)
        if price < best and is_successful(instance, action):
            best = price
    return best


def test_three_candidate_example(three_candidates):
    result = brute_force_opt(three_candidates)
    assert result.opt_cost == 2
    assert result.witness == (0, 2)
    assert result.feasible
    assert brute_force_min_unit_shifts(three_candidates) == 2


def test_already_winning_costs_nothing():
    inst = unit_instance(Election([[0, 1], [1, 0]]), 0)
    assert brute_force_opt(inst).opt_cost == 0


def test_infinite_prices_give_no_solution():
    e = Election([[1, 0]])
    inst = unit_instance(e, 0).with_prices([PriceFunction((0, INF))])
    result = brute_force_opt(inst)
    assert result.opt_cost == INF and result.witness is None
    assert brute_force_min_unit_shifts(inst) == INF


@given(instances(max_m=4, max_n=4))
def test_matches_naive_enumeration(inst):
    result = brute_force_opt(inst)
    assert result.opt_cost == naive_opt(inst)
    if result.feasible:
        assert is_successful(inst, result.witness)
        assert cost(inst, result.witness) == result.opt_cost


@given(copeland_instances(max_m=4, max_n=4))
def test_copeland_matches_naive_enumeration(inst):
    assert brute_force_opt(inst).opt_cost == naive_opt(inst)


@given(instances(max_m=4, max_n=4))
def test_witness_is_lexicographically_first(inst):
    result = brute_force_opt(inst)
    if not result.feasible:
        return
    for action in itertools.product(*(range(T + 1) for T in inst.max_shifts)):
        if action >= result.witness:
            break
        assert not (cost(inst, action) == result.opt_cost and is_successful(inst, action))


@given(instances(families=("general",), max_m=4, max_n=4))
def test_cheaper_prices_never_raise_opt(inst):
    halved = inst.with_prices([PriceFunction(tuple(x / 2 for x in pf.values)) for pf in inst.prices])
    assert brute_force_opt(halved).opt_cost <= brute_force_opt(inst).opt_cost


@given(instances(families=("unit",), max_m=5, max_n=4))
def test_borda_shift_count_sandwich(inst):
    # each unit shift moves the gap to the leader by at most two points
    d = gap_profile(inst).diffmax
    k = brute_force_min_unit_shifts(inst)
    if d <= 0:
        assert k == 0
        return
    assert math.ceil(d / 2) <= k <= d
    assert gap_profile(inst).scrdiff_at(k) <= k


def test_budget_from_environment(monkeypatch):
    inst = random_instance(3, 5, 5, "unit")
    monkeypatch.setenv("SHIFTBRIBE_BUDGET", "2")
    with pytest.raises(BudgetExceeded):
        brute_force_opt(inst)


def test_explicit_budget():
    with pytest.raises(BudgetExceeded):
        brute_force_opt(random_instance(3, 5, 5, "unit"), budget=1)


@given(instances(families=("uniform-aon", "one-inf-aon"), max_m=4, max_n=4))
def test_aon_subset_search_agrees(inst):
    assert min_aon_bribery(inst)[0] == brute_force_opt(inst).opt_cost


def test_rule_override():
    inst = random_instance(5, 4, 3, "unit")
    assert brute_force_opt(inst, rule=Copeland()).opt_cost == brute_force_opt(inst.with_rule(Copeland())).opt_cost

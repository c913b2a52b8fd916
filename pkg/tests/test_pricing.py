from fractions import Fraction

import pytest
from hypothesis import given

from shiftbribery.election import Election
from shiftbribery.io import format_instance, parse_instance
from shiftbribery.pricing import (
    INF,
    Instance,
    PriceFamily,
    PriceFunction,
    classify_prices,
    cost,
    psi_max,
    unit_instance,
    uniform_aon_instance,
    width,
)

from strategies import instances


def test_price_function_basics():
    pf = PriceFunction.from_shift_prices([1, 3, INF])
    assert pf.max_shift == 3
    assert pf.max_finite_shift == 2
    assert pf.delta(2) == 2
    assert pf.delta(3) == INF


def test_non_monotone_rejected():
    with pytest.raises(ValueError, match="non-monotone"):
        PriceFunction((0, 2, 1))


def test_must_start_at_zero():
    with pytest.raises(ValueError):
        PriceFunction((1, 2))


def test_negative_price_rejected():
    with pytest.raises(ValueError):
        PriceFunction((0, -1))


def test_price_length_must_match_rank():
    e = Election([[0, 1, 2]])
    with pytest.raises(ValueError, match="covers"):
        Instance(e, 2, (PriceFunction.unit(1),))


def test_p_on_top_has_empty_price_function():
    inst = unit_instance(Election([[1, 0]]), 1)
    assert inst.prices[0].values == (0,)
    assert cost(inst, (0,)) == 0


def test_cost_with_infinite_shift():
    e = Election([[0, 1, 2], [1, 0, 2]])
    inst = Instance(e, 2, (PriceFunction.all_or_nothing(2, INF), PriceFunction.unit(2)))
    assert cost(inst, (0, 2)) == 2
    assert cost(inst, (1, 0)) == INF


def test_families():
    e = Election([[0, 1, 2], [1, 0, 2], [2, 0, 1]])
    assert classify_prices(unit_instance(e, 2)) is PriceFamily.UNIT
    assert classify_prices(uniform_aon_instance(e, 2)) is PriceFamily.UNIFORM_AON
    one_inf = Instance(e, 2, (PriceFunction.all_or_nothing(2), PriceFunction.all_or_nothing(2, INF), PriceFunction((0,))))
    assert classify_prices(one_inf) is PriceFamily.ONE_INF_AON
    aon = one_inf.with_prices((PriceFunction.all_or_nothing(2, 3), PriceFunction.all_or_nothing(2), PriceFunction((0,))))
    assert classify_prices(aon) is PriceFamily.AON
    general = one_inf.with_prices((PriceFunction((0, 1, 5)), PriceFunction.unit(2), PriceFunction((0,))))
    assert classify_prices(general) is PriceFamily.GENERAL


def test_width_counts_only_price_one_votes():
    e = Election([[0, 1, 2], [1, 0, 2], [0, 2, 1]])
    inst = Instance(e, 2, (PriceFunction.all_or_nothing(2, INF), PriceFunction.all_or_nothing(2, INF), PriceFunction.all_or_nothing(1)))
    assert width(inst) == 1
    with pytest.raises(ValueError):
        width(unit_instance(e, 2))


def test_psi_max_ignores_infinity():
    e = Election([[0, 1, 2]])
    inst = Instance(e, 2, (PriceFunction((0, Fraction(5, 2), INF)),))
    assert psi_max(inst) == Fraction(5, 2)


@given(instances())
def test_classification_survives_serialization(instance):
    again = parse_instance(format_instance(instance))
    assert classify_prices(again) == classify_prices(instance)


@given(instances())
def test_top_action_is_always_valid(instance):
    assert len(instance.top_action()) == instance.n
    c = cost(instance, instance.top_action())
    assert c == INF or c >= 0

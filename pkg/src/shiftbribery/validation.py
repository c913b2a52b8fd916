"""Input validation helpers shared by the estimator classes."""

from __future__ import annotations

from fractions import Fraction

from .election import Copeland, Positional, Rule
from .pricing import Instance, PriceFamily, aon_levels, classify_prices, is_one_inf_aon, is_uniform_aon, is_unit

_MATCHES = {
    PriceFamily.UNIT: is_unit,
    PriceFamily.UNIFORM_AON: is_uniform_aon,
    PriceFamily.ONE_INF_AON: is_one_inf_aon,
    PriceFamily.AON: lambda inst: aon_levels(inst) is not None,
    PriceFamily.GENERAL: lambda inst: True,
}


def check_instance(instance, *, borda: bool = False, positional: bool = False, prices: PriceFamily | None = None) -> Instance:
    """Return ``instance`` after checking the requirements of a solver.

    Raises
    ------
    TypeError
        If ``instance`` is not an :class:`Instance`.
    ValueError
        If the rule or price family does not match.
    """
    if not isinstance(instance, Instance):
        raise TypeError(f"expected an Instance, got {type(instance).__name__}")
    if (borda or positional) and not isinstance(instance.rule, Positional):
        raise ValueError(f"a positional rule is required, instance uses {instance.rule}")
    if borda and not instance.election.is_borda:
        raise ValueError("Borda scoring is required")
    if prices is not None:
        if not _MATCHES[prices](instance):
            family = classify_prices(instance)
            raise ValueError(f"{prices.value} prices are required, instance has {family.value} prices")
    return instance


def check_eps(eps) -> Fraction:
    """Exact positive epsilon; floats are read through their shortest repr."""
    value = Fraction(str(eps)) if isinstance(eps, float) else Fraction(eps)
    if value <= 0:
        raise ValueError(f"eps must be positive, got {eps}")
    return value


def check_rule(rule) -> Rule:
    if not isinstance(rule, (Positional, Copeland)):
        raise TypeError(f"unsupported rule {rule!r}")
    return rule

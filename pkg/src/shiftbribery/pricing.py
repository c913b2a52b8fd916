"""Price functions, Shift-Bribery instances and cost accounting."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .election import BORDA, Election, Rule, ShiftAction, apply_shift, check_shift_action, is_winner

INF = math.inf


def _price(x):
    if x == INF or (isinstance(x, str) and x.strip().lower() in ("inf", "infinity")):
        return INF
    value = Fraction(x)
    if value < 0:
        raise ValueError(f"negative price {value}")
    return value


@dataclass(frozen=True)
class PriceFunction:
    """Cumulative prices ``psi(0), psi(1), ..., psi(T)`` for one voter.

    ``psi(t)`` is the cost of shifting the preferred candidate up by ``t``
    positions.  ``INF`` marks shifts that cannot be bought.
    """

    values: tuple

    def __post_init__(self):
        values = tuple(_price(x) for x in self.values)
        if not values or values[0] != 0:
            raise ValueError("a price function must start with psi(0) = 0")
        for t in range(1, len(values)):
            if values[t] < values[t - 1]:
                raise ValueError(f"non-monotone prices: psi({t}) < psi({t - 1})")
        object.__setattr__(self, "values", values)

    @classmethod
    def from_shift_prices(cls, prices: Sequence) -> PriceFunction:
        """Build from ``psi(1..T)``; ``psi(0) = 0`` is implied."""
        return cls((0, *prices))

    @classmethod
    def unit(cls, max_shift: int) -> PriceFunction:
        return cls(tuple(range(max_shift + 1)))

    @classmethod
    def all_or_nothing(cls, max_shift: int, price=1) -> PriceFunction:
        return cls((0,) + (price,) * max_shift)

    @property
    def max_shift(self) -> int:
        return len(self.values) - 1

    @property
    def max_finite_shift(self) -> int:
        t = self.max_shift
        while self.values[t] == INF:
            t -= 1
        return t

    def __call__(self, t: int):
        return self.values[t]

    def delta(self, ell: int):
        """Marginal price ``psi(ell) - psi(ell - 1)``; ``INF`` once infinite."""
        hi = self.values[ell]
        if hi == INF:
            return INF
        return hi - self.values[ell - 1]

    def __len__(self):
        return len(self.values)


class PriceFamily(enum.Enum):
    UNIT = "unit"
    UNIFORM_AON = "uniform-aon"
    ONE_INF_AON = "one-inf-aon"
    AON = "aon"
    GENERAL = "general"


@dataclass(frozen=True, eq=False)
class Instance:
    """A Shift-Bribery instance: election, preferred candidate ``p``, prices.

    ``rule`` is the voting rule the instance is meant for; solvers that take
    an explicit rule argument default to it.
    """

    election: Election
    p: int
    prices: tuple[PriceFunction, ...]
    rule: Rule = BORDA

    def __post_init__(self):
        if not 0 <= self.p < self.election.m:
            raise ValueError(f"preferred candidate {self.p} out of range 0..{self.election.m - 1}")
        prices = tuple(pf if isinstance(pf, PriceFunction) else PriceFunction(pf) for pf in self.prices)
        if len(prices) != self.election.n:
            raise ValueError(f"expected {self.election.n} price functions, got {len(prices)}")
        for v, pf in enumerate(prices):
            expected = self.election.rank(v, self.p) - 1
            if pf.max_shift != expected:
                raise ValueError(f"voter {v}: price function covers {pf.max_shift} shifts, expected {expected}")
        object.__setattr__(self, "prices", prices)

    @property
    def n(self) -> int:
        return self.election.n

    @property
    def m(self) -> int:
        return self.election.m

    @property
    def size(self) -> int:
        return self.election.m * self.election.n

    @property
    def max_shifts(self) -> tuple[int, ...]:
        """``pi_v^{-1}(p) - 1`` for every voter."""
        return tuple(pf.max_shift for pf in self.prices)

    def with_prices(self, prices) -> Instance:
        return Instance(self.election, self.p, tuple(prices), self.rule)

    def with_rule(self, rule: Rule) -> Instance:
        return Instance(self.election, self.p, self.prices, rule)

    def zero_action(self) -> ShiftAction:
        return (0,) * self.n

    def top_action(self) -> ShiftAction:
        """Shift ``p`` to the top of every vote."""
        return self.max_shifts

    def __eq__(self, other):
        if not isinstance(other, Instance):
            return NotImplemented
        return (
            self.p == other.p
            and self.rule == other.rule
            and self.prices == other.prices
            and self.election == other.election
        )

    def __hash__(self):
        return hash((self.election, self.p, self.prices, self.rule))

    def __repr__(self):
        return f"Instance(m={self.m}, n={self.n}, p={self.p}, rule={self.rule})"


def cost(instance: Instance, action: Sequence[int]):
    """Total price of ``action``; ``INF`` if any voter's shift is unbuyable."""
    action = check_shift_action(instance.election, instance.p, action)
    total = Fraction(0)
    for pf, s in zip(instance.prices, action):
        price = pf(s)
        if price == INF:
            return INF
        total += price
    return total


def is_successful(instance: Instance, action: Sequence[int], rule: Rule | None = None) -> bool:
    """Whether ``p`` is a (co-)winner after applying ``action``."""
    rule = instance.rule if rule is None else rule
    shifted = apply_shift(instance.election, instance.p, action)
    return is_winner(shifted, instance.p, rule)


def unit_shifts(action: Sequence[int]) -> int:
    return sum(action)


def psi_max(instance: Instance) -> Fraction:
    """Largest finite price occurring in the instance."""
    return max(max(x for x in pf.values if x != INF) for pf in instance.prices)


def aon_levels(instance: Instance) -> tuple | None:
    """Per-voter all-or-nothing price ``c_v`` (``None`` where ``p`` is on top),
    or ``None`` if some price function is not all-or-nothing."""
    levels = []
    for pf in instance.prices:
        if pf.max_shift == 0:
            levels.append(None)
            continue
        c = pf(1)
        if any(x != c for x in pf.values[1:]):
            return None
        levels.append(c)
    return tuple(levels)


def is_unit(instance: Instance) -> bool:
    return all(pf.values[t] == t for pf in instance.prices for t in range(len(pf)))


def is_uniform_aon(instance: Instance) -> bool:
    levels = aon_levels(instance)
    return levels is not None and all(c is None or c == 1 for c in levels)


def is_one_inf_aon(instance: Instance) -> bool:
    levels = aon_levels(instance)
    return levels is not None and all(c is None or c == 1 or c == INF for c in levels)


def width(instance: Instance) -> int:
    """Most unit shifts purchasable at price one within a single vote of a
    (1, inf)-all-or-nothing instance."""
    levels = aon_levels(instance)
    if levels is None or not is_one_inf_aon(instance):
        raise ValueError("width is defined only for (1, inf)-all-or-nothing prices")
    return max((pf.max_shift for pf, c in zip(instance.prices, levels) if c == 1), default=0)


def classify_prices(instance: Instance) -> PriceFamily:
    """Most specific price family matching every voter's price function."""
    if is_unit(instance):
        return PriceFamily.UNIT
    if is_uniform_aon(instance):
        return PriceFamily.UNIFORM_AON
    if is_one_inf_aon(instance):
        return PriceFamily.ONE_INF_AON
    if aon_levels(instance) is not None:
        return PriceFamily.AON
    return PriceFamily.GENERAL


def unit_instance(election: Election, p: int, rule: Rule = BORDA) -> Instance:
    prices = tuple(PriceFunction.unit(election.rank(v, p) - 1) for v in range(election.n))
    return Instance(election, p, prices, rule)


def uniform_aon_instance(election: Election, p: int, rule: Rule = BORDA) -> Instance:
    prices = tuple(PriceFunction.all_or_nothing(election.rank(v, p) - 1) for v in range(election.n))
    return Instance(election, p, prices, rule)

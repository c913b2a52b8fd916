"""Exhaustive Shift-Bribery solver for small instances.

Enumerates shift actions depth first, voters in index order and shift
values ascending, and keeps the cheapest successful one.  Because the
enumeration is lexicographic and only strict improvements replace the
incumbent, the reported witness is the lexicographically smallest optimal
action.  It serves as the ground truth for every approximation check.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .election import Copeland, Positional, Rule, ShiftAction, copeland_scores, _scaled_positional_scores
from .exceptions import BudgetExceeded
from .pricing import INF, Instance, aon_levels, cost, is_successful

DEFAULT_BUDGET = 10**7


def default_budget() -> int:
    """Enumeration budget; the ``SHIFTBRIBE_BUDGET`` environment variable overrides it."""
    raw = os.environ.get("SHIFTBRIBE_BUDGET")
    return int(raw) if raw else DEFAULT_BUDGET


@dataclass(frozen=True)
class OracleResult:
    opt_cost: Fraction | float
    witness: ShiftAction | None
    explored: int

    @property
    def feasible(self) -> bool:
        return self.witness is not None


class _Evaluator:
    """Incremental winner test: a state vector plus one delta per (voter, shift)."""

    def __init__(self, instance: Instance, rule: Rule):
        e, p = instance.election, instance.p
        self.p = p
        pos = e.positions[:, p]
        self.deltas: list[list[np.ndarray]] = []
        if isinstance(rule, Positional):
            w, _ = e.scaled_weights
            raw, _ = _scaled_positional_scores(e)
            self.state0 = np.asarray(raw, dtype=np.int64 if w.dtype != object else object)
            for v in range(e.n):
                r = int(pos[v])
                row = [np.zeros(e.m, dtype=self.state0.dtype)]
                for s in range(1, r + 1):
                    d = row[-1].copy()
                    j = r - s  # candidate at position j moves down to j + 1
                    c = int(e.prefs[v, j])
                    d[c] -= w[v, j] - w[v, j + 1]
                    d[p] += w[v, j] - w[v, j + 1]
                    row.append(d)
                self.deltas.append(row)
            self.wins = self._positional_wins
        elif isinstance(rule, Copeland):
            q = rule.alpha.denominator
            self.tie_points = rule.alpha.numerator
            self.win_points = q
            all_pos = e.positions
            ahead = (all_pos[:, p][:, None] < all_pos).sum(axis=0)
            behind = (all_pos[:, p][:, None] > all_pos).sum(axis=0)
            margin = (ahead - behind).astype(np.int64)
            margin[p] = 0
            table = copeland_scores(e, rule.alpha)
            versus_p = self._points(-margin)
            self.base = np.array([int(s * q) for s in table], dtype=np.int64) - versus_p
            self.mask = np.ones(e.m, dtype=bool)
            self.mask[p] = False
            self.state0 = margin
            for v in range(e.n):
                r = int(pos[v])
                row = [np.zeros(e.m, dtype=np.int64)]
                for s in range(1, r + 1):
                    d = row[-1].copy()
                    d[int(e.prefs[v, r - s])] += 2
                    row.append(d)
                self.deltas.append(row)
            self.wins = self._copeland_wins
        else:
            raise TypeError(f"unsupported rule {rule!r}")

    def _points(self, margin: np.ndarray) -> np.ndarray:
        return np.where(margin > 0, self.win_points, np.where(margin == 0, self.tie_points, 0))

    def _positional_wins(self, state) -> bool:
        return state[self.p] == state.max()

    def _copeland_wins(self, margin) -> bool:
        p_score = self._points(margin)[self.mask].sum()
        others = self.base + self._points(-margin)
        return p_score >= others[self.mask].max(initial=0)


def _options(instance: Instance):
    """Per voter: list of (shift, price) with finite price, shifts ascending."""
    return [[(s, pf(s)) for s in range(pf.max_shift + 1) if pf(s) != INF] for pf in instance.prices]


def _search(instance: Instance, rule: Rule | None, budget: int | None, count_shifts: bool):
    rule = instance.rule if rule is None else rule
    budget = default_budget() if budget is None else budget
    options = _options(instance)
    space = math.prod(len(o) for o in options)
    if space > budget:
        raise BudgetExceeded(f"{space} shift actions exceed the enumeration budget {budget}")
    ev = _Evaluator(instance, rule)
    n = instance.n
    best_key = None
    best_action = None
    explored = 0
    action = [0] * n

    def key_of(c, k):
        return (c, k) if count_shifts else (c,)

    def dfs(v, state, partial_cost, partial_shifts):
        nonlocal best_key, best_action, explored
        if v == n:
            explored += 1
            if ev.wins(state):
                best_key = key_of(partial_cost, partial_shifts)
                best_action = tuple(action)
            return
        for s, price in options[v]:
            c = partial_cost + price
            k = partial_shifts + s
            if best_key is not None and key_of(c, k) >= best_key:
                break  # larger shifts cost at least as much and add shifts
            action[v] = s
            dfs(v + 1, state + ev.deltas[v][s], c, k)
        action[v] = 0

    dfs(0, ev.state0, Fraction(0), 0)
    if best_action is None:
        return INF, None, INF, explored
    return best_key[0], best_action, sum(best_action), explored


def brute_force_opt(instance: Instance, rule: Rule | None = None, budget: int | None = None) -> OracleResult:
    """Minimum cost of a successful shift action, by exhaustive search.

    Shifts priced ``INF`` are never enumerated, so the search space is the
    product over voters of the number of finite-priced shift values.

    Raises
    ------
    BudgetExceeded
        If that product exceeds ``budget`` (default :func:`default_budget`).
    """
    opt, witness, _, explored = _search(instance, rule, budget, count_shifts=False)
    return OracleResult(opt, witness, explored)


def brute_force_min_unit_shifts(instance: Instance, rule: Rule | None = None, budget: int | None = None):
    """Fewest unit shifts among optimal successful actions; ``INF`` if none."""
    _, _, shifts, _ = _search(instance, rule, budget, count_shifts=True)
    return shifts


def min_aon_bribery(instance: Instance, rule: Rule | None = None, max_size: int | None = None):
    """Cheapest set of voters to bribe in an all-or-nothing instance.

    Every bribed voter moves ``p`` to the top.  Subsets are tried by size,
    then lexicographically.  Returns ``(cost, action)`` or ``(INF, None)``.
    """
    rule = instance.rule if rule is None else rule
    levels = aon_levels(instance)
    if levels is None:
        raise ValueError("instance prices are not all-or-nothing")
    buyable = [v for v, c in enumerate(levels) if c is not None and c != INF]
    top = instance.max_shifts
    limit = len(buyable) if max_size is None else min(max_size, len(buyable))
    best = (INF, None)
    for size in range(limit + 1):
        for subset in itertools.combinations(buyable, size):
            action = tuple(top[v] if v in subset else 0 for v in range(instance.n))
            price = cost(instance, action)
            if price < best[0] and is_successful(instance, action, rule):
                best = (price, action)
    return best

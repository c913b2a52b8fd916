"""Algorithms specific to Borda elections.

Under Borda every unit shift gives ``p`` exactly one point and takes exactly
one point from the candidate it passes.  If ``p`` trails the leader by
``diffmax`` points, any successful action therefore uses between
``diffmax / 2`` and ``diffmax`` unit shifts, and for a guess ``k`` of that
number the candidates still ahead of ``p + k`` must jointly lose
``scrdiff(k)`` points.  The algorithms here loop over the guesses and solve
the resulting covering problem with a dynamic program over voters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .election import Positional, ShiftAction, apply_shift, positional_scores, scores
from .exceptions import BudgetExceeded
from .pricing import INF, Instance, is_successful, is_uniform_aon, is_unit

DP_BUDGET = 10**6


@dataclass(frozen=True)
class GapProfile:
    """Score gaps between ``p`` and the other candidates.

    Attributes
    ----------
    scores : tuple of Fraction
        Score of every candidate.
    p : int
        Preferred candidate.
    diffmax : Fraction
        ``max_c scr(c) - scr(p)``.
    """

    scores: tuple
    p: int

    @property
    def diffmax(self):
        return max(s for s in self.scores) - self.scores[self.p]

    def gap(self, c: int):
        return self.scores[c] - self.scores[self.p]

    def scrdiff_at(self, k) -> Fraction:
        """Total excess ``sum_c max(0, scr(c) - scr(p) - k)``."""
        return sum((max(Fraction(0), self.gap(c) - k) for c in range(len(self.scores))), Fraction(0))

    def bad_set_at(self, k, slack=0) -> tuple[int, ...]:
        """Candidates scoring more than ``scr(p) + k + slack``."""
        return tuple(c for c in range(len(self.scores)) if self.gap(c) > k + slack)

    def guesses(self) -> list[int]:
        """Integers ``k`` in ``[diffmax / 2, diffmax]`` with ``scrdiff(k) <= k``."""
        d = self.diffmax
        if d <= 0:
            return []
        lo = math.ceil(Fraction(d) / 2)
        return [k for k in range(lo, math.floor(d) + 1) if self.scrdiff_at(k) <= k]


def gap_profile(instance: Instance) -> GapProfile:
    return GapProfile(positional_scores(instance.election), instance.p)


def _require_borda(instance: Instance):
    if not isinstance(instance.rule, Positional) or not instance.election.is_borda:
        raise ValueError("this algorithm needs a Borda election")


def dp_min_cost(
    instance: Instance,
    targets: Sequence[tuple[int, int]],
    exact_shifts: int | None = None,
    budget: int = DP_BUDGET,
):
    """Cheapest action making every target ``c_i`` lose at least ``s_i`` Borda points.

    A target loses one point for each vote in which ``p`` is shifted past it.
    The table is indexed by voter, number of unit shifts so far, and the
    loss of each target capped at its requirement; only reachable states
    are stored.

    Parameters
    ----------
    targets : sequence of (candidate, required loss)
    exact_shifts : int, optional
        Only accept actions with exactly this many unit shifts.
    budget : int
        Upper bound on the product of ``s_i + 1``.

    Returns
    -------
    (cost, action) or None
        ``None`` when no finite-cost action achieves the losses.
    """
    targets = [(int(c), int(s)) for c, s in targets]
    if len({c for c, _ in targets}) != len(targets):
        raise ValueError("targets must be distinct candidates")
    if any(c == instance.p for c, _ in targets):
        raise ValueError("the preferred candidate cannot be a target")
    need = tuple(max(0, s) for _, s in targets)
    if math.prod(s + 1 for s in need) > budget:
        raise BudgetExceeded(f"loss table of size {math.prod(s + 1 for s in need)} exceeds budget {budget}")
    index = {c: i for i, (c, _) in enumerate(targets)}
    e, p = instance.election, instance.p

    layers: list[dict] = []
    frontier = {(0, (0,) * len(need)): Fraction(0)}
    for v in range(instance.n):
        pf = instance.prices[v]
        r = e.rank(v, p)
        # passed[l] = target indices passed when p moves up l positions
        passed = [()]
        for ell in range(1, pf.max_shift + 1):
            c = e.at_rank(v, r - ell)
            passed.append(passed[-1] + ((index[c],) if c in index else ()))
        nxt: dict = {}
        back: dict = {}
        for (j, losses), base in frontier.items():
            for ell in range(pf.max_shift + 1):
                price = pf(ell)
                if price == INF:
                    break
                jj = j + ell
                if exact_shifts is not None and jj > exact_shifts:
                    break
                if passed[ell]:
                    lst = list(losses)
                    for i in passed[ell]:
                        if lst[i] < need[i]:
                            lst[i] += 1
                    new_losses = tuple(lst)
                else:
                    new_losses = losses
                key = (jj, new_losses)
                total = base + price
                if key not in nxt or total < nxt[key]:
                    nxt[key] = total
                    back[key] = ((j, losses), ell)
        layers.append(back)
        frontier = nxt

    best_key = None
    for key, total in frontier.items():
        j, losses = key
        if losses != need or (exact_shifts is not None and j != exact_shifts):
            continue
        if best_key is None or (total, j) < (frontier[best_key], best_key[0]):
            best_key = key
    if best_key is None:
        return None
    action = [0] * instance.n
    key = best_key
    for v in range(instance.n - 1, -1, -1):
        key, ell = layers[v][key]
        action[v] = ell
    return frontier[best_key], tuple(action)


def _pad(instance: Instance, action: Sequence[int], target: int) -> ShiftAction:
    """Add unit shifts, voters in index order, each as far as allowed, up to ``target``."""
    action = list(action)
    extra = target - sum(action)
    for v, limit in enumerate(instance.max_shifts):
        if extra <= 0:
            break
        step = min(extra, limit - action[v])
        action[v] += step
        extra -= step
    return tuple(action)


def ptas_unit(instance: Instance, eps) -> ShiftAction:
    """Successful action with at most ``floor((1 + eps) * opt)`` unit shifts.

    For unit prices under Borda.  For each guess ``k`` the candidates above
    ``scr(p) + (1 + eps) k`` (fewer than ``1 / eps`` of them) are handed to
    :func:`dp_min_cost`; once the dynamic program stays within ``k`` shifts,
    the action is padded to ``floor((1 + eps) k)`` shifts.
    """
    _require_borda(instance)
    if not is_unit(instance):
        raise ValueError("ptas_unit needs unit prices")
    eps = _as_fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    profile = gap_profile(instance)
    for k in profile.guesses():
        bad = profile.bad_set_at(k, eps * k)
        found = dp_min_cost(instance, [(c, profile.gap(c) - k) for c in bad])
        if found is not None and found[0] <= k:
            return _pad(instance, found[1], math.floor((1 + eps) * k))
    return instance.zero_action()


def fpt_exact(instance: Instance):
    """Optimal ``(cost, action)`` for Borda with arbitrary prices.

    Runs in time exponential only in the number of unit shifts of an
    optimal action.  Returns ``(INF, None)`` if every successful action has
    infinite cost.
    """
    _require_borda(instance)
    profile = gap_profile(instance)
    if profile.diffmax <= 0:
        return Fraction(0), instance.zero_action()
    best = (INF, None)
    for k in profile.guesses():
        bad = profile.bad_set_at(k)
        found = dp_min_cost(instance, [(c, profile.gap(c) - k) for c in bad], exact_shifts=k)
        if found is not None and found[0] < best[0]:
            best = found
    return best


def greedy_uniform_aon(instance: Instance) -> ShiftAction:
    """Bribe voters one at a time, each moving ``p`` to the top.

    Picks a voter ranking ``p`` lowest; among voters ranking ``p`` second,
    the one whose top candidate currently scores highest; remaining ties go
    to the lowest voter index.  Cost at most ``1.5 opt + 1`` for uniform
    all-or-nothing prices under Borda.
    """
    _require_borda(instance)
    if not is_uniform_aon(instance):
        raise ValueError("greedy_uniform_aon needs uniform all-or-nothing prices")
    e, p = instance.election, instance.p
    tops = instance.max_shifts
    action = [0] * instance.n
    while not is_successful(instance, action):
        open_voters = [v for v in range(instance.n) if action[v] == 0 and tops[v] > 0]
        lowest = max(tops[v] for v in open_voters)
        pool = [v for v in open_voters if tops[v] == lowest]
        if lowest == 1:
            current = scores(apply_shift(e, p, action), instance.rule)
            pool.sort(key=lambda v: (-current[e.at_rank(v, 1)], v))
        action[pool[0]] = tops[pool[0]]
    return tuple(action)


def _as_fraction(x) -> Fraction:
    """Exact value of ``x``; floats are read through their shortest repr."""
    if isinstance(x, float):
        return Fraction(str(x))
    return Fraction(x)

"""LP-based approximation algorithms.

A shift action is encoded as a 0/1 matrix ``x[v][j]`` over the ranks
``j = 1..T_v`` above ``p`` in vote ``v``: ``x[v][j] = 1`` iff ``p`` ends at
rank ``j`` or better.  Relaxing to ``0 <= x[v][1] <= ... <= x[v][T_v] <= 1``
gives linear programs whose basic solutions have few fractional voters,
which the algorithms below round.

* :func:`lp_additive_unit` and :func:`eptas_unit` handle unit prices under
  Borda.
* :func:`lp_additive_general` and :func:`ptas_general` handle arbitrary
  prices under positional scoring with per-voter vectors.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .borda import _as_fraction, _pad, _require_borda, gap_profile, ptas_unit
from .election import Positional, ShiftAction, positional_scores
from .exceptions import NoFiniteSolution
from .lp import LPBuilder, solve_basic
from .pricing import INF, Instance, PriceFunction, cost, is_successful, is_unit


@dataclass(frozen=True)
class ShiftMatrix:
    """Fractional shift action: ``rows[v][j - 1]`` is the value for rank ``j``."""

    rows: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def from_action(cls, instance: Instance, action: Sequence[int]) -> ShiftMatrix:
        rows = []
        for T, s in zip(instance.max_shifts, action):
            rows.append(tuple(Fraction(1 if j >= T + 1 - s else 0) for j in range(1, T + 1)))
        return cls(tuple(rows))

    def is_monotone(self) -> bool:
        return all(
            all(0 <= a <= b <= 1 for a, b in zip(row, row[1:] + (Fraction(1),))) and (not row or row[0] >= 0)
            for row in self.rows
        )

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for row in self.rows for x in row)

    def nonintegral_voters(self) -> tuple[int, ...]:
        return tuple(v for v, row in enumerate(self.rows) if any(x.denominator != 1 for x in row))

    def to_action(self) -> ShiftAction:
        """Action of an integral monotone matrix."""
        if not self.is_integral() or not self.is_monotone():
            raise ValueError("only integral monotone matrices correspond to shift actions")
        return tuple(int(sum(row)) for row in self.rows)

    def round_down(self) -> ShiftAction:
        return tuple(sum(1 for x in row if x == 1) for row in self.rows)

    def round_up(self) -> ShiftAction:
        return tuple(sum(1 for x in row if x > 0) for row in self.rows)


@dataclass(frozen=True)
class RelaxationPlan:
    """Scaled LP1 optimum ``y*``, the rank ``j_v`` it fully reaches per voter,
    and the candidates that may still beat ``p`` after shifting to ``j_v``."""

    y_star: ShiftMatrix
    j: tuple[int, ...]
    c_bad: tuple[int, ...]


@dataclass
class Trace:
    """An algorithm's output action with diagnostics gathered along the way."""

    action: ShiftAction
    info: dict = field(default_factory=dict)


def _exceeds_sqrt(gap, k: int) -> bool:
    """``gap - k > sqrt(k)``, exactly."""
    excess = gap - k
    return excess > 0 and excess * excess > k


def _unit_lp(instance: Instance, k: int, bad: Sequence[int], gaps):
    """LP relaxation for guess ``k``: minimise the number of unit shifts
    subject to each bad candidate losing ``gap - k`` points."""
    e, p = instance.election, instance.p
    tops = instance.max_shifts
    var = {}
    for v, T in enumerate(tops):
        for j in range(1, T + 1):
            var[(v, j)] = len(var)
    lp = LPBuilder(len(var))
    lp.minimize({i: 1 for i in var.values()})
    for v, T in enumerate(tops):
        if T == 0:
            continue
        lp.add_ge({var[(v, 1)]: 1}, 0)
        for j in range(1, T):
            lp.add_ge({var[(v, j + 1)]: 1, var[(v, j)]: -1}, 0)
        lp.add_ge({var[(v, T)]: -1}, -1)
    for c in bad:
        coeffs = {}
        for v in range(instance.n):
            r = e.rank(v, c)
            if r < e.rank(v, p):
                coeffs[var[(v, r)]] = 1
        lp.add_ge(coeffs, gaps[c] - k)
    return lp.build(), var


def lp_additive_unit_trace(instance: Instance) -> Trace:
    """See :func:`lp_additive_unit`; also reports the guess ``k`` that
    terminated the loop and the fractional voters of its basic solution."""
    _require_borda(instance)
    if not is_unit(instance):
        raise ValueError("lp_additive_unit needs unit prices")
    profile = gap_profile(instance)
    gaps = [profile.gap(c) for c in range(instance.m)]
    for k in profile.guesses():
        bad = [c for c in range(instance.m) if _exceeds_sqrt(gaps[c], k)]
        lp, var = _unit_lp(instance, k, bad, gaps)
        sol = solve_basic(lp)
        if not sol.is_optimal or sol.objective > k:
            continue
        rows = tuple(
            tuple(sol.x[var[(v, j)]] for j in range(1, T + 1)) for v, T in enumerate(instance.max_shifts)
        )
        matrix = ShiftMatrix(rows)
        action = _pad(instance, matrix.round_down(), k + math.isqrt(k))
        return Trace(
            action,
            {
                "k": k,
                "bad": tuple(bad),
                "lp_objective": sol.objective,
                "nonintegral_voters": len(matrix.nonintegral_voters()),
                "solution": matrix,
            },
        )
    return Trace(instance.zero_action(), {"k": 0, "bad": (), "nonintegral_voters": 0})


def lp_additive_unit(instance: Instance) -> ShiftAction:
    """Successful action with at most ``opt + floor(sqrt(opt))`` unit shifts.

    Unit prices under Borda.  For each guess ``k`` the LP relaxation is
    solved for a basic solution, which has at most ``floor(sqrt(k))``
    fractional voters; rounding them down and padding to
    ``k + floor(sqrt(k))`` shifts gives a successful action.
    """
    return lp_additive_unit_trace(instance).action


def eptas_unit_trace(instance: Instance, eps) -> Trace:
    eps = _as_fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    diffmax = gap_profile(instance).diffmax
    if diffmax * eps * eps < 2:
        return Trace(ptas_unit(instance, eps), {"branch": "combinatorial", "diffmax": diffmax})
    trace = lp_additive_unit_trace(instance)
    trace.info.update(branch="lp", diffmax=diffmax)
    return trace


def eptas_unit(instance: Instance, eps) -> ShiftAction:
    """``(1 + eps)``-approximation for unit prices under Borda.

    Small gaps (``diffmax < 2 / eps^2``) go to :func:`ptas_unit`, whose
    bad sets are then tiny; large gaps make the additive ``sqrt(opt)``
    error of :func:`lp_additive_unit` at most ``eps * opt``.
    """
    return eptas_unit_trace(instance, eps).action


# general prices under positional scoring


class _ShiftLP:
    """Variables ``x[v][j]`` of a shift LP, some fixed to constants.

    ``value[v][j]`` is either an int variable index or a Fraction constant.
    """

    def __init__(self, instance: Instance, upper: Sequence[int]):
        # ranks j >= upper[v] are fixed at 1; ranks whose price is infinite at 0
        self.instance = instance
        self.value: list[dict[int, object]] = []
        n_vars = 0
        for v, (pf, T) in enumerate(zip(instance.prices, instance.max_shifts)):
            pos = T + 1
            row = {}
            for j in range(1, T + 1):
                if j >= upper[v]:
                    row[j] = Fraction(1)
                elif pf(pos - j) == INF:
                    row[j] = Fraction(0)
                else:
                    row[j] = n_vars
                    n_vars += 1
            self.value.append(row)
        self.lp = LPBuilder(n_vars)
        for row in self.value:
            chain = [x for j, x in sorted(row.items()) if isinstance(x, int)]
            if not chain:
                continue
            self.lp.add_ge({chain[0]: 1}, 0)
            for a, b in zip(chain, chain[1:]):
                self.lp.add_ge({b: 1, a: -1}, 0)
            self.lp.add_ge({chain[-1]: -1}, -1)

    def add_linear(self, terms, rhs):
        """Add ``sum coeff * x[v][j] >= rhs`` moving fixed entries to the right."""
        coeffs: dict[int, Fraction] = {}
        for (v, j), a in terms:
            x = self.value[v][j]
            if isinstance(x, int):
                coeffs[x] = coeffs.get(x, Fraction(0)) + a
            else:
                rhs -= a * x
        self.lp.add_ge(coeffs, rhs)

    def set_objective(self):
        inst = self.instance
        coeffs = {}
        for v, (pf, T) in enumerate(zip(inst.prices, inst.max_shifts)):
            for j, x in self.value[v].items():
                if isinstance(x, int):
                    coeffs[x] = pf.delta(T + 1 - j)
        self.lp.minimize(coeffs)

    def matrix(self, x) -> ShiftMatrix:
        rows = []
        for v, T in enumerate(self.instance.max_shifts):
            row = self.value[v]
            rows.append(tuple(x[row[j]] if isinstance(row[j], int) else row[j] for j in range(1, T + 1)))
        return ShiftMatrix(tuple(rows))


def _p_gain_terms(instance: Instance):
    e = instance.election
    return [((v, j), e.weight_drop(v, j)) for v, T in enumerate(instance.max_shifts) for j in range(1, T + 1)]


def _loss_terms(instance: Instance, c: int):
    e, p = instance.election, instance.p
    out = []
    for v in range(instance.n):
        r = e.rank(v, c)
        if r < e.rank(v, p):
            out.append(((v, r), e.weight_drop(v, r)))
    return out


def _require_positional(instance: Instance):
    if not isinstance(instance.rule, Positional):
        raise ValueError("this algorithm needs a positional scoring rule")


def relaxation_plan(instance: Instance, x: ShiftMatrix, eps) -> RelaxationPlan:
    """Scale ``x`` by ``1 + eps``, cap at 1, and find the candidates that the
    resulting fully-reached ranks do not already take care of."""
    e, p = instance.election, instance.p
    table = positional_scores(e)
    y_star = ShiftMatrix(tuple(tuple(min(Fraction(1), (1 + eps) * a) for a in row) for row in x.rows))
    j = []
    for v, row in enumerate(y_star.rows):
        j.append(next((r for r, a in enumerate(row, start=1) if a == 1), len(row) + 1))
    gain = sum((w * y_star.rows[v][r - 1] for (v, r), w in _p_gain_terms(instance)), Fraction(0))
    c_bad = []
    for c in range(instance.m):
        if c == p:
            continue
        kept = table[c] - sum((w for (v, r), w in _loss_terms(instance, c) if r >= j[v]), Fraction(0))
        if kept > table[p] + gain:
            c_bad.append(c)
    return RelaxationPlan(y_star, tuple(j), tuple(c_bad))


def lp_additive_general_trace(instance: Instance, eps) -> Trace:
    """See :func:`lp_additive_general`; also reports the relaxation plan and
    the fractional voters of the second LP."""
    _require_positional(instance)
    eps = _as_fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    e, p = instance.election, instance.p
    table = positional_scores(e)
    tops = instance.max_shifts
    gain = _p_gain_terms(instance)

    first = _ShiftLP(instance, [T + 1 for T in tops])
    first.set_objective()
    for c in range(instance.m):
        if c != p:
            first.add_linear(gain + _loss_terms(instance, c), table[c] - table[p])
    sol1 = solve_basic(first.lp.build())
    if not sol1.is_optimal:
        raise NoFiniteSolution("no finite-cost action satisfies the relaxation")
    x = first.matrix(sol1.x)
    plan = relaxation_plan(instance, x, eps)

    second = _ShiftLP(instance, plan.j)
    second.set_objective()
    for c in plan.c_bad:
        second.add_linear(gain + _loss_terms(instance, c), table[c] - table[p])
    target = sum((w * plan.y_star.rows[v][r - 1] for (v, r), w in gain), Fraction(0))
    second.add_linear(gain, target)
    sol2 = solve_basic(second.lp.build())
    if not sol2.is_optimal:  # y* is feasible, so this signals a bug
        raise ArithmeticError("second relaxation unexpectedly infeasible")
    y = second.matrix(sol2.x)
    if not y.is_monotone():
        raise ArithmeticError("second relaxation returned a non-monotone solution")
    action = y.round_up()
    return Trace(
        action,
        {
            "lp1_objective": sol1.objective,
            "lp2_objective": sol2.objective,
            "c_bad": plan.c_bad,
            "j": plan.j,
            "nonintegral_voters": len(y.nonintegral_voters()),
        },
    )


def lp_additive_general(instance: Instance, eps) -> ShiftAction:
    """Action of cost at most ``(1 + eps) opt + (1 + 1/eps) psi_max``.

    Solves the fractional relaxation, scales it by ``1 + eps``, fixes the
    voters it reaches fully, re-solves for the few candidates still ahead
    of ``p``, and rounds the basic solution up.

    Raises
    ------
    NoFiniteSolution
        If even the relaxation has no finite-cost solution.
    """
    return lp_additive_general_trace(instance, eps).action


def _restricted_prices(instance: Instance, subset, shifts, bound):
    """Voters in ``subset`` shift for free up to their guess and no further;
    every other shift costing more than ``bound`` becomes unavailable."""
    prices = []
    guess = dict(zip(subset, shifts))
    for v, pf in enumerate(instance.prices):
        if v in guess:
            s = guess[v]
            prices.append(PriceFunction(tuple(0 if t <= s else INF for t in range(pf.max_shift + 1))))
        else:
            prices.append(PriceFunction(tuple(x if x <= bound else INF for x in pf.values)))
    return instance.with_prices(prices)


def ptas_general_trace(instance: Instance, eps) -> Trace:
    """See :func:`ptas_general`; ``info['branches']`` lists every guess tried."""
    _require_positional(instance)
    eps = _as_fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    delta = eps * eps / 8
    q = math.ceil(1 / delta)
    size = min(q, instance.n)
    tops = instance.max_shifts
    best = None
    branches = []
    for subset in itertools.combinations(range(instance.n), size):
        seen = set()
        for raw in itertools.product(range(instance.m + 1), repeat=size):
            shifts = tuple(min(s, tops[v]) for s, v in zip(raw, subset))
            if shifts in seen:
                continue
            seen.add(shifts)
            guessed = [instance.prices[v](s) for v, s in zip(subset, shifts)]
            if any(g == INF for g in guessed):
                continue
            bound = min(guessed)
            restricted = _restricted_prices(instance, subset, shifts, bound)
            record = {"subset": subset, "shifts": shifts}
            try:
                run = lp_additive_general_trace(restricted, eps / 2)
            except NoFiniteSolution:
                record["status"] = "infeasible"
                branches.append(record)
                continue
            price = cost(instance, run.action)
            ok = is_successful(instance, run.action)
            record.update(run.info, status="ok" if ok else "unsuccessful", cost=price, action=run.action)
            branches.append(record)
            if ok and (best is None or price < best[0]):
                best = (price, run.action)
    if best is None:
        raise NoFiniteSolution("no guessed branch produced a successful action")
    return Trace(best[1], {"cost": best[0], "branches": branches, "q": q})


def ptas_general(instance: Instance, eps) -> ShiftAction:
    """``(1 + eps)``-approximation for positional scoring with arbitrary prices.

    Guesses the shifts of the ``ceil(8 / eps^2)`` most expensive voters of
    an optimal action, forbids every other shift pricier than the cheapest
    guessed one, and runs :func:`lp_additive_general` with ``eps / 2`` on
    each restricted instance.  Returns the cheapest successful result.

    Raises
    ------
    NoFiniteSolution
        If no guess yields a successful action.
    """
    return ptas_general_trace(instance, eps).action

"""Estimator-style wrappers around the solvers.

Each class takes its hyper-parameters (``eps``, ``budget``) in the
constructor and solves an instance in :meth:`fit`, following the
scikit-learn conventions: parameters are introspectable through
``get_params``/``set_params`` and results live in attributes with a
trailing underscore.

>>> from shiftbribery.io import random_instance
>>> solver = FPTExact().fit(random_instance(0, 4, 4))
>>> solver.success_
True
"""

from __future__ import annotations

from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from . import borda, scoring_ptas
from .oracle import brute_force_opt
from .pricing import INF, PriceFamily, cost, is_successful, unit_shifts
from .validation import check_eps, check_instance


class ShiftBriberySolver(BaseEstimator):
    """Common ``fit`` logic.  Subclasses implement ``_solve(instance)``
    returning ``(action, info)``.

    Attributes
    ----------
    action_ : tuple of int
        Shift per voter.
    cost_ : Fraction or float
        Price of ``action_``.
    unit_shifts_ : int
    success_ : bool
        Whether ``action_`` makes the preferred candidate a winner.
    info_ : dict
        Algorithm-specific diagnostics.
    """

    _requirements: dict = {}

    def fit(self, instance, y=None):
        instance = check_instance(instance, **self._requirements)
        action, info = self._solve(instance)
        self.action_ = tuple(action)
        self.cost_ = cost(instance, self.action_)
        self.unit_shifts_ = unit_shifts(self.action_)
        self.success_ = is_successful(instance, self.action_)
        self.info_ = info
        return self

    def solve(self, instance):
        """Fit and return the action."""
        return self.fit(instance).action_

    def report(self) -> dict:
        check_is_fitted(self, "action_")
        return {"action": self.action_, "cost": self.cost_, "success": self.success_}

    def _solve(self, instance):  # pragma: no cover
        raise NotImplementedError


class PTASUnit(ShiftBriberySolver):
    """Combinatorial ``(1 + eps)``-approximation, unit prices, Borda."""

    _requirements = {"borda": True, "prices": PriceFamily.UNIT}

    def __init__(self, eps=0.5):
        self.eps = eps

    def _solve(self, instance):
        return borda.ptas_unit(instance, check_eps(self.eps)), {}


class FPTExact(ShiftBriberySolver):
    """Exact solver, Borda, any prices; fast when few unit shifts suffice."""

    _requirements = {"borda": True}

    def _solve(self, instance):
        price, action = borda.fpt_exact(instance)
        if action is None:
            return instance.zero_action(), {"opt_cost": INF}
        return action, {"opt_cost": price}


class GreedyUniformAON(ShiftBriberySolver):
    """Greedy ``1.5 opt + 1`` approximation, uniform all-or-nothing prices, Borda."""

    _requirements = {"borda": True, "prices": PriceFamily.UNIFORM_AON}

    def _solve(self, instance):
        return borda.greedy_uniform_aon(instance), {}


class LPAdditiveUnit(ShiftBriberySolver):
    """``opt + sqrt(opt)`` approximation by LP rounding, unit prices, Borda."""

    _requirements = {"borda": True, "prices": PriceFamily.UNIT}

    def _solve(self, instance):
        trace = scoring_ptas.lp_additive_unit_trace(instance)
        return trace.action, trace.info


class EPTASUnit(ShiftBriberySolver):
    """``(1 + eps)``-approximation dispatching on the score gap, unit prices, Borda."""

    _requirements = {"borda": True, "prices": PriceFamily.UNIT}

    def __init__(self, eps=0.5):
        self.eps = eps

    def _solve(self, instance):
        trace = scoring_ptas.eptas_unit_trace(instance, check_eps(self.eps))
        return trace.action, trace.info


class PTASGeneral(ShiftBriberySolver):
    """``(1 + eps)``-approximation, positional scoring, any prices."""

    _requirements = {"positional": True}

    def __init__(self, eps=1.0):
        self.eps = eps

    def _solve(self, instance):
        trace = scoring_ptas.ptas_general_trace(instance, check_eps(self.eps))
        return trace.action, trace.info


class ExhaustiveSearch(ShiftBriberySolver):
    """Exact optimum by enumeration; any rule, small instances only."""

    def __init__(self, budget=None):
        self.budget = budget

    def _solve(self, instance):
        result = brute_force_opt(instance, budget=self.budget)
        if result.witness is None:
            return instance.zero_action(), {"opt_cost": INF, "explored": result.explored}
        return result.witness, {"opt_cost": result.opt_cost, "explored": result.explored}

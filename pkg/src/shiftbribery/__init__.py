"""Shift-Bribery: make a preferred candidate win by moving it up in votes,
at minimum total price.

Exact and approximation algorithms for Borda and positional scoring,
reduction generators for Copeland and Borda hardness, an exact rational
LP solver, and an exhaustive oracle for testing.
"""

from .borda import GapProfile, dp_min_cost, fpt_exact, gap_profile, greedy_uniform_aon, ptas_unit
from .election import (
    BORDA,
    Copeland,
    Election,
    Positional,
    apply_shift,
    check_shift_action,
    copeland_scores,
    is_winner,
    pairwise_margins,
    positional_scores,
    scores,
    winners,
)
from .estimators import (
    EPTASUnit,
    ExhaustiveSearch,
    FPTExact,
    GreedyUniformAON,
    LPAdditiveUnit,
    PTASGeneral,
    PTASUnit,
)
from .exceptions import BudgetExceeded, InvalidShiftAction, NoFiniteSolution, ParseError, ShiftBriberyError
from .oracle import OracleResult, brute_force_min_unit_shifts, brute_force_opt
from .pricing import (
    INF,
    Instance,
    PriceFamily,
    PriceFunction,
    classify_prices,
    cost,
    is_successful,
    psi_max,
    width,
)
from .scoring_ptas import eptas_unit, lp_additive_general, lp_additive_unit, ptas_general

__all__ = [
    "BORDA",
    "INF",
    "BudgetExceeded",
    "Copeland",
    "EPTASUnit",
    "Election",
    "ExhaustiveSearch",
    "FPTExact",
    "GapProfile",
    "GreedyUniformAON",
    "Instance",
    "InvalidShiftAction",
    "LPAdditiveUnit",
    "NoFiniteSolution",
    "OracleResult",
    "PTASGeneral",
    "PTASUnit",
    "ParseError",
    "Positional",
    "PriceFamily",
    "PriceFunction",
    "ShiftBriberyError",
    "apply_shift",
    "brute_force_min_unit_shifts",
    "brute_force_opt",
    "check_shift_action",
    "classify_prices",
    "copeland_scores",
    "cost",
    "dp_min_cost",
    "eptas_unit",
    "fpt_exact",
    "gap_profile",
    "greedy_uniform_aon",
    "is_successful",
    "is_winner",
    "lp_additive_general",
    "lp_additive_unit",
    "pairwise_margins",
    "positional_scores",
    "psi_max",
    "ptas_general",
    "ptas_unit",
    "scores",
    "width",
    "winners",
]

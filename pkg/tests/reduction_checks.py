"""Shared checks for the filler-election construction."""

from fractions import Fraction

import numpy as np

from shiftbribery.election import copeland_scores, pairwise_margins
from shiftbribery.hardness import dummy_election


def filler_layout(size_a, size_b):
    A = list(range(size_a))
    B = list(range(size_a, size_a + size_b))
    return A, B, size_a + size_b, size_a + size_b + 1


def filler_violations(size_a, size_b, a, b):
    """List of property failures of the filler election; empty when all hold."""
    A, B, p, d = filler_layout(size_a, size_b)
    e = dummy_election(A, B, p, d, a, b)
    N = pairwise_margins(e)
    score = copeland_scores(e)
    S = set(B[:a])
    bad = []
    if e.n != 2 * size_a + 2 * size_b + 2 * b + 5:
        bad.append(f"voter count {e.n}")
    for c in A:
        if N[c, p] - N[p, c] != 2 * b + 1:
            bad.append(f"margin of {c} over p is {N[c, p] - N[p, c]}")
    beaten_by_p = {c for c in range(e.m) if c != p and N[p, c] > N[c, p]}
    if beaten_by_p != ({d} | set(B)) - S:
        bad.append("p beats the wrong candidates")
    beaten_by_d = {c for c in range(e.m) if c != d and N[d, c] > N[c, d]}
    if beaten_by_d != set(B):
        bad.append("d beats the wrong candidates")
    if score[p] != size_b - a + 1 or score[d] != size_b:
        bad.append(f"scores p={score[p]} d={score[d]}")
    cap = Fraction(size_a + size_b + 3, 2)
    if any(score[c] > cap for c in A + B):
        bad.append("a filler candidate scores too much")
    if (N == N.T)[~np.eye(e.m, dtype=bool)].any():
        bad.append("a pairwise contest ties")
    return bad


def filler_grid(max_total=15, max_b=3):
    for total in range(3, max_total + 1, 2):
        for size_a in range(total + 1):
            size_b = total - size_a
            for a in range(size_b + 1):
                for b in range(max_b + 1):
                    yield size_a, size_b, a, b

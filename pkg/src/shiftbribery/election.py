"""Elections, voting rules and the effect of shift actions.

Candidates are dense integer indices ``0..m-1``.  A voter's preference
order is stored as a row of candidate indices, most preferred first.  The
public API speaks 1-based ranks: ``rank(v, c) == 1`` means voter ``v``
ranks ``c`` on top.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import lcm
from typing import Sequence

import numpy as np

from .exceptions import InvalidShiftAction

ShiftAction = tuple[int, ...]


@dataclass(frozen=True)
class Positional:
    """Positional scoring.  Uses the election's per-voter scoring vectors,
    or Borda ``(m-1, ..., 1, 0)`` when the election carries none."""

    def __str__(self):
        return "positional"


@dataclass(frozen=True)
class Copeland:
    """Copeland^alpha: one point per pairwise win, ``alpha`` per tie."""

    alpha: Fraction = Fraction(1, 2)

    def __post_init__(self):
        alpha = Fraction(self.alpha)
        if not 0 <= alpha <= 1:
            raise ValueError(f"Copeland alpha must lie in [0, 1], got {alpha}")
        object.__setattr__(self, "alpha", alpha)

    def __str__(self):
        return f"copeland^{self.alpha}"


Rule = Positional | Copeland
BORDA = Positional()


def _as_fraction_vector(w) -> tuple[Fraction, ...]:
    return tuple(Fraction(x) for x in w)


@dataclass(frozen=True, eq=False)
class Election:
    """An election over candidates ``0..m-1``.

    Parameters
    ----------
    prefs : array-like of shape (n, m)
        Row ``v`` lists the candidates in voter ``v``'s order, rank 1 first.
    scoring_vectors : sequence of n vectors of length m, optional
        Nonincreasing nonnegative rationals per voter.  ``None`` means Borda.
    names : sequence of str, optional
        Display labels for the candidates.
    """

    prefs: np.ndarray
    scoring_vectors: tuple[tuple[Fraction, ...], ...] | None = None
    names: tuple[str, ...] | None = field(default=None)

    def __post_init__(self):
        prefs = np.array(self.prefs, dtype=np.int64, copy=True)
        if prefs.ndim != 2 or prefs.shape[0] < 1 or prefs.shape[1] < 1:
            raise ValueError("an election needs at least one voter and one candidate")
        n, m = prefs.shape
        if not np.array_equal(np.sort(prefs, axis=1), np.broadcast_to(np.arange(m), (n, m))):
            bad = int(np.nonzero(~np.all(np.sort(prefs, axis=1) == np.arange(m), axis=1))[0][0])
            raise ValueError(f"voter {bad}: preference order is not a permutation of 0..{m - 1}")
        prefs.flags.writeable = False
        object.__setattr__(self, "prefs", prefs)

        if self.scoring_vectors is not None:
            vectors = tuple(_as_fraction_vector(w) for w in self.scoring_vectors)
            if len(vectors) != n:
                raise ValueError(f"expected {n} scoring vectors, got {len(vectors)}")
            for v, w in enumerate(vectors):
                if len(w) != m:
                    raise ValueError(f"voter {v}: scoring vector has length {len(w)}, expected {m}")
                if w[-1] < 0 or any(w[j] < w[j + 1] for j in range(m - 1)):
                    raise ValueError(f"voter {v}: scoring vector must be nonincreasing and nonnegative")
            object.__setattr__(self, "scoring_vectors", vectors)
        if self.names is not None:
            names = tuple(str(s) for s in self.names)
            if len(names) != m:
                raise ValueError(f"expected {m} candidate names, got {len(names)}")
            object.__setattr__(self, "names", names)

    @property
    def n(self) -> int:
        return self.prefs.shape[0]

    @property
    def m(self) -> int:
        return self.prefs.shape[1]

    @cached_property
    def positions(self) -> np.ndarray:
        """0-based position of each candidate in each vote, shape (n, m)."""
        pos = np.empty_like(self.prefs)
        rows = np.arange(self.n)[:, None]
        pos[rows, self.prefs] = np.arange(self.m)[None, :]
        pos.flags.writeable = False
        return pos

    def rank(self, v: int, c: int) -> int:
        """1-based rank of candidate ``c`` in vote ``v``."""
        return int(self.positions[v, c]) + 1

    def ranks_of(self, c: int) -> tuple[int, ...]:
        """1-based rank of ``c`` in every vote."""
        return tuple(int(r) + 1 for r in self.positions[:, c])

    def at_rank(self, v: int, j: int) -> int:
        """Candidate on 1-based rank ``j`` of vote ``v``."""
        return int(self.prefs[v, j - 1])

    @property
    def is_borda(self) -> bool:
        if self.scoring_vectors is None:
            return True
        borda = tuple(Fraction(self.m - 1 - j) for j in range(self.m))
        return all(w == borda for w in self.scoring_vectors)

    def weight(self, v: int, j: int) -> Fraction:
        """Points voter ``v`` gives to 1-based rank ``j``."""
        if self.scoring_vectors is None:
            return Fraction(self.m - j)
        return self.scoring_vectors[v][j - 1]

    def weight_drop(self, v: int, j: int) -> Fraction:
        """``w^v_j - w^v_{j+1}``; zero at the last rank."""
        if j >= self.m:
            return Fraction(0)
        return self.weight(v, j) - self.weight(v, j + 1)

    @cached_property
    def scaled_weights(self) -> tuple[np.ndarray, int]:
        """Integer weight matrix ``W`` (n, m) and scale ``L`` with ``w = W / L``."""
        if self.scoring_vectors is None:
            w = np.broadcast_to(np.arange(self.m - 1, -1, -1, dtype=np.int64), (self.n, self.m)).copy()
            return w, 1
        scale = 1
        for vec in self.scoring_vectors:
            for x in vec:
                scale = lcm(scale, x.denominator)
        ints = [[int(x * scale) for x in vec] for vec in self.scoring_vectors]
        top = max(max(r) for r in ints)
        dtype = np.int64 if top * self.n < 2**62 else object
        return np.array(ints, dtype=dtype), scale

    def label(self, c: int) -> str:
        return self.names[c] if self.names is not None else str(c)

    def __eq__(self, other):
        if not isinstance(other, Election):
            return NotImplemented
        return (
            np.array_equal(self.prefs, other.prefs)
            and self.scoring_vectors == other.scoring_vectors
            and self.names == other.names
        )

    def __hash__(self):
        return hash((self.prefs.tobytes(), self.prefs.shape, self.scoring_vectors))

    def __repr__(self):
        return f"Election(m={self.m}, n={self.n}, scoring={'borda' if self.scoring_vectors is None else 'custom'})"


def positional_scores(election: Election) -> tuple[Fraction, ...]:
    """Score of every candidate under the election's positional rule."""
    raw, scale = _scaled_positional_scores(election)
    return tuple(Fraction(int(x), scale) for x in raw)


def _scaled_positional_scores(election: Election) -> tuple[np.ndarray, int]:
    w, scale = election.scaled_weights
    totals = np.zeros(election.m, dtype=w.dtype)
    # w[v, j] goes to the candidate on position j of vote v
    np.add.at(totals, election.prefs.ravel(), w.ravel())
    return totals, scale


def pairwise_margins(election: Election) -> np.ndarray:
    """Matrix ``N`` with ``N[c, c']`` voters preferring ``c`` to ``c'``.

    Quadratic in ``m``; meant for small elections.
    """
    pos = election.positions
    counts = (pos[:, :, None] < pos[:, None, :]).sum(axis=0)
    return counts.astype(np.int64)


def candidate_blocks(election: Election) -> list[np.ndarray]:
    """Split candidates into maximal runs that are contiguous, in the same
    internal order, in every vote.

    Pairwise comparisons against outsiders are identical for all members of
    a run, and inside a run the order is unanimous, so Copeland scores can
    be computed on runs instead of candidates.
    """
    order = election.prefs[0]
    pos = election.positions
    linked = np.all(pos[:, order[1:]] == pos[:, order[:-1]] + 1, axis=0)
    cuts = np.nonzero(~linked)[0] + 1
    return np.split(order, cuts)


def copeland_scores(election: Election, alpha=Fraction(1, 2)) -> tuple[Fraction, ...]:
    """Copeland^alpha score of every candidate, exact."""
    alpha = Fraction(alpha)
    blocks = candidate_blocks(election)
    sizes = np.array([len(b) for b in blocks], dtype=np.int64)
    reps = np.array([b[0] for b in blocks], dtype=np.int64)
    rep_pos = election.positions[:, reps]
    ahead = (rep_pos[:, :, None] < rep_pos[:, None, :]).sum(axis=0)
    wins = ahead > ahead.T
    ties = ahead == ahead.T
    np.fill_diagonal(ties, False)
    win_points = wins.astype(np.int64) @ sizes
    tie_points = ties.astype(np.int64) @ sizes

    table: list[Fraction] = [Fraction(0)] * election.m
    for g, block in enumerate(blocks):
        base = int(win_points[g])
        tie_part = alpha * int(tie_points[g])
        size = len(block)
        for i, c in enumerate(block):
            table[int(c)] = base + (size - 1 - i) + tie_part
    return tuple(table)


def scores(election: Election, rule: Rule = BORDA) -> tuple[Fraction, ...]:
    if isinstance(rule, Copeland):
        return copeland_scores(election, rule.alpha)
    if isinstance(rule, Positional):
        return positional_scores(election)
    raise TypeError(f"unsupported rule {rule!r}")


def winners(election: Election, rule: Rule = BORDA) -> frozenset[int]:
    """All candidates with the maximum score (co-winner semantics)."""
    if isinstance(rule, Positional):
        raw, _ = _scaled_positional_scores(election)
        top = raw.max()
        return frozenset(int(c) for c in np.nonzero(raw == top)[0])
    table = scores(election, rule)
    top = max(table)
    return frozenset(c for c, s in enumerate(table) if s == top)


def check_shift_action(election: Election, p: int, action: Sequence[int]) -> ShiftAction:
    """Validate ``action`` against ``(election, p)`` and return it as a tuple."""
    action = tuple(int(s) for s in action)
    if len(action) != election.n:
        raise InvalidShiftAction(f"shift action has {len(action)} entries, election has {election.n} voters")
    pos = election.positions[:, p]
    for v, s in enumerate(action):
        if s < 0:
            raise InvalidShiftAction(f"voter {v}: negative shift {s}")
        if s > pos[v]:
            raise InvalidShiftAction(
                f"voter {v}: shift {s} exceeds the {int(pos[v])} positions above the preferred candidate"
            )
    return action


def apply_shift(election: Election, p: int, action: Sequence[int]) -> Election:
    """Move ``p`` up by ``action[v]`` positions in every vote ``v``."""
    action = check_shift_action(election, p, action)
    prefs = np.array(election.prefs)
    pos = election.positions[:, p]
    for v, s in enumerate(action):
        if s:
            r = int(pos[v])
            prefs[v, r - s + 1 : r + 1] = prefs[v, r - s : r]
            prefs[v, r - s] = p
    return Election(prefs, election.scoring_vectors, election.names)


def is_winner(election: Election, c: int, rule: Rule = BORDA) -> bool:
    if isinstance(rule, Positional):
        raw, _ = _scaled_positional_scores(election)
        return bool(raw[c] == raw.max())
    table = scores(election, rule)
    return table[c] == max(table)

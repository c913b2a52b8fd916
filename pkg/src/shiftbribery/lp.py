"""Exact linear programming over the rationals.

Solves ``minimize c.x subject to A x >= b`` (some rows flagged as
equalities, variables free) and returns a *basic* optimal solution: a
vertex of the feasible polyhedron, together with the rows tight there.

The method is the primal simplex run directly on the inequality form: the
current point is always a vertex given by ``n`` linearly independent tight
rows.  A leaving row is chosen by Bland's rule (smallest index with a
negative multiplier), the blocking row by the ratio test with smallest
index on ties.  Phase one minimises an auxiliary violation variable, and a
purification step walks any feasible point to a vertex without increasing
the objective.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

try:  # gmpy2 rationals are an order of magnitude faster than Fraction
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover
    _Q = Fraction

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

_MAX_ITERATIONS = 100_000


def _frac(x) -> Fraction:
    x = Fraction(x)
    return Fraction(int(x.numerator), int(x.denominator))


def _q(x):
    x = Fraction(x)
    return _Q(int(x.numerator), int(x.denominator))


def _to_fraction(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


@dataclass(frozen=True)
class LinearProgram:
    """``minimize c.x  s.t.  A[i].x >= b[i]`` (``== b[i]`` for equality rows)."""

    c: tuple[Fraction, ...]
    A: tuple[tuple[Fraction, ...], ...]
    b: tuple[Fraction, ...]
    equalities: frozenset[int] = frozenset()

    def __post_init__(self):
        c = tuple(_frac(x) for x in self.c)
        A = tuple(tuple(_frac(x) for x in row) for row in self.A)
        b = tuple(_frac(x) for x in self.b)
        if len(A) != len(b):
            raise ValueError(f"{len(A)} constraint rows but {len(b)} right-hand sides")
        for i, row in enumerate(A):
            if len(row) != len(c):
                raise ValueError(f"row {i} has {len(row)} coefficients, expected {len(c)}")
        eq = frozenset(int(i) for i in self.equalities)
        if any(not 0 <= i < len(A) for i in eq):
            raise ValueError("equality flag refers to a missing row")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "equalities", eq)

    @property
    def n_vars(self) -> int:
        return len(self.c)

    @property
    def n_rows(self) -> int:
        return len(self.A)

    def is_feasible(self, x: Sequence) -> bool:
        for i, (row, rhs) in enumerate(zip(self.A, self.b)):
            lhs = sum((a * v for a, v in zip(row, x)), Fraction(0))
            if lhs < rhs or (i in self.equalities and lhs != rhs):
                return False
        return True

    def tight_rows(self, x: Sequence) -> tuple[int, ...]:
        return tuple(
            i
            for i, (row, rhs) in enumerate(zip(self.A, self.b))
            if sum((a * v for a, v in zip(row, x)), Fraction(0)) == rhs
        )


class LPBuilder:
    """Incremental construction of a :class:`LinearProgram` from sparse rows."""

    def __init__(self, n_vars: int):
        self.n_vars = n_vars
        self.c = [Fraction(0)] * n_vars
        self.rows: list[dict[int, Fraction]] = []
        self.rhs: list[Fraction] = []
        self.equalities: set[int] = set()

    def minimize(self, coeffs: Mapping[int, object]):
        for j, a in coeffs.items():
            self.c[j] += Fraction(a)

    def add_ge(self, coeffs: Mapping[int, object], rhs) -> int:
        row: dict[int, Fraction] = {}
        for j, a in coeffs.items():
            if a:
                row[j] = row.get(j, Fraction(0)) + Fraction(a)
        self.rows.append(row)
        self.rhs.append(Fraction(rhs))
        return len(self.rows) - 1

    def add_eq(self, coeffs: Mapping[int, object], rhs) -> int:
        i = self.add_ge(coeffs, rhs)
        self.equalities.add(i)
        return i

    def build(self) -> LinearProgram:
        dense = []
        for row in self.rows:
            r = [Fraction(0)] * self.n_vars
            for j, a in row.items():
                r[j] = a
            dense.append(tuple(r))
        return LinearProgram(tuple(self.c), tuple(dense), tuple(self.rhs), frozenset(self.equalities))


@dataclass(frozen=True)
class BasicSolution:
    """Outcome of :func:`solve_basic`.

    ``status`` is ``"optimal"``, ``"infeasible"`` or ``"unbounded"``.  For an
    optimal outcome ``x`` is a vertex, ``tight_rows`` lists every row
    satisfied with equality and ``basis`` a linearly independent subset of
    them of full rank.  An unbounded outcome carries a feasible ``x`` and a
    ``ray`` with ``A ray >= 0`` (``= 0`` on equality rows) and ``c.ray < 0``.
    """

    status: str
    x: tuple[Fraction, ...] | None = None
    objective: Fraction | None = None
    tight_rows: tuple[int, ...] = ()
    basis: tuple[int, ...] = ()
    ray: tuple[Fraction, ...] | None = field(default=None)

    @property
    def is_optimal(self) -> bool:
        return self.status == OPTIMAL


class _Echelon:
    """Reduced row echelon form maintained under row insertion."""

    def __init__(self, n: int):
        self.n = n
        self.rows: list[tuple[int, list]] = []  # (pivot column, row)
        self.members: list[int] = []

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, vec) -> list:
        r = list(vec)
        for pc, rv in self.rows:
            f = r[pc]
            if f:
                for j in range(self.n):
                    if rv[j]:
                        r[j] -= f * rv[j]
        return r

    def add(self, index: int, vec) -> bool:
        r = self.reduce(vec)
        pc = next((j for j in range(self.n) if r[j]), None)
        if pc is None:
            return False
        inv = 1 / r[pc]
        r = [a * inv for a in r]
        for k, (qc, rv) in enumerate(self.rows):
            f = rv[pc]
            if f:
                self.rows[k] = (qc, [a - f * bb for a, bb in zip(rv, r)])
        self.rows.append((pc, r))
        self.members.append(index)
        return True

    def pivot_columns(self) -> list[int]:
        return [pc for pc, _ in self.rows]

    def null_vectors(self) -> Iterable[list]:
        pivots = set(self.pivot_columns())
        zero = _Q(0)
        for f in range(self.n):
            if f in pivots:
                continue
            d = [zero] * self.n
            d[f] = _Q(1)
            for pc, rv in self.rows:
                d[pc] = -rv[f]
            yield d


class _Problem:
    """Sparse working copy of an LP in the solver's number type."""

    def __init__(self, A, b, c, equalities):
        self.n = len(c)
        self.c = [_q(x) for x in c]
        self.dense = [[_q(a) for a in row] for row in A]
        self.sparse = [[(j, a) for j, a in enumerate(row) if a] for row in self.dense]
        self.b = [_q(x) for x in b]
        self.eq = frozenset(equalities)

    def row_dot(self, i, x):
        return sum((a * x[j] for j, a in self.sparse[i]), _Q(0))

    def slacks(self, x):
        return [self.row_dot(i, x) - self.b[i] for i in range(len(self.b))]


def _ratio_test(prob: _Problem, slack, d, skip=()):
    """Largest step along ``d`` keeping every row satisfied.

    Returns ``(step, row, row_dots)``; ``row`` is ``None`` when no row blocks.
    """
    best = None
    best_row = None
    dots = [None] * len(prob.b)
    for i in range(len(prob.b)):
        if i in skip:
            continue
        ad = prob.row_dot(i, d)
        dots[i] = ad
        if ad < 0:
            t = slack[i] / (-ad)
            if best is None or t < best:
                best, best_row = t, i
    return best, best_row, dots


def _purify(prob: _Problem, x):
    """Walk from feasible ``x`` to a vertex without raising the objective.

    Returns ``("vertex", x, basis)`` or ``("unbounded", x, ray)``.
    """
    x = list(x)
    slack = prob.slacks(x)
    ech = _Echelon(prob.n)
    tight = [i for i in range(len(prob.b)) if slack[i] == 0]
    tight.sort(key=lambda i: (i not in prob.eq, i))
    for i in tight:
        if ech.rank == prob.n:
            break
        ech.add(i, prob.dense[i])
    while ech.rank < prob.n:
        d = next(iter(ech.null_vectors()))
        cd = sum((ci * di for ci, di in zip(prob.c, d)), _Q(0))
        if cd > 0:
            d = [-v for v in d]
            cd = -cd
        step, row, dots = _ratio_test(prob, slack, d)
        if row is None:
            if cd < 0:
                return UNBOUNDED, x, d
            d = [-v for v in d]
            step, row, dots = _ratio_test(prob, slack, d)
            if row is None:
                raise ArithmeticError("feasible region contains a line; reduce the variables first")
        x = [xi + step * di for xi, di in zip(x, d)]
        slack = [s + step * ad for s, ad in zip(slack, dots)]
        slack[row] = _Q(0)
        ech.add(row, prob.dense[row])
    return "vertex", x, list(ech.members)


def _invert(M):
    n = len(M)
    aug = [list(row) + [_Q(1) if i == j else _Q(0) for j in range(n)] for i, row in enumerate(M)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col])
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [a * inv for a in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [a - f * bb for a, bb in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def _simplex(prob: _Problem, x, basis):
    """Vertex-to-vertex descent with Bland's rule from a feasible vertex."""
    n = prob.n
    basis = list(basis)
    in_basis = set(basis)
    Minv = _invert([prob.dense[i] for i in basis])
    slack = prob.slacks(x)
    for _ in range(_MAX_ITERATIONS):
        leave_k = None
        for k in range(n):
            if basis[k] in prob.eq:
                continue
            u = sum((Minv[i][k] * prob.c[i] for i in range(n) if prob.c[i]), _Q(0))
            if u < 0 and (leave_k is None or basis[k] < basis[leave_k]):
                leave_k = k
        if leave_k is None:
            return OPTIMAL, x, basis
        d = [Minv[i][leave_k] for i in range(n)]
        step, enter, dots = _ratio_test(prob, slack, d, skip=in_basis)
        if enter is None:
            return UNBOUNDED, x, d
        x = [xi + step * di for xi, di in zip(x, d)]
        for i in range(len(slack)):
            if dots[i] is not None:
                slack[i] += step * dots[i]
        leaving_row = basis[leave_k]
        slack[leaving_row] = step
        slack[enter] = _Q(0)
        # Sherman-Morrison style update of the basis inverse
        w = [_Q(0)] * n
        for j, a in prob.sparse[enter]:
            row = Minv[j]
            for col in range(n):
                if row[col]:
                    w[col] += a * row[col]
        pivot = w[leave_k]
        new_col = [di / pivot for di in d]
        for col in range(n):
            if col == leave_k or not w[col]:
                continue
            f = w[col] / pivot
            for i in range(n):
                if d[i]:
                    Minv[i][col] -= d[i] * f
        for i in range(n):
            Minv[i][leave_k] = new_col[i]
        in_basis.discard(leaving_row)
        in_basis.add(enter)
        basis[leave_k] = enter
    raise RuntimeError("simplex iteration limit reached")


def _optimize(prob: _Problem, x):
    status, x, extra = _purify(prob, x)
    if status == UNBOUNDED:
        return UNBOUNDED, x, extra
    return _simplex(prob, x, extra)


def _find_feasible(prob: _Problem):
    """Phase one.  Returns a feasible point or ``None``."""
    n = prob.n
    x0 = [_Q(0)] * n
    slack = prob.slacks(x0)
    if all(s >= 0 for s in slack) and all(slack[i] == 0 for i in prob.eq):
        return x0
    rows, rhs = [], []
    one = _Q(1)
    for i, row in enumerate(prob.dense):
        rows.append(row + [one])
        rhs.append(prob.b[i])
        if i in prob.eq:
            rows.append([-a for a in row] + [one])
            rhs.append(-prob.b[i])
    rows.append([_Q(0)] * n + [one])
    rhs.append(_Q(0))
    aux = _Problem(rows, rhs, [_Q(0)] * n + [one], ())
    viol = max([_Q(0)] + [-s for s in slack] + [s for i, s in enumerate(slack) if i in prob.eq])
    status, x, _ = _optimize(aux, x0 + [viol])
    assert status == OPTIMAL
    if x[n] > 0:
        return None
    return x[:n]


def solve_basic(lp: LinearProgram) -> BasicSolution:
    """Solve ``lp`` exactly and return a basic (vertex) optimal solution.

    If the constraint matrix has rank below the number of variables no
    vertex exists; variables outside a column basis are then fixed at zero
    and the returned basis has the rank of ``A`` only.
    """
    n = lp.n_vars
    if n == 0:
        ok = all(bi <= 0 for bi in lp.b) and all(lp.b[i] == 0 for i in lp.equalities)
        if not ok:
            return BasicSolution(INFEASIBLE)
        return BasicSolution(OPTIMAL, (), Fraction(0), tuple(range(lp.n_rows)), ())

    full = _Problem(lp.A, lp.b, lp.c, lp.equalities)
    ech = _Echelon(n)
    for i in range(lp.n_rows):
        if ech.rank == n:
            break
        ech.add(i, full.dense[i])
    keep = sorted(ech.pivot_columns()) if ech.rank < n else list(range(n))

    ray_hint = None
    if ech.rank < n:
        for d in ech.null_vectors():
            cd = sum((ci * di for ci, di in zip(full.c, d)), _Q(0))
            if cd:
                ray_hint = d if cd < 0 else [-v for v in d]
                break
        prob = _Problem([[row[j] for j in keep] for row in lp.A], lp.b, [lp.c[j] for j in keep], lp.equalities)
    else:
        prob = full

    start = _find_feasible(prob)
    if start is None:
        return BasicSolution(INFEASIBLE)

    def lift(v):
        out = [_Q(0)] * n
        for k, j in enumerate(keep):
            out[j] = v[k]
        return out

    if ray_hint is not None:
        return BasicSolution(
            UNBOUNDED,
            x=tuple(_to_fraction(v) for v in lift(start)),
            ray=tuple(_to_fraction(v) for v in ray_hint),
        )

    status, x, extra = _optimize(prob, start)
    x_full = tuple(_to_fraction(v) for v in lift(x))
    if status == UNBOUNDED:
        return BasicSolution(UNBOUNDED, x=x_full, ray=tuple(_to_fraction(v) for v in lift(extra)))
    objective = sum((ci * xi for ci, xi in zip(lp.c, x_full)), Fraction(0))
    return BasicSolution(
        OPTIMAL,
        x=x_full,
        objective=objective,
        tight_rows=lp.tight_rows(x_full),
        basis=tuple(sorted(extra)),
    )


def count_tight_independent(solution: BasicSolution, lp: LinearProgram) -> int:
    """Rank of the rows of ``lp`` that are tight at ``solution.x``."""
    if solution.x is None:
        return 0
    return matrix_rank([lp.A[i] for i in lp.tight_rows(solution.x)], lp.n_vars)


def matrix_rank(rows: Sequence[Sequence], n_cols: int) -> int:
    ech = _Echelon(n_cols)
    for i, row in enumerate(rows):
        ech.add(i, [_q(a) for a in row])
    return ech.rank

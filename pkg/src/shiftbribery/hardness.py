"""Generators for hard Shift-Bribery instances.

Each reduction maps a graph or set-cover instance to a Shift-Bribery
instance and, when a solution of the source problem is known (supplied or
found by exhaustive search on tiny inputs), the shift action it induces.

Ordered sets ``<X>`` are taken in ascending candidate index and reversed
literally where a reverse order is needed.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .election import BORDA, Copeland, Election, ShiftAction
from .pricing import INF, Instance, PriceFunction, aon_levels, cost, is_one_inf_aon, width


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``."""

    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        norm = []
        for u, v in self.edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) leaves the vertex range 0..{self.n - 1}")
            norm.append((min(u, v), max(u, v)))
        if len(set(norm)) != len(norm):
            raise ValueError("duplicate edge")
        object.__setattr__(self, "edges", tuple(norm))

    @classmethod
    def complete(cls, n: int) -> Graph:
        return cls(n, tuple(itertools.combinations(range(n), 2)))

    @property
    def m(self) -> int:
        return len(self.edges)

    def incident(self, u: int) -> tuple[int, ...]:
        """Indices of the edges touching ``u``."""
        return tuple(i for i, e in enumerate(self.edges) if u in e)

    def degree(self, u: int) -> int:
        return len(self.incident(u))

    def is_regular(self, d: int) -> bool:
        return all(self.degree(u) == d for u in range(self.n))

    def induced_edges(self, vertices: Iterable[int]) -> tuple[int, ...]:
        chosen = set(vertices)
        return tuple(i for i, (u, v) in enumerate(self.edges) if u in chosen and v in chosen)

    def is_vertex_cover(self, vertices: Iterable[int]) -> bool:
        chosen = set(vertices)
        return all(u in chosen or v in chosen for u, v in self.edges)


@dataclass(frozen=True)
class SetCoverInstance:
    """Universe ``0..N-1`` and a collection of subsets."""

    N: int
    sets: tuple[frozenset[int], ...]

    def __post_init__(self):
        sets = tuple(frozenset(int(x) for x in s) for s in self.sets)
        for i, s in enumerate(sets):
            if any(not 0 <= x < self.N for x in s):
                raise ValueError(f"set {i} has elements outside the universe 0..{self.N - 1}")
        object.__setattr__(self, "sets", sets)

    @property
    def M(self) -> int:
        return len(self.sets)

    def is_cover(self, chosen: Iterable[int]) -> bool:
        covered = set()
        for i in chosen:
            covered |= self.sets[i]
        return len(covered) == self.N

    def min_cover(self) -> tuple[int, ...] | None:
        """Smallest cover by exhaustive search (first lexicographically)."""
        for size in range(self.M + 1):
            for chosen in itertools.combinations(range(self.M), size):
                if self.is_cover(chosen):
                    return chosen
        return None


@dataclass(frozen=True)
class ReductionWitness:
    """A source solution, the shift action it induces and that action's cost."""

    planted: tuple
    action: ShiftAction
    cost: Fraction
    bound: Fraction


def half_split_orders(T: Sequence[int], c: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Two orders over ``T`` after which ``c`` beats the next ``(|T|-1)/2``
    members of ``T`` (cyclically) and ties with the rest, while every pair
    not involving ``c`` ties."""
    T = list(T)
    if len(T) % 2 == 0:
        raise ValueError(f"need an odd number of candidates, got {len(T)}")
    i = T.index(c)
    half = (len(T) - 1) // 2
    beaten = [T[(i + 1 + r) % len(T)] for r in range(half)]
    rest = [x for x in T if x != c and x not in beaten]
    first = (c, *beaten, *rest)
    second = (*reversed(rest), c, *reversed(beaten))
    return first, second


def dummy_votes(A: Sequence[int], B: Sequence[int], p: int, d: int, a: int, b: int) -> list[tuple[int, ...]]:
    """Votes over ``A + B + {p, d}`` fixing the Copeland standings.

    ``p`` loses to every member of ``A`` by ``2b + 1`` votes and beats
    exactly ``d`` and all of ``B`` except its first ``a`` members; ``d``
    beats exactly ``B``; each member of ``A + B`` beats half of the others
    in ``A + B``.  No pairwise contest ties.
    """
    A, B = sorted(A), sorted(B)
    if (len(A) + len(B)) % 2 == 0:
        raise ValueError("|A| + |B| must be odd")
    if not 0 <= a <= len(B):
        raise ValueError(f"a must lie in 0..{len(B)}, got {a}")
    if b < 0:
        raise ValueError("b must be nonnegative")
    AB = sorted(A + B)
    S = B[:a]
    rest_B = B[a:]
    rev = lambda xs: tuple(reversed(xs))  # noqa: E731
    votes = [(*AB, p, d)]
    for _ in range(b):
        votes.append((*A, p, *B, d))
        votes.append((d, *rev(B), *rev(A), p))
    votes.append((d, *B, *A, p))
    votes.append((p, *rev(A), d, *rev(B)))
    votes.append((p, *rest_B, *S, *A, d))
    votes.append((d, *rev(A), *rev(S), p, *rev(rest_B)))
    for c in AB:
        hso, hst = half_split_orders(AB, c)
        votes.append((*hso, p, d))
        votes.append((d, p, *hst))
    return votes


def dummy_election(A: Sequence[int], B: Sequence[int], p: int, d: int, a: int, b: int) -> Election:
    """Election of the votes from :func:`dummy_votes`.

    Under Copeland ``p`` scores ``|B| - a + 1``, ``d`` scores ``|B|`` and
    every member of ``A + B`` at most ``(|A| + |B| + 3) / 2``.
    """
    return Election(dummy_votes(A, B, p, d, a, b))


def _aon(T: int, price) -> PriceFunction:
    return PriceFunction.all_or_nothing(T, price)


def _top_action(instance: Instance, voters: Iterable[int]) -> ShiftAction:
    chosen = set(voters)
    return tuple(T if v in chosen else 0 for v, T in enumerate(instance.max_shifts))


def _witness(instance: Instance, planted, voters, bound) -> ReductionWitness:
    action = _top_action(instance, voters)
    return ReductionWitness(tuple(planted), action, cost(instance, action), Fraction(bound))


def _with_complement(order: Sequence[int], m: int) -> tuple[int, ...]:
    head = list(order)
    seen = set(head)
    return (*head, *(c for c in range(m) if c not in seen))


def _paired_instance(m, heads, dummy, p, rule):
    """Votes ``head + rest`` priced 1 (shift to the top only) paired with
    their reverses priced infinity, followed by infinity-priced filler votes."""
    votes, prices = [], []
    for head in heads:
        order = _with_complement(head, m)
        votes.append(order)
        votes.append(tuple(reversed(order)))
    for v in dummy:
        votes.append(v)
    e = Election(votes)
    for i in range(len(heads)):
        prices.append(_aon(e.rank(2 * i, p) - 1, 1))
        prices.append(_aon(e.rank(2 * i + 1, p) - 1, INF))
    for v in range(2 * len(heads), e.n):
        prices.append(_aon(e.rank(v, p) - 1, INF))
    return Instance(e, p, tuple(prices), rule)


def reduce_dks_aon(graph: Graph, k: int, t: int, plant=None, alpha=Fraction(1, 2)):
    """Copeland instance with (1, inf)-all-or-nothing prices from a
    densest-k-subgraph question ``(graph, k, t)``.

    Candidates: ``p = 0``, ``d = 1``, one per edge, then ``|E| + 5``
    dummies.  Bribing the voter of vertex ``u`` moves ``p`` past the edges
    at ``u``.  A ``k``-vertex set with ``t`` induced edges gives a
    successful action of cost ``k``.

    Returns ``(instance, witness)``; the witness is ``None`` if no such
    vertex set is supplied or found among all ``k``-subsets.
    """
    if not 1 <= k <= graph.n:
        raise ValueError(f"k must lie in 1..{graph.n}")
    if t < 1:
        raise ValueError("t must be positive")
    p, d = 0, 1
    edge_cands = [2 + i for i in range(graph.m)]
    dummies = [2 + graph.m + i for i in range(graph.m + 5)]
    m = 2 + graph.m + len(dummies)
    assert (len(edge_cands) + len(dummies)) % 2 == 1
    heads = [(*(edge_cands[i] for i in graph.incident(u)), p) for u in range(graph.n)]
    filler = dummy_votes(edge_cands, dummies, p, d, t + 1, 1)
    instance = _paired_instance(m, heads, filler, p, Copeland(alpha))

    if plant is None:
        plant = next(
            (U for U in itertools.combinations(range(graph.n), k) if len(graph.induced_edges(U)) >= t),
            None,
        )
    if plant is None:
        return instance, None
    plant = tuple(sorted(plant))
    if len(plant) != k:
        raise ValueError(f"planted vertex set must have {k} vertices")
    return instance, _witness(instance, plant, [2 * u for u in plant], k)


def filler_block_sizes(instance: Instance, B: int, B_prime: int) -> tuple[int, ...]:
    """Fillers placed directly above ``p`` per voter: ``B`` where shifting
    costs 1, ``B'`` where it is infinite or ``p`` is already on top."""
    return tuple(B if c == 1 else B_prime for c in aon_levels(instance))


def aon_to_unit(instance: Instance, B: int, B_prime: int) -> Instance:
    """Unit-price Copeland instance whose optimum is sandwiched by the
    all-or-nothing one: ``min(B', B opt) <= opt' <= (B + width) opt``.

    ``(B + B') |V|`` filler candidates are added after the original ones.
    Each voter gets its own block of fillers directly above ``p`` and the
    remaining fillers at the bottom; fillers lose every contest against an
    original candidate.
    """
    if not is_one_inf_aon(instance):
        raise ValueError("aon_to_unit needs (1, inf)-all-or-nothing prices")
    if not 0 <= B <= B_prime:
        raise ValueError("need 0 <= B <= B'")
    if instance.n < 3:
        raise ValueError("aon_to_unit needs at least three voters")
    e, p = instance.election, instance.p
    m, n = e.m, e.n
    total = (B + B_prime) * n
    sizes = filler_block_sizes(instance, B, B_prime)
    votes = []
    start = m
    for v in range(n):
        block = list(range(start, start + sizes[v]))
        start += sizes[v]
        order = [int(c) for c in e.prefs[v]]
        r = order.index(p)
        block_set = set(block)
        rest = [f for f in range(m, m + total) if f not in block_set]
        votes.append((*order[:r], *block, p, *order[r + 1 :], *rest))
    big = Election(votes)
    prices = tuple(PriceFunction.unit(big.rank(v, p) - 1) for v in range(n))
    return Instance(big, p, prices, instance.rule)


def lift_action(instance: Instance, action: Sequence[int], B: int) -> ShiftAction:
    """Image in the unit instance of an action on the all-or-nothing one:
    each bribed voter moves ``p`` past its fillers and on to the top."""
    return tuple(0 if s == 0 else B + T for s, T in zip(action, instance.max_shifts))


def project_action(instance: Instance, action: Sequence[int], B: int, B_prime: int) -> ShiftAction:
    """Action on the all-or-nothing instance induced by one on its unit image."""
    sizes = filler_block_sizes(instance, B, B_prime)
    return tuple(0 if s <= size else s - size for s, size in zip(action, sizes))


def _lift_witness(aon: Instance, unit: Instance, w: ReductionWitness | None, B: int, bound) -> ReductionWitness | None:
    if w is None:
        return None
    action = lift_action(aon, w.action, B)
    return ReductionWitness(w.planted, action, cost(unit, action), Fraction(bound))


def reduce_dks_unit(graph: Graph, k: int, t: int, plant=None, alpha=Fraction(1, 2)):
    """:func:`reduce_dks_aon` followed by :func:`aon_to_unit` with
    ``B = |V|`` and ``B' = |V|^4 + 1``; a planted set costs at most ``2 |V| k``."""
    aon, w = reduce_dks_aon(graph, k, t, plant, alpha)
    B, B_prime = graph.n, graph.n**4 + 1
    unit = aon_to_unit(aon, B, B_prime)
    return unit, _lift_witness(aon, unit, w, B, 2 * graph.n * k)


def reduce_clique_aon(graph: Graph, k: int, plant=None, alpha=Fraction(1, 2)):
    """Copeland instance with (1, inf)-all-or-nothing prices of width 2 in
    which a ``k``-clique yields a successful action of cost ``C(k, 2)``.

    Candidates: ``p = 0``, ``d = 1``, one per vertex, then ``|V| + 5``
    dummies; bribing an edge's voter moves ``p`` past both endpoints.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    p, d = 0, 1
    vertex_cands = [2 + u for u in range(graph.n)]
    dummies = [2 + graph.n + i for i in range(graph.n + 5)]
    m = 2 + graph.n + len(dummies)
    assert (len(vertex_cands) + len(dummies)) % 2 == 1
    heads = [(vertex_cands[u], vertex_cands[v], p) for u, v in graph.edges]
    filler = dummy_votes(vertex_cands, dummies, p, d, k + 1, k - 2)
    instance = _paired_instance(m, heads, filler, p, Copeland(alpha))

    if plant is None:
        plant = next(
            (U for U in itertools.combinations(range(graph.n), k) if len(graph.induced_edges(U)) == math.comb(k, 2)),
            None,
        )
    if plant is None:
        return instance, None
    plant = tuple(sorted(plant))
    inside = graph.induced_edges(plant)
    if len(plant) != k or len(inside) != math.comb(k, 2):
        raise ValueError(f"planted set is not a {k}-clique")
    return instance, _witness(instance, plant, [2 * i for i in inside], math.comb(k, 2))


def reduce_clique_gap(graph: Graph, k: int, delta, plant=None, alpha=Fraction(1, 2)):
    """Unit-price Copeland instance: :func:`reduce_clique_aon` then
    :func:`aon_to_unit` with ``B = ceil(4 / delta)`` and ``B' = B (|V|^4 + 1)``.
    A ``k``-clique costs at most ``(B + 2) C(k, 2)``."""
    delta = Fraction(str(delta)) if isinstance(delta, float) else Fraction(delta)
    if not 0 < delta < 1:
        raise ValueError("delta must lie strictly between 0 and 1")
    aon, w = reduce_clique_aon(graph, k, plant, alpha)
    B = math.ceil(4 / delta)
    B_prime = B * (graph.n**4 + 1)
    unit = aon_to_unit(aon, B, B_prime)
    return unit, _lift_witness(aon, unit, w, B, (B + 2) * math.comb(k, 2))


def reduce_setcover(sc: SetCoverInstance, unit: bool = False, plant=None, alpha=Fraction(1, 2)):
    """Copeland instance whose optimum equals the minimum cover size.

    Candidates: ``p = 0``, ``d = 1``, one per element, then ``N + 5``
    dummies; bribing a set's voter moves ``p`` past its elements.  With
    ``unit=True`` the all-or-nothing instance is passed through
    :func:`aon_to_unit` with ``B = width * M + 1`` and ``B' = B M``.
    """
    if sc.N == 0:
        raise ValueError("the universe must be nonempty")
    p, d = 0, 1
    elems = [2 + x for x in range(sc.N)]
    dummies = [2 + sc.N + i for i in range(sc.N + 5)]
    m = 2 + sc.N + len(dummies)
    assert (len(elems) + len(dummies)) % 2 == 1
    heads = [(*(elems[x] for x in sorted(s)), p) for s in sc.sets]
    filler = dummy_votes(elems, dummies, p, d, sc.N + 1, 0)
    aon = _paired_instance(m, heads, filler, p, Copeland(alpha))

    if plant is None:
        plant = sc.min_cover()
    w = None
    if plant is not None:
        plant = tuple(sorted(plant))
        if not sc.is_cover(plant):
            raise ValueError("planted sets do not cover the universe")
        w = _witness(aon, plant, [2 * i for i in plant], len(plant))
    if not unit:
        return aon, w
    B = width(aon) * sc.M + 1
    B_prime = B * sc.M
    big = aon_to_unit(aon, B, B_prime)
    bound = 2 * B * len(plant) if plant is not None else 0
    return big, _lift_witness(aon, big, w, B, bound)


def reduce_vc3(graph: Graph, k: int, plant=None):
    """Borda instance with uniform all-or-nothing prices in which bribing
    ``k`` voters succeeds iff the 3-regular ``graph`` has a vertex cover of
    size ``k``.

    Candidates: ``p = 0``, one per edge, then ``3 |V| - 1`` dummies whose
    first member is ``t``.
    """
    n = graph.n
    if not graph.is_regular(3):
        raise ValueError("graph must be 3-regular")
    if not 3 <= k < n:
        raise ValueError(f"k must satisfy 3 <= k < {n}")
    p = 0
    E = [1 + i for i in range(graph.m)]
    D = [1 + graph.m + i for i in range(3 * n - 1)]
    t = D[0]
    rev = lambda xs: list(reversed(xs))  # noqa: E731
    votes = []
    for u in range(n):
        inc = [E[i] for i in graph.incident(u)]
        others = [c for c in E if c not in inc]
        votes.append((*D, *inc, p, *others))
        votes.append((*rev(D), *rev(inc), p, *rev(others)))
    L = n + 2 * k - 5
    for _ in range(L):
        votes.append((*E, p, *D))
        votes.append((*rev(E), p, *rev(D)))
    votes.append((*E, t, p, *D[1:]))
    votes.append((*rev(E), p, *rev(D)))
    e = Election(votes)
    prices = tuple(PriceFunction.all_or_nothing(e.rank(v, p) - 1) for v in range(e.n))
    instance = Instance(e, p, prices, BORDA)

    if plant is None:
        plant = next(
            (U for size in range(1, k + 1) for U in itertools.combinations(range(n), size) if graph.is_vertex_cover(U)),
            None,
        )
    if plant is None:
        return instance, None
    plant = tuple(sorted(plant))
    if len(plant) > k or not graph.is_vertex_cover(plant):
        raise ValueError(f"planted set is not a vertex cover of size at most {k}")
    padded = list(plant) + [u for u in range(n) if u not in plant][: k - len(plant)]
    return instance, _witness(instance, plant, [2 * u for u in padded], k)

"""Text formats for instances, graphs, set-cover inputs and shift actions,
plus the random instance factory used by tests and benchmarks.

Instance file::

    shiftbribery v1
    <m> <n>
    p <index>
    rule borda | scoring | copeland <alpha>
    <m candidate indices, rank 1 first> [| w: <m rationals>]
    prices: <psi(1) ... psi(T) as rationals or inf>
    ...                                   (two lines per voter)

Rationals are written ``p/q`` (integers as ``p``); ``inf`` is infinity.
Blank lines and lines starting with ``#`` are ignored.
"""

from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .election import BORDA, Copeland, Election, Positional, Rule
from .exceptions import ParseError
from .hardness import Graph, SetCoverInstance
from .pricing import INF, Instance, PriceFamily, PriceFunction

HEADER = "shiftbribery v1"


def format_rational(x) -> str:
    if x == INF:
        return "inf"
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_rational(token: str, line: int | None = None, allow_inf: bool = True):
    tok = token.strip()
    if tok.lower() == "inf":
        if not allow_inf:
            raise ParseError("infinity not allowed here", line)
        return INF
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad rational {token!r}", line) from None


def _content_lines(text: str) -> list[tuple[int, str]]:
    out = []
    for number, raw in enumerate(text.splitlines(), start=1):
        s = raw.strip()
        if s and not s.startswith("#"):
            out.append((number, s))
    return out


def _ints(s: str, line: int) -> list[int]:
    try:
        return [int(tok) for tok in s.split()]
    except ValueError:
        raise ParseError(f"expected integers, got {s!r}", line) from None


def format_rule(rule: Rule, election: Election) -> str:
    if isinstance(rule, Copeland):
        return f"copeland {format_rational(rule.alpha)}"
    return "borda" if election.scoring_vectors is None else "scoring"


def format_instance(instance: Instance) -> str:
    e = instance.election
    lines = [HEADER, f"{e.m} {e.n}", f"p {instance.p}", f"rule {format_rule(instance.rule, e)}"]
    for v in range(e.n):
        order = " ".join(str(int(c)) for c in e.prefs[v])
        if e.scoring_vectors is not None:
            order += " | w: " + " ".join(format_rational(x) for x in e.scoring_vectors[v])
        lines.append(order)
        prices = " ".join(format_rational(x) for x in instance.prices[v].values[1:])
        lines.append(f"prices: {prices}".rstrip())
    return "\n".join(lines) + "\n"


def parse_instance(text: str) -> Instance:
    """Parse the instance format; errors name the offending line."""
    lines = _content_lines(text)
    if not lines or lines[0][1] != HEADER:
        raise ParseError("missing header", lines[0][0] if lines else None)
    if len(lines) < 4:
        raise ParseError("truncated instance: expected size, p and rule lines", lines[-1][0])

    no, s = lines[1]
    dims = _ints(s, no)
    if len(dims) != 2 or dims[0] < 1 or dims[1] < 1:
        raise ParseError("size line must be 'm n' with m, n >= 1", no)
    m, n = dims

    no, s = lines[2]
    parts = s.split()
    if len(parts) != 2 or parts[0] != "p":
        raise ParseError("expected 'p <index>'", no)
    p = _ints(parts[1], no)[0]
    if not 0 <= p < m:
        raise ParseError(f"preferred candidate {p} out of range 0..{m - 1}", no)

    no, s = lines[3]
    parts = s.split()
    if not parts or parts[0] != "rule":
        raise ParseError("expected a rule line", no)
    kind = parts[1] if len(parts) > 1 else ""
    if kind == "copeland":
        if len(parts) != 3:
            raise ParseError("copeland needs an alpha value", no)
        try:
            rule: Rule = Copeland(parse_rational(parts[2], no, allow_inf=False))
        except ValueError as exc:
            raise ParseError(str(exc), no) from None
    elif kind in ("borda", "scoring") and len(parts) == 2:
        rule = BORDA
    else:
        raise ParseError(f"unknown rule {' '.join(parts[1:])!r}", no)

    body = lines[4:]
    if len(body) != 2 * n:
        at = body[-1][0] if body else no
        raise ParseError(f"expected {2 * n} voter lines, found {len(body)}", at)
    prefs, vectors, price_rows = [], [], []
    for v in range(n):
        no, s = body[2 * v]
        order_part, _, weight_part = s.partition("|")
        order = _ints(order_part, no)
        if sorted(order) != list(range(m)):
            raise ParseError(f"voter {v}: ranking is not a permutation of 0..{m - 1}", no)
        if weight_part:
            weight_part = weight_part.strip()
            if not weight_part.startswith("w:"):
                raise ParseError("expected '| w: ...' after the ranking", no)
            w = [parse_rational(tok, no, allow_inf=False) for tok in weight_part[2:].split()]
            if len(w) != m:
                raise ParseError(f"scoring vector has {len(w)} entries, expected {m}", no)
            vectors.append(w)
        prefs.append(order)

        no, s = body[2 * v + 1]
        if not s.startswith("prices:"):
            raise ParseError("expected 'prices:' line", no)
        values = [parse_rational(tok, no) for tok in s[len("prices:") :].split()]
        expected = order.index(p)
        if len(values) != expected:
            raise ParseError(f"voter {v}: {len(values)} prices given, expected {expected}", no)
        try:
            price_rows.append(PriceFunction.from_shift_prices(values))
        except ValueError as exc:
            raise ParseError(str(exc), no) from None

    if kind == "scoring" and len(vectors) != n:
        raise ParseError("rule 'scoring' needs a scoring vector on every voter line", lines[3][0])
    if kind != "scoring" and vectors:
        raise ParseError(f"scoring vectors given but rule is {kind!r}", lines[3][0])
    try:
        election = Election(prefs, vectors or None)
        return Instance(election, p, tuple(price_rows), rule)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def format_graph(graph: Graph) -> str:
    return "\n".join([f"{graph.n} {graph.m}", *(f"{u} {v}" for u, v in graph.edges)]) + "\n"


def parse_graph(text: str) -> Graph:
    lines = _content_lines(text)
    if not lines:
        raise ParseError("empty graph file")
    no, s = lines[0]
    head = _ints(s, no)
    if len(head) != 2:
        raise ParseError("first line must be 'n m'", no)
    n, m = head
    if len(lines) - 1 != m:
        raise ParseError(f"expected {m} edge lines, found {len(lines) - 1}", no)
    edges = []
    for no, s in lines[1:]:
        pair = _ints(s, no)
        if len(pair) != 2:
            raise ParseError("edge line must be 'u v'", no)
        edges.append(tuple(pair))
    try:
        return Graph(n, tuple(edges))
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def format_setcover(sc: SetCoverInstance) -> str:
    body = [" ".join(str(x) for x in sorted(s)) for s in sc.sets]
    return "\n".join([f"{sc.N} {sc.M}", *body]) + "\n"


def parse_setcover(text: str) -> SetCoverInstance:
    raw = text.splitlines()
    lines = [(i, s.strip()) for i, s in enumerate(raw, start=1) if not s.strip().startswith("#")]
    while lines and not lines[0][1]:
        lines.pop(0)
    if not lines:
        raise ParseError("empty set cover file")
    no, s = lines[0]
    head = _ints(s, no)
    if len(head) != 2:
        raise ParseError("first line must be 'N M'", no)
    N, M = head
    rows = lines[1 : 1 + M]
    if len(rows) != M:
        raise ParseError(f"expected {M} set lines, found {len(rows)}", no)
    try:
        return SetCoverInstance(N, tuple(frozenset(_ints(s, no)) for no, s in rows))
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def format_action(action: Sequence[int]) -> str:
    return " ".join(str(int(s)) for s in action) + "\n"


def parse_action(text: str) -> tuple[int, ...]:
    lines = _content_lines(text)
    if not lines:
        return ()
    return tuple(_ints(" ".join(s for _, s in lines), lines[0][0]))


def _family(price_family) -> PriceFamily:
    return price_family if isinstance(price_family, PriceFamily) else PriceFamily(price_family)


def random_instance(
    seed: int,
    m: int,
    n: int,
    price_family: PriceFamily | str = PriceFamily.UNIT,
    scoring: bool = False,
    rule: Rule = BORDA,
) -> Instance:
    """Random instance with ``p = 0``, deterministic in ``seed``.

    Votes are uniform permutations.  Prices follow ``price_family``: unit,
    uniform all-or-nothing, (1, inf)-all-or-nothing with each voter
    infinite with probability 1/3, or general with nondecreasing integer
    steps drawn from ``[0, 5]``.  With ``scoring=True`` every voter gets a
    random nonincreasing integer scoring vector ending in 0.
    """
    if m < 1 or n < 1:
        raise ValueError("need m, n >= 1")
    family = _family(price_family)
    if family == PriceFamily.AON:
        raise ValueError("use one of unit, uniform-aon, one-inf-aon, general")
    rng = np.random.default_rng(seed)
    prefs = [rng.permutation(m) for _ in range(n)]
    vectors = None
    if scoring:
        vectors = []
        for _ in range(n):
            steps = rng.integers(0, 3, size=m - 1)
            vectors.append([int(x) for x in np.concatenate([np.cumsum(steps[::-1])[::-1], [0]])])
    election = Election(prefs, vectors)
    prices = []
    for v in range(n):
        T = election.rank(v, 0) - 1
        if family == PriceFamily.UNIT:
            prices.append(PriceFunction.unit(T))
        elif family == PriceFamily.UNIFORM_AON:
            prices.append(PriceFunction.all_or_nothing(T))
        elif family == PriceFamily.ONE_INF_AON:
            prices.append(PriceFunction.all_or_nothing(T, INF if rng.random() < 1 / 3 else 1))
        else:
            steps = rng.integers(0, 6, size=T)
            prices.append(PriceFunction((0, *(int(x) for x in np.cumsum(steps)))))
    if not isinstance(rule, (Positional, Copeland)):
        raise TypeError(f"unsupported rule {rule!r}")
    return Instance(election, 0, tuple(prices), rule)


@dataclass
class RunReport:
    """One algorithm run, as emitted by the command line tools."""

    algorithm: str
    eps: str | None
    cost: str
    unit_shifts: int
    success: bool
    oracle_cost: str | None
    ratio: str | None
    wall_time: float
    action: list | None = None

    @classmethod
    def build(cls, algorithm, eps, cost, action, success, oracle_cost=None, wall_time=0.0) -> RunReport:
        ratio = None
        if oracle_cost is not None and oracle_cost != INF and cost != INF:
            if oracle_cost == 0:
                ratio = "1" if cost == 0 else "inf"
            else:
                ratio = format_rational(Fraction(cost) / Fraction(oracle_cost))
        return cls(
            algorithm=algorithm,
            eps=None if eps is None else format_rational(Fraction(str(eps)) if isinstance(eps, float) else eps),
            cost=format_rational(cost),
            unit_shifts=int(sum(action)) if action is not None else 0,
            success=bool(success),
            oracle_cost=None if oracle_cost is None else format_rational(oracle_cost),
            ratio=ratio,
            wall_time=round(wall_time, 6),
            action=None if action is None else [int(s) for s in action],
        )

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=False)


class Stopwatch:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start
        return False

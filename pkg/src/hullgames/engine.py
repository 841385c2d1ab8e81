"""Generic engine for finite impartial games given by an option function.

A gamegraph is a starting position plus a function mapping each position to
its finite set of options; all plays must be acyclic.  Positions are opaque
hashable values supplied by concrete games.  Nim-values are computed by the
classical memoized mex recursion; the memo table lives per evaluator, so
results are deterministic and evaluators can run concurrently.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable

from .errors import CapacityError, CycleError, InvalidMapError

Position = Hashable

FIRST_WINS = "first"
SECOND_WINS = "second"


@dataclass(frozen=True)
class Gamegraph:
    """An impartial game: a starting position and its option function."""

    start: Position
    options: Callable[[Position], Iterable[Position]]


def mex(values: Iterable[int]) -> int:
    """Least nonnegative integer not in ``values``."""
    seen = set(values)
    m = 0
    while m in seen:
        m += 1
    return m


def nim_sum(a: int, b: int) -> int:
    """Binary addition without carry (bitwise xor)."""
    if a < 0 or b < 0:
        raise ValueError("nim values are nonnegative")
    return a ^ b


class NimEvaluator:
    """Memoized nim-value computation with lazy cycle detection."""

    def __init__(self, game: Gamegraph):
        self.game = game
        self._memo: dict[Position, int] = {}
        self._on_path: set[Position] = set()

    def nim(self, position: Position | None = None) -> int:
        if position is None:
            position = self.game.start
        return self._nim(position)

    def _nim(self, p: Position) -> int:
        cached = self._memo.get(p)
        if cached is not None:
            return cached
        if p in self._on_path:
            raise CycleError(p)
        self._on_path.add(p)
        value = mex(self._nim(q) for q in self.game.options(p))
        self._on_path.discard(p)
        self._memo[p] = value
        return value

    def positions_evaluated(self) -> int:
        return len(self._memo)

    def outcome(self) -> str:
        return FIRST_WINS if self.nim() != 0 else SECOND_WINS


def nim_of(game: Gamegraph, position: Position | None = None) -> int:
    return NimEvaluator(game).nim(position)


def outcome_of(game: Gamegraph) -> str:
    return NimEvaluator(game).outcome()


def naive_nim(
    game: Gamegraph, position: Position | None = None, node_limit: int | None = None
) -> int:
    """Unmemoized recursion; exponential, used as an oracle on small games."""
    if position is None:
        position = game.start
    count = 0

    def rec(p, path):
        nonlocal count
        count += 1
        if node_limit is not None and count > node_limit:
            raise CapacityError(count, node_limit)
        if p in path:
            raise CycleError(p)
        path = path | {p}
        return mex(rec(q, path) for q in game.options(p))

    return rec(position, frozenset())


def is_terminal(game: Gamegraph, position: Position) -> bool:
    return not set(game.options(position))


def reachable_positions(game: Gamegraph, limit: int | None = None) -> list[Position]:
    """BFS enumeration from the start, in a deterministic order."""
    seen = {game.start}
    order = [game.start]
    queue = deque([game.start])
    while queue:
        p = queue.popleft()
        for q in sorted(game.options(p), key=repr):
            if q not in seen:
                seen.add(q)
                order.append(q)
                queue.append(q)
                if limit is not None and len(order) > limit:
                    raise CapacityError(len(order), limit)
    return order


# ---------------------------------------------------------------------------
# Sums and delays
# ---------------------------------------------------------------------------


def disjunctive_sum(g: Gamegraph, h: Gamegraph) -> Gamegraph:
    """Move in exactly one component per turn; positions are pairs."""

    def options(pq):
        p, q = pq
        out = {(p2, q) for p2 in g.options(p)}
        out.update((p, q2) for q2 in h.options(q))
        return out

    return Gamegraph((g.start, h.start), options)


def path_game(k: int) -> Gamegraph:
    """Directed path with positions k, k-1, ..., 0; a single counter walked down."""
    if k < 0:
        raise ValueError("path length must be nonnegative")

    def options(i):
        return {i - 1} if i >= 1 else set()

    return Gamegraph(k, options)


def delayed_product(g: Gamegraph, k: int) -> Gamegraph:
    """Sum with the length-k path, except path moves stop once g is terminal."""
    path = path_game(k)

    def options(pr):
        p, r = pr
        g_opts = set(g.options(p))
        out = {(p2, r) for p2 in g_opts}
        if g_opts:
            out.update((p, s) for s in path.options(r))
        return out

    return Gamegraph((g.start, k), options)


# ---------------------------------------------------------------------------
# Verification helpers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DelayViolation:
    position: Position
    delay: int
    got: int
    expected: int


@dataclass(frozen=True)
class DelayReport:
    ok: bool
    kmax: int
    positions_checked: int
    violations: tuple[DelayViolation, ...] = ()


def verify_delay_identities(g: Gamegraph, kmax: int) -> DelayReport:
    """Check nim(p, 2r) = nim(p) and nim(p, 2r+1) = nim(p, 1) in g delayed by kmax."""
    base = NimEvaluator(g)
    delayed = NimEvaluator(delayed_product(g, kmax))
    violations = []
    positions = reachable_positions(g)
    for p in positions:
        nim_even = base.nim(p)
        nim_odd = delayed.nim((p, 1)) if kmax >= 1 else None
        for r in range(kmax + 1):
            got = delayed.nim((p, r))
            expected = nim_even if r % 2 == 0 else nim_odd
            if got != expected:
                violations.append(DelayViolation(p, r, got, expected))
    return DelayReport(not violations, kmax, len(positions), tuple(violations))


@dataclass(frozen=True)
class MapWitness:
    """A position whose image options disagree with the images of its options."""

    position: Position
    missing: frozenset  # expected image options absent in the target
    extra: frozenset  # target options with no preimage option


@dataclass(frozen=True)
class OptionMapReport:
    ok: bool
    positions_checked: int
    witness: MapWitness | None = None
    nim_mismatches: tuple[tuple[Position, int, int], ...] = ()


def verify_option_preserving(
    g: Gamegraph, h: Gamegraph, beta: Callable[[Position], Position]
) -> OptionMapReport:
    """Check Opt_h(beta(p)) = beta(Opt_g(p)) for every reachable p of g.

    On success additionally checks nim(beta(p)) = nim(p) positionwise (the
    point of option-preserving maps) instead of assuming it.
    """
    h_positions = set(reachable_positions(h))
    g_positions = reachable_positions(g)
    for p in g_positions:
        image = beta(p)
        if image not in h_positions:
            raise InvalidMapError(f"beta({p!r}) = {image!r} is not a position of h")
        want = frozenset(beta(q) for q in g.options(p))
        got = frozenset(h.options(image))
        if want != got:
            witness = MapWitness(p, missing=want - got, extra=got - want)
            return OptionMapReport(False, len(g_positions), witness)
    ev_g = NimEvaluator(g)
    ev_h = NimEvaluator(h)
    mismatches = tuple(
        (p, ev_g.nim(p), ev_h.nim(beta(p)))
        for p in g_positions
        if ev_g.nim(p) != ev_h.nim(beta(p))
    )
    return OptionMapReport(not mismatches, len(g_positions), None, mismatches)


# ---------------------------------------------------------------------------
# Explicit gamegraphs: construction, text format, random generation
# ---------------------------------------------------------------------------


def from_mapping(mapping: dict, start: Position) -> Gamegraph:
    """Gamegraph from an explicit position -> iterable-of-options dict."""
    table = {p: frozenset(qs) for p, qs in mapping.items()}
    if start not in table:
        raise ValueError(f"start {start!r} missing from mapping")

    def options(p):
        try:
            return table[p]
        except KeyError:
            raise ValueError(f"unknown position {p!r}") from None

    return Gamegraph(start, options)


def parse_gamegraph(text: str) -> Gamegraph:
    """Parse an adjacency-list gamegraph, one ``id: option ids`` line per position.

    The first line names the starting position.  Every referenced id must have
    its own line, so terminals are spelled out explicitly.
    """
    table: dict[str, frozenset] = {}
    start = None
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        name, _, rest = line.partition(":")
        name = name.strip()
        if not name or not _:
            raise ValueError(f"malformed gamegraph line {raw!r}")
        if name in table:
            raise ValueError(f"duplicate position {name!r}")
        table[name] = frozenset(rest.split())
        if start is None:
            start = name
    if start is None:
        raise ValueError("empty gamegraph text")
    undefined = set().union(*table.values()) - set(table)
    if undefined:
        raise ValueError(f"options reference undefined positions: {sorted(undefined)}")
    return from_mapping(table, start)


def format_gamegraph(game: Gamegraph) -> str:
    lines = []
    for p in reachable_positions(game):
        opts = " ".join(sorted(str(q) for q in game.options(p)))
        lines.append(f"{p}:{(' ' + opts) if opts else ''}")
    return "\n".join(lines) + "\n"


def random_gamegraph(rng: random.Random, max_positions: int = 12) -> Gamegraph:
    """Random single-source DAG on integer positions 0..n-1 (0 is the start)."""
    n = rng.randint(2, max_positions)
    children: dict[int, set[int]] = {i: set() for i in range(n)}
    for i in range(1, n):
        for parent in rng.sample(range(i), k=rng.randint(1, min(i, 3))):
            children[parent].add(i)
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < 0.15:
                children[i].add(j)
    return from_mapping(children, 0)

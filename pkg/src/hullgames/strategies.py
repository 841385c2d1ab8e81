"""Deterministic second-player response rules and their exhaustive verification.

Each strategy is a pure function ``(state_before_adversary_move, move) ->
response`` on a composite state of a 3x3 (or 3^d) decrement game plus an
optional one-move delay heap (the ``*1`` component of a disjunctive sum).
The verifier walks every adversary move sequence, applies the strategy's
response, and passes only if every maximal play ends with a strategy move.

Diagram-style strategies match the current state against parameterized
shapes up to the dihedral symmetry of the matrix game, so congruent
adversary moves share one table entry.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import tensor as tz
from .errors import CapacityError
from .graphgames import DNT, TER, check_kind
from .tensor import RegionTensor, tensor_symmetry_perms

# ---------------------------------------------------------------------------
# Composite states and moves
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Move:
    """A unit decrement of one region, or (``region=None``) of the delay heap."""

    region: tuple[int, ...] | None = None

    @property
    def is_heap(self) -> bool:
        return self.region is None


STAR = Move(None)


def _move_key(move: Move):
    return (1,) if move.is_heap else (0, move.region)


@dataclass(frozen=True)
class PlayState:
    tensor: RegionTensor
    heap: int
    kind: str


def start_state(t: RegionTensor, kind: str, attach_star: bool) -> PlayState:
    return PlayState(t, 1 if attach_star else 0, check_kind(kind))


def _matrix_move_indices(state: PlayState) -> list[int]:
    t = state.tensor
    fs = tz.face_sums(t)
    if state.kind == TER:
        if not fs.all_positive():
            return []
        return [i for i, e in enumerate(t.entries) if e > 0]
    return tz.dnt_move_indices(t, fs)


def legal_moves(state: PlayState) -> list[Move]:
    out = [Move(state.tensor.region(i)) for i in _matrix_move_indices(state)]
    if state.heap > 0:
        out.append(STAR)
    return out


def apply_move(state: PlayState, move: Move) -> PlayState:
    if move.is_heap:
        if state.heap <= 0:
            raise ValueError("no heap move available")
        return PlayState(state.tensor, state.heap - 1, state.kind)
    return PlayState(state.tensor.decrement(move.region), state.heap, state.kind)


def is_finished(state: PlayState) -> bool:
    return state.heap == 0 and not _matrix_move_indices(state)


def winning_move(state: PlayState) -> Move | None:
    """Lexicographically least move after which the opponent has none."""
    for move in sorted(legal_moves(state), key=_move_key):
        if is_finished(apply_move(state, move)):
            return move
    return None


def reflect_region(region: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(2 - r for r in region)


def is_centrally_symmetric(t: RegionTensor) -> bool:
    e = t.entries
    return all(e[i] == e[len(e) - 1 - i] for i in range(len(e)))


# ---------------------------------------------------------------------------
# Dihedral matching machinery (3x3 states)
# ---------------------------------------------------------------------------

_TRANSFORMS: list[tuple[tuple[int, ...], tuple[int, ...]]] = []
for _p in tensor_symmetry_perms(2):
    _inv = [0] * 9
    for _i, _src in enumerate(_p):
        _inv[_src] = _i
    _TRANSFORMS.append((_p, tuple(_inv)))

# Framed flat cells of the 3x3, named by compass direction.
NW, N, NE, W, C, E, SW, S, SE = range(9)


def _framed_rows(t: RegionTensor, perm) -> tuple:
    e = t.entries
    return (
        (e[perm[0]], e[perm[1]], e[perm[2]]),
        (e[perm[3]], e[perm[4]], e[perm[5]]),
        (e[perm[6]], e[perm[7]], e[perm[8]]),
    )


def _respond_via(state: PlayState, move: Move, pattern, table) -> Move | None:
    """Try every frame that matches ``pattern``; use ``table`` on the framed move.

    ``pattern(rows)`` returns a parameter dict or None; ``table(params, cell)``
    returns a framed cell, ``STAR`` or None (``cell`` is ``STAR`` for heap
    moves).  The first frame whose table covers the move wins, so congruent
    moves are handled once.
    """
    for perm, inv in _TRANSFORMS:
        params = pattern(_framed_rows(state.tensor, perm))
        if params is None:
            continue
        framed = STAR if move.is_heap else inv[state.tensor.flat_index(move.region)]
        out = table(params, framed)
        if out is None:
            continue
        if out is STAR:
            return STAR
        return Move(state.tensor.region(perm[out]))
    return None


# ---------------------------------------------------------------------------
# Central and horizontal reflection
# ---------------------------------------------------------------------------


def respond_central_reflection(state: PlayState, move: Move) -> Move | None:
    """Avoidance: mirror the move through the center.  Achievement: win if
    possible, otherwise mirror; works for any tensor dimension."""
    if state.kind == TER:
        win = winning_move(apply_move(state, move))
        if win is not None:
            return win
    if move.is_heap:
        return None
    return Move(reflect_region(move.region))


def _cr_endgame(state: PlayState, move: Move) -> Move | None:
    # Dispatcher hook: fire only on heap-free centrally symmetric states with
    # an even center, the shape the reflection argument needs.
    if state.heap != 0 or state.tensor.ndim != 2:
        return None
    if not is_centrally_symmetric(state.tensor) or state.tensor.center() % 2:
        return None
    return respond_central_reflection(state, move)


def _hr_frames(t: RegionTensor):
    frames = [
        (perm, inv)
        for perm, inv in _TRANSFORMS
        if (rows := _framed_rows(t, perm))[0] == rows[2]
    ]
    # Prefer frames that put the even middle entry in the reflection-fixed
    # left slot; settle ties on the framed entries, then declaration order.
    def rank(item):
        rows = _framed_rows(t, item[0])
        return (rows[1][0] % 2, rows)

    frames.sort(key=rank)
    return frames


def respond_horizontal_reflection(state: PlayState, move: Move) -> Move | None:
    """Mirror across the horizontal axis, with two overriding rules: finish a
    top or bottom row whose sum fell to 1, and keep the two designated middle
    entries evenly paired."""
    if state.heap != 0 or state.tensor.ndim != 2 or move.is_heap:
        return None
    frames = _hr_frames(state.tensor)
    if not frames:
        return None
    perm, inv = frames[0]
    after = apply_move(state, move).tensor
    rows = _framed_rows(after, perm)
    for row_idx in (0, 2):
        if sum(rows[row_idx]) == 1:
            col = max(range(3), key=lambda j: rows[row_idx][j])
            return Move(after.region(perm[3 * row_idx + col]))
    if rows[1][1] % 2 != rows[1][2] % 2:
        odd_cell = C if rows[1][1] % 2 else E
        return Move(after.region(perm[odd_cell]))
    framed = inv[state.tensor.flat_index(move.region)]
    mirrored = (2 - framed // 3) * 3 + framed % 3
    return Move(after.region(perm[mirrored]))


def _hr_endgame(state: PlayState, move: Move) -> Move | None:
    if state.heap != 0 or state.tensor.ndim != 2 or move.is_heap:
        return None
    return respond_horizontal_reflection(state, move)


# ---------------------------------------------------------------------------
# Middle-game strategies (played in TER(M) plus a one-move heap)
# ---------------------------------------------------------------------------


def _pat_ma_main(rows):
    # [[1,x,1],[0,1,0],[1,x,1]] with x >= 1
    (a, b, c), (d, e, f), (g, h, i) = rows
    if (a, c, g, i) == (1, 1, 1, 1) and (d, e, f) == (0, 1, 0) and b == h >= 1:
        return {"x": b}
    return None


def _tab_ma_main(p, m):
    x = p["x"]
    if m is STAR:
        return C
    if m == C:
        return STAR
    if m in (N, S):
        return (S if m == N else N) if x >= 2 else STAR
    return {NW: NE, NE: NW, SW: SE, SE: SW}.get(m)


def _pat_ma_side(rows):
    # [[0,x,0],[0,1,0],[1,x,1]] with x >= 1
    (a, b, c), (d, e, f), (g, h, i) = rows
    if (a, c) == (0, 0) and (d, e, f) == (0, 1, 0) and (g, i) == (1, 1) and b == h >= 1:
        return {"x": b}
    return None


def _tab_ma_side(p, m):
    if m == N:
        return S if p["x"] >= 2 else None
    if m == S:
        return N if p["x"] >= 2 else C
    if m == C:
        return S
    return None


def _pat_ma_tail(rows):
    # [[0,x,0],[0,0,0],[1,x-1,1]] with x >= 1
    (a, b, c), mid, (g, h, i) = rows
    if (a, c) == (0, 0) and mid == (0, 0, 0) and (g, i) == (1, 1) and b == h + 1 >= 1:
        return {"x": b}
    return None


def _tab_ma_tail(p, m):
    if m == N and p["x"] >= 2:
        return S
    if m == S and p["x"] >= 2:
        return N
    return None


def _pat_ma_spent(rows):
    # [[1,0,1],[0,1,0],[1,1,1]], reached after the heap move was spent
    if rows == ((1, 0, 1), (0, 1, 0), (1, 1, 1)):
        return {}
    return None


def _tab_ma_spent(p, m):
    if m == C:
        return S
    if m == S:
        return C
    return None


def respond_middle_a(state: PlayState, move: Move) -> Move | None:
    win = winning_move(apply_move(state, move))
    if win is not None:
        return win
    nodes = (
        (1, _pat_ma_main, _tab_ma_main),
        (1, _pat_ma_side, _tab_ma_side),
        (1, _pat_ma_tail, _tab_ma_tail),
        (0, _pat_ma_spent, _tab_ma_spent),
    )
    for heap, pattern, table in nodes:
        if state.heap != heap:
            continue
        out = _respond_via(state, move, pattern, table)
        if out is not None:
            return out
    return _cr_endgame(state, move)


def _pat_mb_main(rows):
    # [[0,x,1],[1,1,1],[1,x,0]] with x >= 1
    (a, b, c), (d, e, f), (g, h, i) = rows
    if (a, c, g, i) == (0, 1, 1, 0) and (d, e, f) == (1, 1, 1) and b == h >= 1:
        return {"x": b}
    return None


def _tab_mb_main(p, m):
    x = p["x"]
    if m is STAR:
        return C
    if m == C:
        return STAR
    if m == N:
        return S if x >= 2 else SW
    if m == S:
        return N if x >= 2 else NE
    return {W: NE, NE: W, E: SW, SW: E}.get(m)


def _pat_mb_side(rows):
    # [[0,x,0],[0,1,1],[1,x,0]] with x >= 1
    (a, b, c), (d, e, f), (g, h, i) = rows
    if (a, c, g, i) == (0, 0, 1, 0) and (d, e, f) == (0, 1, 1) and b == h >= 1:
        return {"x": b}
    return None


def _tab_mb_side(p, m):
    if m == N:
        return S if p["x"] >= 2 else None
    if m == S:
        return N if p["x"] >= 2 else C
    if m == C:
        return S
    return None


def _pat_mb_tail(rows):
    # [[0,x,0],[0,0,1],[1,x-1,0]] with x >= 1
    (a, b, c), (d, e, f), (g, h, i) = rows
    if (a, c, g, i) == (0, 0, 1, 0) and (d, e, f) == (0, 0, 1) and b == h + 1 >= 1:
        return {"x": b}
    return None


def _tab_mb_tail(p, m):
    if m == N and p["x"] >= 2:
        return S
    if m == S and p["x"] >= 2:
        return N
    return None


def respond_middle_b(state: PlayState, move: Move) -> Move | None:
    win = winning_move(apply_move(state, move))
    if win is not None:
        return win
    nodes = (
        (_pat_mb_main, _tab_mb_main),
        (_pat_mb_side, _tab_mb_side),
        (_pat_mb_tail, _tab_mb_tail),
    )
    if state.heap == 1:
        for pattern, table in nodes:
            out = _respond_via(state, move, pattern, table)
            if out is not None:
                return out
    return _cr_endgame(state, move)


# ---------------------------------------------------------------------------
# Opening strategy (odd middle cross, played with a one-move heap)
# ---------------------------------------------------------------------------


def _pat_open_start(rows):
    # [[1,x,1],[y,1,y],[1,x,1]] with x, y >= 1
    (a, b, c), (d, e, f), (g, h, i) = rows
    if (a, c, g, i) == (1, 1, 1, 1) and e == 1 and b == h >= 1 and d == f >= 1:
        return {"x": b, "y": d}
    return None


def _tab_open_start(p, m):
    x, y = p["x"], p["y"]
    if m is STAR:
        return C
    if m == C:
        return STAR
    if m in (N, S):
        return STAR if x >= 2 else (S if m == N else N)
    if m in (W, E):
        return STAR if y >= 2 else (E if m == W else W)
    if m in (NW, NE, SW, SE):
        if x >= 2 and y >= 2:
            return STAR
        return {NW: SE, NE: SW, SW: NE, SE: NW}[m]
    return None


def _pat_open_corner(rows):
    # [[0,X,1],[Y,1,Y],[1,X,1]] after a corner exchange, heap spent
    (a, b, c), (d, e, f), (g, h, i) = rows
    if a == 0 and (c, g, i) == (1, 1, 1) and e == 1 and b == h >= 1 and d == f >= 1:
        return {"X": b, "Y": d}
    return None


def _tab_open_corner(p, m):
    if m == W:
        return SW
    if m == SW:
        return W
    if m == E:
        return SW
    if m == C:
        return SE
    if m == SE:
        return C
    return None


def respond_opening(state: PlayState, move: Move) -> Move | None:
    win = winning_move(apply_move(state, move))
    if win is not None:
        return win
    if state.heap == 1:
        out = _respond_via(state, move, _pat_open_start, _tab_open_start)
        if out is not None:
            return out
    else:
        out = _respond_via(state, move, _pat_open_corner, _tab_open_corner)
        if out is not None:
            return out
    for delegate in (respond_middle_a, respond_middle_b, _cr_endgame, _hr_endgame):
        out = delegate(state, move)
        if out is not None:
            return out
    return None


STRATEGIES = {
    "cr": respond_central_reflection,
    "hr": respond_horizontal_reflection,
    "ma": respond_middle_a,
    "mb": respond_middle_b,
    "opening": respond_opening,
}


# ---------------------------------------------------------------------------
# Claims and exhaustive verification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StrategyClaim:
    """A family of start states, a response rule, and the nim value implied
    when the rule wins every line (0 plain, 1 when a heap is attached)."""

    name: str
    kind: str
    attach_star: bool
    strategy: str
    starts: tuple[RegionTensor, ...]
    claimed_nim: int | None
    expect_pass: bool = True


def _m(rows) -> RegionTensor:
    return RegionTensor.from_nested(rows)


def claim_cr_dnt(bound: int = 3) -> StrategyClaim:
    starts = tuple(
        _m([[1, b, 1], [d, 0, d], [1, b, 1]])
        for b in range(bound + 1)
        for d in range(bound + 1)
    )
    return StrategyClaim("cr-dnt", DNT, False, "cr", starts, 0)


def claim_cr_ter_even(bound: int = 3) -> StrategyClaim:
    starts = tuple(
        _m([[1, b, 1], [d, 0, d], [1, b, 1]])
        for b in range(bound + 1)
        for d in range(bound + 1)
    )
    return StrategyClaim("cr-ter-even", TER, False, "cr", starts, 0)


def claim_cr_general(bound: int = 2) -> StrategyClaim:
    """Centrally symmetric matrices with an even center, achievement flavour.

    Starts with an edge sum of 1 are excluded: there the first player simply
    finishes that edge, so no second-player rule can apply.
    """
    starts = []
    for a in range(bound + 1):
        for b in range(bound + 1):
            for c in range(bound + 1):
                for d in range(bound + 1):
                    for e in (0, 2):
                        t = _m([[a, b, c], [d, e, d], [c, b, a]])
                        if all(s >= 2 for s in tz.face_sums(t).sums):
                            starts.append(t)
    return StrategyClaim("cr-general", TER, False, "cr", tuple(starts), 0)


def _hr_family(tilde: int) -> tuple[RegionTensor, ...]:
    starts = []
    for a in range(3):
        for b in range(3):
            for c in range(3):
                for e in (0, 2):
                    for o in (1, 3):
                        t = _m([[a, b, c], [e, o, tilde], [a, b, c]])
                        if all(s >= 2 for s in tz.face_sums(t).sums):
                            starts.append(t)
    return tuple(starts)


def claim_hr() -> StrategyClaim:
    return StrategyClaim("hr", TER, False, "hr", _hr_family(3), 0)


def claim_hr_necessity() -> StrategyClaim:
    # Same family with the right middle entry forced to 1; the reflection
    # rule then walks into a losing shape, so verification must fail.
    return StrategyClaim(
        "hr-necessity", TER, False, "hr", _hr_family(1), None, expect_pass=False
    )


def claim_ma(values=(2, 3, 4)) -> StrategyClaim:
    starts = tuple(_m([[1, b, 1], [0, 1, 0], [1, b, 1]]) for b in values)
    return StrategyClaim("ma", TER, True, "ma", starts, 1)


def claim_mb(values=(2, 3, 4)) -> StrategyClaim:
    starts = tuple(_m([[0, a, 1], [1, 1, 1], [1, a, 0]]) for a in values)
    return StrategyClaim("mb", TER, True, "mb", starts, 1)


def claim_opening(values=(1, 3)) -> StrategyClaim:
    starts = tuple(
        _m([[1, b, 1], [d, 1, d], [1, b, 1]]) for b in values for d in values
    )
    return StrategyClaim("opening", TER, True, "opening", starts, 1)


BUILTIN_CLAIMS = {
    "cr-dnt": claim_cr_dnt,
    "cr-ter-even": claim_cr_ter_even,
    "cr-general": claim_cr_general,
    "hr": claim_hr,
    "hr-necessity": claim_hr_necessity,
    "ma": claim_ma,
    "mb": claim_mb,
    "opening": claim_opening,
}


def builtin_claim(name: str) -> StrategyClaim:
    try:
        return BUILTIN_CLAIMS[name]()
    except KeyError:
        raise ValueError(
            f"unknown claim {name!r}; available: {sorted(BUILTIN_CLAIMS)}"
        ) from None


def claim_from_document(doc: dict) -> StrategyClaim:
    """Build a claim from a JSON-style dict.

    Either a builtin family with parameter bounds::

        {"family": "ma", "params": {"values": [2, 3]}}

    or a fully explicit claim with matrix-literal starts::

        {"name": "corners", "kind": "dnt", "attach_star": false,
         "strategy": "cr", "claimed_nim": 0, "starts": ["1,0,1;0,0,0;1,0,1"]}
    """
    if "family" in doc:
        family = doc["family"]
        if family not in BUILTIN_CLAIMS:
            raise ValueError(
                f"unknown family {family!r}; available: {sorted(BUILTIN_CLAIMS)}"
            )
        params = doc.get("params", {})
        return BUILTIN_CLAIMS[family](**params)
    return StrategyClaim(
        name=doc["name"],
        kind=doc["kind"],
        attach_star=bool(doc.get("attach_star", False)),
        strategy=doc["strategy"],
        starts=tuple(tz.parse_matrix(text) for text in doc["starts"]),
        claimed_nim=doc.get("claimed_nim"),
        expect_pass=bool(doc.get("expect_pass", True)),
    )


@dataclass(frozen=True)
class PlayStep:
    mover: str
    move: Move


@dataclass(frozen=True)
class StrategyFailure:
    start: RegionTensor
    steps: tuple[PlayStep, ...]
    reason: str


@dataclass(frozen=True)
class StrategyReport:
    claim: str
    passed: bool
    starts_checked: int
    states_visited: int
    failure: StrategyFailure | None = None
    nim_checked: bool = False


def verify_strategy_wins(
    claim: StrategyClaim,
    state_limit: int | None = None,
    state_check=None,
    cross_check: bool = True,
) -> StrategyReport:
    """Walk every adversary line from every start; pass iff the strategy
    always answers legally and makes the final move.  On pass, the claimed
    nim value is cross-checked against independent exhaustive search."""
    strategy = STRATEGIES[claim.strategy]
    visited: set = set()
    limit = state_limit if state_limit is not None else 10_000_000
    steps: list[PlayStep] = []

    def search(state: PlayState, start: RegionTensor) -> StrategyFailure | None:
        key = (state.tensor.entries, state.heap)
        if key in visited:
            return None
        visited.add(key)
        if len(visited) > limit:
            raise CapacityError(len(visited), limit)
        if is_finished(state):
            return None
        for move in sorted(legal_moves(state), key=_move_key):
            after = apply_move(state, move)
            steps.append(PlayStep("adversary", move))
            if is_finished(after):
                return StrategyFailure(start, tuple(steps), "adversary made the final move")
            response = strategy(state, move)
            if response is None:
                return StrategyFailure(start, tuple(steps), "strategy has no response")
            if response not in legal_moves(after):
                return StrategyFailure(
                    start, tuple(steps),
                    f"strategy proposed the illegal move {response}",
                )
            nxt = apply_move(after, response)
            if state_check is not None:
                state_check(nxt)
            steps.append(PlayStep("strategy", response))
            failure = search(nxt, start)
            if failure is not None:
                return failure
            steps.pop()
            steps.pop()
        return None

    for start in claim.starts:
        steps.clear()
        failure = search(start_state(start, claim.kind, claim.attach_star), start)
        if failure is not None:
            return StrategyReport(
                claim.name, False, len(claim.starts), len(visited), failure
            )

    if cross_check and claim.claimed_nim is not None:
        for start in claim.starts:
            got = tz.tensor_nim(start, claim.kind).nim
            if got != claim.claimed_nim:
                return StrategyReport(
                    claim.name,
                    False,
                    len(claim.starts),
                    len(visited),
                    StrategyFailure(
                        start,
                        (),
                        f"claimed nim {claim.claimed_nim} but search found {got}",
                    ),
                )
        return StrategyReport(
            claim.name, True, len(claim.starts), len(visited), None, True
        )
    return StrategyReport(claim.name, True, len(claim.starts), len(visited))

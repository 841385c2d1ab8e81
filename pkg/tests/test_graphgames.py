import random
import warnings

import pytest

from hullgames import engine
from hullgames.errors import CapacityError, GameContractError, NonCanonicalLatticeWarning
from hullgames.graphgames import (
    DNT,
    TER,
    RemovalPosition,
    build_gamegraph,
    canonical_form,
    is_terminal,
    legal_moves,
    position_of,
    quotient_map,
    solve,
    start_position,
    symmetry_group,
)
from hullgames.lattice import LatticeGraph, hull_is_full


def test_symmetry_group_orders():
    assert len(symmetry_group(LatticeGraph((2, 3)))) == 4
    assert len(symmetry_group(LatticeGraph((3, 3)))) == 8
    assert len(symmetry_group(LatticeGraph((2, 2, 3)))) == 16
    assert len(symmetry_group(LatticeGraph((3, 3, 3)))) == 48


def test_dnt_start_moves_and_orbits():
    g = LatticeGraph((2, 3))
    start = start_position(g, DNT)
    assert legal_moves(start) == set(g.vertices())
    singles = [RemovalPosition(g, frozenset([u]), DNT) for u in g.vertices()]
    orbits = {canonical_form(p).selected for p in singles}
    assert len(orbits) == 2
    sizes = sorted(
        sum(1 for p in singles if canonical_form(p).selected == orbit)
        for orbit in orbits
    )
    assert sizes == [2, 4] and sum(sizes) == 6


def test_ter_start_moves_none_terminal():
    g = LatticeGraph((2, 3))
    start = start_position(g, TER)
    moves = legal_moves(start)
    assert moves == set(g.vertices())
    for u in moves:
        after = RemovalPosition(g, frozenset([u]), TER)
        assert not is_terminal(after)


def test_ter_terminal_when_facet_gone():
    g = LatticeGraph((3, 5))
    column = frozenset((r, 0) for r in range(3))
    assert is_terminal(RemovalPosition(g, column, TER))
    assert not is_terminal(start_position(g, TER))


def test_dnt_terminal_two_opposite_corners_of_square():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NonCanonicalLatticeWarning)
        g = LatticeGraph((2, 2))
        p = RemovalPosition(g, frozenset([(0, 0), (1, 1)]), DNT)
        assert is_terminal(p)


def test_fig_quotient_bottom_position_is_terminal():
    g = LatticeGraph((2, 3))
    p = RemovalPosition(g, frozenset([(0, 0), (0, 1), (1, 1), (1, 2)]), DNT)
    assert is_terminal(p)
    game = build_gamegraph(g, DNT)
    key = tuple(sorted(g.index(u) for u in p.selected))
    assert engine.nim_of(game, key) == 0


def test_dnt_position_invariant_enforced():
    g = LatticeGraph((2, 3))
    with pytest.raises(GameContractError):
        RemovalPosition(g, frozenset((0, c) for c in range(3)), DNT)


def test_legal_moves_on_terminal_raises():
    g = LatticeGraph((3, 5))
    column = frozenset((r, 0) for r in range(3))
    with pytest.raises(GameContractError):
        legal_moves(RemovalPosition(g, column, TER))


def test_canonical_form_idempotent():
    g = LatticeGraph((2, 3))
    rng = random.Random(1)
    verts = list(g.vertices())
    for _ in range(30):
        chosen = frozenset(rng.sample(verts, rng.randint(0, 4)))
        try:
            p = RemovalPosition(g, chosen, TER)
        except GameContractError:
            continue
        c1 = canonical_form(p)
        assert canonical_form(c1).selected == c1.selected
        assert c1.kind == p.kind


def test_quotient_class_count_and_start_values():
    g = LatticeGraph((2, 3))
    quo = build_gamegraph(g, DNT, quotient=True)
    assert len(engine.reachable_positions(quo)) == 12
    ev = engine.NimEvaluator(quo)
    assert ev.nim() == 0
    assert sorted({ev.nim(q) for q in quo.options(())}) == [1, 3]


def test_collapsing_unlike_positions_is_not_option_preserving():
    g = LatticeGraph((2, 3))
    raw = build_gamegraph(g, DNT)
    corner = (g.index((0, 0)),)
    middle = (g.index((0, 1)),)

    def beta(p):
        return middle if p == corner else p

    report = engine.verify_option_preserving(raw, raw, beta)
    assert not report.ok and report.witness is not None


def test_quotient_map_is_option_preserving():
    for dims in [(2, 3), (3, 3)]:
        g = LatticeGraph(dims)
        for kind in (TER, DNT):
            raw = build_gamegraph(g, kind)
            quo = build_gamegraph(g, kind, quotient=True)
            report = engine.verify_option_preserving(raw, quo, quotient_map(g))
            assert report.ok, (dims, kind, report)


@pytest.mark.parametrize(
    "dims,kind,expected",
    [
        ((2, 3), DNT, 0),
        ((3, 3), TER, 1),
        ((3, 3), DNT, 1),
        ((2, 2, 3), DNT, 0),
        ((2, 2, 3), TER, 0),
    ],
)
def test_solve_known_values(dims, kind, expected):
    assert solve(LatticeGraph(dims), kind).nim == expected


def test_parity_theorem_every_grid_up_to_area_twenty():
    grids = [
        (m, n)
        for m in range(2, 5)
        for n in range(max(m, 3), 11)
        if m * n <= 20
    ]
    assert (4, 5) in grids and (2, 10) in grids
    for m, n in grids:
        g = LatticeGraph((m, n))
        assert solve(g, DNT).nim == (m * n) % 2
        assert solve(g, TER).nim == (m * n) % 2


def test_solve_quotient_agreement_small():
    for dims in [(2, 3), (2, 4), (3, 3), (2, 2, 3), (3, 4)]:
        g = LatticeGraph(dims)
        for kind in (TER, DNT):
            assert solve(g, kind, use_quotient=True).nim == solve(
                g, kind, use_quotient=False
            ).nim


def test_solve_matches_generic_engine():
    # the mask kernel against the engine's memoized recursion on the
    # explicit gamegraph: two independently written evaluation routes
    for dims in [(2, 3), (2, 4), (3, 3), (2, 2, 3)]:
        g = LatticeGraph(dims)
        for kind in (TER, DNT):
            assert solve(g, kind).nim == engine.nim_of(build_gamegraph(g, kind))


def test_solve_capacity_error():
    g = LatticeGraph((3, 4))
    with pytest.raises(CapacityError) as err:
        solve(g, DNT, state_limit=10)
    assert err.value.states > 10 or err.value.states == 11


def test_all_two_dims_warn():
    with pytest.warns(NonCanonicalLatticeWarning):
        solve(LatticeGraph((2, 2)), DNT)


def test_dnt_invariant_holds_along_random_plays():
    g = LatticeGraph((2, 4))
    rng = random.Random(4)
    for _ in range(25):
        pos = start_position(g, DNT)
        while not is_terminal(pos):
            assert hull_is_full(g, pos.unselected())
            move = rng.choice(sorted(legal_moves(pos)))
            pos = RemovalPosition(g, pos.selected | {move}, DNT)
        assert hull_is_full(g, pos.unselected())


def test_position_of_roundtrip():
    g = LatticeGraph((2, 3))
    p = position_of(g, (0, 5), TER)
    assert p.selected == frozenset({(0, 0), (1, 2)})

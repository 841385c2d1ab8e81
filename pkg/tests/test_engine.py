import random

import pytest

from hullgames import fixtures
from hullgames.engine import (
    FIRST_WINS,
    SECOND_WINS,
    Gamegraph,
    NimEvaluator,
    delayed_product,
    disjunctive_sum,
    format_gamegraph,
    from_mapping,
    mex,
    naive_nim,
    nim_of,
    nim_sum,
    parse_gamegraph,
    path_game,
    random_gamegraph,
    reachable_positions,
    verify_delay_identities,
    verify_option_preserving,
)
from hullgames.errors import CapacityError, CycleError, InvalidMapError


def test_mex():
    assert mex(set()) == 0
    assert mex({0, 1, 3}) == 2
    assert mex({1, 2}) == 0


def test_nim_sum():
    assert nim_sum(2, 3) == 1
    assert nim_sum(13, 0) == 13
    assert nim_sum(9, 9) == 0
    with pytest.raises(ValueError):
        nim_sum(-1, 0)


def test_fork_fixture_values():
    fork = fixtures.load("fork")
    ev = NimEvaluator(fork)
    assert {p: ev.nim(p) for p in reachable_positions(fork)} == {
        "s": 2,
        "a": 0,
        "b": 1,
        "t": 0,
    }
    assert ev.outcome() == FIRST_WINS


def test_chain_fixture_values():
    chain = fixtures.load("chain")
    ev = NimEvaluator(chain)
    assert [ev.nim(p) for p in ("s", "a", "b", "t")] == [0, 2, 1, 0]
    assert ev.outcome() == SECOND_WINS


def test_terminal_positions_have_nim_zero():
    fork = fixtures.load("fork")
    assert nim_of(fork, "a") == 0 and nim_of(fork, "t") == 0


def test_path_game_parity():
    assert [nim_of(path_game(k)) for k in range(4)] == [0, 1, 0, 1]
    assert set(path_game(0).options(0)) == set()


def test_sum_with_delay_path():
    fork = fixtures.load("fork")
    assert nim_of(disjunctive_sum(fork, path_game(3))) == 3
    assert nim_of(disjunctive_sum(fork, path_game(0))) == nim_of(fork)


def test_sum_nim_is_xor_on_random_pairs():
    rng = random.Random(11)
    for _ in range(100):
        g = random_gamegraph(rng, 8)
        h = random_gamegraph(rng, 8)
        assert nim_of(disjunctive_sum(g, h)) == nim_of(g) ^ nim_of(h)


def test_delayed_product_fork_columns():
    fork = fixtures.load("fork")
    ev = NimEvaluator(delayed_product(fork, 3))
    table = {p: [ev.nim((p, r)) for r in range(4)] for p in ("s", "a", "b", "t")}
    assert table == {
        "s": [2, 1, 2, 1],
        "a": [0, 0, 0, 0],
        "b": [1, 2, 1, 2],
        "t": [0, 0, 0, 0],
    }
    assert ev.nim() == 1  # starting position (s, 3)


def test_delayed_product_chain_columns():
    chain = fixtures.load("chain")
    ev = NimEvaluator(delayed_product(chain, 2))
    assert [ev.nim(("s", r)) for r in range(3)] == [0, 3, 0]
    assert [ev.nim(("a", r)) for r in range(3)] == [2, 1, 2]
    assert [ev.nim(("b", r)) for r in range(3)] == [1, 2, 1]
    # a zero-delay product is the original game
    ev0 = NimEvaluator(delayed_product(chain, 0))
    assert ev0.nim() == nim_of(chain)


def test_delay_identities_on_fixtures():
    assert verify_delay_identities(fixtures.load("fork"), 3).ok
    assert verify_delay_identities(fixtures.load("chain"), 2).ok


def test_delay_identities_on_random_gamegraphs():
    rng = random.Random(5)
    for _ in range(30):
        report = verify_delay_identities(random_gamegraph(rng, 12), 4)
        assert report.ok, report


def test_memoized_matches_naive():
    rng = random.Random(3)
    for _ in range(40):
        g = random_gamegraph(rng, 12)
        assert nim_of(g) == naive_nim(g)


def test_naive_nim_capacity():
    rng = random.Random(9)
    g = random_gamegraph(rng, 12)
    with pytest.raises(CapacityError):
        naive_nim(g, node_limit=2)


def test_cycle_detection():
    g = from_mapping({"a": ["b"], "b": ["a"]}, "a")
    with pytest.raises(CycleError) as err:
        nim_of(g)
    assert err.value.position in ("a", "b")


def test_option_preserving_identity():
    fork = fixtures.load("fork")
    report = verify_option_preserving(fork, fork, lambda p: p)
    assert report.ok and report.witness is None


def test_option_preserving_collapse_yields_witness():
    # collapsing two structurally different positions must be caught
    chain = fixtures.load("chain")

    def beta(p):
        return "b" if p == "a" else p

    report = verify_option_preserving(chain, chain, beta)
    assert not report.ok
    assert report.witness is not None
    assert report.witness.missing or report.witness.extra


def test_option_preserving_rejects_escaping_images():
    fork = fixtures.load("fork")
    chain = fixtures.load("chain")
    with pytest.raises(InvalidMapError):
        verify_option_preserving(fork, chain, lambda p: "nowhere")


def test_parse_format_roundtrip():
    fork = fixtures.load("fork")
    text = format_gamegraph(fork)
    again = parse_gamegraph(text)
    assert format_gamegraph(again) == text
    assert nim_of(again) == nim_of(fork)


@pytest.mark.parametrize(
    "bad",
    [
        "",
        "s a b",  # missing colon
        "s: a\ns: b",  # duplicate
        "s: ghost",  # undefined option
    ],
)
def test_parse_rejects_malformed(bad):
    with pytest.raises(ValueError):
        parse_gamegraph(bad)


def test_reachable_positions_single_source():
    rng = random.Random(17)
    for _ in range(20):
        g = random_gamegraph(rng, 10)
        positions = reachable_positions(g)
        assert positions[0] == g.start
        # the start is nobody's option
        for p in positions:
            assert g.start not in g.options(p)


def test_evaluator_accepts_any_known_position():
    g = Gamegraph(3, lambda i: {i - 1} if i else set())
    ev = NimEvaluator(g)
    assert ev.nim(2) == 0 and ev.nim(3) == 1

import json

import pytest

from hullgames.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


def test_solve_grid(capsys):
    code, doc = run_json(capsys, "solve", "--game", "dnt", "--grid", "3x4")
    assert code == 0
    assert doc["nim"] == 0 and doc["outcome"] == "second"
    assert doc["positions_explored"] > 0
    assert list(doc) == [
        "game",
        "input",
        "nim",
        "outcome",
        "positions_explored",
        "elapsed_ms",
    ]


def test_solve_matrix(capsys):
    code, doc = run_json(
        capsys, "solve", "--game", "ter", "--matrix", "1,1,1;1,1,1;1,1,1"
    )
    assert code == 0 and doc["nim"] == 1 and doc["outcome"] == "first"


def test_solve_tensor_file(capsys, tmp_path):
    path = tmp_path / "t.json"
    slab = [1, 1, 1, 0, 0, 0, 1, 1, 1]
    path.write_text(
        json.dumps({"dims": [3, 3, 3], "entries": slab + [0] * 9 + slab})
    )
    code, doc = run_json(capsys, "solve", "--game", "dnt", "--tensor-file", str(path))
    assert code == 0 and doc["nim"] == 0


def test_solve_rejects_small_dims(capsys):
    code, doc = run_json(capsys, "solve", "--game", "dnt", "--grid", "1x5")
    assert code == 2 and doc["error"] == "invalid-input"


def test_solve_capacity_exit(capsys):
    code, doc = run_json(
        capsys, "solve", "--game", "dnt", "--grid", "4x5", "--state-limit", "50"
    )
    assert code == 3 and doc["error"] == "capacity"


def test_solve_oracle_matches(capsys):
    code, doc = run_json(capsys, "solve", "--game", "dnt", "--grid", "2x3", "--oracle")
    assert code == 0 and doc["nim"] == 0
    code, doc = run_json(
        capsys, "solve", "--game", "ter", "--matrix", "1,0,1;0,0,0;1,0,1", "--oracle"
    )
    assert code == 0 and doc["nim"] == 0


def test_repeat_runs_identical_apart_from_timing(capsys):
    def strip(doc):
        return {k: v for k, v in doc.items() if k != "elapsed_ms"}

    _, first = run_json(capsys, "solve", "--game", "ter", "--grid", "3x3")
    _, second = run_json(capsys, "solve", "--game", "ter", "--grid", "3x3")
    assert strip(first) == strip(second)


def test_table_json(capsys):
    code, doc = run_json(capsys, "table", "--game", "dnt", "--max", "4x5")
    assert code == 0
    assert len(doc["rows"]) == 8
    assert all(row["agree"] for row in doc["rows"])
    assert all(row["nim_graph"] == (row["m"] * row["n"]) % 2 for row in doc["rows"])


def test_table_tsv(capsys):
    code, out = run(capsys, "table", "--game", "ter", "--max", "3x4", "--format", "tsv")
    lines = out.strip().splitlines()
    assert code == 0
    assert lines[0].split("\t") == ["m", "n", "nim_graph", "nim_matrix", "parity", "agree"]
    assert len(lines) == 1 + 4  # grids 2x3 2x4 3x3 3x4


def test_table_empty_range(capsys):
    code, doc = run_json(capsys, "table", "--game", "dnt", "--max", "2x2")
    assert code == 2 and doc["error"] == "invalid-input"


def test_verify_alpha(capsys):
    code, doc = run_json(capsys, "verify", "alpha", "--grid", "2x3", "--game", "dnt")
    assert code == 0 and doc["passed"]


def test_verify_delay_fixture(capsys):
    code, doc = run_json(capsys, "verify", "delay", "--fixture", "fork", "--k", "3")
    assert code == 0 and doc["passed"]


def test_verify_delay_random(capsys):
    code, doc = run_json(
        capsys, "verify", "delay", "--random", "5", "--k", "3", "--seed", "1"
    )
    assert code == 0 and doc["passed"]


def test_verify_strategy_pass(capsys):
    code, doc = run_json(capsys, "verify", "strategy", "--claim", "ma")
    assert code == 0 and doc["passed"] and doc["nim_cross_checked"]


def test_verify_strategy_failure_witness(capsys):
    code, doc = run_json(capsys, "verify", "strategy", "--claim", "hr-necessity")
    assert code == 4 and not doc["passed"]
    witness = doc["witness"]
    assert witness["play"][-1]["mover"] == "adversary"


def test_verify_strategy_claims_file(capsys, tmp_path):
    claim = {
        "name": "corners",
        "kind": "dnt",
        "attach_star": False,
        "strategy": "cr",
        "claimed_nim": 0,
        "starts": ["1,0,1;0,0,0;1,0,1"],
    }
    path = tmp_path / "claim.json"
    path.write_text(json.dumps(claim))
    code, doc = run_json(capsys, "verify", "strategy", "--claims-file", str(path))
    assert code == 0 and doc["passed"]


def test_verify_strategy_claims_file_family(capsys, tmp_path):
    path = tmp_path / "family.json"
    path.write_text(json.dumps({"family": "ma", "params": {"values": [2, 3]}}))
    code, doc = run_json(capsys, "verify", "strategy", "--claims-file", str(path))
    assert code == 0 and doc["passed"] and doc["starts_checked"] == 2


def test_verify_strategy_claims_file_malformed(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"kind": "ter", "starts": []}))
    code, doc = run_json(capsys, "verify", "strategy", "--claims-file", str(path))
    assert code == 2 and doc["error"] == "invalid-input"


def test_verify_needs_arguments(capsys):
    code, doc = run_json(capsys, "verify", "alpha")
    assert code == 2
    code, doc = run_json(capsys, "verify", "strategy")
    assert code == 2


def test_verify_unknown_target_usage_error():
    with pytest.raises(SystemExit) as err:
        main(["verify", "bogus"])
    assert err.value.code == 2


def test_hull_full_set(capsys):
    code, doc = run_json(
        capsys, "hull", "--grid", "5x3", "--set", "(0,2);(2,0);(4,1)"
    )
    assert code == 0 and doc["full"] and doc["hull_size"] == 15


def test_hull_singleton(capsys):
    code, doc = run_json(capsys, "hull", "--grid", "3x5", "--set", "(1,1)")
    assert code == 0 and not doc["full"] and doc["hull"] == [[1, 1]]


def test_hull_3d(capsys):
    code, doc = run_json(
        capsys, "hull", "--grid", "2x2x3", "--set", "(0,0,0);(1,1,2)"
    )
    assert code == 0 and doc["full"] and doc["hull_size"] == 12


def test_hull_bad_coordinates(capsys):
    code, doc = run_json(capsys, "hull", "--grid", "3x5", "--set", "(9,9)")
    assert code == 2 and doc["error"] == "invalid-input"


def test_hull_oracle_agrees(capsys):
    args = ("hull", "--grid", "3x5", "--set", "(0,0);(2,4)")
    _, plain = run_json(capsys, *args)
    _, oracle = run_json(capsys, *args, "--oracle")
    assert plain["hull"] == oracle["hull"]


def test_state_limit_env_var(capsys, monkeypatch):
    monkeypatch.setenv("HULLGAMES_STATE_LIMIT", "50")
    code, doc = run_json(capsys, "solve", "--game", "dnt", "--grid", "4x5")
    assert code == 3 and doc["error"] == "capacity"
    # an explicit flag overrides the environment
    code, doc = run_json(
        capsys, "solve", "--game", "dnt", "--grid", "3x3", "--state-limit", "5000"
    )
    assert code == 0 and doc["nim"] == 1

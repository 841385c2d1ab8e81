"""Batch command-line frontend with machine-readable output.

Subcommands: ``solve`` (one game), ``table`` (grid sweeps), ``verify``
(projection / delay / strategy checks), ``hull`` (convexity queries).
Exit codes: 0 success, 2 invalid input, 3 capacity exceeded, 4 verification
failure.  Output is JSON with a fixed key order (TSV for tables on request);
``elapsed_ms`` is the only field that varies between identical runs.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time

from . import backend, engine, fixtures, graphgames, strategies
from . import tensor as tz
from .errors import CapacityError
from .lattice import (
    LatticeGraph,
    VertexSet,
    convex_hull,
    format_lattice_spec,
    hull_is_full,
    parse_lattice_spec,
)

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_CAPACITY = 3
EXIT_VERIFY_FAILED = 4


def _emit(doc) -> None:
    print(json.dumps(doc, indent=2))


def _parse_vertex_list(text: str) -> list[tuple[int, ...]]:
    out = []
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        if not (part.startswith("(") and part.endswith(")")):
            raise ValueError(f"malformed vertex {part!r}")
        out.append(tuple(int(x) for x in part[1:-1].split(",")))
    if not out:
        raise ValueError("empty vertex list")
    return out


def _load_tensor(args) -> tuple[tz.RegionTensor, str]:
    if args.matrix is not None:
        return tz.parse_matrix(args.matrix), args.matrix
    with open(args.tensor_file, encoding="utf-8") as fh:
        text = fh.read()
    return tz.parse_tensor_document(text), args.tensor_file


# ---------------------------------------------------------------------------
# solve
# ---------------------------------------------------------------------------


def _run_solve(args) -> int:
    started = time.perf_counter()
    oracle_limit = (
        args.state_limit if args.state_limit is not None else backend.default_state_limit()
    )
    if args.grid is not None:
        graph = parse_lattice_spec(args.grid)
        label = format_lattice_spec(graph)
        if args.oracle:
            game = graphgames.build_gamegraph(graph, args.game)
            nim = engine.naive_nim(game, node_limit=oracle_limit)
            states = None
        else:
            result = graphgames.solve(
                graph, args.game, use_quotient=args.quotient, state_limit=args.state_limit
            )
            nim, states = result.nim, result.states
    else:
        t, label = _load_tensor(args)
        if args.oracle:
            nim = engine.naive_nim(tz.tensor_game(t, args.game), node_limit=oracle_limit)
            states = None
        else:
            result = tz.tensor_nim(
                t, args.game, use_symmetry=args.symmetry, state_limit=args.state_limit
            )
            nim, states = result.nim, result.states
    _emit(
        {
            "game": args.game,
            "input": label,
            "nim": nim,
            "outcome": engine.FIRST_WINS if nim else engine.SECOND_WINS,
            "positions_explored": states,
            "elapsed_ms": round(1000 * (time.perf_counter() - started), 3),
        }
    )
    return EXIT_OK


# ---------------------------------------------------------------------------
# table
# ---------------------------------------------------------------------------


def _run_table(args) -> int:
    started = time.perf_counter()
    bounds = parse_lattice_spec(args.max)
    if bounds.ndim != 2:
        raise ValueError("table ranges are grids, use --max MxN")
    mmax, nmax = bounds.dims
    rows = []
    for m in range(2, mmax + 1):
        for n in range(max(m, 3), nmax + 1):
            graph = LatticeGraph((m, n))
            graph_nim = graphgames.solve(
                graph, args.game, state_limit=args.state_limit
            ).nim
            matrix_nim = tz.tensor_nim(
                tz.starting_tensor((m, n)), args.game, state_limit=args.state_limit
            ).nim
            parity = (m * n) % 2
            rows.append(
                {
                    "m": m,
                    "n": n,
                    "nim_graph": graph_nim,
                    "nim_matrix": matrix_nim,
                    "parity": parity,
                    "agree": graph_nim == matrix_nim == parity,
                }
            )
    if not rows:
        raise ValueError(f"no grids with 2 <= m <= n, n >= 3 inside {args.max!r}")
    if args.format == "tsv":
        cols = ["m", "n", "nim_graph", "nim_matrix", "parity", "agree"]
        print("\t".join(cols))
        for row in rows:
            print("\t".join(str(row[c]).lower() if c == "agree" else str(row[c]) for c in cols))
    else:
        _emit(
            {
                "game": args.game,
                "max": args.max,
                "rows": rows,
                "elapsed_ms": round(1000 * (time.perf_counter() - started), 3),
            }
        )
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def _verify_alpha(args) -> tuple[bool, dict]:
    graph = parse_lattice_spec(args.grid)
    raw = graphgames.build_gamegraph(graph, args.game)
    start = tz.starting_tensor(graph.dims)
    target = tz.tensor_game(start, args.game)

    def beta(indices):
        pos = graphgames.position_of(graph, indices, args.game)
        return tz.alpha_project(pos).entries

    report = engine.verify_option_preserving(raw, target, beta)
    doc = {
        "target": "alpha",
        "grid": format_lattice_spec(graph),
        "game": args.game,
        "positions_checked": report.positions_checked,
        "passed": report.ok,
    }
    if report.witness is not None:
        doc["witness_position"] = list(report.witness.position)
    if report.nim_mismatches:
        doc["nim_mismatches"] = [
            {"position": list(p), "nim": a, "image_nim": b}
            for p, a, b in report.nim_mismatches
        ]
    return report.ok, doc


def _verify_delay(args) -> tuple[bool, dict]:
    results = []
    ok = True
    if args.fixture is not None:
        game = fixtures.load(args.fixture)
        report = engine.verify_delay_identities(game, args.k)
        ok = report.ok
        results.append(
            {
                "source": args.fixture,
                "positions_checked": report.positions_checked,
                "violations": len(report.violations),
            }
        )
    else:
        rng = random.Random(args.seed)
        failures = 0
        for _ in range(args.random):
            game = engine.random_gamegraph(rng, args.max_positions)
            report = engine.verify_delay_identities(game, args.k)
            if not report.ok:
                failures += 1
        ok = failures == 0
        results.append(
            {
                "source": f"{args.random} random gamegraphs (seed {args.seed})",
                "failures": failures,
            }
        )
    doc = {"target": "delay", "k": args.k, "passed": ok, "checks": results}
    return ok, doc


def _verify_strategy(args) -> tuple[bool, dict]:
    if args.claims_file is not None:
        with open(args.claims_file, encoding="utf-8") as fh:
            try:
                claim = strategies.claim_from_document(json.load(fh))
            except (KeyError, TypeError) as exc:
                raise ValueError(f"malformed claim document: {exc}") from None
    else:
        claim = strategies.builtin_claim(args.claim)
    report = strategies.verify_strategy_wins(claim, state_limit=args.state_limit)
    doc = {
        "target": "strategy",
        "claim": claim.name,
        "passed": report.passed,
        "starts_checked": report.starts_checked,
        "states_visited": report.states_visited,
        "nim_cross_checked": report.nim_checked,
    }
    if report.failure is not None:
        doc["witness"] = {
            "start": tz.format_matrix(report.failure.start),
            "reason": report.failure.reason,
            "play": [
                {
                    "mover": step.mover,
                    "move": "heap" if step.move.is_heap else list(step.move.region),
                }
                for step in report.failure.steps
            ],
        }
    return report.passed, doc


def _run_verify(args) -> int:
    if args.target == "alpha":
        ok, doc = _verify_alpha(args)
    elif args.target == "delay":
        ok, doc = _verify_delay(args)
    else:
        ok, doc = _verify_strategy(args)
    _emit(doc)
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


# ---------------------------------------------------------------------------
# hull
# ---------------------------------------------------------------------------


def _run_hull(args) -> int:
    graph = parse_lattice_spec(args.grid)
    coords = _parse_vertex_list(args.set)
    vs = VertexSet.of(graph, coords)
    hull = convex_hull(graph, vs, oracle=args.oracle)
    _emit(
        {
            "grid": format_lattice_spec(graph),
            "set": [list(c) for c in sorted(vs.members)],
            "hull": [list(c) for c in hull],
            "hull_size": len(hull),
            "full": hull_is_full(graph, vs),
        }
    )
    return EXIT_OK


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------


def _add_common(parser):
    parser.add_argument(
        "--state-limit",
        type=int,
        default=None,
        help=f"maximum states to explore (default from ${backend.STATE_LIMIT_ENV} "
        f"or {backend.DEFAULT_STATE_LIMIT})",
    )
    parser.add_argument("--format", choices=("json", "tsv"), default="json")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hullgames",
        description="Solve and verify hull-removal games on lattice graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="nim value of one game")
    solve.add_argument("--game", choices=("ter", "dnt"), required=True)
    source = solve.add_mutually_exclusive_group(required=True)
    source.add_argument("--grid", help="lattice spec such as 3x5 or 2x2x3")
    source.add_argument("--matrix", help="matrix literal a,b,c;d,e,f;g,h,i")
    source.add_argument("--tensor-file", help="JSON file with dims and flat entries")
    solve.add_argument("--no-quotient", dest="quotient", action="store_false")
    solve.add_argument("--no-symmetry", dest="symmetry", action="store_false")
    solve.add_argument(
        "--oracle", action="store_true", help="naive evaluation without memo or symmetry"
    )
    _add_common(solve)

    table = sub.add_parser("table", help="grid sweep with graph/matrix agreement")
    table.add_argument("--game", choices=("ter", "dnt"), required=True)
    table.add_argument("--max", required=True, help="largest grid, e.g. 4x5")
    _add_common(table)

    verify = sub.add_parser("verify", help="run a named verification")
    verify.add_argument("target", choices=("alpha", "delay", "strategy"))
    verify.add_argument("--grid", help="lattice spec (alpha)")
    verify.add_argument("--game", choices=("ter", "dnt"), default="dnt")
    verify.add_argument("--fixture", choices=sorted(fixtures.FIXTURES), help="named gamegraph (delay)")
    verify.add_argument("--k", type=int, default=4, help="delay depth (delay)")
    verify.add_argument("--random", type=int, default=100, help="random gamegraph count (delay)")
    verify.add_argument("--max-positions", type=int, default=12)
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--claim", help="builtin claim name (strategy)")
    verify.add_argument("--claims-file", help="JSON claim definition (strategy)")
    _add_common(verify)

    hull = sub.add_parser("hull", help="convex hull membership of a vertex set")
    hull.add_argument("--grid", required=True)
    hull.add_argument("--set", required=True, help='vertex list "(0,2);(2,0);(4,1)"')
    hull.add_argument("--oracle", action="store_true")
    _add_common(hull)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "solve":
            return _run_solve(args)
        if args.command == "table":
            return _run_table(args)
        if args.command == "verify":
            if args.target == "alpha" and not args.grid:
                raise ValueError("verify alpha needs --grid")
            if args.target == "strategy" and not (args.claim or args.claims_file):
                raise ValueError("verify strategy needs --claim or --claims-file")
            return _run_verify(args)
        return _run_hull(args)
    except CapacityError as exc:
        print(json.dumps({"error": "capacity", "detail": str(exc), "states": exc.states}))
        return EXIT_CAPACITY
    except (ValueError, OSError) as exc:
        print(json.dumps({"error": "invalid-input", "detail": str(exc)}))
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())

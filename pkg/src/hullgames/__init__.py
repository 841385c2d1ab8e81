"""Solvers and verified second-player strategies for geodetic-hull removal
games on lattice graphs.

Layers, roughly bottom to top:

* :mod:`hullgames.lattice` — box-product graphs, geodesics, convex hulls.
* :mod:`hullgames.engine` — generic impartial gamegraphs: nim values, sums,
  delayed products, option-preserving map checks.
* :mod:`hullgames.graphgames` — the achievement (TER) and avoidance (DNT)
  removal games on lattices, with symmetry quotienting.
* :mod:`hullgames.tensor` — region-count tensor games and the projection
  from graph positions.
* :mod:`hullgames.strategies` — deterministic response rules with exhaustive
  adversary-search verification.
* :mod:`hullgames.cli` — the ``hullgames`` command.

The hot search kernels have a compiled twin built from ``_speedups.pyx``;
``hullgames.backend.BACKEND`` names the implementation in use.
"""

from .backend import BACKEND, SearchResult
from .engine import Gamegraph, NimEvaluator, mex, nim_of, nim_sum
from .errors import (
    CapacityError,
    CycleError,
    GameContractError,
    InvalidMapError,
    NonCanonicalLatticeWarning,
)
from .graphgames import DNT, TER, RemovalPosition, build_gamegraph, solve
from .lattice import LatticeGraph, VertexSet, convex_hull, hull_is_full, parse_lattice_spec
from .tensor import RegionTensor, alpha_project, starting_tensor, tensor_nim

__all__ = [
    "BACKEND",
    "CapacityError",
    "CycleError",
    "DNT",
    "GameContractError",
    "Gamegraph",
    "InvalidMapError",
    "LatticeGraph",
    "NimEvaluator",
    "NonCanonicalLatticeWarning",
    "RegionTensor",
    "RemovalPosition",
    "SearchResult",
    "TER",
    "VertexSet",
    "alpha_project",
    "build_gamegraph",
    "convex_hull",
    "hull_is_full",
    "mex",
    "nim_of",
    "nim_sum",
    "parse_lattice_spec",
    "solve",
    "starting_tensor",
    "tensor_nim",
]

__version__ = "0.1.0"

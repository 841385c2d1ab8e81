"""Achievement and avoidance vertex-removal games on lattice graphs.

Both games select previously-unselected vertices of a lattice graph.  The
achievement game (TER) ends as soon as the convex hull of the unselected
vertices stops being the whole vertex set; the avoidance game (DNT) forbids
moves that would break the hull and ends when no legal move remains.  Normal
play: the last player to move wins.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass

from . import backend, engine
from .errors import GameContractError, NonCanonicalLatticeWarning
from .lattice import Coord, LatticeGraph, VertexSet, facet_masks, hull_is_full

TER = "ter"
DNT = "dnt"
KINDS = (TER, DNT)


def check_kind(kind: str) -> str:
    kind = kind.lower()
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}, got {kind!r}")
    return kind


@dataclass(frozen=True)
class RemovalPosition:
    """A set of jointly selected vertices of one graph, for one game kind."""

    graph: LatticeGraph
    selected: frozenset[Coord]
    kind: str

    def __post_init__(self):
        object.__setattr__(self, "kind", check_kind(self.kind))
        selected = frozenset(self.graph.check_coord(u) for u in self.selected)
        object.__setattr__(self, "selected", selected)
        if self.kind == DNT and not hull_is_full(self.graph, self.unselected()):
            raise GameContractError(
                "avoidance positions must keep the hull of the unselected vertices full"
            )

    def unselected(self) -> VertexSet:
        return VertexSet.of(
            self.graph, (u for u in self.graph.vertices() if u not in self.selected)
        )


def start_position(graph: LatticeGraph, kind: str) -> RemovalPosition:
    return RemovalPosition(graph, frozenset(), kind)


# ---------------------------------------------------------------------------
# Symmetry
# ---------------------------------------------------------------------------


def symmetry_group(graph: LatticeGraph) -> list[tuple[int, ...]]:
    """Vertex-index permutations generated by axis reversals and swaps of
    equal-length axes.  The identity comes first."""
    d = graph.ndim
    dims = graph.dims
    perms = []
    for axis_perm in itertools.permutations(range(d)):
        if any(dims[axis_perm[k]] != dims[k] for k in range(d)):
            continue
        for flips in itertools.product((False, True), repeat=d):
            table = []
            for i in range(graph.num_vertices):
                c = graph.coord(i)
                image = []
                for k in range(d):
                    x = c[axis_perm[k]]
                    image.append(dims[k] - 1 - x if flips[k] else x)
                table.append(graph.index(tuple(image)))
            perms.append(tuple(table))
    perms.sort()
    identity = tuple(range(graph.num_vertices))
    perms.remove(identity)
    return [identity] + perms


def canonical_selected(
    graph: LatticeGraph, indices: tuple[int, ...], perms=None
) -> tuple[int, ...]:
    """Lexicographically least image of a sorted index tuple under the group."""
    if perms is None:
        perms = symmetry_group(graph)
    return min(tuple(sorted(p[i] for i in indices)) for p in perms)


def canonical_form(pos: RemovalPosition) -> RemovalPosition:
    indices = tuple(sorted(pos.graph.index(u) for u in pos.selected))
    best = canonical_selected(pos.graph, indices)
    coords = frozenset(pos.graph.coord(i) for i in best)
    return RemovalPosition(pos.graph, coords, pos.kind)


# ---------------------------------------------------------------------------
# Move legality and terminality
# ---------------------------------------------------------------------------


def _mask_of(pos: RemovalPosition) -> int:
    m = 0
    for u in pos.selected:
        m |= 1 << pos.graph.index(u)
    return m


def _complement_full(masks, nverts, selected_mask) -> bool:
    for f in masks:
        if selected_mask & f == f:
            return False
    return True


def _legal_indices(graph, masks, selected_mask, kind) -> list[int]:
    out = []
    for v in range(graph.num_vertices):
        bit = 1 << v
        if selected_mask & bit:
            continue
        if kind == TER or _complement_full(masks, graph.num_vertices, selected_mask | bit):
            out.append(v)
    return out


def is_terminal(pos: RemovalPosition) -> bool:
    masks = facet_masks(pos.graph)
    m = _mask_of(pos)
    if pos.kind == TER:
        return not _complement_full(masks, pos.graph.num_vertices, m)
    return not _legal_indices(pos.graph, masks, m, DNT)


def legal_moves(pos: RemovalPosition) -> set[Coord]:
    """Vertices that may be selected next; raises on terminal positions."""
    if is_terminal(pos):
        raise GameContractError("legal_moves called on a terminal position")
    masks = facet_masks(pos.graph)
    m = _mask_of(pos)
    return {
        pos.graph.coord(v)
        for v in _legal_indices(pos.graph, masks, m, pos.kind)
    }


# ---------------------------------------------------------------------------
# Gamegraph construction and solving
# ---------------------------------------------------------------------------


def _warn_if_degenerate(graph: LatticeGraph):
    if max(graph.dims) < 3:
        warnings.warn(
            f"all dimensions of {graph.dims} are 2; grid results do not cover "
            "this box, treat the answer as exploratory",
            NonCanonicalLatticeWarning,
            stacklevel=3,
        )


def build_gamegraph(
    graph: LatticeGraph, kind: str, quotient: bool = False
) -> engine.Gamegraph:
    """Explicit gamegraph over sorted tuples of selected vertex indices.

    With ``quotient=True`` positions are canonical forms under the graph's
    symmetry group, which is the quotient drawn when identifying congruent
    positions.
    """
    kind = check_kind(kind)
    _warn_if_degenerate(graph)
    masks = facet_masks(graph)
    perms = symmetry_group(graph) if quotient else None

    def options(p: tuple[int, ...]):
        m = 0
        for i in p:
            m |= 1 << i
        if kind == TER and not _complement_full(masks, graph.num_vertices, m):
            return frozenset()
        children = set()
        for v in _legal_indices(graph, masks, m, kind):
            child = tuple(sorted(p + (v,)))
            if perms is not None:
                child = canonical_selected(graph, child, perms)
            children.add(child)
        return frozenset(children)

    return engine.Gamegraph((), options)


def quotient_map(graph: LatticeGraph):
    """Position map from the raw gamegraph onto the canonical quotient."""
    perms = symmetry_group(graph)

    def beta(p: tuple[int, ...]) -> tuple[int, ...]:
        return canonical_selected(graph, p, perms)

    return beta


def position_of(graph: LatticeGraph, indices, kind: str) -> RemovalPosition:
    coords = frozenset(graph.coord(i) for i in indices)
    return RemovalPosition(graph, coords, kind)


def solve(
    graph: LatticeGraph,
    kind: str,
    use_quotient: bool = True,
    state_limit: int | None = None,
) -> backend.SearchResult:
    """Nim value of the game from the empty position by exhaustive search."""
    kind = check_kind(kind)
    _warn_if_degenerate(graph)
    perms = symmetry_group(graph) if use_quotient else None
    return backend.mask_search(
        graph.num_vertices,
        facet_masks(graph),
        perms,
        kind == DNT,
        state_limit,
    )

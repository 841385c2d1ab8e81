"""Geodetic convexity on lattice graphs (box products of paths).

Vertices are integer coordinate tuples ordered by the ``dims`` list, with
component ``k`` in ``range(dims[k])``.  All operations are pure functions of
immutable values and are safe to share between threads.
"""

from __future__ import annotations

import itertools
import re
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator

Coord = tuple[int, ...]


@dataclass(frozen=True)
class LatticeGraph:
    """Box product of paths P_{n_1} x ... x P_{n_d}; ``dims`` = (n_1, ..., n_d)."""

    dims: tuple[int, ...]

    def __post_init__(self):
        dims = tuple(int(n) for n in self.dims)
        if len(dims) < 1:
            raise ValueError("a lattice graph needs at least one dimension")
        if any(n < 2 for n in dims):
            raise ValueError(f"every dimension must be >= 2, got {dims}")
        object.__setattr__(self, "dims", dims)

    @property
    def ndim(self) -> int:
        return len(self.dims)

    @property
    def num_vertices(self) -> int:
        out = 1
        for n in self.dims:
            out *= n
        return out

    def check_coord(self, u) -> Coord:
        """Validate ``u`` as a coordinate of this graph and return it as a tuple."""
        u = tuple(u)
        if len(u) != self.ndim or not all(
            isinstance(x, int) and 0 <= x < n for x, n in zip(u, self.dims)
        ):
            raise ValueError(f"coordinate {u} out of range for dims {self.dims}")
        return u

    def index(self, u: Coord) -> int:
        """Row-major linear index of a coordinate."""
        u = self.check_coord(u)
        i = 0
        for x, n in zip(u, self.dims):
            i = i * n + x
        return i

    def coord(self, i: int) -> Coord:
        out = []
        for n in reversed(self.dims):
            out.append(i % n)
            i //= n
        return tuple(reversed(out))

    def vertices(self) -> Iterator[Coord]:
        """All coordinates in row-major order."""
        return itertools.product(*(range(n) for n in self.dims))

    def neighbors(self, u: Coord) -> list[Coord]:
        u = self.check_coord(u)
        out = []
        for k, n in enumerate(self.dims):
            for step in (-1, 1):
                x = u[k] + step
                if 0 <= x < n:
                    out.append(u[:k] + (x,) + u[k + 1 :])
        return out


@dataclass(frozen=True)
class VertexSet:
    """An immutable subset of one graph's vertices with O(1) membership."""

    graph: LatticeGraph
    members: frozenset[Coord]

    def __post_init__(self):
        members = frozenset(self.graph.check_coord(u) for u in self.members)
        object.__setattr__(self, "members", members)

    @classmethod
    def of(cls, graph: LatticeGraph, coords: Iterable[Coord]) -> "VertexSet":
        return cls(graph, frozenset(tuple(c) for c in coords))

    @classmethod
    def full(cls, graph: LatticeGraph) -> "VertexSet":
        return cls(graph, frozenset(graph.vertices()))

    def __contains__(self, u) -> bool:
        return tuple(u) in self.members

    def __iter__(self) -> Iterator[Coord]:
        return iter(sorted(self.members))

    def __len__(self) -> int:
        return len(self.members)

    def complement(self) -> "VertexSet":
        rest = frozenset(self.graph.vertices()) - self.members
        return VertexSet(self.graph, rest)

    def mask(self) -> int:
        """Bitmask over row-major vertex indices (used by the search kernels)."""
        m = 0
        for u in self.members:
            m |= 1 << self.graph.index(u)
        return m


def parse_lattice_spec(text: str) -> LatticeGraph:
    """Parse a spec string like ``"3x5"`` or ``"2x2x3"`` (case-insensitive)."""
    parts = re.split("[xX]", text.strip())
    try:
        dims = tuple(int(p) for p in parts)
    except ValueError:
        raise ValueError(f"malformed lattice spec {text!r}") from None
    return LatticeGraph(dims)


def format_lattice_spec(graph: LatticeGraph) -> str:
    return "x".join(str(n) for n in graph.dims)


def distance(graph: LatticeGraph, u: Coord, v: Coord) -> int:
    """Graph distance; for a box product of paths this is the L1 distance."""
    u = graph.check_coord(u)
    v = graph.check_coord(v)
    return sum(abs(a - b) for a, b in zip(u, v))


def interval(graph: LatticeGraph, u: Coord, v: Coord) -> VertexSet:
    """All vertices on some geodesic from u to v: the coordinate box spanned by them."""
    u = graph.check_coord(u)
    v = graph.check_coord(v)
    ranges = [range(min(a, b), max(a, b) + 1) for a, b in zip(u, v)]
    return VertexSet.of(graph, itertools.product(*ranges))


def _bfs_distances(graph: LatticeGraph, source: Coord) -> dict[Coord, int]:
    dist = {source: 0}
    queue = deque([source])
    while queue:
        w = queue.popleft()
        for x in graph.neighbors(w):
            if x not in dist:
                dist[x] = dist[w] + 1
                queue.append(x)
    return dist


def interval_oracle(graph: LatticeGraph, u: Coord, v: Coord) -> VertexSet:
    """BFS-based interval: every w with d(u,w) + d(w,v) = d(u,v).

    Slower than :func:`interval` but makes no use of the lattice structure,
    so it doubles as an independent check and works for future graph classes.
    """
    u = graph.check_coord(u)
    v = graph.check_coord(v)
    du = _bfs_distances(graph, u)
    dv = _bfs_distances(graph, v)
    d = du[v]
    return VertexSet.of(graph, (w for w in graph.vertices() if du[w] + dv[w] == d))


def geodetic_closure(graph: LatticeGraph, s: VertexSet, oracle: bool = False) -> VertexSet:
    """One application of "add every vertex between two members"."""
    if not s.members:
        raise ValueError("geodetic closure of the empty set is not defined")
    between = interval_oracle if oracle else interval
    out: set[Coord] = set()
    members = sorted(s.members)
    for i, u in enumerate(members):
        for v in members[i:]:
            out.update(between(graph, u, v).members)
    return VertexSet(graph, frozenset(out))


def convex_hull(graph: LatticeGraph, s: VertexSet, oracle: bool = False) -> VertexSet:
    """Least convex superset: iterate the geodetic closure until it stabilizes."""
    if not s.members:
        raise ValueError("convex hull of the empty set is not defined")
    cur = s
    while True:
        nxt = geodetic_closure(graph, cur, oracle=oracle)
        if nxt.members == cur.members:
            return cur
        cur = nxt


def bounding_box(graph: LatticeGraph, s: VertexSet) -> VertexSet:
    """Smallest coordinate box containing ``s`` (closed form of the hull)."""
    if not s.members:
        raise ValueError("bounding box of the empty set is not defined")
    members = list(s.members)
    ranges = []
    for k in range(graph.ndim):
        vals = [u[k] for u in members]
        ranges.append(range(min(vals), max(vals) + 1))
    return VertexSet.of(graph, itertools.product(*ranges))


def hull_is_full(graph: LatticeGraph, s: VertexSet) -> bool:
    """True iff ``s`` meets every facet, i.e. the hull of ``s`` is the whole graph."""
    if not s.members:
        return False
    for k, n in enumerate(graph.dims):
        lo = hi = False
        for u in s.members:
            lo = lo or u[k] == 0
            hi = hi or u[k] == n - 1
            if lo and hi:
                break
        if not (lo and hi):
            return False
    return True


def facets(graph: LatticeGraph) -> list[VertexSet]:
    """The 2d facet vertex sets, ordered axis by axis, low side then high side."""
    out = []
    for k, n in enumerate(graph.dims):
        for side in (0, n - 1):
            out.append(
                VertexSet.of(graph, (u for u in graph.vertices() if u[k] == side))
            )
    return out


def facet_masks(graph: LatticeGraph) -> list[int]:
    """Row-major bitmasks of each facet, in the same order as :func:`facets`."""
    return [f.mask() for f in facets(graph)]

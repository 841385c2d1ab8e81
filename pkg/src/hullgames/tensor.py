"""Region-count tensor games and the projection from lattice removal games.

Positions of a removal game on a d-dimensional lattice project to a 3^d
tensor counting the unselected vertices per coordinate region (low end,
middle, high end along each axis).  Moves become decrements of positive
entries; the hull condition becomes positivity of the 2d face sums.  The
projection sends options onto options, so it preserves nim-values, which is
verified rather than assumed (see :func:`hullgames.engine.verify_option_preserving`).
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import lru_cache

from . import backend, engine
from .errors import GameContractError
from .graphgames import DNT, TER, RemovalPosition, check_kind
from .lattice import LatticeGraph

Region = tuple[int, ...]  # components in {0, 1, 2}: low, middle, high


@dataclass(frozen=True)
class RegionTensor:
    """A 3^d array of nonnegative counts, flattened row-major."""

    ndim: int
    entries: tuple[int, ...]

    def __post_init__(self):
        entries = tuple(int(x) for x in self.entries)
        if self.ndim < 1:
            raise ValueError("tensor needs at least one axis")
        if len(entries) != 3**self.ndim:
            raise ValueError(
                f"expected {3 ** self.ndim} entries for {self.ndim} axes, "
                f"got {len(entries)}"
            )
        if any(x < 0 for x in entries):
            raise ValueError("entries must be nonnegative")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_nested(cls, nested) -> "RegionTensor":
        ndim = 0
        probe = nested
        while isinstance(probe, (list, tuple)):
            ndim += 1
            probe = probe[0]
        flat = []

        def walk(x, depth):
            if depth == 0:
                flat.append(int(x))
                return
            if len(x) != 3:
                raise ValueError("every axis must have length 3")
            for part in x:
                walk(part, depth - 1)

        walk(nested, ndim)
        return cls(ndim, tuple(flat))

    def nested(self):
        def build(depth, offset, stride):
            if depth == 0:
                return self.entries[offset]
            sub = stride // 3 if depth > 1 else 1
            return [
                build(depth - 1, offset + i * stride, sub) for i in range(3)
            ]

        return build(self.ndim, 0, 3 ** (self.ndim - 1))

    def flat_index(self, region: Region) -> int:
        if len(region) != self.ndim:
            raise ValueError(f"region {region} needs {self.ndim} components")
        i = 0
        for r in region:
            if r not in (0, 1, 2):
                raise ValueError(f"region components must be 0, 1 or 2: {region}")
            i = i * 3 + r
        return i

    def region(self, flat: int) -> Region:
        out = []
        for _ in range(self.ndim):
            out.append(flat % 3)
            flat //= 3
        return tuple(reversed(out))

    def __getitem__(self, region: Region) -> int:
        return self.entries[self.flat_index(region)]

    def total(self) -> int:
        return sum(self.entries)

    def center(self) -> int:
        return self[(1,) * self.ndim]

    def replace(self, region: Region, value: int) -> "RegionTensor":
        i = self.flat_index(region)
        if value < 0:
            raise ValueError("entries must be nonnegative")
        return RegionTensor(
            self.ndim, self.entries[:i] + (value,) + self.entries[i + 1 :]
        )

    def decrement(self, region: Region) -> "RegionTensor":
        i = self.flat_index(region)
        if self.entries[i] == 0:
            raise GameContractError(f"entry {region} is already zero")
        return self.replace(region, self.entries[i] - 1)


# ---------------------------------------------------------------------------
# Projection from graph positions
# ---------------------------------------------------------------------------


def _axis_region(x: int, n: int) -> int:
    if x == 0:
        return 0
    if x == n - 1:
        return 2
    return 1


def alpha_project(pos: RemovalPosition) -> RegionTensor:
    """Count the unselected vertices in each coordinate region."""
    g = pos.graph
    counts = [0] * (3**g.ndim)
    for u in g.vertices():
        if u in pos.selected:
            continue
        i = 0
        for x, n in zip(u, g.dims):
            i = i * 3 + _axis_region(x, n)
        counts[i] += 1
    return RegionTensor(g.ndim, tuple(counts))


def starting_tensor(dims) -> RegionTensor:
    """Projection of the empty position: entries are products of region sizes."""
    g = LatticeGraph(tuple(dims))
    sizes = [(1, n - 2, 1) for n in g.dims]
    counts = []
    for region in itertools.product((0, 1, 2), repeat=g.ndim):
        c = 1
        for k, r in enumerate(region):
            c *= sizes[k][r]
        counts.append(c)
    return RegionTensor(g.ndim, tuple(counts))


# ---------------------------------------------------------------------------
# Face sums and moves
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def face_index_lists(ndim: int) -> tuple[tuple[int, ...], ...]:
    """Per (axis, side) pair, the flat entry indices in that extreme slice.

    Ordered axis by axis, low side then high side, matching the facet order
    of :func:`hullgames.lattice.facets`.
    """
    regions = list(itertools.product((0, 1, 2), repeat=ndim))
    out = []
    for axis in range(ndim):
        for side in (0, 2):
            out.append(
                tuple(i for i, r in enumerate(regions) if r[axis] == side)
            )
    return tuple(out)


@dataclass(frozen=True)
class FaceSumSet:
    """The 2d extreme-slice sums; for a matrix these are the two extreme rows
    and the two extreme columns."""

    ndim: int
    sums: tuple[int, ...]

    def sum_for(self, axis: int, side: int) -> int:
        if side not in (0, 2):
            raise ValueError("side must be 0 (low) or 2 (high)")
        return self.sums[2 * axis + (0 if side == 0 else 1)]

    def all_positive(self) -> bool:
        return all(s > 0 for s in self.sums)


def face_sums(t: RegionTensor) -> FaceSumSet:
    lists = face_index_lists(t.ndim)
    return FaceSumSet(
        t.ndim, tuple(sum(t.entries[i] for i in members) for members in lists)
    )


def _extreme_axes(t: RegionTensor, flat: int) -> int:
    return sum(1 for r in t.region(flat) if r != 1)


def is_terminal_tensor(t: RegionTensor, kind: str) -> bool:
    kind = check_kind(kind)
    fs = face_sums(t)
    if kind == TER:
        return not fs.all_positive()
    return not dnt_move_indices(t, fs)


def dnt_move_indices(t: RegionTensor, fs: FaceSumSet) -> list[int]:
    """Flat indices whose decrement keeps every face sum positive."""
    lists = face_index_lists(t.ndim)
    out = []
    for i, e in enumerate(t.entries):
        if e == 0:
            continue
        ok = True
        for f, members in enumerate(lists):
            if fs.sums[f] < 2 and i in members:
                ok = False
                break
        if ok:
            out.append(i)
    return out


def tensor_options(t: RegionTensor, kind: str) -> frozenset[RegionTensor]:
    """Successor states: unit decrements legal for the kind.

    Raises on terminal states; TER successors may themselves be terminal
    (a zero face sum), which is exactly how the achievement game ends.
    """
    kind = check_kind(kind)
    fs = face_sums(t)
    if kind == TER:
        if not fs.all_positive():
            raise GameContractError("tensor_options called on a terminal state")
        moves = [i for i, e in enumerate(t.entries) if e > 0]
    else:
        moves = dnt_move_indices(t, fs)
        if not moves:
            raise GameContractError("tensor_options called on a terminal state")
    out = set()
    for i in moves:
        entries = list(t.entries)
        entries[i] -= 1
        out.add(RegionTensor(t.ndim, tuple(entries)))
    return frozenset(out)


def tensor_game(t: RegionTensor, kind: str) -> engine.Gamegraph:
    """Gamegraph over flat entry tuples, for engine-level cross-checks."""
    kind = check_kind(kind)
    ndim = t.ndim
    lists = face_index_lists(ndim)

    def options(entries: tuple[int, ...]):
        fs = [sum(entries[i] for i in members) for members in lists]
        if kind == TER and any(s == 0 for s in fs):
            return frozenset()
        children = []
        for i, e in enumerate(entries):
            if e == 0:
                continue
            if kind == DNT and any(
                fs[f] < 2 for f, members in enumerate(lists) if i in members
            ):
                continue
            children.append(entries[:i] + (e - 1,) + entries[i + 1 :])
        return frozenset(children)

    return engine.Gamegraph(t.entries, options)


# ---------------------------------------------------------------------------
# Middle-entry reductions (matrix case)
# ---------------------------------------------------------------------------


def reduce_center_dnt(t: RegionTensor) -> tuple[RegionTensor, int]:
    """Split off the center of a matrix avoidance game.

    The center sits in no face sum and the game cannot end while it is
    positive, so the game decomposes as the center-free game plus a free
    counter of the center's size: nim(t) = nim(t with center 0) xor pty(center).
    """
    if t.ndim != 2:
        raise ValueError("center reduction is defined for matrices")
    e = t.center()
    return t.replace((1, 1), 0), e % 2


def reduce_center_ter(t: RegionTensor) -> RegionTensor:
    """Replace the center of a matrix achievement game by its parity.

    Center decrements are delay moves: the game equals the center-free game
    delayed by a length-``center`` path, and even delays cancel.
    """
    if t.ndim != 2:
        raise ValueError("center reduction is defined for matrices")
    return t.replace((1, 1), t.center() % 2)


# ---------------------------------------------------------------------------
# Solving
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def tensor_symmetry_perms(ndim: int) -> tuple[tuple[int, ...], ...]:
    """Flat-index permutations from axis reversals and axis permutations."""
    regions = list(itertools.product((0, 1, 2), repeat=ndim))
    index = {r: i for i, r in enumerate(regions)}
    perms = set()
    for axis_perm in itertools.permutations(range(ndim)):
        for flips in itertools.product((False, True), repeat=ndim):
            table = []
            for r in regions:
                image = tuple(
                    2 - r[axis_perm[k]] if flips[k] else r[axis_perm[k]]
                    for k in range(ndim)
                )
                table.append(index[image])
            perms.add(tuple(table))
    identity = tuple(range(len(regions)))
    rest = sorted(perms - {identity})
    return (identity, *rest)


def tensor_nim(
    t: RegionTensor,
    kind: str,
    use_symmetry: bool = True,
    state_limit: int | None = None,
) -> backend.SearchResult:
    """Nim value by exhaustive search over decrement sequences."""
    kind = check_kind(kind)
    perms = tensor_symmetry_perms(t.ndim) if use_symmetry else None
    return backend.tensor_search(
        t.entries, face_index_lists(t.ndim), perms, kind == DNT, state_limit
    )


# ---------------------------------------------------------------------------
# Text formats
# ---------------------------------------------------------------------------


def parse_matrix(text: str) -> RegionTensor:
    """Parse a 3x3 matrix literal like ``"1,3,1;2,6,2;1,3,1"``."""
    rows = [part.strip() for part in text.strip().split(";")]
    if len(rows) != 3:
        raise ValueError(f"expected 3 rows, got {len(rows)}")
    entries = []
    for row in rows:
        cells = [c.strip() for c in row.split(",")]
        if len(cells) != 3:
            raise ValueError(f"expected 3 entries per row, got {row!r}")
        for c in cells:
            value = int(c)
            if value < 0:
                raise ValueError("entries must be nonnegative")
            entries.append(value)
    return RegionTensor(2, tuple(entries))


def format_matrix(t: RegionTensor) -> str:
    if t.ndim != 2:
        raise ValueError("matrix literal is only defined for 2 axes")
    rows = t.nested()
    return ";".join(",".join(str(x) for x in row) for row in rows)


def parse_tensor_document(text: str) -> RegionTensor:
    """Parse a JSON object ``{"dims": [3, ...], "entries": [flat row-major]}``."""
    doc = json.loads(text)
    dims = doc.get("dims")
    entries = doc.get("entries")
    if not isinstance(dims, list) or not isinstance(entries, list):
        raise ValueError("tensor document needs 'dims' and 'entries' lists")
    if any(n != 3 for n in dims):
        raise ValueError("region tensors have exactly 3 slots per axis")
    return RegionTensor(len(dims), tuple(int(x) for x in entries))

"""Pure-Python search kernels (fallback for the compiled extension).

Two exhaustive nim-value searches share this module:

* ``mask_nim_search`` — removal games on a vertex set encoded as a bitmask,
  where the live condition is "no facet mask is fully selected".
* ``tensor_nim_search`` — decrement games on a vector of counts, where the
  live condition is "every face sum is positive".

Both memoize on a canonical form under a supplied permutation group and
raise :class:`CapacityError` when the memo table outgrows the state limit.
The compiled twin in ``_speedups.pyx`` mirrors the semantics exactly.
"""

from __future__ import annotations

from .errors import CapacityError

BACKEND_NAME = "pure"


def _mask_tables(num_vertices, perms):
    # Half-tables per permutation: mapping a submask through perm becomes two
    # table lookups instead of a per-bit loop.
    half = num_vertices // 2
    lo_size = 1 << half
    hi_size = 1 << (num_vertices - half)
    tables = []
    for perm in perms:
        lo = [0] * lo_size
        for m in range(1, lo_size):
            low_bit = m & -m
            lo[m] = lo[m ^ low_bit] | (1 << perm[low_bit.bit_length() - 1])
        hi = [0] * hi_size
        for m in range(1, hi_size):
            low_bit = m & -m
            hi[m] = hi[m ^ low_bit] | (1 << perm[half + low_bit.bit_length() - 1])
        tables.append((lo, hi))
    return half, (1 << half) - 1, tables


def mask_nim_search(num_vertices, facet_masks, perms, is_dnt, state_limit):
    """Nim value of the removal game starting from the empty selection.

    TER flavour (``is_dnt=False``): any unselected vertex may be selected and
    a position is terminal once some facet is fully selected.  DNT flavour:
    only selections keeping every facet incomplete are legal.
    Returns ``(nim, states_evaluated)``.
    """
    facets = tuple(facet_masks)
    if perms:
        half, lomask, tables = _mask_tables(num_vertices, perms)

        def canon(m):
            best = m
            for lo, hi in tables:
                cand = lo[m & lomask] | hi[m >> half]
                if cand < best:
                    best = cand
            return best

    else:

        def canon(m):
            return m

    memo: dict[int, int] = {}
    all_bits = (1 << num_vertices) - 1

    def live(m):
        for f in facets:
            if m & f == f:
                return False
        return True

    def nim(m):
        key = canon(m)
        val = memo.get(key)
        if val is not None:
            return val
        seen = 0
        if is_dnt:
            free = all_bits & ~m
            while free:
                bit = free & -free
                free ^= bit
                child = m | bit
                if live(child):
                    seen |= 1 << nim(child)
        else:
            if live(m):
                free = all_bits & ~m
                while free:
                    bit = free & -free
                    free ^= bit
                    child = m | bit
                    if live(child):
                        seen |= 1 << nim(child)
                    else:
                        seen |= 1
        val = 0
        while seen & 1:
            seen >>= 1
            val += 1
        memo[key] = val
        if len(memo) > state_limit:
            raise CapacityError(len(memo), state_limit)
        return val

    return nim(0), len(memo)


def _code_weights(entries, perms):
    # Positions whose value is zero under every permutation never vary;
    # the remaining ones get mixed-radix weights sized by their orbit maximum.
    n = len(entries)
    orbit_max = [max(entries[p[i]] for p in perms) for i in range(n)]
    weights = [0] * n
    scale = 1
    for i in range(n):
        if orbit_max[i] > 0:
            weights[i] = scale
            scale *= orbit_max[i] + 1
    return weights, scale


def tensor_nim_search(entries, faces, perms, is_dnt, state_limit):
    """Nim value of the decrement game starting from ``entries``.

    ``faces`` lists, per face, the entry indices contributing to its sum.
    TER: any positive entry may be decremented; a state with a zero face sum
    is terminal.  DNT: a decrement is legal only if every face sum it touches
    stays positive.  Returns ``(nim, states_evaluated)``.
    """
    n = len(entries)
    perms = tuple(tuple(p) for p in perms) if perms else (tuple(range(n)),)
    weights, _ = _code_weights(entries, perms)
    # gather tables restricted to positions that can ever hold a nonzero value
    packed = [
        tuple((p[i], weights[i]) for i in range(n) if weights[i]) for p in perms
    ]
    faces_of = [[] for _ in range(n)]
    for f, members in enumerate(faces):
        for i in members:
            faces_of[i].append(f)
    ent = list(entries)
    fs = [sum(ent[i] for i in members) for members in faces]
    memo: dict[int, int] = {}

    def canon():
        best = None
        for pairs in packed:
            code = 0
            for src, w in pairs:
                code += ent[src] * w
            if best is None or code < best:
                best = code
        return best

    def nim():
        key = canon()
        val = memo.get(key)
        if val is not None:
            return val
        seen = 0
        if is_dnt:
            for i in range(n):
                if ent[i] == 0 or any(fs[f] < 2 for f in faces_of[i]):
                    continue
                ent[i] -= 1
                for f in faces_of[i]:
                    fs[f] -= 1
                seen |= 1 << nim()
                ent[i] += 1
                for f in faces_of[i]:
                    fs[f] += 1
        else:
            if all(s > 0 for s in fs):
                for i in range(n):
                    if ent[i] == 0:
                        continue
                    if any(fs[f] == 1 for f in faces_of[i]):
                        seen |= 1  # child is terminal, nim 0
                        continue
                    ent[i] -= 1
                    for f in faces_of[i]:
                        fs[f] -= 1
                    seen |= 1 << nim()
                    ent[i] += 1
                    for f in faces_of[i]:
                        fs[f] += 1
        val = 0
        while seen & 1:
            seen >>= 1
            val += 1
        memo[key] = val
        if len(memo) > state_limit:
            raise CapacityError(len(memo), state_limit)
        return val

    return nim(), len(memo)

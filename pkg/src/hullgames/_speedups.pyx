# distutils: language = c++
"""Compiled twin of the pure-Python search kernels in ``_kernels.py``.

Same state spaces, same canonicalization, same state accounting; only the
data layout differs (flat C arrays, integer state codes, C++ hash maps).
"""

from cython.operator cimport dereference as deref
from libcpp.unordered_map cimport unordered_map
from libcpp.vector cimport vector
from libc.stdint cimport int8_t, int64_t, uint64_t

from hullgames.errors import CapacityError, KernelUnsupported

BACKEND_NAME = "compiled"


cdef class _MaskSearch:
    cdef int n, half, nperms, nfacets, is_dnt
    cdef uint64_t lomask, all_bits
    cdef vector[uint64_t] facets
    cdef vector[vector[uint64_t]] tlo
    cdef vector[vector[uint64_t]] thi
    cdef vector[int8_t] memo
    cdef int64_t limit, states

    def __init__(self, int n, facet_masks, perms, bint is_dnt, int64_t limit):
        cdef int half = n // 2
        cdef int p, i
        cdef uint64_t m, low_bit
        self.n = n
        self.half = half
        self.lomask = (<uint64_t>1 << half) - 1
        self.all_bits = (<uint64_t>1 << n) - 1
        self.is_dnt = is_dnt
        self.limit = limit
        self.states = 0
        self.nfacets = len(facet_masks)
        for f in facet_masks:
            self.facets.push_back(<uint64_t>f)
        self.nperms = len(perms) if perms else 0
        cdef int lo_size = 1 << half
        cdef int hi_size = 1 << (n - half)
        cdef vector[uint64_t] lo, hi
        if self.nperms:
            for p in range(self.nperms):
                perm = perms[p]
                lo = vector[uint64_t](lo_size, 0)
                for i in range(1, lo_size):
                    low_bit = <uint64_t>(i & -i)
                    lo[i] = lo[i ^ <int>low_bit] | (<uint64_t>1 << <int>perm[_bit_index(low_bit)])
                self.tlo.push_back(lo)
                hi = vector[uint64_t](hi_size, 0)
                for i in range(1, hi_size):
                    low_bit = <uint64_t>(i & -i)
                    hi[i] = hi[i ^ <int>low_bit] | (<uint64_t>1 << <int>perm[half + _bit_index(low_bit)])
                self.thi.push_back(hi)
        self.memo = vector[int8_t](<size_t>1 << n, -1)

    cdef inline uint64_t canon(self, uint64_t m):
        cdef uint64_t best = m, cand
        cdef int p
        if self.nperms == 0:
            return m
        for p in range(self.nperms):
            cand = self.tlo[p][m & self.lomask] | self.thi[p][m >> self.half]
            if cand < best:
                best = cand
        return best

    cdef inline bint live(self, uint64_t m):
        cdef int f
        for f in range(self.nfacets):
            if (m & self.facets[f]) == self.facets[f]:
                return False
        return True

    cdef int nim(self, uint64_t m) except -9:
        cdef uint64_t key = self.canon(m)
        cdef int8_t cached = self.memo[key]
        if cached >= 0:
            return cached
        cdef uint64_t seen = 0, free_bits, bit, child
        cdef int val, child_val
        if self.is_dnt:
            free_bits = self.all_bits & ~m
            while free_bits:
                bit = free_bits & (~free_bits + 1)
                free_bits ^= bit
                child = m | bit
                if self.live(child):
                    child_val = self.nim(child)
                    if child_val > 62:
                        raise KernelUnsupported("nim value too large for kernel")
                    seen |= <uint64_t>1 << child_val
        else:
            if self.live(m):
                free_bits = self.all_bits & ~m
                while free_bits:
                    bit = free_bits & (~free_bits + 1)
                    free_bits ^= bit
                    child = m | bit
                    if self.live(child):
                        child_val = self.nim(child)
                        if child_val > 62:
                            raise KernelUnsupported("nim value too large for kernel")
                        seen |= <uint64_t>1 << child_val
                    else:
                        seen |= 1
        val = 0
        while seen & 1:
            seen >>= 1
            val += 1
        self.memo[key] = <int8_t>val
        self.states += 1
        if self.states > self.limit:
            raise CapacityError(self.states, self.limit)
        return val


cdef inline int _bit_index(uint64_t bit):
    cdef int i = 0
    while bit > 1:
        bit >>= 1
        i += 1
    return i


def mask_nim_search(num_vertices, facet_masks, perms, is_dnt, state_limit):
    if num_vertices > 24:
        raise KernelUnsupported("mask kernel supports at most 24 vertices")
    cdef _MaskSearch s = _MaskSearch(
        num_vertices, facet_masks, list(perms) if perms else [], is_dnt, state_limit
    )
    cdef int value = s.nim(0)
    return value, s.states


cdef class _TensorSearch:
    cdef int n, nperms, nactive, is_dnt
    cdef vector[int] ent
    cdef vector[int64_t] fs
    cdef vector[int] face_off
    cdef vector[int] face_flat
    cdef vector[int] gather_src   # nperms x nactive source indices
    cdef vector[int64_t] gather_w  # matching mixed-radix weights
    cdef unordered_map[int64_t, int] memo
    cdef int64_t limit, states

    def __init__(self, entries, faces, perms, bint is_dnt, int64_t limit):
        cdef int n = len(entries)
        cdef int i, f
        self.n = n
        self.is_dnt = is_dnt
        self.limit = limit
        self.states = 0
        for i in range(n):
            self.ent.push_back(<int>entries[i])
        if not perms:
            perms = [tuple(range(n))]
        self.nperms = len(perms)
        # mixed-radix weights over positions that can ever hold a nonzero value
        orbit_max = [max(entries[p[i]] for p in perms) for i in range(n)]
        weights_py = [0] * n
        scale = 1
        for i in range(n):
            if orbit_max[i] > 0:
                weights_py[i] = scale
                scale *= orbit_max[i] + 1
        if scale >= (1 << 62):
            raise KernelUnsupported("state code does not fit in 64 bits")
        active = [i for i in range(n) if weights_py[i]]
        self.nactive = len(active)
        for p in perms:
            for i in active:
                self.gather_src.push_back(<int>p[i])
                self.gather_w.push_back(<int64_t>weights_py[i])
        # CSR layout of face membership per entry
        faces_of = [[] for _ in range(n)]
        for f, members in enumerate(faces):
            total = 0
            for i in members:
                faces_of[i].append(f)
                total += entries[i]
            self.fs.push_back(<int64_t>total)
        off = 0
        for i in range(n):
            self.face_off.push_back(off)
            for f in faces_of[i]:
                self.face_flat.push_back(f)
                off += 1
        self.face_off.push_back(off)

    cdef inline int64_t canon(self):
        cdef int64_t best = -1, code
        cdef int p, i, base
        for p in range(self.nperms):
            base = p * self.nactive
            code = 0
            for i in range(self.nactive):
                code += self.ent[self.gather_src[base + i]] * self.gather_w[base + i]
            if best < 0 or code < best:
                best = code
        return best

    cdef int nim(self) except -9:
        cdef int64_t key = self.canon()
        cdef unordered_map[int64_t, int].iterator it = self.memo.find(key)
        if it != self.memo.end():
            return deref(it).second
        cdef uint64_t seen = 0
        cdef int i, j, val, child_val
        cdef bint blocked, root_live
        if self.is_dnt:
            for i in range(self.n):
                if self.ent[i] == 0:
                    continue
                blocked = False
                for j in range(self.face_off[i], self.face_off[i + 1]):
                    if self.fs[self.face_flat[j]] < 2:
                        blocked = True
                        break
                if blocked:
                    continue
                self._apply(i)
                child_val = self.nim()
                self._undo(i)
                if child_val > 62:
                    raise KernelUnsupported("nim value too large for kernel")
                seen |= <uint64_t>1 << child_val
        else:
            root_live = True
            for j in range(<int>self.fs.size()):
                if self.fs[j] == 0:
                    root_live = False
                    break
            if root_live:
                for i in range(self.n):
                    if self.ent[i] == 0:
                        continue
                    blocked = False
                    for j in range(self.face_off[i], self.face_off[i + 1]):
                        if self.fs[self.face_flat[j]] == 1:
                            blocked = True
                            break
                    if blocked:
                        seen |= 1  # child is terminal, nim 0
                        continue
                    self._apply(i)
                    child_val = self.nim()
                    self._undo(i)
                    if child_val > 62:
                        raise KernelUnsupported("nim value too large for kernel")
                    seen |= <uint64_t>1 << child_val
        val = 0
        while seen & 1:
            seen >>= 1
            val += 1
        self.memo[key] = val
        self.states += 1
        if self.states > self.limit:
            raise CapacityError(self.states, self.limit)
        return val

    cdef inline void _apply(self, int i):
        cdef int j
        self.ent[i] -= 1
        for j in range(self.face_off[i], self.face_off[i + 1]):
            self.fs[self.face_flat[j]] -= 1

    cdef inline void _undo(self, int i):
        cdef int j
        self.ent[i] += 1
        for j in range(self.face_off[i], self.face_off[i + 1]):
            self.fs[self.face_flat[j]] += 1


def tensor_nim_search(entries, faces, perms, is_dnt, state_limit):
    cdef _TensorSearch s = _TensorSearch(
        entries, faces, list(perms) if perms else [], is_dnt, state_limit
    )
    cdef int value = s.nim()
    return value, s.states

# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled checking kernels on packed uint64 bitsets.

Mirrors ``_pycore``: same entry points, same variant codes, same results.
"""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint64_t, int32_t

cnp.import_array()

BACKEND = "cython"

cdef extern from *:
    int popcount "__builtin_popcountll"(unsigned long long) nogil

cdef int[4] DOM_REQ
DOM_REQ[0] = 1
DOM_REQ[1] = 2
DOM_REQ[2] = 2
DOM_REQ[3] = 3


cdef inline int imax(int a, int b) nogil:
    return a if a > b else b


cdef inline int imin(int a, int b) nogil:
    return a if a < b else b


def _pack(mask, int words):
    cdef cnp.ndarray[cnp.uint64_t, ndim=1] out = np.zeros(words, dtype=np.uint64)
    cdef int i
    m = int(mask)
    for i in range(words):
        out[i] = m & 0xFFFFFFFFFFFFFFFF
        m >>= 64
    return out


cdef class Handle:
    cdef public int n, words
    cdef uint64_t[:, ::1] nbr
    cdef uint64_t[:, ::1] closed
    cdef int32_t[:, ::1] pairs
    cdef int npairs
    cdef object _diffs
    cdef uint64_t[::1] sbuf

    def __init__(self, int n, masks, closed, pairs):
        self.n = n
        self.words = max(1, (n + 63) // 64)
        nb = np.zeros((max(n, 1), self.words), dtype=np.uint64)
        cl = np.zeros((max(n, 1), self.words), dtype=np.uint64)
        for v in range(n):
            nb[v] = _pack(masks[v], self.words)
            cl[v] = _pack(closed[v], self.words)
        self.nbr = nb
        self.closed = cl
        arr = np.array(pairs, dtype=np.int32).reshape(-1, 2)
        self.pairs = np.ascontiguousarray(arr)
        self.npairs = arr.shape[0]
        self._diffs = None
        self.sbuf = np.zeros(self.words, dtype=np.uint64)

    cdef void load(self, s):
        cdef int i
        if self.words == 1:
            self.sbuf[0] = <uint64_t>(s & 0xFFFFFFFFFFFFFFFF)
            return
        m = int(s)
        for i in range(self.words):
            self.sbuf[i] = <uint64_t>(m & 0xFFFFFFFFFFFFFFFF)
            m >>= 64

    cdef inline int has(self, int v) nogil:
        return <int>((self.sbuf[v >> 6] >> (v & 63)) & 1)

    cdef int dom_def(self, int variant, int v) nogil:
        cdef int i, c = 0, o = 0
        for i in range(self.words):
            c += popcount(self.closed[v, i] & self.sbuf[i])
            o += popcount(self.nbr[v, i] & self.sbuf[i])
        if variant == 0:
            return 0 if self.has(v) else imax(0, 1 - o)
        return imax(0, DOM_REQ[variant] - c)

    cdef int pair_def(self, int variant, int u, int v) nogil:
        cdef int su = self.has(u), sv = self.has(v), t, i
        cdef int sym = 0, a_minus_b = 0, b_minus_a = 0
        cdef uint64_t A, B, x, bu, bv
        if sv and not su:
            t = u; u = v; v = t
            su = 1; sv = 0
        # mixed pairs have the detector at u
        for i in range(self.words):
            A = self.nbr[u, i] & self.sbuf[i]
            B = self.nbr[v, i] & self.sbuf[i]
            x = A ^ B
            bu = (<uint64_t>1 << (u & 63)) if (u >> 6) == i else 0
            bv = (<uint64_t>1 << (v & 63)) if (v >> 6) == i else 0
            if variant == 3:
                if su and sv:
                    sym += popcount(x & ~(bu | bv))
                elif su:
                    sym += popcount(x & ~bu)
                else:
                    sym += popcount(x)
            elif variant == 2:
                sym += popcount(x)
                a_minus_b += popcount(A & ~B)
                b_minus_a += popcount(B & ~A)
            elif variant == 1:
                if su:
                    sym += popcount(x & ~bu)
                else:
                    sym += popcount(x)
            else:
                sym += popcount(x)
        if variant == 3:
            if su and sv:
                return imax(0, 1 - sym)
            if su:
                return imax(0, 2 - sym)
            return imax(0, 3 - sym)
        if variant == 2:
            if su and sv:
                return imax(0, 1 - sym)
            if su:
                if b_minus_a >= 2 or a_minus_b >= 1:
                    return 0
                return imin(2 - b_minus_a, 1 - a_minus_b)
            if a_minus_b >= 2 or b_minus_a >= 2:
                return 0
            return imin(2 - a_minus_b, 2 - b_minus_a)
        if variant == 1:
            if su and sv:
                return 0
            if su:
                return imax(0, 1 - sym)
            return imax(0, 2 - sym)
        if su or sv:
            return 0
        return imax(0, 1 - sym)

    def find_violation(self, s, int variant):
        cdef int v, k
        self.load(s)
        for v in range(self.n):
            if self.dom_def(variant, v):
                return (v, -1)
        for k in range(self.npairs):
            if self.pair_def(variant, self.pairs[k, 0], self.pairs[k, 1]):
                return (int(self.pairs[k, 0]), int(self.pairs[k, 1]))
        return None

    def deficit_score(self, s, int variant):
        cdef int v, k
        cdef long total = 0
        self.load(s)
        for v in range(self.n):
            total += self.dom_def(variant, v)
        for k in range(self.npairs):
            total += self.pair_def(variant, self.pairs[k, 0], self.pairs[k, 1])
        return total

    cdef _build_diffs(self):
        cdef int n = self.n, p, q, i, r = 0
        cdef int count = n + n * (n - 1) // 2
        d = np.zeros((max(count, 1), self.words), dtype=np.uint64)
        cdef uint64_t[:, ::1] dv = d
        for p in range(n):
            for i in range(self.words):
                dv[r, i] = self.closed[p, i]
            r += 1
            for q in range(p + 1, n):
                for i in range(self.words):
                    dv[r, i] = self.nbr[p, i] ^ self.nbr[q, i]
                dv[r, p >> 6] |= (<uint64_t>1 << (p & 63))
                dv[r, q >> 6] |= (<uint64_t>1 << (q & 63))
                r += 1
        self._diffs = d

    def code_distance(self, s):
        cdef int r, i, k, best = -1, count
        if self._diffs is None:
            self._build_diffs()
        cdef uint64_t[:, ::1] dv = self._diffs
        count = self.n + self.n * (self.n - 1) // 2
        self.load(s)
        for r in range(count):
            k = 0
            for i in range(self.words):
                k += popcount(dv[r, i] & self.sbuf[i])
            if best < 0 or k < best:
                best = k
                if k == 0:
                    break
        return best if best >= 0 else 0


def prepare(int n, masks, closed, pairs):
    return Handle(n, masks, closed, pairs)


def find_violation(Handle h, s, int variant):
    return h.find_violation(s, variant)


def deficit_score(Handle h, s, int variant):
    return h.deficit_score(s, variant)


def code_distance(Handle h, s):
    return h.code_distance(s)

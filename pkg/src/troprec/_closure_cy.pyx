# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled lexicographic shortest-path closure; mirror of _closure_py.py.

All bounds handled here are integers small enough for int64 (callers scale
rationals before reaching the kernel), so the arithmetic compiles to plain
C long long operations.
"""

from cpython.array cimport array
import array as _array

BIG = 1 << 62

cdef long long C_BIG = 1 << 62


cdef class Closure:
    cdef public int n
    cdef array _dc
    cdef array _dt

    def __init__(self, int n):
        self.n = n
        self._dc = _array.array("q", bytes(8 * n * n))
        self._dt = _array.array("q", bytes(8 * n * n))
        cdef long long[:] dc = self._dc
        cdef int i
        for i in range(n * n):
            dc[i] = C_BIG
        for i in range(n):
            dc[i * n + i] = 0

    def add(self, int u, int v, long long c, bint strict):
        cdef long long[:] dc = self._dc
        cdef long long[:] dt = self._dt
        cdef int n = self.n
        cdef long long st = 1 if strict else 0
        cdef long long rc = dc[v * n + u]
        cdef long long total, cur, ciu, bc, bt, cvj, nc, oc, nt
        cdef int i, j, row_i, row_v
        if rc < C_BIG:
            total = rc + c
            if total < 0 or (total == 0 and dt[v * n + u] + st > 0):
                return False
        cur = dc[u * n + v]
        if cur < C_BIG and (cur < c or (cur == c and dt[u * n + v] >= st)):
            return True
        row_v = v * n
        for i in range(n):
            ciu = dc[i * n + u]
            if ciu >= C_BIG:
                continue
            bc = ciu + c
            bt = dt[i * n + u] + st
            row_i = i * n
            for j in range(n):
                cvj = dc[row_v + j]
                if cvj >= C_BIG:
                    continue
                nc = bc + cvj
                oc = dc[row_i + j]
                if nc < oc:
                    dc[row_i + j] = nc
                    dt[row_i + j] = bt + dt[row_v + j]
                else:
                    nt = bt + dt[row_v + j]
                    if nc == oc and nt > dt[row_i + j]:
                        dt[row_i + j] = nt
        return True

    def snapshot(self):
        return (bytes(self._dc), bytes(self._dt))

    def restore(self, snap):
        cdef array ndc = _array.array("q")
        cdef array ndt = _array.array("q")
        ndc.frombytes(snap[0])
        ndt.frombytes(snap[1])
        self._dc = ndc
        self._dt = ndt

    def dist(self, int i, int j):
        cdef long long c = self._dc[i * self.n + j]
        if c >= C_BIG:
            return None
        return (c, self._dt[i * self.n + j])

    def equal_pairs(self):
        cdef long long[:] dc = self._dc
        cdef int n = self.n
        cdef int i, j
        cdef long long a, b
        out = []
        for i in range(n):
            for j in range(i + 1, n):
                a = dc[i * n + j]
                if a >= C_BIG:
                    continue
                b = dc[j * n + i]
                if b < C_BIG and a + b == 0:
                    out.append((i, j))
        return out

    def potentials(self):
        cdef long long[:] dc = self._dc
        cdef long long[:] dt = self._dt
        cdef int n = self.n
        cdef int i, j, row
        cdef long long bc, bt, c, t
        out = []
        for i in range(n):
            bc = 0
            bt = 0
            row = i * n
            for j in range(n):
                c = dc[row + j]
                if c >= C_BIG:
                    continue
                t = dt[row + j]
                if c < bc or (c == bc and t > bt):
                    bc = c
                    bt = t
            out.append((bc, bt))
        return out

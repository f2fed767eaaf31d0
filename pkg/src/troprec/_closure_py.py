"""Pure-Python lexicographic shortest-path closure over difference constraints.

Mirrors the compiled kernel in _closure_cy.pyx; keep the two in sync.  Arc
weights are pairs (c, t) where c is an integer bound and t counts strict
inequalities on the path.  (c1, t1) is tighter than (c2, t2) when c1 < c2, or
c1 == c2 with t1 > t2.  A system is infeasible exactly when some cycle has
weight below (0, 0) in this order.
"""

BIG = 1 << 62


class Closure:
    __slots__ = ("n", "dc", "dt")

    def __init__(self, n):
        self.n = n
        self.dc = [BIG] * (n * n)
        self.dt = [0] * (n * n)
        for i in range(n):
            self.dc[i * n + i] = 0

    def add(self, u, v, c, strict):
        """Impose y_u - y_v <= c (strict: < c); u, v are 0-based.

        Returns False and leaves the state untouched when the new arc would
        close a negative cycle; otherwise updates the closure and returns True.
        """
        n = self.n
        dc = self.dc
        dt = self.dt
        st = 1 if strict else 0
        rc = dc[v * n + u]
        if rc < BIG:
            total = rc + c
            if total < 0 or (total == 0 and dt[v * n + u] + st > 0):
                return False
        cur = dc[u * n + v]
        if cur < BIG and (cur < c or (cur == c and dt[u * n + v] >= st)):
            return True
        row_v = v * n
        for i in range(n):
            ciu = dc[i * n + u]
            if ciu >= BIG:
                continue
            bc = ciu + c
            bt = dt[i * n + u] + st
            row_i = i * n
            for j in range(n):
                cvj = dc[row_v + j]
                if cvj >= BIG:
                    continue
                nc = bc + cvj
                oc = dc[row_i + j]
                if nc < oc:
                    dc[row_i + j] = nc
                    dt[row_i + j] = bt + dt[row_v + j]
                elif nc == oc and bt + dt[row_v + j] > dt[row_i + j]:
                    dt[row_i + j] = bt + dt[row_v + j]
        return True

    def snapshot(self):
        return (self.dc[:], self.dt[:])

    def restore(self, snap):
        self.dc[:] = snap[0]
        self.dt[:] = snap[1]

    def dist(self, i, j):
        c = self.dc[i * self.n + j]
        if c >= BIG:
            return None
        return (c, self.dt[i * self.n + j])

    def equal_pairs(self):
        """Pairs (i, j), i < j, forced equal (zero-weight cycle of non-strict arcs)."""
        n = self.n
        dc = self.dc
        out = []
        for i in range(n):
            for j in range(i + 1, n):
                a = dc[i * n + j]
                if a >= BIG:
                    continue
                b = dc[j * n + i]
                if b < BIG and a + b == 0:
                    out.append((i, j))
        return out

    def potentials(self):
        """Per-node lexicographic row minima against (0, 0); basis for witnesses."""
        n = self.n
        dc = self.dc
        dt = self.dt
        out = []
        for i in range(n):
            bc, bt = 0, 0
            row = i * n
            for j in range(n):
                c = dc[row + j]
                if c >= BIG:
                    continue
                t = dt[row + j]
                if c < bc or (c == bc and t > bt):
                    bc, bt = c, t
            out.append((bc, bt))
        return out

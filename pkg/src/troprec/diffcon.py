"""Exact feasibility, dimension, and witnesses for difference constraints.

Every cell met in this package (window attainment patterns, vertex polyhedra,
path polyhedra) is a system of constraints y_u - y_v {=, <=, <} c.  Strictness
is tracked through lexicographic arc weights instead of epsilon perturbation,
so all answers are exact.  The hot closure loops live in the kernel selected
by _closure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from ._closure import Closure

EQ = "EQ"
LE = "LE"
LT = "LT"


class InfeasibleSystemError(ValueError):
    """Raised when a dimension or witness is requested for an empty system."""


@dataclass(frozen=True)
class DifferenceConstraint:
    """y_u - y_v  (kind)  bound, with 1-based coordinates."""

    u: int
    v: int
    bound: Fraction
    kind: str

    def __post_init__(self):
        if self.u == self.v:
            raise ValueError("constraint needs two distinct coordinates")
        if self.kind not in (EQ, LE, LT):
            raise ValueError("bad constraint kind %r" % self.kind)

    def holds(self, y) -> bool:
        d = y[self.u - 1] - y[self.v - 1]
        if self.kind == EQ:
            return d == self.bound
        if self.kind == LE:
            return d <= self.bound
        return d < self.bound


@dataclass(frozen=True)
class ConstraintSystem:
    dim: int
    constraints: tuple

    def __post_init__(self):
        for c in self.constraints:
            if not (1 <= c.u <= self.dim and 1 <= c.v <= self.dim):
                raise ValueError("constraint indices out of range 1..%d" % self.dim)

    def to_json(self):
        return [[c.u, c.v, str(Fraction(c.bound)), c.kind] for c in self.constraints]


def constraint(u: int, v: int, bound, kind: str) -> DifferenceConstraint:
    return DifferenceConstraint(u, v, Fraction(bound), kind)


class DisjointSets:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra

    def count(self):
        return sum(1 for i, p in enumerate(self.parent) if self.find(i) == i)


class IncrementalSystem:
    """Closure-backed engine over integer bounds with snapshot/rollback.

    Coordinates are 1-based.  A failed assume_* leaves the state unchanged, so
    depth-first searches only need snapshots around successful additions.
    """

    def __init__(self, dim: int):
        self.dim = dim
        self._m = Closure(dim)

    def assume_le(self, u: int, v: int, c: int, strict: bool = False) -> bool:
        return self._m.add(u - 1, v - 1, c, strict)

    def assume_eq(self, u: int, v: int, c: int) -> bool:
        if not self._m.add(u - 1, v - 1, c, False):
            return False
        return self._m.add(v - 1, u - 1, -c, False)

    def snapshot(self):
        return self._m.snapshot()

    def restore(self, snap):
        self._m.restore(snap)

    def n_classes(self) -> int:
        sets = DisjointSets(self.dim)
        for i, j in self._m.equal_pairs():
            sets.union(i, j)
        return sets.count()

    def witness(self) -> list:
        """An exact interior point; strict constraints hold with slack."""
        eps = Fraction(1, 2 * max(self.dim, 1))
        return [Fraction(c) - t * eps for c, t in self._m.potentials()]

    def dist(self, u: int, v: int):
        return self._m.dist(u - 1, v - 1)


def _scaled_engine(sys: ConstraintSystem):
    """Load a rational-bound system into an integer engine; returns (engine, scale, ok)."""
    scale = 1
    for c in sys.constraints:
        scale = math.lcm(scale, Fraction(c.bound).denominator)
    eng = IncrementalSystem(sys.dim)
    for c in sys.constraints:
        b = int(Fraction(c.bound) * scale)
        if c.kind == EQ:
            ok = eng.assume_eq(c.u, c.v, b)
        else:
            ok = eng.assume_le(c.u, c.v, b, strict=(c.kind == LT))
        if not ok:
            return eng, scale, False
    return eng, scale, True


def feasible(sys: ConstraintSystem) -> bool:
    _, _, ok = _scaled_engine(sys)
    return ok


def dimension(sys: ConstraintSystem) -> int:
    """Dimension of the relatively open feasible set (count of forced-equality classes)."""
    eng, _, ok = _scaled_engine(sys)
    if not ok:
        raise InfeasibleSystemError("system is infeasible")
    return eng.n_classes()


def witness(sys: ConstraintSystem):
    eng, scale, ok = _scaled_engine(sys)
    if not ok:
        raise InfeasibleSystemError("cannot produce a witness of an infeasible system")
    point = tuple(w / scale for w in eng.witness())
    for c in sys.constraints:
        if not c.holds(point):
            raise AssertionError(
                "witness failed re-validation on %s (internal bug)" % (c,)
            )
    return point

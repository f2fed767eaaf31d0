"""Ground-truth dimensions by exhaustive enumeration of attainment patterns.

A length-s solution set splits into disjoint relatively open cells: pick, for
every window, the exact set of support positions where the window minimum is
attained (at least two of them), turn those picks into equalities and strict
inequalities, and keep the feasible systems.  The dimension of the solution
set is the maximum cell dimension.  This is exponential in the number of
windows and serves as the independent check on the graph pipeline, not as the
scalable path.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .core import BudgetExceeded, CoefficientVector
from .diffcon import EQ, LT, ConstraintSystem, DifferenceConstraint, IncrementalSystem

DEFAULT_BUDGET = 10**7


def _node_budget(budget):
    if budget is not None:
        return budget
    env = os.environ.get("TROP_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


@dataclass(frozen=True)
class Cell:
    """One feasible attainment pattern with its constraint system.

    dim is the affine dimension of the relatively open cell (the simultaneous
    translations y -> y + c contribute 1 to it for every cell).
    """

    pattern: tuple
    system: ConstraintSystem
    dim: int
    witness: tuple


def _window_subsets(support):
    subs = []
    for size in range(2, len(support) + 1):
        subs.extend(combinations(support, size))
    return subs


class _Search:
    def __init__(self, a: CoefficientVector, s: int, budget):
        self.a = a
        self.s = s
        self.windows = s - a.n
        self.eng = IncrementalSystem(s)
        self.subsets = _window_subsets(a.support)
        self.budget = _node_budget(budget)
        self.nodes = 0

    def tick(self):
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceeded(
                "pattern search exceeded budget of %d nodes" % self.budget, self.nodes
            )

    def try_window(self, j, chosen):
        """Impose window j's constraints for attainment set `chosen`.

        Returns (ok, constraints_added); on ok=False the engine state is the
        caller's snapshot responsibility.
        """
        a = self.a.entries
        base = j + 1
        i0 = chosen[0]
        cons = []
        for i in chosen[1:]:
            if not self.eng.assume_eq(base + i, base + i0, a[i0] - a[i]):
                return False, cons
            cons.append(
                DifferenceConstraint(base + i, base + i0, Fraction(a[i0] - a[i]), EQ)
            )
        pick = set(chosen)
        for i in self.a.support:
            if i in pick:
                continue
            if not self.eng.assume_le(base + i0, base + i, a[i] - a[i0], strict=True):
                return False, cons
            cons.append(
                DifferenceConstraint(base + i0, base + i, Fraction(a[i] - a[i0]), LT)
            )
        return True, cons


def enumerate_cells(a: CoefficientVector, s: int, budget=None):
    """Yield every feasible cell of the length-s solution set exactly once."""
    if s < a.n + 1:
        raise ValueError("need s >= n+1 = %d, got s = %d" % (a.n + 1, s))
    search = _Search(a, s, budget)
    pattern = []
    trail = []

    def rec(j):
        if j == search.windows:
            eng = search.eng
            flat = tuple(c for cons in trail for c in cons)
            yield Cell(
                pattern=tuple(pattern),
                system=ConstraintSystem(s, flat),
                dim=eng.n_classes(),
                witness=tuple(eng.witness()),
            )
            return
        for chosen in search.subsets:
            search.tick()
            snap = search.eng.snapshot()
            ok, cons = search.try_window(j, chosen)
            if ok:
                pattern.append(chosen)
                trail.append(cons)
                yield from rec(j + 1)
                pattern.pop()
                trail.pop()
            search.eng.restore(snap)

    yield from rec(0)


def max_cell_dimension(a: CoefficientVector, s: int, budget=None) -> int:
    """Largest affine cell dimension at length s (pruned search)."""
    if s < a.n + 1:
        raise ValueError("need s >= n+1 = %d, got s = %d" % (a.n + 1, s))
    search = _Search(a, s, budget)
    best = 0

    def rec(j):
        nonlocal best
        if search.eng.n_classes() <= best:
            return
        if j == search.windows:
            best = search.eng.n_classes()
            return
        for chosen in search.subsets:
            search.tick()
            snap = search.eng.snapshot()
            ok, _ = search.try_window(j, chosen)
            if ok:
                rec(j + 1)
            search.eng.restore(snap)

    rec(0)
    return best


def hilbert_oracle(a: CoefficientVector, s: int, budget=None) -> int:
    """d(s): dimension of the solution complex, reported modulo the
    1-parameter family of simultaneous translations y -> y + c.

    For s <= n there are no windows and the convention d(s) = s applies.
    """
    if s <= a.n:
        if s < 1:
            raise ValueError("sequence length must be positive")
        return s
    return max_cell_dimension(a, s, budget) - 1


def fekete_entropy_estimate(a: CoefficientVector, s_max: int, budget=None):
    """Empirical bracket [lower, upper] for the entropy from oracle samples.

    Subadditivity of d gives H = inf d(s)/s, hence the upper bound.  The lower
    bound takes, for each step width k, the worst forward slope over the
    sample and keeps the best of those.  Widths are capped at half the
    constrained range so every width sees at least k base points: a width
    sampled at just one or two lengths can sit above the true slope (its
    window may never touch the slow phase of the d table), inverting the
    bracket.  On samples covering a full period the floor reaches H exactly.

    The upper bound is a theorem for every sampled s.  The floor is only an
    estimate: when the whole table stops before the slow phase first appears
    it sits strictly above H, and no sample depth short of a full period can
    rule that out.  Callers comparing against an exact H should treat a
    violated ceiling as an error and a violated floor as a shallow table.
    """
    if s_max < a.n + 2:
        raise ValueError("need s_max >= n+2")
    table = {}
    for s in range(a.n + 1, s_max + 1):
        table[s] = hilbert_oracle(a, s, budget)
    upper = min(Fraction(table[s], s) for s in table)
    lower = Fraction(0)
    for k in range(1, (s_max - a.n) // 2 + 1):
        slopes = [
            Fraction(table[s] - table[s - k], k)
            for s in range(a.n + 1 + k, s_max + 1)
        ]
        if slopes:
            lower = max(lower, min(slopes))
    return (lower, upper)

"""Coefficient vectors, Newton polygons, and the tropical recurrence test.

A vector a = (a_0, ..., a_n) with entries in Z or infinity puts a condition on
a finite sequence y_1, ..., y_s: inside every window of n+1 consecutive values
the minimum of y_{j+i} + a_i must be attained at least twice.  This module
holds the vector bookkeeping shared by the enumeration oracle and the
transition-graph pipeline.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

INF = float("inf")


class VectorError(ValueError):
    """A malformed coefficient vector (bad token, or fewer than two finite entries)."""


class BudgetExceeded(RuntimeError):
    """A search or build ran past its node budget."""

    def __init__(self, message: str, visited: int):
        super().__init__(message)
        self.visited = visited


def is_finite(x) -> bool:
    return x != INF


def _parse_entry(token: str):
    token = token.strip()
    if token.lower() in ("inf", "infinity", "oo"):
        return INF
    try:
        return int(token)
    except ValueError:
        raise VectorError("bad vector entry %r (expected integer or 'inf')" % token)


def parse_vector(text: str) -> "CoefficientVector":
    """Parse a comma-separated vector string such as '0,1,0' or '0,inf,0'."""
    tokens = [t for t in text.split(",") if t.strip()]
    if len(tokens) < 2:
        raise VectorError("vector needs at least two entries, got %r" % text)
    return CoefficientVector(tuple(_parse_entry(t) for t in tokens))


def parse_sequence(text: str) -> tuple[Fraction, ...]:
    """Parse a comma-separated sequence of rationals, e.g. '0,1/2,-3'."""
    values = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        try:
            values.append(Fraction(token))
        except (ValueError, ZeroDivisionError):
            raise VectorError("bad sequence entry %r" % token)
    return tuple(values)


@dataclass(frozen=True)
class CoefficientVector:
    """An integer-or-infinity coefficient vector a_0, ..., a_n."""

    entries: tuple

    def __post_init__(self):
        if len(self.entries) < 2:
            raise VectorError("vector needs at least two entries")
        for e in self.entries:
            if e != INF and not isinstance(e, int):
                raise VectorError("entries must be integers or infinity, got %r" % (e,))
        if len(self.support) < 2:
            # With fewer than two finite coefficients no window minimum can be
            # attained twice, so no sequence satisfies the vector at all.
            raise VectorError("vector needs at least two finite entries")

    @property
    def n(self) -> int:
        return len(self.entries) - 1

    @property
    def support(self) -> tuple:
        """Indices i with a_i finite."""
        return tuple(i for i, e in enumerate(self.entries) if e != INF)

    @property
    def amplitude(self) -> int:
        finite = [e for e in self.entries if e != INF]
        return max(finite) - min(finite)

    @property
    def working_amplitude(self) -> int:
        """Amplitude floored at 1; the M used throughout the graph construction."""
        return max(1, self.amplitude)

    @property
    def all_finite(self) -> bool:
        return all(e != INF for e in self.entries)

    @property
    def is_boolean(self) -> bool:
        """True for vectors with entries in {0, inf} and finite first and last entry."""
        return (
            all(e == 0 or e == INF for e in self.entries)
            and self.entries[0] == 0
            and self.entries[-1] == 0
        )

    def normalized(self) -> "CoefficientVector":
        """The same vector with min finite entry shifted to 0 (satisfaction-invariant)."""
        low = min(e for e in self.entries if e != INF)
        if low == 0:
            return self
        return CoefficientVector(tuple(e - low if e != INF else INF for e in self.entries))

    def label(self) -> str:
        return ",".join("inf" if e == INF else str(e) for e in self.entries)

    def __str__(self):
        return "(%s)" % self.label()


def satisfies(a: CoefficientVector, y) -> bool:
    """Test whether every window minimum of y_{j+i} + a_i is attained twice."""
    s = len(y)
    n = a.n
    if s < n + 1:
        raise ValueError("sequence of length %d is shorter than n+1 = %d" % (s, n + 1))
    support = a.support
    for j in range(s - n):
        vals = [y[j + i] + a.entries[i] for i in support]
        low = min(vals)
        hits = 0
        for v in vals:
            if v == low:
                hits += 1
                if hits == 2:
                    break
        if hits < 2:
            return False
    return True


def window_minimum_sets(a: CoefficientVector, y) -> list:
    """For each window, the set of support indices attaining the minimum."""
    s = len(y)
    n = a.n
    out = []
    for j in range(s - n):
        vals = {i: y[j + i] + a.entries[i] for i in a.support}
        low = min(vals.values())
        out.append(frozenset(i for i, v in vals.items() if v == low))
    return out


@dataclass(frozen=True)
class NewtonPolygon:
    """Strictly convex lower hull of the finite points (i, a_i)."""

    vertices: tuple

    @property
    def edges(self) -> tuple:
        return tuple(zip(self.vertices, self.vertices[1:]))


def newton_polygon(a: CoefficientVector) -> NewtonPolygon:
    points = [(i, a.entries[i]) for i in a.support]
    hull = []
    for p in points:
        # pop the previous point while it is above or on the new supporting line
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (x2 - x1) * (p[1] - y1) - (y2 - y1) * (p[0] - x1) <= 0:
                hull.pop()
            else:
                break
        hull.append(p)
    return NewtonPolygon(tuple(hull))


def is_regular(a: CoefficientVector) -> bool:
    """Every finite point is a hull vertex and the support is an arithmetic progression."""
    hull = set(newton_polygon(a).vertices)
    if any((i, a.entries[i]) not in hull for i in a.support):
        return False
    f = a.support
    if len(f) == 2:
        return True
    step = f[1] - f[0]
    return all(f[k + 1] - f[k] == step for k in range(len(f) - 1))


def single_bounded_edge(a: CoefficientVector) -> bool:
    return len(newton_polygon(a).vertices) == 2


def classify_connected(a: CoefficientVector, z) -> list:
    """Per-coordinate connectedness of a satisfying sequence.

    A coordinate is connected when it realizes the minimum of at least one of
    the windows covering it, i.e. decreasing that coordinate alone would break
    the recurrence.  Returns a list of booleans (True = connected).
    """
    if not a.all_finite:
        raise ValueError("connectedness is defined for all-finite vectors")
    if not satisfies(a, z):
        raise ValueError("sequence does not satisfy the vector")
    s = len(z)
    n = a.n
    mins = []
    for j in range(s - n):
        mins.append(min(z[j + i] + a.entries[i] for i in range(n + 1)))
    connected = []
    for pos in range(s):
        hit = False
        for j in range(max(0, pos - n), min(s - n, pos + 1)):
            if z[pos] + a.entries[pos - j] == mins[j]:
                hit = True
                break
        connected.append(hit)
    return connected

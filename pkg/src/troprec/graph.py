"""Transition graphs whose paths generate all satisfying sequences.

A vertex describes the shape of a length-n window: which coordinates are
bounded (tied to each other by exact integer offsets or open unit bands) and
which are unbounded (only lower-bounded via the minimal coordinate).  Edges
describe the admissible continuations by one more value.  Rigid edges force
the new value; augmenting edges leave it an open interval and contribute one
dimension per use.

Two constructions are provided: the general one for all-finite integer
vectors and a simpler one for 0/infinity vectors, whose vertices are just the
weak orders of the window coordinates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product

from .core import INF, BudgetExceeded, CoefficientVector
from .diffcon import (
    EQ,
    LE,
    LT,
    ConstraintSystem,
    DifferenceConstraint,
    dimension,
)

DEFAULT_VERTEX_BUDGET = 10**7


class GraphDomainError(ValueError):
    """The requested construction does not apply to this vector."""


@dataclass(frozen=True)
class Vertex:
    """A window-shape descriptor with its polyhedron and a faithful witness.

    The witness is faithful in the sense that two bounded coordinates differ
    by an integer exactly when the descriptor ties them with an equality;
    every derivation of continuation targets reads structure off witness
    values and relies on this.
    """

    statuses: tuple  # 'B' / 'U' per coordinate 1..n
    pairs: tuple  # (k, l, 'eq'|'band', m) for bounded k < l
    s0: int
    n_of: int
    witness: tuple
    system: ConstraintSystem
    ranks: tuple = None  # weak-order form, boolean graphs only

    @property
    def key(self):
        return (self.statuses, self.pairs)

    def summary(self) -> str:
        if self.ranks is not None:
            return "<" + ",".join(str(r) for r in self.ranks) + ">"
        parts = ["".join(self.statuses), "s0=%d" % self.s0]
        for k, l, kind, m in self.pairs:
            op = "=" if kind == "eq" else "~"
            parts.append("y%d%sy%d%+d" % (k, op, l, m))
        return " ".join(parts)


@dataclass(frozen=True)
class Edge:
    src: int
    dst: int
    kind: str  # 'rigid' | 'augmenting'
    tag: str
    exact: tuple = None  # (source coord r, offset c): value is point[r-1] + c
    lo: tuple = None  # open lower anchor for augmenting edges
    hi: tuple = None  # open upper anchor; None means a ray

    @property
    def pins_dropped_coordinate(self) -> bool:
        """True when the forced value references the coordinate the window drops.

        Such equalities are invisible to the target polyhedron and must be
        added explicitly when assembling path systems.
        """
        return self.exact is not None and self.exact[0] == 1


class RecurrenceGraph:
    def __init__(self, kind, a, m, vertices, edges, diagnostics=None):
        self.kind = kind
        self.a = a
        self.m = m
        self.vertices = vertices
        self.edges = edges  # list of per-source edge lists
        self.index = {v.key: i for i, v in enumerate(vertices)}
        self.diagnostics = diagnostics or {}

    @property
    def n(self):
        return self.a.n

    @property
    def vertex_count(self):
        return len(self.vertices)

    @property
    def edge_count(self):
        return sum(len(es) for es in self.edges)

    def edge_list(self):
        for es in self.edges:
            yield from es

    def find_edge(self, src, dst):
        for e in self.edges[src]:
            if e.dst == dst:
                return e
        return None

    def transpose(self):
        incoming = [[] for _ in self.vertices]
        for e in self.edge_list():
            incoming[e.dst].append(e)
        return incoming

    def to_dot(self) -> str:
        lines = ["digraph recurrence {"]
        lines.append('  label="a=%s kind=%s";' % (self.a.label(), self.kind))
        for i, v in enumerate(self.vertices):
            lines.append('  v%d [label="v%d %s n=%d"];' % (i, i, v.summary(), v.n_of))
        for e in self.edge_list():
            color = "red" if e.kind == "augmenting" else "black"
            lines.append(
                '  v%d -> v%d [color=%s, label="%s"];' % (e.src, e.dst, color, e.tag)
            )
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        verts = []
        for i, v in enumerate(self.vertices):
            entry = {"id": i, "n": v.n_of, "summary": v.summary()}
            if v.ranks is not None:
                entry["ranks"] = list(v.ranks)
            else:
                entry["statuses"] = "".join(v.statuses)
                entry["s0"] = v.s0
                entry["pairs"] = [[k, l, kind, m] for k, l, kind, m in v.pairs]
            verts.append(entry)
        edges = [
            {"src": e.src, "dst": e.dst, "kind": e.kind, "tag": e.tag}
            for e in self.edge_list()
        ]
        return {
            "vector": self.a.label(),
            "kind": self.kind,
            "M": self.m,
            "V": self.vertex_count,
            "E": self.edge_count,
            "rigid": sum(1 for e in self.edge_list() if e.kind == "rigid"),
            "augmenting": sum(1 for e in self.edge_list() if e.kind == "augmenting"),
            "vertices": verts,
            "edges": edges,
        }


def _int_or_none(x: Fraction):
    return int(x) if x.denominator == 1 else None


def _read_off(values, statuses, n, m_amp):
    """Derive canonical descriptor data from faithful witness values."""
    bounded = [i + 1 for i, st in enumerate(statuses) if st == "B"]
    pairs = []
    guard = 10 * n * m_amp + 10
    for k, l in combinations(bounded, 2):
        delta = values[k - 1] - values[l - 1]
        e = _int_or_none(delta)
        if e is not None:
            kind, m = "eq", e
        else:
            kind, m = "band", math.ceil(delta)
        if abs(m) > guard:
            raise AssertionError(
                "pair offset %d escaped the growth guard; the reachable "
                "closure should stay within O(nM)" % m
            )
        pairs.append((k, l, kind, m))
    low = min(values[r - 1] for r in bounded)
    s0 = min(r for r in bounded if values[r - 1] == low)
    return tuple(pairs), s0


def _vertex_system(n, m_amp, statuses, pairs, s0):
    cons = []
    for k, l, kind, m in pairs:
        if kind == "eq":
            cons.append(DifferenceConstraint(k, l, Fraction(m), EQ))
        else:
            cons.append(DifferenceConstraint(k, l, Fraction(m), LT))
            cons.append(DifferenceConstraint(l, k, Fraction(1 - m), LT))
    for j in range(1, n + 1):
        if j == s0:
            continue
        cons.append(DifferenceConstraint(s0, j, Fraction(0), LE))
        if statuses[j - 1] == "U":
            cons.append(DifferenceConstraint(s0, j, Fraction(-j * m_amp), LT))
    return ConstraintSystem(n, tuple(cons))


def _classes_count(statuses, pairs):
    bounded = [i + 1 for i, st in enumerate(statuses) if st == "B"]
    parent = {r: r for r in bounded}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for k, l, kind, _ in pairs:
        if kind == "eq":
            parent[find(k)] = find(l)
    classes = len({find(r) for r in bounded})
    return classes + sum(1 for st in statuses if st == "U")


def _make_general_vertex(values, statuses, pairs, s0, n, m_amp):
    n_of = _classes_count(statuses, pairs)
    system = _vertex_system(n, m_amp, statuses, pairs, s0)
    v = Vertex(
        statuses=tuple(statuses),
        pairs=pairs,
        s0=s0,
        n_of=n_of,
        witness=tuple(values),
        system=system,
    )
    for c in system.constraints:
        if not c.holds(values):
            raise AssertionError("witness violates its own polyhedron: %s" % (c,))
    if dimension(system) != n_of:
        raise AssertionError(
            "class count %d disagrees with polyhedron dimension" % n_of
        )
    return v


class _GeneralBuilder:
    """BFS closure over descriptors, seeded by the initial-window covering set.

    Seeds classify a window point by thresholds: a coordinate is bounded when
    it sits within j*M of the window minimum, unbounded otherwise.  Every real
    window matches exactly one seed descriptor this way.  Continuation targets
    are then interned on demand; reachable pair offsets stay within O(nM), so
    the closure is finite.  Enumerating every descriptor with offsets in a
    fixed range instead would include unreachable ones whose continuations
    escape any fixed range, so no full-grid variant can be closed under edges.
    """

    def __init__(self, a, budget):
        self.a = a.normalized()
        self.b = self.a.entries
        self.n = self.a.n
        self.m_amp = self.a.working_amplitude
        self.budget = budget
        self.vertices = []
        self.index = {}
        self.queue = []
        self.work = 0

    def tick(self):
        self.work += 1
        if self.work > self.budget:
            raise BudgetExceeded(
                "graph construction budget hit after %d vertices"
                % len(self.vertices),
                len(self.vertices),
            )

    def intern(self, values, statuses):
        bounded_vals = [
            values[r - 1] for r in range(1, self.n + 1) if statuses[r - 1] == "B"
        ]
        shift = min(bounded_vals)
        vals = tuple(v - shift for v in values)
        pairs, s0 = _read_off(vals, statuses, self.n, self.m_amp)
        key = (tuple(statuses), pairs)
        vid = self.index.get(key)
        if vid is None:
            low = vals[s0 - 1]
            for j in range(1, self.n + 1):
                if statuses[j - 1] == "U" and not vals[j - 1] - low > j * self.m_amp:
                    raise AssertionError(
                        "witness broke an unbounded threshold at coordinate %d" % j
                    )
            v = _make_general_vertex(vals, statuses, pairs, s0, self.n, self.m_amp)
            vid = len(self.vertices)
            self.index[key] = vid
            self.vertices.append(v)
            self.queue.append(vid)
        return vid

    def seed(self):
        n, m_amp = self.n, self.m_amp
        slots = [Fraction(j, n + 1) for j in range(n)]
        grid = [Fraction(q) + f for q in range(n * m_amp + 1) for f in slots]
        for size in range(1, n + 1):
            for bset in combinations(range(1, n + 1), size):
                statuses = tuple(
                    "B" if r in bset else "U" for r in range(1, n + 1)
                )
                for assignment in product(grid, repeat=size):
                    self.tick()
                    if min(assignment) != 0:
                        continue
                    if any(
                        val > r * m_amp for r, val in zip(bset, assignment)
                    ):
                        continue
                    values = [None] * n
                    for r, val in zip(bset, assignment):
                        values[r - 1] = val
                    for r in range(1, n + 1):
                        if values[r - 1] is None:
                            values[r - 1] = Fraction(r * m_amp + 1)
                    self.intern(values, statuses)

    def close(self):
        graph = RecurrenceGraph(
            "general", self.a, self.m_amp, self.vertices, []
        )
        head = 0
        while head < len(self.queue):
            vid = self.queue[head]
            head += 1
            self.tick()
            graph.edges.append(
                _general_edges(self, vid, self.vertices[vid], self.b, self.n, self.m_amp)
            )
        graph.index = {v.key: i for i, v in enumerate(self.vertices)}
        return graph


def build_general(a: CoefficientVector, budget=None) -> RecurrenceGraph:
    """The transition graph for an all-finite integer vector."""
    if not a.all_finite:
        raise GraphDomainError(
            "general construction needs an all-finite vector, got %s" % a
        )
    builder = _GeneralBuilder(a, budget if budget is not None else DEFAULT_VERTEX_BUDGET)
    builder.seed()
    seeds = len(builder.vertices)
    graph = builder.close()
    graph.diagnostics = {"seeds": seeds, "work": builder.work}
    return graph


def _target_id(builder, src_vertex, x_value, new_status, n, m_amp):
    """Intern the continuation target for one more value x."""
    values = list(src_vertex.witness[1:]) + [x_value]
    statuses = src_vertex.statuses[1:] + (new_status,)
    return builder.intern(values, statuses)


def _general_edges(builder, src, v, b, n, m_amp):
    p = v.witness
    bounded = [r for r in range(1, n + 1) if v.statuses[r - 1] == "B"]
    best = min(p[r - 1] + b[r - 1] for r in bounded)
    attain = [r for r in bounded if p[r - 1] + b[r - 1] == best]
    edges = []
    if len(attain) == 1:
        t = attain[0]
        c = b[t - 1] - b[n]
        x = p[t - 1] + c
        dst = _target_id(builder, v, x, "B", n, m_amp)
        edges.append(Edge(src, dst, "rigid", "single", exact=(t, c)))
        return edges

    t = min(r for r in attain if r >= 2)
    legacy = [r for r in bounded if r >= 2]
    m0_val = min(p[r - 1] for r in legacy)
    m0_coord = min(r for r in legacy if p[r - 1] == m0_val)

    lo = p[t - 1] + b[t - 1] - b[n]
    hi = m0_val + n * m_amp
    points = set()
    for r in legacy:
        base = p[r - 1]
        k = math.ceil(lo - base)
        while base + k <= hi:
            if base + k >= lo:
                points.add((base + k, r, k))
            k += 1
    ordered = sorted(points)
    values_only = [val for val, _, _ in ordered]
    if lo not in values_only or hi not in values_only:
        raise AssertionError("placement grid lost an endpoint (internal bug)")

    prev = None
    for val, r, k in ordered:
        if prev is not None and val == prev[0]:
            continue  # same placement reachable from several anchors
        if prev is not None:
            mid = (prev[0] + val) / 2
            dst = _target_id(builder, v, mid, "B", n, m_amp)
            edges.append(
                Edge(
                    src,
                    dst,
                    "augmenting",
                    "bounded_band",
                    lo=(prev[1], prev[2]),
                    hi=(r, k),
                )
            )
        dst = _target_id(builder, v, val, "B", n, m_amp)
        edges.append(Edge(src, dst, "rigid", "bounded_eq", exact=(r, k)))
        prev = (val, r, k)

    ray_start = hi + 1
    dst = _target_id(builder, v, ray_start, "U", n, m_amp)
    edges.append(
        Edge(src, dst, "augmenting", "unbounded", lo=(m0_coord, n * m_amp))
    )
    return edges


def _dense_ranks(values):
    levels = sorted(set(values))
    pos = {val: i for i, val in enumerate(levels)}
    return tuple(pos[val] for val in values)


def _make_boolean_vertex(ranks):
    n = len(ranks)
    cons = []
    for k, l in combinations(range(1, n + 1), 2):
        rk, rl = ranks[k - 1], ranks[l - 1]
        if rk == rl:
            cons.append(DifferenceConstraint(k, l, Fraction(0), EQ))
        elif rk < rl:
            cons.append(DifferenceConstraint(k, l, Fraction(0), LT))
        else:
            cons.append(DifferenceConstraint(l, k, Fraction(0), LT))
    low = min(range(1, n + 1), key=lambda r: (ranks[r - 1], r))
    return Vertex(
        statuses=tuple("B" for _ in ranks),
        pairs=ranks,
        s0=low,
        n_of=max(ranks) + 1,
        witness=tuple(Fraction(r) for r in ranks),
        system=ConstraintSystem(n, tuple(cons)),
        ranks=ranks,
    )


def build_boolean(a: CoefficientVector, budget=None) -> RecurrenceGraph:
    """The weak-order transition graph for a 0/infinity vector."""
    if not a.is_boolean:
        raise GraphDomainError(
            "boolean construction needs entries in {0, inf} with finite ends, got %s"
            % a
        )
    n = a.n
    budget = budget if budget is not None else DEFAULT_VERTEX_BUDGET
    finite_coords = [i + 1 for i in range(n) if a.entries[i] == 0]

    vertices = []
    for ranks in product(range(n), repeat=n):
        if set(ranks) != set(range(max(ranks) + 1)):
            continue
        vertices.append(_make_boolean_vertex(ranks))
        if len(vertices) > budget:
            raise BudgetExceeded(
                "vertex enumeration budget hit after %d vertices" % len(vertices),
                len(vertices),
            )
    vertices.sort(key=lambda v: v.ranks)
    graph = RecurrenceGraph(
        "boolean", a, a.working_amplitude, vertices, [[] for _ in vertices]
    )
    rank_index = {v.ranks: i for i, v in enumerate(vertices)}

    for src, v in enumerate(vertices):
        graph.edges[src] = _boolean_edges(graph, rank_index, src, v, finite_coords, n)
    return graph


def _boolean_target(rank_index, v, new_value):
    values = [Fraction(r) for r in v.ranks[1:]] + [Fraction(new_value)]
    return rank_index[_dense_ranks(values)]


def _boolean_edges(graph, rank_index, src, v, finite_coords, n):
    ranks = v.ranks
    base = min(ranks[r - 1] for r in finite_coords)
    attain = [r for r in finite_coords if ranks[r - 1] == base]
    edges = []
    if attain == [1]:
        # the dropped coordinate is the unique window minimum: the new value
        # must wrap around and repeat it
        dst = _boolean_target(rank_index, v, ranks[0])
        edges.append(Edge(src, dst, "rigid", "wrap", exact=(1, 0)))
        return edges
    if len(attain) == 1:
        t = attain[0]
        dst = _boolean_target(rank_index, v, ranks[t - 1])
        edges.append(Edge(src, dst, "rigid", "tie", exact=(t, 0)))
        return edges

    t = min(r for r in attain if r >= 2)
    floor_level = ranks[t - 1]
    legacy_levels = sorted({ranks[r - 1] for r in range(2, n + 1)})
    eligible = [lev for lev in legacy_levels if lev >= floor_level]
    reps = {
        lev: min(r for r in range(2, n + 1) if ranks[r - 1] == lev)
        for lev in eligible
    }
    prev = None
    for lev in eligible:
        if prev is not None:
            dst = _boolean_target(rank_index, v, Fraction(prev + lev, 2))
            edges.append(
                Edge(
                    src,
                    dst,
                    "augmenting",
                    "between",
                    lo=(reps[prev], 0),
                    hi=(reps[lev], 0),
                )
            )
        dst = _boolean_target(rank_index, v, lev)
        edges.append(Edge(src, dst, "rigid", "tie", exact=(reps[lev], 0)))
        prev = lev
    dst = _boolean_target(rank_index, v, prev + 1)
    edges.append(Edge(src, dst, "augmenting", "above", lo=(reps[prev], 0)))
    return edges


def point_in_vertex(g: RecurrenceGraph, vid: int, point) -> bool:
    return all(c.holds(point) for c in g.vertices[vid].system.constraints)


def locate_vertices(g: RecurrenceGraph, point) -> list:
    return [i for i in range(g.vertex_count) if point_in_vertex(g, i, point)]


def admissible_set(g: RecurrenceGraph, edge: Edge, point):
    """The exact continuation values edge permits from a given window point.

    Returns ('point', x), ('interval', lo, hi) with an open interval, or
    ('ray', lo, None) with an open ray.
    """
    if edge.exact is not None:
        r, c = edge.exact
        return ("point", point[r - 1] + c)
    lo_r, lo_c = edge.lo
    lo = point[lo_r - 1] + lo_c
    if edge.hi is None:
        return ("ray", lo, None)
    hi_r, hi_c = edge.hi
    return ("interval", lo, point[hi_r - 1] + hi_c)


def edge_accepts(g: RecurrenceGraph, edge: Edge, point, x) -> bool:
    shape = admissible_set(g, edge, point)
    if shape[0] == "point":
        return x == shape[1]
    if shape[0] == "ray":
        return x > shape[1]
    return shape[1] < x < shape[2]


def step(g: RecurrenceGraph, vid: int, point, x):
    """The unique edge along which the window (point, x) continues."""
    if not point_in_vertex(g, vid, point):
        raise ValueError("point does not lie in the vertex polyhedron")
    hits = [e for e in g.edges[vid] if edge_accepts(g, e, point, x)]
    if len(hits) != 1:
        raise AssertionError(
            "expected exactly one continuation edge, found %d" % len(hits)
        )
    return hits[0]


def walk(g: RecurrenceGraph, path) -> ConstraintSystem:
    """The constraint system over k+n coordinates describing all sequences
    yielded along the vertex path (the edge-by-edge continuation process)."""
    if not path:
        raise ValueError("empty path")
    k = len(path) - 1
    n = g.n
    cons = []
    for i, vid in enumerate(path):
        for c in g.vertices[vid].system.constraints:
            cons.append(DifferenceConstraint(c.u + i, c.v + i, c.bound, c.kind))
    for i in range(k):
        e = g.find_edge(path[i], path[i + 1])
        if e is None:
            raise ValueError("no edge %d -> %d in the graph" % (path[i], path[i + 1]))
        if e.pins_dropped_coordinate:
            cons.append(
                DifferenceConstraint(
                    i + 1 + n, i + 1, Fraction(e.exact[1]), EQ
                )
            )
    return ConstraintSystem(k + n, tuple(cons))


def build_graph(a: CoefficientVector, budget=None) -> RecurrenceGraph:
    """Route to the construction matching the vector's shape."""
    if a.is_boolean:
        return build_boolean(a, budget)
    if a.all_finite:
        return build_general(a, budget)
    raise GraphDomainError(
        "no graph construction for mixed finite/infinite vector %s" % a
    )

"""Growth analysis on transition graphs.

Entropy is the best augmenting-edge density over cycles; the dimension table
d(s) comes from a max-plus DP over paths; quasilinearity detection finds the
eventual period of d empirically and never guesses.  Audits re-check the
bracketing inequalities between d, the entropy, and the graph size.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .core import CoefficientVector, is_regular, single_bounded_edge
from .graph import RecurrenceGraph, build_graph


def _edge_weight(e):
    return 1 if e.kind == "augmenting" else 0


def _sccs(nv, adj):
    """Strongly connected components, Kosaraju with explicit stacks."""
    order = []
    seen = [False] * nv
    for s in range(nv):
        if seen[s]:
            continue
        seen[s] = True
        stack = [(s, 0)]
        while stack:
            u, i = stack[-1]
            if i < len(adj[u]):
                stack[-1] = (u, i + 1)
                w = adj[u][i]
                if not seen[w]:
                    seen[w] = True
                    stack.append((w, 0))
            else:
                order.append(u)
                stack.pop()
    radj = [[] for _ in range(nv)]
    for u in range(nv):
        for w in adj[u]:
            radj[w].append(u)
    comp = [-1] * nv
    count = 0
    for s in reversed(order):
        if comp[s] != -1:
            continue
        comp[s] = count
        stack = [s]
        while stack:
            u = stack.pop()
            for w in radj[u]:
                if comp[w] == -1:
                    comp[w] = count
                    stack.append(w)
        count += 1
    return count, comp


def entropy_graph(g: RecurrenceGraph) -> Fraction:
    """Maximum over cycles of (augmenting edges)/(length), 0 when acyclic.

    Karp's minimum-mean recurrence run per strongly connected component, with
    signs flipped for the maximum and exact rational output.
    """
    nv = g.vertex_count
    weighted = [[(e.dst, _edge_weight(e)) for e in es] for es in g.edges]
    nc, comp = _sccs(nv, [[d for d, _ in row] for row in weighted])
    members = [[] for _ in range(nc)]
    for v, c in enumerate(comp):
        members[c].append(v)
    best = Fraction(0)
    for c in range(nc):
        verts = members[c]
        local = {v: i for i, v in enumerate(verts)}
        internal = [
            (local[u], local[w], wt)
            for u in verts
            for (w, wt) in weighted[u]
            if comp[w] == c
        ]
        if not internal:
            continue
        k = len(verts)
        table = [[None] * k for _ in range(k + 1)]
        table[0][0] = 0
        for j in range(1, k + 1):
            prev, cur = table[j - 1], table[j]
            for u, w, wt in internal:
                if prev[u] is None:
                    continue
                cand = prev[u] + wt
                if cur[w] is None or cand > cur[w]:
                    cur[w] = cand
        for i in range(k):
            if table[k][i] is None:
                continue
            low = None
            for j in range(k):
                if table[j][i] is None:
                    continue
                ratio = Fraction(table[k][i] - table[j][i], k - j)
                if low is None or ratio < low:
                    low = ratio
            if low is not None and low > best:
                best = low
    return best


def hilbert_table(g: RecurrenceGraph, s_values) -> dict:
    """d(s) for each requested s, sharing one DP sweep.

    Windows shorter than n+1 leave the values unconstrained, reported as
    d(s) = s there.  Beyond that, d(s) is the best path score minus one: a
    path of s-n edges spans length-s sequences whose cell dimension is the
    class count of the starting vertex plus the augmenting edges used, and
    one dimension of pure translation is quotiented away.
    """
    n = g.n
    want = sorted(set(int(s) for s in s_values))
    if want and want[0] < 1:
        raise ValueError("sequence length must be positive")
    out = {}
    for s in want:
        if s <= n:
            out[s] = s
    deep = [s for s in want if s > n]
    if not deep:
        return out
    incoming = g.transpose()
    f = [v.n_of for v in g.vertices]
    kmax = deep[-1] - n
    targets = {s - n: s for s in deep}
    for k in range(1, kmax + 1):
        nxt = []
        for w in range(g.vertex_count):
            best = None
            for e in incoming[w]:
                if f[e.src] is None:
                    continue
                cand = f[e.src] + _edge_weight(e)
                if best is None or cand > best:
                    best = cand
            nxt.append(best)
        f = nxt
        if k in targets:
            out[targets[k]] = max(x for x in f if x is not None) - 1
    return out


def hilbert_graph(g: RecurrenceGraph, s: int) -> int:
    return hilbert_table(g, [s])[int(s)]


@dataclass
class HilbertProfile:
    a: CoefficientVector
    h: Fraction
    samples: dict  # s -> d(s)
    method_tag: str
    period: int = None  # None encodes UNKNOWN
    regularity_index: int = None
    residuals: dict = field(default_factory=dict)  # s -> Fraction on the tail
    audits: dict = field(default_factory=dict)
    graph_v: int = 0
    graph_e: int = 0
    m: int = 1

    def to_json(self) -> dict:
        return {
            "vector": self.a.label(),
            "M": self.m,
            "V": self.graph_v,
            "E": self.graph_e,
            "H": str(self.h),
            "samples": [[s, self.samples[s]] for s in sorted(self.samples)],
            "period": self.period if self.period is not None else "UNKNOWN",
            "regularityIndex": (
                self.regularity_index
                if self.regularity_index is not None
                else "UNKNOWN"
            ),
            "residuals": {
                str(s): str(self.residuals[s]) for s in sorted(self.residuals)
            },
            "audits": self.audits,
        }


def optimal_path(g: RecurrenceGraph, s: int):
    """One path attaining d(s), as (d, [vertex ids]); path length is s - n.

    Mirrors the hilbert_table DP but keeps parent pointers so a witness path
    can be reported, e.g. when explaining a disagreement with the oracle.
    """
    n = g.n
    if s <= n:
        raise ValueError("need s >= n+1 for a path witness")
    incoming = g.transpose()
    k = s - n
    f = [v.n_of for v in g.vertices]
    parents = []
    for _ in range(k):
        nxt = []
        par = []
        for w in range(g.vertex_count):
            best = None
            best_src = None
            for e in incoming[w]:
                if f[e.src] is None:
                    continue
                cand = f[e.src] + _edge_weight(e)
                if best is None or cand > best:
                    best = cand
                    best_src = e.src
            nxt.append(best)
            par.append(best_src)
        f = nxt
        parents.append(par)
    end = max(
        range(g.vertex_count),
        key=lambda w: (f[w] is not None, f[w] if f[w] is not None else 0),
    )
    path = [end]
    for par in reversed(parents):
        path.append(par[path[-1]])
    path.reverse()
    return f[end] - 1, path


def quasilinearity(g: RecurrenceGraph, s_max=None, method_tag="GRAPH") -> HilbertProfile:
    """Find the eventual period of d(s) empirically; UNKNOWN when unverified.

    The reported period is minimal for the sampled range and may divide the
    least common multiple of optimal cycle lengths.  A period counts as
    verified only when d(s+R) = d(s) + H*R holds either on the entire
    constrained range or on a tail window of at least max(2R, 12)
    consecutive lengths (capped at half the table for small graphs).  A
    short window that stops before the table does is too easy to satisfy
    by accident, e.g. a residual sequence of true period 15 matches R=3 on
    any stretch that happens to avoid its slow phase.
    """
    n = g.n
    if s_max is None:
        s_max = max(4 * g.vertex_count, n + 8)
    s_max = int(s_max)
    if s_max < n + 1:
        raise ValueError("sMax must be at least n+1")
    h = entropy_graph(g)
    samples = hilbert_table(g, range(1, s_max + 1))
    period = None
    s0 = None
    for r in range(h.denominator, (s_max - n) // 2 + 1, h.denominator):
        bad = None
        for s in range(s_max - r, n, -1):
            if samples[s + r] - samples[s] != h * r:
                bad = s
                break
        cand = bad + 1 if bad is not None else n + 1
        checks = (s_max - r) - cand + 1
        needed = max(2 * r, min(12, max(1, (s_max - n) // 2)))
        # A relation that holds on the whole constrained range is the most a
        # table of this size can certify, so accept it even below the floor.
        if checks >= needed or (bad is None and checks >= max(2, r)):
            period, s0 = r, cand
            break
    residuals = {}
    if period is not None:
        residuals = {s: samples[s] - h * s for s in range(s0, s_max + 1)}
    return HilbertProfile(
        a=g.a,
        h=h,
        samples=samples,
        method_tag=method_tag,
        period=period,
        regularity_index=s0,
        residuals=residuals,
        graph_v=g.vertex_count,
        graph_e=g.edge_count,
        m=g.m,
    )


def audit_bounds(profile: HilbertProfile, g: RecurrenceGraph) -> dict:
    """Re-check the bracketing inequalities on the sampled table, report-only.

    All checks run on s >= n+1: shorter windows are unconstrained and their
    d(s) = s convention is not comparable across the boundary.
    """
    n = g.n
    v = g.vertex_count
    h = profile.h
    samples = profile.samples
    xs = [s for s in sorted(samples) if s >= n + 1]
    report = {}

    def verdict(name, bad, detail=""):
        report[name] = {"ok": bad is None, "detail": detail if bad is not None else ""}

    bad = next((s for s in xs if samples[s] < h * (s - n)), None)
    verdict("lowerLinear", bad, "d(%s) < H*(s-n)" % bad)

    bad = next(
        (s for s in xs if samples[s] > h * s + (1 - h) * (v + n)), None
    )
    verdict("upperLinear", bad, "d(%s) > H*s + (1-H)(V+n)" % bad)

    bad = None
    for s in xs:
        if s + 1 in samples and s + 1 >= n + 1:
            step = samples[s + 1] - samples[s]
            if step < 0 or step > 1:
                bad = s
                break
    verdict("monotoneStep", bad, "d(s+1)-d(s) outside [0,1] at s=%s" % bad)

    bad = None
    for s in xs:
        for t in xs:
            if s + t > max(samples):
                break
            if samples[s + t] > samples[s] + samples[t]:
                bad = (s, t)
                break
        if bad:
            break
    verdict("subadditivity", bad, "d(s+t) > d(s)+d(t) at %s" % (bad,))

    if profile.period is not None:
        r = profile.period
        bad = next(
            (s for s in xs if s + r in samples and samples[s + r] < samples[s] + h * r),
            None,
        )
        verdict("shiftLowerBound", bad, "d(s+R) < d(s)+HR at s=%s" % bad)

    return report


def entropy_theorems_check(a: CoefficientVector, h: Fraction = None, g=None) -> list:
    """Structured pass/fail for the entropy bracketing statements."""
    if h is None:
        if g is None:
            g = build_graph(a)
        h = entropy_graph(g)
    checks = []
    reg = is_regular(a)

    checks.append(
        {
            "name": "zeroEntropyIffRegular",
            "applicable": True,
            "ok": (h == 0) == reg,
            "detail": "H=%s, regular=%s" % (h, reg),
        }
    )
    checks.append(
        {
            "name": "nonRegularQuarterLowerBound",
            "applicable": not reg,
            "ok": reg or h >= Fraction(1, 4),
            "detail": "H=%s" % h,
        }
    )
    sbe = single_bounded_edge(a)
    bound = 1 - Fraction(2, a.n + 1)
    checks.append(
        {
            "name": "singleBoundedEdgeUpperBound",
            "applicable": sbe,
            "ok": (not sbe) or h <= bound,
            "detail": "H=%s, bound=%s" % (h, bound),
        }
    )
    return checks

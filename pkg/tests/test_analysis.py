import random
from fractions import Fraction

import networkx as nx
import pytest

from troprec.analysis import (
    HilbertProfile,
    audit_bounds,
    entropy_graph,
    entropy_theorems_check,
    hilbert_graph,
    hilbert_table,
    optimal_path,
    quasilinearity,
)
from troprec.core import parse_vector
from troprec.graph import build_graph
from troprec.oracle import hilbert_oracle


class _StubEdge:
    def __init__(self, src, dst, kind):
        self.src = src
        self.dst = dst
        self.kind = kind


class _StubGraph:
    def __init__(self, nv, triples):
        self.vertex_count = nv
        self.edges = [[] for _ in range(nv)]
        for u, v, kind in triples:
            self.edges[u].append(_StubEdge(u, v, kind))


def _brute_max_mean(nv, triples):
    dg = nx.DiGraph()
    dg.add_nodes_from(range(nv))
    for u, v, kind in triples:
        dg.add_edge(u, v, w=1 if kind == "augmenting" else 0)
    best = Fraction(0)
    for cyc in nx.simple_cycles(dg):
        k = len(cyc)
        total = sum(dg[cyc[i]][cyc[(i + 1) % k]]["w"] for i in range(k))
        best = max(best, Fraction(total, k))
    return best


def test_entropy_two_component_stub():
    # a 2-cycle carrying one augmenting edge next to a 3-cycle carrying two
    g = _StubGraph(
        5,
        [
            (0, 1, "augmenting"),
            (1, 0, "rigid"),
            (2, 3, "augmenting"),
            (3, 4, "augmenting"),
            (4, 2, "rigid"),
        ],
    )
    assert entropy_graph(g) == Fraction(2, 3)


def test_entropy_acyclic_is_zero():
    g = _StubGraph(3, [(0, 1, "augmenting"), (1, 2, "augmenting")])
    assert entropy_graph(g) == Fraction(0)


def test_entropy_matches_cycle_enumeration():
    rng = random.Random(2026)
    for trial in range(40):
        nv = rng.randint(1, 7)
        pairs = set()
        for _ in range(rng.randint(0, 2 * nv)):
            pairs.add((rng.randrange(nv), rng.randrange(nv)))
        triples = [
            (u, v, rng.choice(["rigid", "augmenting"])) for u, v in sorted(pairs)
        ]
        g = _StubGraph(nv, triples)
        assert entropy_graph(g) == _brute_max_mean(nv, triples), triples


def test_entropy_frozen_values():
    cases = {
        "0,1,0": Fraction(1, 4),
        "0,0,0": Fraction(1, 3),
        "0,0,0,0": Fraction(1, 2),
        "0,inf,0": Fraction(0),
        "1,0,2": Fraction(0),
        "0,0,inf,inf,0": Fraction(1, 3),
    }
    for lbl, h in cases.items():
        g = build_graph(parse_vector(lbl))
        assert entropy_graph(g) == h, lbl


def test_entropy_denominator_bounded_by_vertex_count():
    for lbl in ("0,1,0", "0,0,0", "0,0,0,0", "1,0,2", "0,0,inf,inf,0"):
        g = build_graph(parse_vector(lbl))
        assert entropy_graph(g).denominator <= g.vertex_count


def test_hilbert_table_short_lengths_and_errors():
    g = build_graph(parse_vector("0,1,0"))
    t = hilbert_table(g, [1, 2, 3])
    assert t[1] == 1 and t[2] == 2
    with pytest.raises(ValueError):
        hilbert_table(g, [0, 3])


def test_hilbert_table_matches_oracle():
    for lbl, hi in (("0,1,0", 9), ("0,0,0", 8), ("1,0,2", 8), ("0,inf,0", 8)):
        a = parse_vector(lbl)
        g = build_graph(a)
        t = hilbert_table(g, range(a.n + 1, hi + 1))
        for s in range(a.n + 1, hi + 1):
            assert t[s] == hilbert_oracle(a, s), (lbl, s)


def test_hilbert_closed_forms():
    g = build_graph(parse_vector("0,1,0"))
    for s in range(3, 30):
        assert hilbert_graph(g, s) == -(-s // 4)
    g = build_graph(parse_vector("0,0,0"))
    for s in range(3, 30):
        assert hilbert_graph(g, s) == -(-s // 3)


def test_optimal_path_is_consistent():
    for lbl, s in (("0,1,0", 9), ("0,0,0", 7), ("0,0,inf,inf,0", 20)):
        g = build_graph(parse_vector(lbl))
        d, path = optimal_path(g, s)
        assert d == hilbert_graph(g, s)
        assert len(path) == s - g.n + 1
        aug = 0
        for u, w in zip(path, path[1:]):
            e = next((e for e in g.edges[u] if e.dst == w), None)
            assert e is not None, (lbl, u, w)
            aug += e.kind == "augmenting"
        assert g.vertices[path[0]].n_of + aug - 1 == d
    with pytest.raises(ValueError):
        optimal_path(build_graph(parse_vector("0,0")), 1)


def test_quasilinearity_frozen():
    p = quasilinearity(build_graph(parse_vector("0,1,0")))
    assert (p.h, p.period, p.regularity_index) == (Fraction(1, 4), 4, 3)
    assert set(p.residuals.values()) == {
        Fraction(0),
        Fraction(1, 4),
        Fraction(1, 2),
        Fraction(3, 4),
    }

    p = quasilinearity(build_graph(parse_vector("0,0,0")))
    assert (p.h, p.period) == (Fraction(1, 3), 3)

    p = quasilinearity(build_graph(parse_vector("0,1")))
    assert (p.h, p.period) == (Fraction(0), 1)
    assert set(p.residuals.values()) == {Fraction(0)}


def test_quasilinearity_finds_long_period():
    # the two slowest corpus members need fifteen lengths before repeating
    for lbl in ("0,0,inf,inf,0", "0,inf,inf,0,0"):
        p = quasilinearity(build_graph(parse_vector(lbl)))
        assert p.h == Fraction(1, 3)
        assert p.period == 15, lbl
        assert p.regularity_index == 5


def test_quasilinearity_rejects_short_tables():
    g = build_graph(parse_vector("0,1,0"))
    with pytest.raises(ValueError):
        quasilinearity(g, s_max=2)


def test_audits_pass_on_real_tables():
    for lbl in ("0,1,0", "0,0,0", "1,0,2", "0,0,inf,inf,0"):
        g = build_graph(parse_vector(lbl))
        p = quasilinearity(g)
        report = audit_bounds(p, g)
        assert set(report) >= {
            "lowerLinear",
            "upperLinear",
            "monotoneStep",
            "subadditivity",
        }
        if p.period is not None:
            assert "shiftLowerBound" in report
        for name, res in report.items():
            assert res["ok"], (lbl, name, res)


def test_audits_catch_corruption():
    g = build_graph(parse_vector("0,0,0"))
    p = quasilinearity(g)
    p.samples[10] += 50
    report = audit_bounds(p, g)
    assert not report["upperLinear"]["ok"]
    assert not report["monotoneStep"]["ok"]
    assert "d(" in report["upperLinear"]["detail"]

    p2 = quasilinearity(g)
    p2.samples[12] = -1
    report2 = audit_bounds(p2, g)
    assert not report2["lowerLinear"]["ok"]


def test_entropy_theorem_checks():
    by_name = lambda checks: {c["name"]: c for c in checks}

    c = by_name(entropy_theorems_check(parse_vector("0,inf,0")))
    assert c["zeroEntropyIffRegular"]["ok"]
    assert not c["nonRegularQuarterLowerBound"]["applicable"]

    c = by_name(entropy_theorems_check(parse_vector("0,0,0")))
    assert c["zeroEntropyIffRegular"]["ok"]
    assert c["nonRegularQuarterLowerBound"]["applicable"]
    assert c["nonRegularQuarterLowerBound"]["ok"]

    # the flat four-coordinate vector meets its ceiling exactly
    c = by_name(entropy_theorems_check(parse_vector("0,0,0,0")))
    assert c["singleBoundedEdgeUpperBound"]["applicable"]
    assert c["singleBoundedEdgeUpperBound"]["ok"]
    g = build_graph(parse_vector("0,0,0,0"))
    assert entropy_graph(g) == 1 - Fraction(2, 4)


def test_profile_json_shape():
    g = build_graph(parse_vector("0,1,0"))
    p = quasilinearity(g, s_max=12)
    p.audits.update(audit_bounds(p, g))
    j = p.to_json()
    assert set(j) == {
        "vector",
        "M",
        "V",
        "E",
        "H",
        "samples",
        "period",
        "regularityIndex",
        "residuals",
        "audits",
    }
    assert j["vector"] == "0,1,0"
    assert j["H"] == "1/4"
    assert j["period"] == 4
    assert j["samples"] == [[s, p.samples[s]] for s in range(1, 13)]
    assert all(isinstance(v, str) for v in j["residuals"].values())


def test_unknown_period_serializes_as_text():
    p = HilbertProfile(
        a=parse_vector("0,1,0"),
        h=Fraction(1, 4),
        samples={3: 1},
        method_tag="GRAPH",
    )
    j = p.to_json()
    assert j["period"] == "UNKNOWN" and j["regularityIndex"] == "UNKNOWN"

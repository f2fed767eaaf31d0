"""Command-line front end: profiles, entropy, graph dumps, and the
acceptance corpus runner.

Exit codes: 0 success; 1 a check failed (verify criteria, or the two
methods disagree under --method both); 2 malformed vector or usage;
3 node budget exceeded; 4 the requested method cannot handle the vector.
"""

import argparse
import json
import os
import sys
from fractions import Fraction

from .analysis import (
    audit_bounds,
    entropy_graph,
    optimal_path,
    quasilinearity,
)
from .core import BudgetExceeded, VectorError, newton_polygon, parse_vector
from .core import is_regular, single_bounded_edge
from .graph import GraphDomainError, build_graph
from .oracle import enumerate_cells, fekete_entropy_estimate, hilbert_oracle

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3
EXIT_METHOD = 4


class CliError(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def _emit(text):
    sys.stdout.write(text)
    if not text.endswith("\n"):
        sys.stdout.write("\n")


def _json_dump(obj):
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _frac(x):
    return str(Fraction(x))


def _resolve_budget(args):
    if getattr(args, "budget", None) is not None:
        return args.budget
    env = os.environ.get("TROP_BUDGET")
    return int(env) if env else None


def _load_vectors(args):
    texts = []
    if args.vector is not None:
        texts.append(args.vector)
    if getattr(args, "vector_file", None):
        try:
            with open(args.vector_file) as fh:
                for line in fh:
                    line = line.strip()
                    if line and not line.startswith("#"):
                        texts.append(line)
        except OSError as exc:
            raise CliError(EXIT_USAGE, "cannot read vector file: %s" % exc)
    if not texts:
        raise CliError(EXIT_USAGE, "no vector given (use --vector or --vector-file)")
    out = []
    for t in texts:
        try:
            out.append(parse_vector(t))
        except VectorError as exc:
            raise CliError(EXIT_USAGE, "malformed vector %r: %s" % (t, exc))
    return out


def _build(a, budget):
    try:
        return build_graph(a, budget=budget)
    except GraphDomainError as exc:
        raise CliError(
            EXIT_METHOD,
            "vector (%s) is outside the graph method's domain: %s" % (a.label(), exc),
        )
    except BudgetExceeded as exc:
        raise CliError(EXIT_BUDGET, str(exc))


def _oracle_samples(a, s_max, budget):
    try:
        return {s: hilbert_oracle(a, s, budget) for s in range(1, s_max + 1)}
    except BudgetExceeded as exc:
        raise CliError(EXIT_BUDGET, str(exc))


def _mismatch_dump(a, s, d_oracle, d_graph, g, budget):
    lines = [
        "method disagreement for (%s) at s=%d: oracle d=%d, graph d=%d"
        % (a.label(), s, d_oracle, d_graph),
    ]
    best = None
    for cell in enumerate_cells(a, s, budget):
        if best is None or cell.dim > best.dim:
            best = cell
    if best is not None:
        lines.append("  oracle best cell: pattern=%s dim=%d" % (best.pattern, best.dim))
        lines.append("  oracle witness: (%s)" % ", ".join(_frac(x) for x in best.witness))
    d, path = optimal_path(g, s)
    lines.append("  graph best path (d=%d): %s" % (d, path))
    return "\n".join(lines) + "\n"


def cmd_hilbert(args):
    budget = _resolve_budget(args)
    out = []
    for a in _load_vectors(args):
        n = a.n
        g = None
        profile = None
        oracle = None
        if args.method in ("graph", "both"):
            g = _build(a, budget)
        s_max = args.s_max
        if s_max is None:
            s_max = max(4 * g.vertex_count, n + 8) if g is not None else n + 8
        if s_max < n + 1:
            raise CliError(EXIT_USAGE, "--s-max must be at least n+1 = %d" % (n + 1))
        if g is not None:
            profile = quasilinearity(
                g, s_max=s_max, method_tag=args.method.upper()
            )
            profile.audits.update(audit_bounds(profile, g))
        if args.method in ("oracle", "both"):
            oracle = _oracle_samples(a, s_max, budget)
        if profile is not None and oracle is not None:
            for s in sorted(oracle):
                if oracle[s] != profile.samples[s]:
                    sys.stderr.write(
                        _mismatch_dump(a, s, oracle[s], profile.samples[s], g, budget)
                    )
                    raise CliError(EXIT_CHECK_FAILED, "methods disagree, aborting")
        out.append((a, profile, oracle, s_max))

    if args.format == "json":
        docs = []
        for a, profile, oracle, s_max in out:
            if profile is not None:
                docs.append(profile.to_json())
            else:
                docs.append(
                    {
                        "vector": a.label(),
                        "method": "ORACLE",
                        "samples": [[s, oracle[s]] for s in sorted(oracle)],
                    }
                )
        _emit(_json_dump(docs[0] if len(docs) == 1 else docs))
    elif args.format == "csv":
        rows = ["s,d_oracle,d_graph,r(s)"]
        for a, profile, oracle, s_max in out:
            for s in range(1, s_max + 1):
                d_o = str(oracle[s]) if oracle is not None else ""
                d_g = str(profile.samples[s]) if profile is not None else ""
                r = ""
                if profile is not None and s in profile.residuals:
                    r = _frac(profile.residuals[s])
                rows.append("%d,%s,%s,%s" % (s, d_o, d_g, r))
        _emit("\n".join(rows))
    elif args.format == "text":
        blocks = []
        for a, profile, oracle, s_max in out:
            lines = ["vector (%s)  n=%d  method=%s" % (a.label(), a.n, args.method)]
            lines.append("  s  d")
            table = profile.samples if profile is not None else oracle
            for s in range(1, s_max + 1):
                lines.append("%3d  %d" % (s, table[s]))
            if profile is not None:
                lines.append(
                    "H=%s  period=%s  regularityIndex=%s  V=%d E=%d"
                    % (
                        _frac(profile.h),
                        profile.period if profile.period is not None else "UNKNOWN",
                        profile.regularity_index
                        if profile.regularity_index is not None
                        else "UNKNOWN",
                        profile.graph_v,
                        profile.graph_e,
                    )
                )
            blocks.append("\n".join(lines))
        _emit("\n\n".join(blocks))
    else:
        raise CliError(EXIT_USAGE, "hilbert supports json, csv, or text output")
    return EXIT_OK


def cmd_entropy(args):
    budget = _resolve_budget(args)
    docs = []
    for a in _load_vectors(args):
        doc = {"vector": a.label()}
        h = None
        bracket = None
        if args.method in ("graph", "both"):
            h = entropy_graph(_build(a, budget))
            doc["H"] = _frac(h)
        if args.method in ("oracle", "both"):
            s_max = args.s_max if args.s_max is not None else a.n + 8
            if s_max < a.n + 2:
                raise CliError(EXIT_USAGE, "--s-max must be at least n+2 for the oracle")
            try:
                bracket = fekete_entropy_estimate(a, s_max, budget)
            except BudgetExceeded as exc:
                raise CliError(EXIT_BUDGET, str(exc))
            doc["lower"], doc["upper"] = _frac(bracket[0]), _frac(bracket[1])
        doc["method"] = args.method.upper()
        if h is not None and bracket is not None:
            # H <= d(s)/s holds for every s by subadditivity, so a graph value
            # above the oracle ceiling means one of the two routes is wrong.
            # The slope floor is only an estimate: a table that stops before
            # the slow phase of d leaves it above the true rate, which calls
            # for a deeper table, not an abort.
            if h > bracket[1]:
                sys.stderr.write(
                    "entropy disagreement for (%s): exact %s above oracle ceiling %s\n"
                    % (a.label(), _frac(h), _frac(bracket[1]))
                )
                raise CliError(EXIT_CHECK_FAILED, "methods disagree, aborting")
            if h < bracket[0]:
                sys.stderr.write(
                    "note: (%s) sampled slope floor %s sits above exact H=%s; "
                    "the table up to s=%d is too shallow, raise --s-max\n"
                    % (a.label(), _frac(bracket[0]), _frac(h), s_max)
                )
        docs.append(doc)

    if args.format == "json":
        _emit(_json_dump(docs[0] if len(docs) == 1 else docs))
    elif args.format == "text":
        lines = []
        for doc in docs:
            if "H" in doc and "lower" in doc:
                lines.append(
                    "(%s) H=%s  oracle bracket [%s, %s]"
                    % (doc["vector"], doc["H"], doc["lower"], doc["upper"])
                )
            elif "H" in doc:
                lines.append(doc["H"])
            else:
                lines.append(
                    "(%s) H in [%s, %s] (oracle estimate)"
                    % (doc["vector"], doc["lower"], doc["upper"])
                )
        _emit("\n".join(lines))
    else:
        raise CliError(EXIT_USAGE, "entropy supports json or text output")
    return EXIT_OK


def cmd_graph(args):
    budget = _resolve_budget(args)
    vectors = _load_vectors(args)
    if args.format == "dot" and len(vectors) > 1:
        raise CliError(EXIT_USAGE, "dot output wants exactly one vector")
    docs = []
    for a in vectors:
        g = _build(a, budget)
        if args.format == "dot":
            _emit(g.to_dot())
            return EXIT_OK
        docs.append(g)
    if args.format == "json":
        payload = [g.to_json() for g in docs]
        _emit(_json_dump(payload[0] if len(payload) == 1 else payload))
    elif args.format == "text":
        lines = []
        for g in docs:
            j = g.to_json()
            lines.append(
                "(%s) kind=%s V=%d E=%d rigid=%d augmenting=%d"
                % (j["vector"], j["kind"], j["V"], j["E"], j["rigid"], j["augmenting"])
            )
        _emit("\n".join(lines))
    else:
        raise CliError(EXIT_USAGE, "graph supports dot, json, or text output")
    return EXIT_OK


def cmd_newton(args):
    docs = []
    for a in _load_vectors(args):
        hull = newton_polygon(a)
        docs.append(
            {
                "vector": a.label(),
                "vertices": [[i, _frac(c)] for i, c in hull.vertices],
                "regular": is_regular(a),
                "singleBoundedEdge": single_bounded_edge(a),
            }
        )
    if args.format == "json":
        _emit(_json_dump(docs[0] if len(docs) == 1 else docs))
    elif args.format == "text":
        lines = []
        for doc in docs:
            verts = ",".join("(%s,%s)" % (i, c) for i, c in doc["vertices"])
            lines.append(
                "(%s) regular=%s singleBoundedEdge=%s vertices [%s]"
                % (
                    doc["vector"],
                    str(doc["regular"]).lower(),
                    str(doc["singleBoundedEdge"]).lower(),
                    verts,
                )
            )
        _emit("\n".join(lines))
    else:
        raise CliError(EXIT_USAGE, "newton supports json or text output")
    return EXIT_OK


def cmd_cells(args):
    budget = _resolve_budget(args)
    docs = []
    for a in _load_vectors(args):
        s = args.s_max if args.s_max is not None else a.n + 1
        if s < a.n + 1:
            raise CliError(EXIT_USAGE, "--s-max must be at least n+1 = %d" % (a.n + 1))
        try:
            cells = list(enumerate_cells(a, s, budget))
        except BudgetExceeded as exc:
            raise CliError(EXIT_BUDGET, str(exc))
        max_dim = max((c.dim for c in cells), default=0)
        docs.append(
            {
                "vector": a.label(),
                "s": s,
                "count": len(cells),
                "maxDim": max_dim,
                "d": max_dim - 1 if cells else None,
                "cells": [
                    {
                        "pattern": [sorted(w) for w in c.pattern],
                        "dim": c.dim,
                        "witness": [_frac(x) for x in c.witness],
                    }
                    for c in cells
                ],
            }
        )
    if args.format == "json":
        _emit(_json_dump(docs[0] if len(docs) == 1 else docs))
    elif args.format == "text":
        lines = []
        for doc in docs:
            lines.append(
                "(%s) s=%d cells=%d maxDim=%d"
                % (doc["vector"], doc["s"], doc["count"], doc["maxDim"])
            )
            for c in doc["cells"]:
                lines.append(
                    "  dim=%d pattern=%s witness=(%s)"
                    % (c["dim"], c["pattern"], ", ".join(c["witness"]))
                )
        _emit("\n".join(lines))
    else:
        raise CliError(EXIT_USAGE, "cells supports json or text output")
    return EXIT_OK


def cmd_verify(args):
    from . import verify as V

    results = V.run_all(seed=args.seed, threads=args.threads)
    if args.format == "json":
        _emit(
            _json_dump(
                {
                    "criteria": [
                        {
                            "number": r.number,
                            "name": r.name,
                            "ok": r.ok,
                            "detail": r.detail,
                        }
                        for r in results
                    ],
                    "passed": all(r.ok for r in results),
                }
            )
        )
    else:
        for r in results:
            _emit(r.line())
        good = sum(1 for r in results if r.ok)
        _emit("%d/%d criteria passed" % (good, len(results)))
    return EXIT_OK if all(r.ok for r in results) else EXIT_CHECK_FAILED


def build_parser():
    p = argparse.ArgumentParser(
        prog="troprec",
        description="Tropical recurrent sequences: solution-complex dimensions, "
        "transition graphs, and entropy.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, formats, default_format):
        sp.add_argument("--vector", help="comma-separated entries, inf allowed")
        sp.add_argument(
            "--vector-file", help="file with one vector per line (# comments allowed)"
        )
        sp.add_argument(
            "--format", choices=formats, default=default_format, help="output format"
        )
        sp.add_argument(
            "--budget", type=int, help="node budget (TROP_BUDGET env as fallback)"
        )

    sp = sub.add_parser("hilbert", help="d(s) table and quasilinearity profile")
    common(sp, ("json", "csv", "text"), "text")
    sp.add_argument("--s-max", type=int, help="largest length (default 4V, or n+8)")
    sp.add_argument(
        "--method", choices=("oracle", "graph", "both"), default="graph"
    )
    sp.set_defaults(fn=cmd_hilbert)

    sp = sub.add_parser("entropy", help="entropy, exact via graph or bracketed via oracle")
    common(sp, ("json", "text"), "text")
    sp.add_argument("--s-max", type=int, help="oracle sample depth (default n+8)")
    sp.add_argument(
        "--method", choices=("oracle", "graph", "both"), default="graph"
    )
    sp.set_defaults(fn=cmd_entropy)

    sp = sub.add_parser("graph", help="dump the transition graph")
    common(sp, ("dot", "json", "text"), "text")
    sp.set_defaults(fn=cmd_graph)

    sp = sub.add_parser("newton", help="hull vertices, regularity, bounded-edge flag")
    common(sp, ("json", "text"), "text")
    sp.set_defaults(fn=cmd_newton)

    sp = sub.add_parser("cells", help="dump the oracle's cell list for one length")
    common(sp, ("json", "text"), "text")
    sp.add_argument("--s-max", type=int, help="sequence length (default n+1)")
    sp.set_defaults(fn=cmd_cells)

    sp = sub.add_parser("verify", help="run the acceptance corpus")
    sp.add_argument("--format", choices=("json", "text"), default="text")
    sp.add_argument("--seed", type=int, default=20260814)
    sp.add_argument(
        "--threads", type=int, default=None, help="worker count for corpus sweeps"
    )
    sp.set_defaults(fn=cmd_verify)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except CliError as exc:
        sys.stderr.write("error: %s\n" % exc)
        return exc.code
    except BudgetExceeded as exc:
        sys.stderr.write("error: %s\n" % exc)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())

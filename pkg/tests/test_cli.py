import json

import pytest

from troprec.cli import main


@pytest.fixture(autouse=True)
def _no_env_budget(monkeypatch):
    monkeypatch.delenv("TROP_BUDGET", raising=False)


def run(capsys, *argv):
    rc = main(list(argv))
    out, err = capsys.readouterr()
    return rc, out, err


def test_hilbert_profile_json(capsys):
    rc, out, err = run(
        capsys,
        "hilbert", "--vector", "0,1,0", "--s-max", "12",
        "--method", "both", "--format", "json",
    )
    assert rc == 0 and err == ""
    doc = json.loads(out)
    assert doc["vector"] == "0,1,0"
    assert doc["H"] == "1/4"
    assert doc["period"] == 4
    assert doc["regularityIndex"] == 3
    assert (doc["V"], doc["E"]) == (11, 14)
    table = dict((s, d) for s, d in doc["samples"])
    for s in range(3, 13):
        assert table[s] == -(-s // 4)
    assert all(res["ok"] for res in doc["audits"].values())


def test_hilbert_text_mentions_period(capsys):
    rc, out, err = run(capsys, "hilbert", "--vector", "0,1,0", "--s-max", "12")
    assert rc == 0
    assert "H=1/4" in out and "period=4" in out


def test_hilbert_csv_columns(capsys):
    rc, out, _ = run(
        capsys,
        "hilbert", "--vector", "0,1,0", "--s-max", "16",
        "--method", "both", "--format", "csv",
    )
    assert rc == 0
    rows = out.strip().split("\n")
    assert rows[0] == "s,d_oracle,d_graph,r(s)"
    assert rows[1] == "1,1,1,"
    assert rows[4] == "4,1,1,0"
    assert rows[7] == "7,2,2,1/4"
    assert rows[16] == "16,4,4,0"


def test_hilbert_oracle_only(capsys):
    rc, out, _ = run(
        capsys,
        "hilbert", "--vector", "0,0,0", "--method", "oracle",
        "--s-max", "6", "--format", "json",
    )
    assert rc == 0
    doc = json.loads(out)
    assert doc["method"] == "ORACLE"
    assert doc["samples"] == [[1, 1], [2, 2], [3, 1], [4, 2], [5, 2], [6, 2]]


def test_newton_json(capsys):
    rc, out, _ = run(capsys, "newton", "--vector", "0,inf,0", "--format", "json")
    assert rc == 0
    doc = json.loads(out)
    assert doc["regular"] is True
    assert doc["vertices"] == [[0, "0"], [2, "0"]]


def test_newton_text(capsys):
    rc, out, _ = run(capsys, "newton", "--vector", "0,inf,0")
    assert rc == 0
    assert "regular=true" in out and "(0,0)" in out and "(2,0)" in out


def test_entropy_text_single_value(capsys):
    rc, out, _ = run(capsys, "entropy", "--vector", "0,0,0,0", "--method", "graph")
    assert rc == 0
    assert out == "1/2\n"


def test_entropy_both_agrees(capsys):
    rc, out, _ = run(
        capsys,
        "entropy", "--vector", "0,0,0", "--method", "both", "--format", "json",
    )
    assert rc == 0
    doc = json.loads(out)
    assert doc["H"] == "1/3"
    from fractions import Fraction

    assert Fraction(doc["lower"]) <= Fraction(1, 3) <= Fraction(doc["upper"])


def test_entropy_shallow_floor_warns_instead_of_failing(capsys):
    rc, out, err = run(
        capsys,
        "entropy", "--vector", "0,0,inf,inf,0", "--method", "both",
        "--s-max", "14", "--format", "json",
    )
    assert rc == 0
    assert "too shallow" in err
    doc = json.loads(out)
    assert doc["H"] == "1/3"
    assert doc["lower"] == "2/5" and doc["upper"] == "5/12"


def test_graph_dot(capsys):
    rc, out, _ = run(capsys, "graph", "--vector", "0,0,0", "--format", "dot")
    assert rc == 0
    assert out.startswith("digraph") and "->" in out


def test_graph_text(capsys):
    rc, out, _ = run(capsys, "graph", "--vector", "0,1,0")
    assert rc == 0
    assert "V=11 E=14" in out and "kind=general" in out


def test_cells_json(capsys):
    rc, out, _ = run(capsys, "cells", "--vector", "0,0,0", "--format", "json")
    assert rc == 0
    doc = json.loads(out)
    assert (doc["s"], doc["count"], doc["maxDim"], doc["d"]) == (3, 4, 2, 1)
    assert len(doc["cells"]) == 4


def test_vector_file_input(tmp_path, capsys):
    vf = tmp_path / "corpus.txt"
    vf.write_text("# two entries\n0,0,0\n\n0,1,0\n")
    rc, out, _ = run(
        capsys, "entropy", "--vector-file", str(vf), "--format", "json"
    )
    assert rc == 0
    docs = json.loads(out)
    assert [d["vector"] for d in docs] == ["0,0,0", "0,1,0"]
    assert [d["H"] for d in docs] == ["1/3", "1/4"]


def test_malformed_vector_is_usage_error(capsys):
    rc, out, err = run(capsys, "hilbert", "--vector", "0,x,1")
    assert rc == 2 and out == ""
    assert "malformed vector" in err


def test_missing_vector_is_usage_error(capsys):
    rc, _, err = run(capsys, "graph", "--format", "json")
    assert rc == 2 and "no vector" in err


def test_budget_flag_exhaustion(capsys):
    rc, _, err = run(capsys, "graph", "--vector", "1,0,2", "--budget", "3")
    assert rc == 3 and "budget" in err.lower()


def test_budget_env_and_override(monkeypatch, capsys):
    monkeypatch.setenv("TROP_BUDGET", "3")
    rc, _, err = run(capsys, "graph", "--vector", "1,0,2", "--format", "text")
    assert rc == 3
    rc, out, _ = run(
        capsys,
        "graph", "--vector", "1,0,2", "--budget", "100000", "--format", "text",
    )
    assert rc == 0 and "V=21 E=34" in out


def test_method_domain_error(capsys):
    rc, _, err = run(capsys, "graph", "--vector", "0,1,inf,0")
    assert rc == 4 and "graph method" in err


def test_dot_rejects_multiple_vectors(tmp_path, capsys):
    vf = tmp_path / "two.txt"
    vf.write_text("0,0,0\n0,1,0\n")
    rc, _, err = run(capsys, "graph", "--vector-file", str(vf), "--format", "dot")
    assert rc == 2


def test_s_max_too_small(capsys):
    rc, _, err = run(capsys, "hilbert", "--vector", "0,1,0", "--s-max", "2")
    assert rc == 2 and "n+1" in err


def test_unknown_flag_exits_like_argparse(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["hilbert", "--vector", "0,1,0", "--frobnicate"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_output_is_deterministic(capsys):
    argv = [
        "hilbert", "--vector", "0,0,inf,inf,0", "--s-max", "60",
        "--format", "json",
    ]
    rc1 = main(list(argv))
    first = capsys.readouterr().out
    rc2 = main(list(argv))
    second = capsys.readouterr().out
    assert rc1 == rc2 == 0
    assert first == second


def test_verify_reports_matrix_and_fails_honestly(capsys):
    rc, out, _ = run(capsys, "verify")
    assert rc == 1
    lines = [l for l in out.strip().split("\n")]
    badges = [l.split()[0] for l in lines[:-1]]
    assert len(badges) == 10 and set(badges) <= {"PASS", "FAIL"}
    assert badges.count("PASS") == 9
    seven = next(l for l in lines if l.split()[:2] == ["FAIL", "criterion"])
    assert seven.split()[2] == "7"
    assert lines[-1] == "9/10 criteria passed"

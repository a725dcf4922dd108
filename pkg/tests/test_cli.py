"""Command line behavior, exercised in process through cli.main."""

import json

import pytest

from invstab import cli
from invstab.codecs import encode_graph6
from invstab.corpus import exhaustive_up_to
from invstab.graphs import complete_graph, cycle_graph, disjoint_union


@pytest.fixture
def graph_file(tmp_path):
    def write(g, name="graph.g6"):
        path = tmp_path / name
        path.write_text(encode_graph6(g) + "\n", encoding="ascii")
        return str(path)

    return write


def test_compute_plain(graph_file, capsys):
    rc = cli.main([
        "compute", "--input", graph_file(cycle_graph(4)),
        "--invariant", "min_degree", "--side", "vertex",
    ])
    assert rc == 0
    assert capsys.readouterr().out == "vs(min_degree) = 1\n"


def test_compute_witness_lines(graph_file, capsys):
    rc = cli.main([
        "compute", "--input", graph_file(cycle_graph(3)),
        "--invariant", "girth", "--side", "edge", "--witness",
    ])
    assert rc == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "es(girth) = 1"
    assert out[1] == "witness: 0-1"


def test_compute_infinite_value(graph_file, capsys):
    rc = cli.main([
        "compute", "--input", graph_file(complete_graph(1)),
        "--invariant", "independent_sets", "--side", "vertex", "--witness",
    ])
    assert rc == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "vs(independent_sets) = inf"
    assert out[1] == "witness: none"


def test_compute_policy_all(graph_file, capsys):
    rc = cli.main([
        "compute", "--input", graph_file(complete_graph(1)),
        "--invariant", "independent_sets", "--side", "vertex",
        "--policy", "all",
    ])
    assert rc == 0
    assert capsys.readouterr().out == "vs(independent_sets) = 1\n"


def test_compute_threshold(graph_file, capsys):
    rc = cli.main([
        "compute", "--input", graph_file(cycle_graph(4)),
        "--invariant", "min_degree", "--side", "vertex", "--threshold", "2",
    ])
    assert rc == 0
    assert capsys.readouterr().out == "vs[f < 2](min_degree) = 1\n"


def test_compute_json(graph_file, capsys):
    g = cycle_graph(4)
    rc = cli.main([
        "compute", "--input", graph_file(g),
        "--invariant", "min_degree", "--side", "vertex",
        "--witness", "--json",
    ])
    assert rc == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload == {
        "graph6": encode_graph6(g),
        "invariant": "min_degree",
        "side": "vertex",
        "threshold": None,
        "policy": "proper",
        "value": 1,
        "witness": [0],
    }


def test_compute_edgelist_input(tmp_path, capsys):
    path = tmp_path / "path.edges"
    path.write_text("3 2\n0 1\n1 2\n", encoding="ascii")
    rc = cli.main([
        "compute", "--input", str(path), "--format", "edgelist",
        "--invariant", "min_degree", "--side", "vertex",
    ])
    assert rc == 0
    assert capsys.readouterr().out == "vs(min_degree) = 1\n"


def test_beta_prime(graph_file, capsys):
    rc = cli.main([
        "beta-prime", "--input", graph_file(cycle_graph(3)),
        "--invariant", "girth",
    ])
    assert rc == 0
    assert capsys.readouterr().out == "1\n"


def test_bounds_lines(graph_file, capsys):
    rc = cli.main([
        "bounds", "--input", graph_file(cycle_graph(4)),
        "--invariant", "min_degree", "--theorems", "lemma1,th2",
    ])
    assert rc == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "lemma1: confirmed (formula 2, observed 1)"
    assert out[1] == "th2: not_applicable"


def test_bounds_rejects_unknown_theorem(graph_file, capsys):
    rc = cli.main([
        "bounds", "--input", graph_file(cycle_graph(4)),
        "--invariant", "min_degree", "--theorems", "bogus",
    ])
    assert rc == 1
    assert "unknown theorem tags" in capsys.readouterr().err


def test_decompose_output(graph_file, capsys):
    g = disjoint_union([complete_graph(3), complete_graph(3)])
    rc = cli.main([
        "decompose", "--input", graph_file(g),
        "--invariant", "independent_sets", "--theorem", "th4",
    ])
    assert rc == 0
    assert capsys.readouterr().out == (
        "side: vertex\ncase: min_over_parts\nvalue: 1\n"
        "attained: -\nunstable: -\n"
    )


def test_decompose_not_applicable(graph_file, capsys):
    rc = cli.main([
        "decompose", "--input", graph_file(cycle_graph(4)),
        "--invariant", "independent_sets", "--theorem", "th4",
    ])
    assert rc == 0
    assert capsys.readouterr().out == "not applicable: graph is connected\n"


def test_verify_findings_exit_code(tmp_path, capsys):
    out = tmp_path / "report.json"
    rc = cli.main([
        "verify", "--n-max", "3", "--mode", "exhaustive",
        "--invariants", "independent_sets", "--theorems", "th5",
        "--out", str(out),
    ])
    assert rc == 3
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith("th5")
    assert "violated     2" in lines[0]
    assert lines[-1] == f"rows 11, violations 2, budget skips 0, report {out}"
    doc = json.loads(out.read_text())
    assert doc["campaign"]["mode"] == "exhaustive"
    assert doc["campaign"]["count"] is None  # not a random corpus
    assert len(doc["reports"]) == 11


def test_verify_clean_exit_code(tmp_path, capsys):
    out = tmp_path / "report.json"
    rc = cli.main([
        "verify", "--n-max", "3", "--mode", "exhaustive",
        "--invariants", "independent_sets,girth", "--theorems", "th4,th12",
        "--out", str(out), "--jobs", "2",
    ])
    assert rc == 0
    assert "violations 0" in capsys.readouterr().out


def test_verify_budget_skips(tmp_path, capsys):
    out = tmp_path / "report.json"
    rc = cli.main([
        "verify", "--n-max", "3", "--mode", "exhaustive",
        "--invariants", "min_degree", "--theorems", "lemma1",
        "--out", str(out), "--max-universe", "2",
    ])
    assert rc == 0
    text = capsys.readouterr().out
    assert "budget skips 10" in text  # every graph with more than one vertex


def test_corpus_file(tmp_path, capsys):
    out = tmp_path / "corpus.g6"
    rc = cli.main([
        "corpus", "--n-max", "3", "--mode", "exhaustive", "--out", str(out),
    ])
    assert rc == 0
    assert capsys.readouterr().out == f"11 graphs written to {out}\n"
    lines = out.read_text().splitlines()
    assert lines == [encode_graph6(g) for g in exhaustive_up_to(3)]


def test_report_renders_files(tmp_path, capsys):
    report = tmp_path / "report.json"
    cli.main([
        "verify", "--n-max", "3", "--mode", "exhaustive",
        "--invariants", "independent_sets", "--theorems", "th4,th5",
        "--out", str(report),
    ])
    capsys.readouterr()
    out_dir = tmp_path / "rendered"
    rc = cli.main(["report", "--input", str(report), "--out-dir", str(out_dir)])
    assert rc == 0
    printed = capsys.readouterr().out.splitlines()
    names = sorted(p.name for p in out_dir.iterdir())
    assert names == [
        "findings.csv", "outcomes_by_invariant.png",
        "summary.csv", "verdicts_by_tag.png",
    ]
    assert len(printed) == 4
    for png in out_dir.glob("*.png"):
        assert png.read_bytes()[:4] == b"\x89PNG"
    summary_csv = (out_dir / "summary.csv").read_text()
    assert summary_csv.splitlines()[0].startswith("tag,")


def test_malformed_graph6_exits_one(tmp_path, capsys):
    path = tmp_path / "bad.g6"
    path.write_text("Bww\n", encoding="ascii")
    rc = cli.main([
        "compute", "--input", str(path),
        "--invariant", "girth", "--side", "vertex",
    ])
    assert rc == 1
    err = capsys.readouterr().err
    assert err.startswith("invstab: ")
    assert "byte offset 2" in err


def test_budget_error_exits_two(graph_file, capsys):
    rc = cli.main([
        "compute", "--input", graph_file(complete_graph(7)),
        "--invariant", "girth", "--side", "edge",
    ])
    assert rc == 2
    assert "budget cap" in capsys.readouterr().err


def test_usage_error_exits_one(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["compute", "--side", "vertex"])
    assert exc.value.code == 1
    assert "error" in capsys.readouterr().err


def test_missing_file_exits_one(capsys):
    rc = cli.main([
        "compute", "--input", "/nonexistent/g.g6",
        "--invariant", "girth", "--side", "vertex",
    ])
    assert rc == 1
    assert "invstab:" in capsys.readouterr().err

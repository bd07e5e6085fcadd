import json
import subprocess
import sys

import pytest

from rigidvt.cli import RunConfig, main
from rigidvt.constructions import circulant_graph, complete_bipartite_graph, complete_graph, tight_counterexample
from rigidvt.errors import InputError
from rigidvt.graph import Graph
from rigidvt.io import (
    ParseError,
    emit_structured,
    emit_text,
    format_edge_list,
    parse_edge_list,
    parse_structured,
    provenance_path,
    read_edge_list,
    write_edge_list,
)


class TestEdgeList:
    def test_roundtrip(self):
        G = circulant_graph(10, [1, 3])
        assert parse_edge_list(format_edge_list(G, comment="c10")) == G

    def test_comments_and_order(self):
        text = "# triangle\n\n3 3\n1 0\n# mid comment\n2 1\n0 2\n"
        assert parse_edge_list(text) == complete_graph(3)

    def test_isolated_vertices(self):
        assert parse_edge_list("4 1\n0 3\n") == Graph(4, [(0, 3)])

    @pytest.mark.parametrize(
        "text,line",
        [
            ("3 2\n0 1\n1 1\n", 3),
            ("3 2\n0 1\n1 0\n", 3),
            ("3 1\n0 5\n", 2),
            ("3 1\n0 x\n", 2),
            ("3 2\n0 1\n", 2),
            ("3\n", 1),
            ("# only comments\n", 1),
            ("-1 0\n", 1),
        ],
    )
    def test_errors_carry_line(self, text, line):
        with pytest.raises(ParseError) as exc:
            parse_edge_list(text)
        assert exc.value.line == line and f"line {line}" in str(exc.value)

    def test_files(self, tmp_path):
        path = tmp_path / "g.txt"
        write_edge_list(complete_bipartite_graph(2, 3), path)
        assert read_edge_list(path) == complete_bipartite_graph(2, 3)
        with pytest.raises(InputError):
            read_edge_list(tmp_path / "missing.txt")
        assert provenance_path(path).name == "g.txt.provenance.json"


class TestStructured:
    def test_roundtrip(self):
        doc = {"b": [1, 2], "a": {"x": True, "y": None}, "c": "s"}
        assert parse_structured(emit_structured(doc)) == doc

    def test_text(self):
        out = emit_text({"b": 1, "a": {"ok": True, "cut": None}})
        assert out.splitlines() == ["a.cut: -", "a.ok: yes", "b: 1"]


def run(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture
def k5_file(tmp_path):
    path = tmp_path / "k5.txt"
    write_edge_list(complete_graph(5), path)
    return str(path)


class TestCli:
    def test_analyze(self, k5_file, capsys):
        code, out, _ = run(["analyze", k5_file, "--format", "structured"], capsys)
        doc = json.loads(out)
        assert code == 0
        assert doc["rank"]["rank"] == 7 and doc["rigid"] and doc["redundantly_rigid"]
        assert doc["global_rigidity"]["status"] == "certified_globally_rigid"
        assert doc["connectivity"] == {"kappa": 4, "cut": None}

    def test_analyze_text(self, k5_file, capsys):
        code, out, _ = run(["analyze", k5_file], capsys)
        assert code == 0 and "redundantly_rigid: yes" in out

    def test_analyze_cut(self, tmp_path, capsys):
        path = tmp_path / "bowtie.txt"
        write_edge_list(Graph(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]), path)
        code, out, _ = run(["analyze", str(path), "--format", "structured"], capsys)
        doc = json.loads(out)
        assert code == 0 and doc["connectivity"] == {"kappa": 1, "cut": [2]}
        assert doc["global_rigidity"]["status"] == "certified_not_globally_rigid"

    def test_seed_reproducible(self, k5_file, capsys):
        first = run(["analyze", k5_file, "--seed", "11", "--format", "structured"], capsys)
        second = run(["analyze", k5_file, "--seed", "11", "--format", "structured"], capsys)
        assert first == second

    def test_construct_tight(self, tmp_path, capsys):
        out_path = tmp_path / "tight2.txt"
        code, out, _ = run(["construct", "tight-counterexample", "d=2", "--out", str(out_path), "--format", "structured"], capsys)
        doc = json.loads(out)
        assert code == 0 and (doc["n"], doc["m"], doc["degree"]) == (30, 75, 5)
        assert doc["vertex_transitive"]
        assert read_edge_list(out_path) == tight_counterexample(2).graph
        prov = json.loads(provenance_path(out_path).read_text())
        assert prov["spec"] == "tight-counterexample d=2" and len(prov["loose_edges"]) == 15

    def test_construct_circulant(self, capsys):
        code, out, _ = run(["construct", "circulant", "n=13", "s=1,2,3", "--format", "structured"], capsys)
        assert code == 0 and json.loads(out)["m"] == 39

    def test_probe_pi(self, tmp_path, capsys):
        path = tmp_path / "k66.txt"
        write_edge_list(complete_bipartite_graph(6, 6), path)
        code, out, _ = run(["probe-pi", str(path), "--budget", "1000", "--seed", "1", "--format", "structured"], capsys)
        doc = json.loads(out)
        assert code == 0 and doc["found"] and all(doc["hypotheses"].values())

    def test_verify_tightness(self, capsys):
        code, out, _ = run(["verify-tightness", "--dim", "2", "--format", "structured"], capsys)
        doc = json.loads(out)
        assert code == 0 and doc["tightness"]["bound"] == 56 and doc["tightness"]["target"] == 57
        assert doc["verdict"] == "certified_not_globally_rigid"

    @pytest.mark.parametrize(
        "argv",
        [
            ["construct", "circulant", "n=4", "s=9"],
            ["verify-tightness", "--dim", "1"],
            ["analyze", "/nonexistent/graph.txt"],
            ["analyze"],
            ["frobnicate"],
            ["construct", "complete", "n=3", "--trials", "0"],
        ],
    )
    def test_bad_input_exit_2(self, argv, capsys):
        code, _, err = run(argv, capsys)
        assert code == 2

    def test_malformed_file_exit_2(self, tmp_path, capsys):
        path = tmp_path / "bad.txt"
        path.write_text("3 2\n0 1\n0 1\n")
        code, _, err = run(["analyze", str(path)], capsys)
        assert code == 2 and "line 3" in err

    def test_resource_exit_3(self, capsys):
        code, _, err = run(["construct", "lexicographic-product", "g=cycle:400", "h=complete:300"], capsys)
        assert code == 3 and "limit" in err

    def test_validation_exit_4(self, capsys):
        code, _, err = run(["construct", "clique-matching", "s=6", "k=5", "matching=0:1-0:2"], capsys)
        assert code == 4

    def test_property_violation_exit_5(self, monkeypatch, capsys):
        import rigidvt.constructions as constructions

        monkeypatch.setattr(constructions, "generic_rank", lambda *a, **k: 10**6)
        code, _, err = run(["verify-tightness", "--dim", "2"], capsys)
        assert code == 5 and "partition bound" in err

    def test_config_validation(self):
        with pytest.raises(InputError):
            RunConfig(seed=-1)
        with pytest.raises(InputError):
            RunConfig(d=0)

    def test_module_entry_point(self, k5_file):
        proc = subprocess.run(
            [sys.executable, "-m", "rigidvt", "analyze", k5_file, "--format", "structured"],
            capture_output=True,
            text=True,
            check=False,
        )
        assert proc.returncode == 0 and json.loads(proc.stdout)["rigid"]

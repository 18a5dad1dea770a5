import csv
import io

import pytest

from rrobust import cli
from rrobust.cli import RunReport, main, parse_report
from rrobust.generators import parse_ground_truth
from rrobust.graph import Digraph, is_r_reachable, read_graph, save_graph
from conftest import complete, star


def run(argv):
    out = io.StringIO()
    code = main([str(a) for a in argv], stdout=out)
    return code, out.getvalue()


def strip_seconds(text):
    return "\n".join(l for l in text.splitlines() if not l.startswith("seconds:"))


@pytest.fixture
def files(tmp_path, planted200):
    paths = {}
    graphs = {
        "star": star(6, 0),
        "k6": complete(6),
        "k12": complete(12),
        "k14": complete(14),
        "split": Digraph.from_edges(4, [(0, 1), (1, 0), (2, 3), (3, 2)]),
        "planted": planted200[0],
    }
    for name, g in graphs.items():
        paths[name] = tmp_path / f"{name}.txt"
        save_graph(g, paths[name])
    return paths


class TestDegree:
    def test_star_fails_at_leaf(self, files):
        code, out = run(["degree", files["star"], "--r", 1, "--delta", 0])
        rep = parse_report(out)
        assert code == 1
        assert rep["assumption"] == "fails"
        assert rep["witness_vertex"] == "1"

    def test_k6_holds(self, files):
        code, out = run(["degree", files["k6"], "--r", 1, "--delta", 1])
        assert code == 0
        assert parse_report(out)["witness_vertex"] == "-"

    def test_planted_holds(self, files):
        code, out = run(["degree", files["planted"], "--r", 11, "--delta", 30])
        rep = parse_report(out)
        assert code == 0
        assert (rep["d_min"], rep["bound"], rep["assumption"]) == ("79", "52", "holds")


class TestExact:
    def test_split_graph_not_robust(self, files):
        code, out = run(["exact", files["split"], "--r", 1])
        rep = parse_report(out)
        assert code == 1
        assert rep["verdict"] == "not_robust"
        assert rep["witness_a"] != "-" and rep["witness_b"] != "-"

    def test_k6_max(self, files):
        code, out = run(["exact", files["k6"], "--max"])
        assert code == 0
        assert parse_report(out)["max_robustness"] == "3"

    def test_k6_robust_has_no_witness(self, files):
        code, out = run(["exact", files["k6"], "--r", 3])
        rep = parse_report(out)
        assert code == 0
        assert rep["witness_a"] == rep["witness_b"] == "-"

    def test_size_guard(self, files, capsys):
        code, out = run(["exact", files["k14"], "--r", 1])
        assert code == 2
        assert out == ""
        assert "error" in capsys.readouterr().err

    def test_r_and_max_are_exclusive(self, files):
        assert run(["exact", files["k6"], "--r", 1, "--max"])[0] == 2


class TestTest:
    def test_planted_rejects_with_valid_witness(self, files, planted200):
        g, _ = planted200
        code, out = run(["test", files["planted"], "--r", 11, "--delta", 30, "--seed", 0])
        rep = parse_report(out)
        assert code == 1
        assert rep["verdict"] == "reject"
        assert int(rep["witness_R"]) <= 41
        a = {int(x) for x in rep["witness_a"].split()}
        b = {int(x) for x in rep["witness_b"].split()}
        assert not is_r_reachable(g, a, 41) and not is_r_reachable(g, b, 41)

    def test_k12_accepts(self, files):
        code, out = run(["test", files["k12"], "--r", 2, "--delta", 4])
        rep = parse_report(out)
        assert code == 0
        assert rep["verdict"] == "accept"
        assert rep["witness_a"] == "-"

    def test_report_echoes_config(self, files):
        _, out = run(["test", files["k12"], "--r", 2, "--delta", 4, "--trials", 2,
                      "--seed", 5, "--mode", "exhaustive"])
        rep = parse_report(out)
        assert rep["schema"] == "rrobust-report/1"
        assert rep["command"] == "test"
        assert (rep["r"], rep["delta_cap"], rep["t"], rep["mode"], rep["trials"],
                rep["seed"], rep["fail_prob"]) == ("2", "4", "9", "exhaustive", "2", "5", "1/3")

    def test_missing_assumption_hint(self, files, capsys):
        code, out = run(["test", files["star"], "--r", 1, "--delta", 1])
        assert code == 3
        assert out == ""
        assert "--arbitrary" in capsys.readouterr().err

    def test_arbitrary_rejects_on_degree(self, files):
        code, out = run(["test", files["star"], "--r", 1, "--delta", 1, "--arbitrary"])
        rep = parse_report(out)
        assert code == 1
        assert rep["degree_witness"] == "true"
        assert (rep["witness_a"], rep["witness_b"]) == ("1", "0 2 3 4 5")
        assert rep["witness_R"] == "2"

    def test_sigma_amplifies(self, files):
        _, out = run(["test", files["k12"], "--r", 2, "--delta", 4, "--sigma", "1/100"])
        assert parse_report(out)["runs"] == "5"

    def test_bad_t(self, files):
        assert run(["test", files["k12"], "--r", 2, "--delta", 4, "--t", "x"])[0] == 2

    def test_deterministic_modulo_seconds(self, files):
        argv = ["test", files["planted"], "--r", 11, "--delta", 30, "--seed", 3]
        first, second = run(argv)[1], run(argv)[1]
        assert strip_seconds(first) == strip_seconds(second)
        assert "seconds:" in first

    def test_workers_do_not_change_report(self, files):
        argv = ["test", files["planted"], "--r", 11, "--delta", 30, "--seed", 4]
        one = run(argv + ["--workers", 1])[1]
        many = run(argv + ["--workers", 8])[1]
        assert strip_seconds(one) == strip_seconds(many)

    def test_fail_closed(self, files, monkeypatch, capsys):
        # pretend every set is reachable so no witness can re-verify
        monkeypatch.setattr(cli, "is_r_reachable", lambda g, s, r: True)
        code, out = run(["test", files["planted"], "--r", 11, "--delta", 30])
        assert code == 4
        assert out == ""
        assert "internal error" in capsys.readouterr().err


class TestParseErrors:
    def test_missing_file(self, tmp_path):
        assert run(["degree", tmp_path / "nope.txt", "--r", 1, "--delta", 0])[0] == 2

    def test_malformed_file(self, tmp_path):
        bad = tmp_path / "bad.txt"
        bad.write_text("3 1\n0 0\n")
        assert run(["exact", bad, "--max"])[0] == 2

    def test_unknown_command(self):
        assert run(["frobnicate"])[0] == 2


def test_interval_k12(files):
    code, out = run(["interval", files["k12"], "--delta", 2, "--beta", 1, "--sigma", "1/10"])
    rep = parse_report(out)
    assert code == 0
    lo, hi = int(rep["lo"]), int(rep["hi"])
    assert lo <= 6 <= hi and hi - lo <= 4


def test_gen_writes_graph_and_truth(tmp_path):
    path = tmp_path / "g.txt"
    code, out = run(["gen", "--n", 12, "--size-a", 4, "--size-b", 4, "--rbar", 2,
                     "--seed", 7, "-o", path])
    assert code == 0
    g = read_graph(path)
    part, rbar = parse_ground_truth((tmp_path / "g.txt.truth").read_text(), g.n)
    assert (g.n, rbar, len(part.a), len(part.b), len(part.c)) == (12, 2, 4, 4, 4)
    assert parse_report(out)["m"] == str(g.m)


def test_gen_rejects_small_blocks(tmp_path):
    code, _ = run(["gen", "--n", 12, "--size-a", 3, "--size-b", 4, "--rbar", 2,
                   "-o", tmp_path / "g.txt"])
    assert code == 2


class TestFig3:
    def test_size_list_rows(self, tmp_path):
        path = tmp_path / "fig.csv"
        code, out = run(["fig3", "--size-list", "30,50,70", "-o", path])
        assert code == 0 and out == ""
        with open(path, newline="") as fh:
            rows = list(csv.DictReader(fh))
        assert [r["setting"] for r in rows] == ["size=30", "size=50", "size=70"]
        assert list(rows[0]) == cli.FIG3_COLUMNS
        assert all(r["threshold"] == "41" for r in rows)

    def test_stdout_csv(self):
        code, out = run(["fig3", "--rbar-list", "4", "--size", 70])
        rows = list(csv.DictReader(io.StringIO(out)))
        assert code == 0
        assert len(rows) == 1 and rows[0]["rbar"] == "4" and rows[0]["threshold"] == "35"

    def test_empty_list(self):
        assert run(["fig3", "--rbar-list", ""])[0] == 2


def test_report_roundtrip():
    rep = RunReport("x")
    rep.add("list", [1, 2])
    rep.add("flag", True)
    rep.add("none", None)
    assert parse_report(rep.dumps()) == {
        "schema": "rrobust-report/1", "command": "x",
        "list": "1 2", "flag": "true", "none": "-"}

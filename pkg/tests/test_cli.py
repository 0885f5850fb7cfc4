import io
import json
import subprocess
import sys

import pytest

from hypoenergy.certify import loads
from hypoenergy.cli import fmt_real, main
from hypoenergy.formats import to_edgelist, to_graph6
from hypoenergy.graph import Graph, complete_bipartite, complete_graph, cycle_graph, disjoint_union
from hypoenergy.verify import verify_certificate


def run(capsys, monkeypatch, argv, stdin=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


class TestEnergy:
    def test_k23_edgelist(self, capsys, monkeypatch):
        code, out, _ = run(capsys, monkeypatch, ["energy", "--format", "edgelist"],
                           to_edgelist(complete_bipartite(2, 3)))
        assert code == 0
        assert out == "n=5 m=6 c=2 E=4.898979485566 hypoenergetic margin=-0.101020514434\n"

    def test_c6_graph6(self, capsys, monkeypatch, tmp_path):
        path = tmp_path / "c6.g6"
        path.write_text(to_graph6(cycle_graph(6)) + "\n")
        code, out, _ = run(capsys, monkeypatch, ["energy", str(path)])
        assert code == 0 and "E=8.0 non-hypoenergetic" in out

    def test_s1(self, capsys, monkeypatch):
        code, out, _ = run(capsys, monkeypatch, ["energy"], "@\n")
        assert "E=0.0 hypoenergetic" in out

    def test_disconnected_reports_c_per_component(self, capsys, monkeypatch):
        g = disjoint_union(cycle_graph(3), Graph(2, [(0, 1)]))
        code, out, _ = run(capsys, monkeypatch, ["energy"], to_graph6(g) + "\n")
        assert code == 0 and "c=1,0" in out and "disconnected" in out

    @pytest.mark.parametrize("stdin,fmt", [("B\n", "graph6"), ("3 1\n0 7\n", "edgelist")])
    def test_parse_failure_exit_2(self, capsys, monkeypatch, stdin, fmt):
        code, _, err = run(capsys, monkeypatch, ["energy", "--format", fmt], stdin)
        assert code == 2 and "error" in err


class TestVerifyTheorem:
    def test_full(self, capsys, monkeypatch, tmp_path):
        report = tmp_path / "r.json"
        code, out, _ = run(capsys, monkeypatch,
                           ["verify-theorem", "--max-n", "10", "--out", str(report)])
        assert code == 0
        data = json.loads(report.read_text())
        assert data["schema"] == "hypoenergy.run/1"
        assert data["summary"]["hits"] == ["S1", "S3", "S4", "K23", "W"]
        assert data["summary"]["scanned"] == len(data["records"]) == 2571
        assert "wall_time_s" not in data
        tallies = data["summary"]["by_order"]
        assert sum(c for c, _ in tallies.values()) == len(data["records"])
        assert sum(h for _, h in tallies.values()) == 5
        keys = [(r["n"], r["id"]) for r in data["records"]]
        assert keys == sorted(keys)

    def test_cyclic(self, capsys, monkeypatch):
        code, out, _ = run(capsys, monkeypatch, ["verify-theorem", "--max-n", "10", "--cyclic-only"])
        assert code == 0 and "confirmed: 1 hits" in out and "hit K23" in out

    def test_quadrangle_free(self, capsys, monkeypatch, tmp_path):
        report = tmp_path / "q.json"
        code, out, _ = run(capsys, monkeypatch, ["verify-theorem", "--max-n", "10",
                                                 "--quadrangle-free", "--min-edges-n",
                                                 "--out", str(report)])
        assert code == 0 and "confirmed: 0 hits" in out
        assert all(r["margin"] > 0 for r in json.loads(report.read_text())["records"])

    def test_reports_deterministic_across_jobs(self, capsys, monkeypatch, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        run(capsys, monkeypatch, ["verify-theorem", "--max-n", "8", "--out", str(a)])
        run(capsys, monkeypatch, ["verify-theorem", "--max-n", "8", "--jobs", "3", "--out", str(b)])
        assert a.read_bytes() == b.read_bytes()

    def test_timing_opt_in(self, capsys, monkeypatch, tmp_path):
        report = tmp_path / "t.json"
        run(capsys, monkeypatch, ["verify-theorem", "--max-n", "4", "--timing", "--out", str(report)])
        assert "wall_time_s" in json.loads(report.read_text())

    def test_counterexample_exit_1(self, capsys, monkeypatch):
        # Removing K23 from the expected set makes its hit look like a counterexample.
        from hypoenergy import cli
        monkeypatch.setattr(cli, "_expected_hits", lambda spec: {"S1", "S3", "S4"})
        monkeypatch.setattr(cli, "is_exceptional", lambda g: None if g.n == 5 else "x")
        code, out, _ = run(capsys, monkeypatch, ["verify-theorem", "--max-n", "5"])
        assert code == 1 and "counterexample" in out

    def test_numeric_error_exit_2(self, capsys, monkeypatch):
        from hypoenergy import spectral
        monkeypatch.setattr(spectral, "TAU_ESCALATE", 10.0)
        monkeypatch.setattr(spectral, "TAU_DECIDE", 10.0)
        code, _, err = run(capsys, monkeypatch, ["verify-theorem", "--max-n", "3"])
        assert code == 2 and "numeric" in err

    def test_delta_above_three_refused(self, capsys, monkeypatch):
        code, _, _ = run(capsys, monkeypatch, ["verify-theorem", "--max-n", "5", "--delta", "4"])
        assert code == 2


class TestCertify:
    def test_k4(self, capsys, monkeypatch):
        code, out, _ = run(capsys, monkeypatch, ["certify", "-"], to_graph6(complete_graph(4)) + "\n")
        assert code == 0
        cert = loads(out)
        assert len(cert.cuts()) == 1 and len(cert.leaves()) == 2
        assert verify_certificate(cert).root_slack == pytest.approx(2)
        assert "# accepted" in out

    def test_k23(self, capsys, monkeypatch):
        code, out, _ = run(capsys, monkeypatch, ["certify", "-"], "DFw\n")
        assert code == 0 and out.strip() == "DFw exceptional: K23"

    def test_corpus_n9(self, capsys, monkeypatch, tmp_path):
        report = tmp_path / "c.json"
        certs = tmp_path / "certs"
        code, out, _ = run(capsys, monkeypatch, ["certify", "--max-n", "9", "--out", str(report),
                                                 "--cert-dir", str(certs)])
        assert code == 0
        summary = json.loads(report.read_text())["summary"]
        assert summary["exceptional"] == 1 and summary["failed"] == summary["rejected"] == 0
        assert summary["verified"] == len(list(certs.iterdir())) == summary["inputs"] - 1
        sample = sorted(certs.iterdir())[-1]
        code, out, _ = run(capsys, monkeypatch, ["check-cert", str(sample)])
        assert code == 0 and out.splitlines()[-1].startswith("accepted")

    def test_failure_exit_1_with_stuck_graph(self, capsys, monkeypatch):
        code, out, _ = run(capsys, monkeypatch, ["certify", "-", "--max-cut", "3"], "C~\n")
        assert code == 1 and "stuck subgraph C~" in out

    def test_precondition_exit_2(self, capsys, monkeypatch):
        code, _, err = run(capsys, monkeypatch, ["certify", "-"], to_graph6(complete_graph(5)) + "\n")
        assert code == 2 and "degree" in err

    def test_tampered_certificate_rejected(self, capsys, monkeypatch, tmp_path):
        path = tmp_path / "bad.cert"
        path.write_text("CERT 5 6\nLEAF TreeBase DFw\n")
        code, out, _ = run(capsys, monkeypatch, ["check-cert", str(path)])
        assert code == 1 and "rejected" in out

    def test_needs_input(self, capsys, monkeypatch):
        assert run(capsys, monkeypatch, ["certify"])[0] == 2


class TestEnumerate:
    def test_trees_four(self, capsys, monkeypatch):
        code, out, _ = run(capsys, monkeypatch, ["enumerate", "--trees", "--max-n", "4"])
        assert code == 0 and out.split() == ["@", "A_", "BW", "CF", "CL"]

    def test_order_one(self, capsys, monkeypatch):
        assert run(capsys, monkeypatch, ["enumerate", "--max-n", "1"])[1] == "@\n"

    def test_counts(self, capsys, monkeypatch):
        code, out, _ = run(capsys, monkeypatch, ["enumerate", "--counts", "--max-n", "7"])
        lines = out.splitlines()
        assert lines[0] == "n,count,hypoenergetic_count"
        assert [int(line.split(",")[1]) for line in lines[1:]] == [1, 1, 2, 6, 10, 29, 64]

    def test_edgelist_output(self, capsys, monkeypatch):
        code, out, _ = run(capsys, monkeypatch, ["enumerate", "--max-n", "2", "--format", "edgelist"])
        assert out == "1 0\n2 1\n0 1\n"

    @pytest.mark.parametrize("argv", [
        ["enumerate", "--trees", "--cyclic-only", "--max-n", "3"],
        ["enumerate", "--trees", "--min-edges-n", "--max-n", "3"],
        ["enumerate", "--max-n", "0"],
        ["enumerate", "--max-n", "99"],
        ["enumerate"],
    ])
    def test_invalid_flags_exit_2(self, capsys, monkeypatch, argv):
        try:
            code = main(argv)
        except SystemExit as exc:
            code = exc.code
        assert code == 2


def test_fmt_real():
    assert fmt_real(8.0) == "8.0"
    assert fmt_real(-0.0) == "0.0"
    assert fmt_real(4.898979485566356) == "4.898979485566"


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "hypoenergy", "energy"], input="C~\n",
                         capture_output=True, text=True)
    assert out.returncode == 0
    assert out.stdout == "n=4 m=6 c=3 E=6.0 non-hypoenergetic margin=2.0\n"

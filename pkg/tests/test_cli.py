"""Command-line interface: subcommands, formats, exit codes."""

import io
import json
from types import SimpleNamespace

import pytest

import qbounds.cli as cli
from qbounds.cli import UsageError, main, parse_family
from qbounds.graphs import Graph, to_graph6
from qbounds.search import SweepReport


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestParseFamily:
    def test_two_center_literals(self):
        g, params = parse_family("H:1,2,1")
        assert (params.p, params.r, params.s, params.adjacent) == (1, 2, 1, False)
        assert g.n == 6
        g, params = parse_family("G:0,3,2")
        assert params.adjacent and g.n == 7

    def test_named_literals(self):
        cases = {
            "star:5": 5, "path:4": 4, "cycle:5": 5, "snplus:6": 6,
            "Kab:2,3": 5, "csplit:4": 6, "complete:4": 4,
        }
        for literal, n in cases.items():
            g, params = parse_family(literal)
            assert g.n == n and params is None

    @pytest.mark.parametrize(
        "literal",
        ["star", "star:x", "H:1,2", "G:1", "unknown:3", "Kab:2", "path:1,2"],
    )
    def test_rejects_malformed_literals(self, literal):
        with pytest.raises(UsageError):
            parse_family(literal)


class TestSpectrum:
    def test_triangle_q(self, capsys):
        code, out, _ = run(capsys, "spectrum", "Bw", "--matrix", "Q")
        assert code == 0
        assert "eigenvalues: 4, 1, 1" in out
        assert "trace: 6" in out
        assert "degrees: 2, 2, 2" in out

    def test_star_family_literal(self, capsys):
        code, out, _ = run(capsys, "spectrum", "--family", "star:5",
                           "--matrix", "Q", "--format", "json")
        assert code == 0
        data = json.loads(out)
        assert data["schema"] == 1
        assert data["eigenvalues"] == pytest.approx([5, 1, 1, 1, 0], abs=1e-9)
        assert data["trace"] == 8
        assert data["degrees"] == [4, 1, 1, 1, 1]

    def test_empty_graph(self, capsys):
        code, out, _ = run(capsys, "spectrum", "B?", "--matrix", "Q")
        assert code == 0
        assert "eigenvalues: 0, 0, 0" in out

    def test_adjacency_matrix(self, capsys):
        code, out, _ = run(capsys, "spectrum", "Bw", "--matrix", "A",
                           "--format", "json")
        data = json.loads(out)
        assert data["eigenvalues"] == pytest.approx([2, -1, -1], abs=1e-9)
        assert data["trace"] == 0

    def test_csv_format(self, capsys):
        code, out, _ = run(capsys, "spectrum", "Bw", "--format", "csv")
        lines = out.splitlines()
        assert lines[0] == "graph6,matrix,index,eigenvalue"
        assert lines[1] == "Bw,Q,1,4"

    def test_stdin_dash(self, capsys, monkeypatch):
        monkeypatch.setattr("sys.stdin", io.StringIO("Bw\n"))
        code, out, _ = run(capsys, "spectrum", "-")
        assert code == 0 and "4, 1, 1" in out

    def test_parse_error_exits_2(self, capsys):
        code, _, err = run(capsys, "spectrum", "###")
        assert code == 2 and "error:" in err

    def test_graph_and_family_conflict(self, capsys):
        code, _, err = run(capsys, "spectrum", "Bw", "--family", "star:5")
        assert code == 2 and "not both" in err

    def test_missing_input(self, capsys):
        code, _, err = run(capsys, "spectrum")
        assert code == 2

    def test_out_file(self, capsys, tmp_path):
        target = tmp_path / "spec.txt"
        code, out, _ = run(capsys, "spectrum", "Bw", "--out", str(target))
        assert code == 0 and out == ""
        assert "4, 1, 1" in target.read_text()


class TestCheck:
    def test_equality_on_triangle(self, capsys):
        code, out, _ = run(capsys, "check", "Bw", "--bound", "main_q1q2")
        assert code == 0
        assert "holds-with-equality" in out and "witness=K3" in out

    def test_not_applicable_exits_4(self, capsys):
        code, out, _ = run(capsys, "check", "Bw", "--bound", "q1_lower")
        assert code == 4 and "not-applicable" in out

    def test_snplus_counterexample(self, capsys):
        code, out, _ = run(capsys, "check", "--family", "snplus:5",
                           "--bound", "snplus_refutation", "--m", "3",
                           "--format", "json")
        assert code == 0
        cert = json.loads(out)["certificates"][0]
        assert cert["verdict"] == "holds"
        assert cert["slack"] == pytest.approx(0.3186693564, abs=1e-9)

    def test_snplus_needs_m(self, capsys):
        code, _, err = run(capsys, "check", "--family", "snplus:5",
                           "--bound", "snplus_refutation")
        assert code == 2 and "--m" in err

    def test_snplus_layout_guard(self, capsys):
        code, _, err = run(capsys, "check", "Bo",
                           "--bound", "snplus_refutation", "--m", "3")
        assert code == 2 and "snplus" in err

    def test_violated_exits_1(self, capsys):
        # singleton quotient on the 4-cycle overshoots the strict claim
        code, out, _ = run(capsys, "check", "Cr",
                           "--bound", "strict_sandwich", "--U", "0")
        assert code == 1 and "violated" in out

    def test_precondition_exits_4(self, capsys):
        code, out, _ = run(capsys, "check", "Bw",
                           "--bound", "regular_corollary", "--U", "0,1,2")
        assert code == 4 and "proper" in out

    def test_mode_selects_variant(self, capsys):
        code, out, _ = run(capsys, "check", "Bw", "--bound", "t1_sandwich",
                           "--mode", "safe", "--U", "0")
        assert code == 0 and "t1_sandwich:safe" in out

    def test_subset_checker_needs_U(self, capsys):
        code, _, err = run(capsys, "check", "Bw", "--bound", "t1_sandwich:safe")
        assert code == 2 and "--U" in err

    def test_ambiguous_bare_name(self, capsys):
        code, _, err = run(capsys, "check", "Bw", "--bound", "schur_sum")
        assert code == 2 and "schur_sum:L" in err

    def test_unknown_bound(self, capsys):
        code, _, err = run(capsys, "check", "Bw", "--bound", "nosuch")
        assert code == 2 and "unknown" in err

    def test_single_m_schur(self, capsys):
        code, out, _ = run(capsys, "check", "Bw", "--bound", "schur_sum:Q",
                           "--m", "2", "--format", "csv")
        assert code == 0
        lines = out.splitlines()
        assert lines[0].startswith("bound_id,input,")
        assert lines[1].startswith("schur_sum:Q:m=2,Bw,5,4,1,holds")

    def test_m_rejected_elsewhere(self, capsys):
        code, _, err = run(capsys, "check", "Bw", "--bound", "main_q1q2",
                           "--m", "2")
        assert code == 2 and "--m" in err


class TestVerdictExit:
    def fold(self, *verdicts):
        return cli._verdict_exit([SimpleNamespace(verdict=v) for v in verdicts])

    def test_severity_order(self):
        assert self.fold("holds") == 0
        assert self.fold("holds", "holds-with-equality") == 0
        assert self.fold("holds", "violated") == 1
        assert self.fold("indeterminate-numeric", "holds") == 3
        assert self.fold("violated", "indeterminate-numeric") == 1
        assert self.fold("not-applicable", "not-applicable") == 4
        assert self.fold("not-applicable", "holds") == 0
        assert self.fold() == 0


class TestFamilyCmd:
    def test_h_family_table(self, capsys):
        code, out, _ = run(capsys, "family", "H:2,2,1")
        assert code == 0
        assert "family: H(2,2,1)" in out
        assert "family:h_q2_strict" in out and "holds" in out

    def test_g_family_violation_exits_1(self, capsys):
        code, out, _ = run(capsys, "family", "G:1,0,0")
        assert code == 1 and "family:g_case_ii:q2" in out

    def test_no_claims_flag(self, capsys):
        code, out, _ = run(capsys, "family", "G:1,0,0", "--no-claims")
        assert code == 0 and "g_case" not in out

    def test_plain_literal_has_no_claims(self, capsys):
        code, out, _ = run(capsys, "family", "star:4", "--format", "json")
        assert code == 0
        data = json.loads(out)
        assert data["claims"] == []
        assert data["graph6"] == "Cs" and data["n"] == 4

    def test_full_claim_set_json(self, capsys):
        code, out, _ = run(capsys, "family", "G:0,3,2", "--format", "json")
        assert code == 0
        data = json.loads(out)
        assert len(data["claims"]) == 8
        assert len(data["q_spectrum"]) == data["n"] == 7

    def test_degenerate_family_exits_2(self, capsys):
        code, _, err = run(capsys, "family", "H:0,0,0")
        assert code == 2 and "error:" in err

    def test_normalization_guard_exits_2(self, capsys):
        code, _, err = run(capsys, "family", "H:1,0,2")
        assert code == 2


class TestExtractH:
    def test_triangle_maps_to_itself(self, capsys):
        code, out, _ = run(capsys, "extract-h", "Bw", "--format", "json")
        assert code == 0
        data = json.loads(out)
        assert data["label"] == "G(1,0,0)" and data["graph6"] == "Bw"
        assert data["d1_plus_d2"] == {"input": 4, "extracted": 4}

    def test_star_maps_to_adjacent_family(self, capsys):
        code, out, _ = run(capsys, "extract-h", "--family", "star:5",
                           "--format", "json")
        data = json.loads(out)
        assert data["label"] == "G(0,3,0)"

    def test_cycle5_shrinks_but_keeps_top_degrees(self, capsys):
        code, out, _ = run(capsys, "extract-h", "--family", "cycle:5",
                           "--format", "json")
        data = json.loads(out)
        assert data["n"] <= 5
        assert data["d1_plus_d2"]["input"] == data["d1_plus_d2"]["extracted"] == 4

    def test_disconnected_input_exits_2(self, capsys):
        two_k2 = to_graph6(Graph(4, [(0, 1), (2, 3)]))
        code, _, err = run(capsys, "extract-h", two_k2)
        assert code == 2 and "connected" in err


class TestSweepCmd:
    def test_table_summary(self, capsys):
        code, out, _ = run(capsys, "sweep", "--corpus", "enumerate:3..4",
                           "--bounds", "main_q1q2,l_sum2")
        assert code == 0
        assert "graphs: 42" in out
        assert "min positive slack 0.2360679775 at Cn" in out

    def test_json_report(self, capsys):
        code, out, _ = run(capsys, "sweep", "--corpus", "enumerate:3",
                           "--bounds", "main_q1q2", "--format", "json")
        assert code == 0
        data = json.loads(out)
        assert data["schema"] == 1
        assert data["equality_witnesses"]["main_q1q2"] == ["Bo", "Bg", "BW", "Bw"]

    def test_csv_totals(self, capsys):
        code, out, _ = run(capsys, "sweep", "--corpus", "enumerate:3",
                           "--bounds", "main_q1q2", "--format", "csv")
        assert out.splitlines()[1] == "main_q1q2,0,4,0,0,0,0"

    def test_findings_do_not_fail_the_exit(self, capsys):
        # a finding-style checker may report violations; the exit code
        # tracks safe-mode checkers only
        code, out, _ = run(capsys, "sweep", "--corpus", "enumerate:4",
                           "--bounds", "strict_sandwich",
                           "--subsets", "all-singletons", "--format", "json")
        assert code == 0
        data = json.loads(out)
        assert len(data["violations"]["strict_sandwich"]) > 0

    def test_safe_violation_exits_1(self, capsys, monkeypatch):
        report = SweepReport(
            corpus={"source": "enumerate:3", "connected_only": True,
                    "dedup": "none", "raw": 8, "graphs": 4,
                    "dedup_dropped": 0},
            subsets="all-singletons",
            bounds=["main_q1q2"],
            totals={"main_q1q2": {"holds": 3, "holds-with-equality": 0,
                                  "violated": 1, "indeterminate-numeric": 0,
                                  "not-applicable": 0, "errors": 0}},
            equality_witnesses={"main_q1q2": []},
            min_positive_slack={"main_q1q2": None},
            violations={"main_q1q2": [{"bound_id": "main_q1q2", "input": "Bw",
                                       "lhs": 1.0, "rhs": 2.0, "slack": -1.0}]},
            errors=[],
            truncation={"equality_witnesses": {"main_q1q2": 0},
                        "violations": {"main_q1q2": 0}, "errors": 0},
        )
        monkeypatch.setattr(cli, "run_sweep", lambda *a, **k: report)
        code, _, _ = run(capsys, "sweep", "--corpus", "enumerate:3",
                         "--bounds", "main_q1q2", "--format", "json")
        assert code == 1

    def test_bad_corpus_exits_2(self, capsys):
        code, _, err = run(capsys, "sweep", "--corpus", "enumerate:12",
                           "--bounds", "main_q1q2")
        assert code == 2

    def test_unknown_bound_exits_2(self, capsys):
        code, _, err = run(capsys, "sweep", "--corpus", "enumerate:3",
                           "--bounds", "nosuch")
        assert code == 2 and "unknown" in err

    def test_missing_file_exits_2(self, capsys):
        code, _, err = run(capsys, "sweep", "--corpus", "file:/no/such.g6",
                           "--bounds", "main_q1q2")
        assert code == 2

    def test_emit_certificates(self, capsys, tmp_path):
        out_csv = tmp_path / "certs.csv"
        code, _, _ = run(capsys, "sweep", "--corpus", "enumerate:3",
                         "--bounds", "main_q1q2",
                         "--emit-certificates", str(out_csv))
        assert code == 0
        assert out_csv.read_text().startswith("bound_id,input,")

    def test_env_defaults_and_override(self, capsys, monkeypatch):
        monkeypatch.setenv("QBOUNDS_OPTS", "--format json")
        code, out, _ = run(capsys, "sweep", "--corpus", "enumerate:3",
                           "--bounds", "main_q1q2")
        assert json.loads(out)["schema"] == 1
        code, out, _ = run(capsys, "sweep", "--corpus", "enumerate:3",
                           "--bounds", "main_q1q2", "--format", "csv")
        assert out.startswith("bound,holds")

    def test_report_to_out_file(self, capsys, tmp_path):
        target = tmp_path / "report.json"
        code, out, _ = run(capsys, "sweep", "--corpus", "enumerate:3",
                           "--bounds", "main_q1q2", "--format", "json",
                           "--out", str(target))
        assert code == 0 and out == ""
        assert json.loads(target.read_text())["schema"] == 1


class TestArgparseContract:
    def test_unknown_subcommand_exits_2(self):
        with pytest.raises(SystemExit) as err:
            main(["wat"])
        assert err.value.code == 2

    def test_unknown_flag_rejected(self):
        with pytest.raises(SystemExit) as err:
            main(["spectrum", "Bw", "--frobnicate"])
        assert err.value.code == 2

    def test_no_subcommand_exits_2(self):
        with pytest.raises(SystemExit) as err:
            main([])
        assert err.value.code == 2

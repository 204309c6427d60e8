"""Corpus enumeration, subset policies, and sweep reports."""

import csv
import json
import math

import pytest

from qbounds.graphs import Graph, Graph6Error, parse_graph6, to_graph6
from qbounds.search import (
    CorpusSpec,
    SubsetPolicy,
    SweepReport,
    enumerate_graphs,
    find_extremes,
    run_sweep,
)
from qbounds.spectra import PreconditionError

# labeled connected counts for n = 3, 4, 5 (the n = 6, 7 values are
# exercised by the acceptance suite, which owns the big sweeps)
CONNECTED_COUNTS = {3: 4, 4: 38, 5: 728}

# enumeration order of the connected graphs on 3 vertices: the three
# paths (by edge-mask order), then the triangle
ORDER_N3 = ["Bo", "Bg", "BW", "Bw"]

# first-seen representatives of the 6 spectral classes on 4 vertices
DEDUP_N4 = ["Cs", "Ck", "C{", "C]", "C}", "C~"]


def path(n):
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def star(n):
    return Graph(n, [(0, i) for i in range(1, n)])


def cycle(n):
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


class TestCorpusSpec:
    def test_parse_range(self):
        spec = CorpusSpec.from_string("enumerate:3..7")
        assert (spec.source, spec.n_min, spec.n_max) == ("enumerate", 3, 7)
        assert spec.connected_only and spec.dedup == "none"
        assert spec.label == "enumerate:3..7"

    def test_parse_single_n(self):
        spec = CorpusSpec.from_string("enumerate:5")
        assert (spec.n_min, spec.n_max) == (5, 5)
        assert spec.label == "enumerate:5"

    def test_parse_file(self):
        spec = CorpusSpec.from_string("file:/tmp/corpus.g6", connected_only=False)
        assert (spec.source, spec.path) == ("file", "/tmp/corpus.g6")
        assert not spec.connected_only
        assert spec.label == "file:/tmp/corpus.g6"

    @pytest.mark.parametrize(
        "text",
        ["enumerate:3..10", "enumerate:0..3", "enumerate:4..3", "enumerate:x",
         "walk:5", "no-colon", "file:"],
    )
    def test_rejects_bad_specs(self, text):
        with pytest.raises(PreconditionError):
            CorpusSpec.from_string(text)

    def test_rejects_bad_dedup(self):
        with pytest.raises(PreconditionError):
            CorpusSpec("enumerate", n_min=3, n_max=3, dedup="by-degree")


class TestEnumerateGraphs:
    def test_single_graph_corpus(self):
        graphs = list(enumerate_graphs(CorpusSpec.from_string("enumerate:2")))
        assert [to_graph6(g) for g in graphs] == ["A_"]

    def test_n3_order(self):
        graphs = list(enumerate_graphs(CorpusSpec.from_string("enumerate:3")))
        assert [to_graph6(g) for g in graphs] == ORDER_N3

    @pytest.mark.parametrize("n,count", sorted(CONNECTED_COUNTS.items()))
    def test_connected_counts(self, n, count):
        spec = CorpusSpec.from_string("enumerate:%d" % n)
        assert sum(1 for _ in enumerate_graphs(spec)) == count

    def test_stats_and_unfiltered(self):
        stats = {}
        spec = CorpusSpec.from_string("enumerate:3..4")
        assert sum(1 for _ in enumerate_graphs(spec, stats)) == 42
        assert stats == {"raw": 72, "filtered": 30, "dedup_dropped": 0}
        loose = CorpusSpec.from_string("enumerate:3", connected_only=False)
        assert sum(1 for _ in enumerate_graphs(loose)) == 8

    def test_spectral_dedup(self):
        stats = {}
        spec = CorpusSpec.from_string("enumerate:4", dedup="by-sorted-Q-spectrum")
        graphs = list(enumerate_graphs(spec, stats))
        assert [to_graph6(g) for g in graphs] == DEDUP_N4
        assert stats["dedup_dropped"] == 32

    def test_file_source(self, tmp_path):
        corpus = tmp_path / "corpus.g6"
        # blank line and the optional header must both be tolerated
        corpus.write_text(">>graph6<<Bw\n\nC?\nBo\n")
        spec = CorpusSpec.from_string("file:%s" % corpus)
        assert [to_graph6(g) for g in enumerate_graphs(spec)] == ["Bw", "Bo"]
        loose = CorpusSpec.from_string("file:%s" % corpus, connected_only=False)
        assert [to_graph6(g) for g in enumerate_graphs(loose)] == ["Bw", "C?", "Bo"]

    def test_file_parse_error_carries_line(self, tmp_path):
        corpus = tmp_path / "bad.g6"
        corpus.write_text("Bw\n!!\n")
        with pytest.raises(Graph6Error) as err:
            list(enumerate_graphs(CorpusSpec.from_string("file:%s" % corpus)))
        assert err.value.line == 2


class TestSubsetPolicy:
    def test_parse_plain_modes(self):
        for mode in ("all-subsets", "all-singletons", "top-degree-pair",
                     "independent-sets"):
            policy = SubsetPolicy.from_string(mode)
            assert policy.mode == mode and policy.label == mode

    def test_parse_random(self):
        policy = SubsetPolicy.from_string("random:5,17")
        assert (policy.mode, policy.k, policy.seed) == ("random", 5, 17)
        assert policy.label == "random:5,17"
        assert SubsetPolicy.from_string("random:5").seed == 0

    def test_rejects_bad_policies(self):
        for text in ("everything", "random:0,4", "random:x"):
            with pytest.raises(PreconditionError):
                SubsetPolicy.from_string(text)

    def test_all_subsets_mask_order(self):
        policy = SubsetPolicy.from_string("all-subsets")
        assert list(policy.subsets(path(3))) == [
            (0,), (1,), (0, 1), (2,), (0, 2), (1, 2)]

    def test_all_singletons(self):
        policy = SubsetPolicy.from_string("all-singletons")
        assert list(policy.subsets(star(4))) == [(0,), (1,), (2,), (3,)]

    def test_top_degree_pair(self):
        policy = SubsetPolicy.from_string("top-degree-pair")
        assert list(policy.subsets(star(4))) == [(0, 1)]
        assert list(policy.subsets(path(4))) == [(1, 2)]
        # degree ties break toward the lowest labels
        assert list(policy.subsets(cycle(4))) == [(0, 1)]
        assert list(policy.subsets(Graph(1, []))) == []

    def test_independent_sets(self):
        policy = SubsetPolicy.from_string("independent-sets")
        assert list(policy.subsets(parse_graph6("Cr"))) == [(1, 2), (0, 3)]
        leaves = list(policy.subsets(star(5)))
        assert len(leaves) == 11
        assert all(0 not in subset for subset in leaves)

    def test_random_is_deterministic_per_graph(self):
        policy = SubsetPolicy.from_string("random:6,42")
        first = list(policy.subsets(cycle(5)))
        assert first == list(policy.subsets(cycle(5)))
        assert 1 <= len(first) <= 6
        assert len(set(first)) == len(first)
        for subset in first:
            assert 0 < len(subset) < 5
        assert first != list(SubsetPolicy.from_string("random:6,43").subsets(cycle(5)))

    def test_exhaustive_blowup_guard(self):
        policy = SubsetPolicy.from_string("all-subsets")
        big = Graph(13, [(i, i + 1) for i in range(12)])
        with pytest.raises(PreconditionError):
            next(policy.subsets(big, enumerated=False))
        # enumeration-mode graphs are never that large, so no guard there
        assert next(policy.subsets(big, enumerated=True)) == (0,)


class TestRunSweep:
    def test_all_equality_corpus(self):
        report = run_sweep("enumerate:3", ["main_q1q2"])
        assert report.totals["main_q1q2"] == {
            "holds": 0, "holds-with-equality": 4, "violated": 0,
            "indeterminate-numeric": 0, "not-applicable": 0, "errors": 0}
        assert report.equality_witnesses["main_q1q2"] == ORDER_N3
        assert report.min_positive_slack["main_q1q2"] is None
        assert report.corpus == {
            "source": "enumerate:3", "connected_only": True, "dedup": "none",
            "raw": 8, "graphs": 4, "dedup_dropped": 0}

    def test_pair_bounds_witness_split(self):
        report = run_sweep("enumerate:3..4", ["main_q1q2", "l_sum2"], workers=1)
        totals = report.totals
        for key in ("main_q1q2", "l_sum2"):
            assert sum(totals[key].values()) == 42
            assert totals[key]["violated"] == 0
        # the triangle is an equality case for the Q pair only
        assert totals["main_q1q2"]["holds-with-equality"] == 8
        assert totals["l_sum2"]["holds-with-equality"] == 7
        assert "Bw" in report.equality_witnesses["main_q1q2"]
        assert "Bw" not in report.equality_witnesses["l_sum2"]
        assert report.safe_violation_count() == 0

    def test_min_positive_slack_witness(self):
        report = run_sweep("enumerate:3..4", ["main_q1q2"])
        best = report.min_positive_slack["main_q1q2"]
        # the paw: q1 + q2 = 3 + sqrt(5) against d1 + d2 + 1 = 5
        assert best["slack"] == pytest.approx(math.sqrt(5) - 2, abs=1e-9)
        assert best["input"] == "Cn"
        assert best["bound_id"] == "main_q1q2"
        assert find_extremes(report, "main_q1q2")["min_positive_slack"] == best

    def test_graph_level_expansion_counts(self):
        # one checker call per graph expands to one certificate per m
        report = run_sweep("enumerate:3..4", ["schur_sum:Q"])
        counts = report.totals["schur_sum:Q"]
        assert sum(counts.values()) == 4 * 3 + 38 * 4

    def test_subset_fanout_counts(self):
        report = run_sweep("enumerate:3", ["t1_sandwich:safe"],
                           subsets="all-singletons")
        counts = report.totals["t1_sandwich:safe"]
        assert sum(counts.values()) == 12
        assert counts["violated"] == 0 and counts["errors"] == 0

    def test_out_of_regime_tallies_not_applicable(self):
        report = run_sweep("enumerate:3", ["independent_set_corollary"],
                           subsets="all-subsets")
        counts = report.totals["independent_set_corollary"]
        # each path has one independent pair; the triangle has none
        assert counts["holds"] + counts["holds-with-equality"] == 3
        assert counts["not-applicable"] == 21
        assert sum(counts.values()) == 24

    def test_bare_names_expand_to_safe_variants(self):
        report = run_sweep("enumerate:3", ["t1_sandwich", "schur_sum"])
        assert report.bounds == ["t1_sandwich:safe", "schur_sum:L", "schur_sum:Q"]

    def test_worker_counts_agree_to_the_byte(self):
        kwargs = dict(
            bounds=["main_q1q2", "l_sum2", "t1_sandwich:safe"],
            subsets="all-subsets",
        )
        serial = run_sweep("enumerate:3..4", workers=1, **kwargs)
        parallel = run_sweep("enumerate:3..4", workers=2, **kwargs)
        assert serial.to_json() == parallel.to_json()

    def test_dedup_corpus_summary(self):
        report = run_sweep(
            CorpusSpec.from_string("enumerate:4", dedup="by-sorted-Q-spectrum"),
            ["main_q1q2"], workers=2)
        assert report.corpus["graphs"] == 6
        assert report.corpus["dedup_dropped"] == 32
        assert report.corpus["raw"] == 64
        assert report.equality_witnesses["main_q1q2"] == ["Cs"]

    def test_policy_failure_is_quarantined(self, tmp_path):
        corpus = tmp_path / "big.g6"
        corpus.write_text(to_graph6(Graph(13, [(i, i + 1) for i in range(12)])) + "\n")
        report = run_sweep(
            CorpusSpec.from_string("file:%s" % corpus),
            ["t1_sandwich:safe"], subsets="all-subsets")
        assert report.corpus["graphs"] == 1
        assert sum(report.totals["t1_sandwich:safe"].values()) == 0
        assert len(report.errors) == 1
        assert report.errors[0]["bound"] == "subset-policy"
        assert "random" in report.errors[0]["error"]

    def test_emit_certificates_csv(self, tmp_path):
        out = tmp_path / "certs.csv"
        run_sweep("enumerate:3", ["main_q1q2"], emit_certificates=str(out))
        with out.open(newline="") as handle:
            rows = list(csv.reader(handle))
        assert rows[0] == ["bound_id", "input", "lhs", "rhs", "slack",
                           "verdict", "witness"]
        assert [r[1] for r in rows[1:]] == ORDER_N3
        assert all(r[0] == "main_q1q2" for r in rows[1:])

    def test_report_json_is_stable(self):
        report = run_sweep("enumerate:3", ["main_q1q2"])
        text = report.to_json()
        data = json.loads(text)
        assert data["schema"] == 1
        assert data["subsets"] == "all-singletons"
        assert data["bounds"] == ["main_q1q2"]
        assert json.dumps(data, sort_keys=True, indent=2) + "\n" == text

    def test_find_extremes_unknown_bound(self):
        report = run_sweep("enumerate:3", ["main_q1q2"])
        with pytest.raises(KeyError):
            find_extremes(report, "l_sum2")

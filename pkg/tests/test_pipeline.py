import json
import math
from pathlib import Path
from dataclasses import replace

import numpy as np
import pytest

import oracles
from newsprominence.corpus import Collection, CollectionLabel, DocumentKind, load_corpus
from newsprominence.coresc import load_coresc_labels, map_group
from newsprominence.errors import ResourceError, ValidationError
from newsprominence.pipeline import (
    ExperimentConfig,
    ExperimentReport,
    compare_impact_distributions,
    emit_report,
    impact_samples,
    report_csv,
    report_json,
    run_experiment,
)
from newsprominence.semsimrank import RankConfig, rank_sentences
from newsprominence.stats import BootstrapConfig, SampleSet
from newsprominence.textproc import prepare_document

FAST = BootstrapConfig(resamples=500)


@pytest.fixture(scope="module")
def corpus():
    from pathlib import Path

    return load_corpus(Path(__file__).resolve().parent / "data" / "synthetic_corpus.jsonl")


@pytest.fixture(scope="module")
def labels_path():
    from pathlib import Path

    return str(Path(__file__).resolve().parent / "data" / "synthetic_labels.jsonl")


@pytest.fixture(scope="module")
def report(corpus, labels_path):
    return run_experiment(corpus, ExperimentConfig(coresc_labels=labels_path, bootstrap=FAST))


def test_grid_shape_and_invariants(report):
    assert len(report.cells) == 1 * 3 * 4
    for cell in report.cells:
        assert 0.0 <= cell["mean_F"] <= 1.0 and 0.0 <= cell["mean_D"] <= 1.0
        if cell["mean_D"] > 0:
            assert math.isfinite(cell["percent_diff"])
        else:
            assert cell["percent_diff"] is None
    for counts in report.pair_counts:
        assert counts["processed_F"] + counts["processed_D"] + counts["skipped"] == counts["total"] == 24


def test_collection_means_match_independent_recomputation(corpus, labels_path, report):
    labelled = load_coresc_labels(labels_path, corpus)
    from newsprominence.corpus import partition_collections

    f_coll, d_coll = partition_collections(labelled)
    expected = {}
    for coll, tag in ((f_coll, "F"), (d_coll, "D")):
        for news_id, paper_id in coll.pair_ids:
            news = prepare_document(labelled[news_id])
            paper = prepare_document(labelled[paper_id])
            top = rank_sentences(news)[0][0]
            groups = {}
            for sent, label in zip(paper.sentences, paper.coresc_labels):
                sim = oracles.bow_similarity(list(sent.tokens), list(news.sentences[top].tokens))
                groups.setdefault(map_group(label).value, []).append(sim)
            for group, sims in groups.items():
                expected.setdefault((group, tag), []).append(sum(sims) / len(sims))
    for cell in report.cells:
        if cell["ranker"] != "semsimrank":
            continue
        for tag in "FD":
            values = expected[(cell["group"], tag)]
            assert cell[f"mean_{tag}"] == pytest.approx(sum(values) / len(values), abs=1e-12)
            assert cell[f"n_pairs_{tag}"] == len(values) == 12


def test_identical_collections_give_zero_difference(corpus, labels_path):
    pairs = corpus.news_paper_pairs()[:6]
    same = (Collection(CollectionLabel.F_LINKED, tuple(pairs)),
            Collection(CollectionLabel.D_UNLINKED, tuple(pairs)))
    rep = run_experiment(corpus, ExperimentConfig(coresc_labels=labels_path, bootstrap=FAST), same)
    for cell in rep.cells:
        assert cell["mean_F"] == cell["mean_D"]
        assert cell["percent_diff"] in (0.0, None)


def test_pairs_without_labels_are_skipped(corpus):
    rep = run_experiment(corpus, ExperimentConfig(rankers=["first_sentence"], bootstrap=FAST))
    assert len(rep.skipped) == 24 and all(s["reason"] == "paper has no CoreSC labels" for s in rep.skipped)
    assert all(cell["absent"] and cell["percent_diff"] is None for cell in rep.cells)
    assert rep.pair_counts[0]["skipped"] == 24


def test_parallel_run_is_byte_identical(corpus, labels_path, report):
    parallel = run_experiment(corpus, ExperimentConfig(coresc_labels=labels_path, bootstrap=FAST, jobs=3))
    assert report_json(parallel) == report_json(report)


def test_random_ranker_depends_on_seed(corpus, labels_path):
    def picks(seed):
        cfg = ExperimentConfig(rankers=["random_sentence"], coresc_labels=labels_path,
                               rank_config=RankConfig(random_seed=seed), bootstrap=FAST)
        return [c["mean_F"] for c in run_experiment(corpus, cfg).cells]

    assert picks(1) == picks(1)
    assert picks(1) != picks(2)


def test_config_validation():
    with pytest.raises(ValidationError, match="word-vector"):
        ExperimentConfig(methods=["wordvec_cos"])
    with pytest.raises(ValidationError, match="sentence-embedding"):
        ExperimentConfig(methods=["sentvec_cos"])
    with pytest.raises(ValidationError, match="unknown Ranker"):
        ExperimentConfig(rankers=["lexrank"])
    with pytest.raises(ValidationError):
        ExperimentConfig(methods=[])


def test_impact_samples_assignment(corpus):
    linked, unlinked, unscored = impact_samples(corpus)
    assert (len(linked), len(unlinked), unscored) == (12, 18, [])


def test_impact_section_with_small_samples(report):
    impact = report.impact
    assert impact["normality"] == {"news_linked": None, "not_linked": None}
    assert len(impact["notices"]) == 2
    assert impact["ks"]["sample_sizes"] == [12, 18]
    assert impact["bootstrap"]["low"] <= impact["bootstrap"]["estimate"] <= impact["bootstrap"]["high"]


def test_impact_empty_sample_is_an_error(corpus):
    cases = [d for d in corpus.of_kind(DocumentKind.CASE_STUDY) if d.id.startswith("u")]
    only_unlinked = replace(corpus, documents={d.id: d for d in cases},
                            links=())
    with pytest.raises(ValidationError, match="empty"):
        compare_impact_distributions(only_unlinked, FAST)


def test_identical_populations_rarely_differ():
    rng = np.random.default_rng(7)
    high_p = 0
    for _ in range(100):
        a = SampleSet.of("news_linked", rng.normal(2.8, 0.5, 100))
        b = SampleSet.of("not_linked", rng.normal(2.8, 0.5, 100))
        high_p += compare_impact_distributions((a, b), BootstrapConfig(resamples=200))["ks"]["p_value"] > 0.05
    assert high_p >= 90


def test_shifted_population_is_detected():
    rng = np.random.default_rng(8)
    excluded = 0
    for trial in range(20):
        a = SampleSet.of("news_linked", rng.normal(2.97, 0.5, 500))
        b = SampleSet.of("not_linked", rng.normal(2.80, 0.5, 500))
        result = compare_impact_distributions((a, b), BootstrapConfig(resamples=1000, seed=trial))
        excluded += result["bootstrap"]["low"] > 0
        assert result["normality"]["news_linked"]["p_value"] >= 0.0
    assert excluded >= 18


def test_emit_report(tmp_path, report):
    written = emit_report(report, tmp_path / "out")
    assert [p.name for p in written] == ["report.json", "percent_diff_grid.csv", "plot_data.tsv"]
    before = [p.read_bytes() for p in written]
    again = ExperimentReport.from_json(json.loads(written[0].read_text()))
    emit_report(again, tmp_path / "out")
    assert [p.read_bytes() for p in written] == before
    rows = report_csv(report).splitlines()
    assert rows[0] == "method,ranker,Background,Goals,Method,Outcomes"
    assert sum(len(r.split(",")) - 2 for r in rows[1:]) == len(report.cells)
    tsv = written[2].read_text().splitlines()
    assert len(tsv) == 1 + len(report.cells)


def test_emit_report_errors(tmp_path, report):
    with pytest.raises(ValidationError, match="unknown report format"):
        emit_report(report, tmp_path, ["xlsx"])
    blocker = tmp_path / "file"
    blocker.write_text("x")
    with pytest.raises(ResourceError):
        emit_report(report, blocker / "sub")


def test_backends_produce_the_same_grid(tmp_path, labels_path):
    import os
    import subprocess
    import sys

    from newsprominence import kernels

    if "cython" not in kernels.backends():
        pytest.skip("extension not compiled")
    corpus_path = str(Path(labels_path).with_name("synthetic_corpus.jsonl"))
    cells = {}
    for flag in ("", "1"):
        env = dict(os.environ, NEWSPROMINENCE_PURE_PYTHON=flag)
        out = tmp_path / f"run{flag or 0}"
        subprocess.run([sys.executable, "-m", "newsprominence", "--corpus", corpus_path,
                        "--out", str(out), "experiment", "--labels", labels_path,
                        "--resamples", "200", "--format", "json"],
                       env=env, check=True, capture_output=True)
        cells[flag] = json.loads((out / "report.json").read_text())["cells"]
    for a, b in zip(cells[""], cells["1"]):
        assert (a["method"], a["ranker"], a["group"]) == (b["method"], b["ranker"], b["group"])
        for key in ("mean_F", "mean_D", "percent_diff"):
            if a[key] is None:
                assert b[key] is None
            else:
                assert b[key] == pytest.approx(a[key], rel=1e-9, abs=1e-12)

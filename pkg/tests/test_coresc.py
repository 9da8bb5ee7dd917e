import json
from dataclasses import replace

import pytest

import oracles
from newsprominence.corpus import Document, DocumentKind, Sentence, load_corpus
from newsprominence.coresc import (
    GROUP_ORDER,
    CoreSCCategory,
    CoreSCGroup,
    canonical_category,
    group_similarity,
    load_coresc_labels,
    map_group,
)
from newsprominence.errors import CorpusError, ValidationError
from newsprominence.semsimrank import rank_sentences
from newsprominence.textproc import prepare_document


def test_eleven_categories_in_four_groups():
    assert len(CoreSCCategory) == 11
    groups = {}
    for c in CoreSCCategory:
        groups.setdefault(map_group(c), []).append(c.value)
    assert groups == {
        CoreSCGroup.BACKGROUND: ["Background", "Motivation"],
        CoreSCGroup.GOALS: ["Goal", "Object", "Hypothesis"],
        CoreSCGroup.METHOD: ["Method", "Experiment", "Model"],
        CoreSCGroup.OUTCOMES: ["Observation", "Result", "Conclusion"],
    }
    assert [g.value for g in GROUP_ORDER] == ["Background", "Goals", "Method", "Outcomes"]


@pytest.mark.parametrize("label, expected", [
    ("Objective", "Object"), ("objectives", "Object"), ("RES", "Result"), (" mot ", "Motivation"),
    ("experiment", "Experiment"), (CoreSCCategory.MODEL, "Model"),
])
def test_aliases(label, expected):
    assert canonical_category(label).value == expected


@pytest.mark.parametrize("label", ["Banana", "", None, 3])
def test_unknown_labels(label):
    with pytest.raises(ValidationError):
        canonical_category(label)


@pytest.fixture
def salt(data_dir):
    corpus = load_corpus(data_dir / "table_fixtures.jsonl")
    return prepare_document(corpus["salt"]), prepare_document(corpus["salt-paper"])


def test_group_similarity_matches_pairwise_oracle(salt):
    news, paper = salt
    prominent = [rank_sentences(news)[0][0], 0]
    result = group_similarity(news, paper, prominent)
    assert result.pair == ("salt", "salt-paper") and result.method == "bow_jsd"
    expected = {}
    for sent, label in zip(paper.sentences, paper.coresc_labels):
        for k in prominent:
            sim = oracles.bow_similarity(list(sent.tokens), list(news.sentences[k].tokens))
            expected.setdefault(map_group(label), []).append(sim)
    for group, sims in expected.items():
        stat = result.groups[group]
        assert stat.count == len(sims)
        assert stat.mean == pytest.approx(sum(sims) / len(sims), abs=1e-12)
        assert stat.max == pytest.approx(max(sims), abs=1e-12)
    # the outcome sentences restate the article's central claim
    assert result.mean(CoreSCGroup.OUTCOMES) > result.mean(CoreSCGroup.BACKGROUND)


def test_absent_group_is_left_out(salt):
    news, paper = salt
    only_background = replace(paper, coresc_labels=("Background",) * len(paper.sentences))
    result = group_similarity(news, only_background, [0])
    assert set(result.groups) == {CoreSCGroup.BACKGROUND}
    assert result.mean(CoreSCGroup.GOALS) is None


def test_group_similarity_validation(salt):
    news, paper = salt
    with pytest.raises(ValidationError):
        group_similarity(news, replace(paper, coresc_labels=None), [0])
    with pytest.raises(ValidationError):
        group_similarity(news, paper, [])
    with pytest.raises(ValidationError):
        group_similarity(news, replace(paper, coresc_labels=("Result",)), [0])


def _label_file(tmp_path, rows):
    path = tmp_path / "labels.jsonl"
    path.write_text("".join(json.dumps(r) + "\n" for r in rows), encoding="utf-8")
    return path


def test_load_labels_segments_unsplit_papers(tmp_path):
    from newsprominence.corpus import Corpus

    paper = Document("p", DocumentKind.PAPER, "t", "We aimed high. We measured salt.")
    corpus = Corpus({"p": paper})
    out = load_coresc_labels(_label_file(tmp_path, [{"doc_id": "p", "labels": ["goa", "Method"]}]),
                             corpus)
    assert out["p"].coresc_labels == ("Goal", "Method")
    assert out["p"].sentences == (Sentence(0, "We aimed high."), Sentence(1, "We measured salt."))


@pytest.mark.parametrize("rows, message", [
    ([{"doc_id": "zz", "labels": []}], "unknown doc_id"),
    ([{"doc_id": "salt", "labels": []}], "is not a paper"),
    ([{"doc_id": "salt-paper", "labels": ["Result"]}], "1 labels for 6 sentences"),
    ([{"doc_id": "salt-paper", "labels": "Result"}], "must be a list"),
    ([{"doc_id": "salt-paper", "labels": ["Nope"] * 6}], "unknown CoreSC category"),
    ([{"doc_id": "salt-paper", "labels": ["Result"] * 6}] * 2, "line 2: duplicate labels"),
])
def test_load_labels_errors(tmp_path, data_dir, rows, message):
    corpus = load_corpus(data_dir / "table_fixtures.jsonl")
    with pytest.raises(CorpusError, match=message):
        load_coresc_labels(_label_file(tmp_path, rows), corpus)


def test_shipped_synthetic_labels(data_dir):
    corpus = load_coresc_labels(data_dir / "synthetic_labels.jsonl",
                                load_corpus(data_dir / "synthetic_corpus.jsonl"))
    papers = corpus.of_kind(DocumentKind.PAPER)
    assert len(papers) == 24
    assert all(len(p.coresc_labels) == len(p.sentences) for p in papers)
    assert all({map_group(l) for l in p.coresc_labels} == set(GROUP_ORDER) for p in papers)

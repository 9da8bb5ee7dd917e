import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from newsprominence.corpus import Document, DocumentKind, Sentence
from newsprominence.errors import MissingVectorError, ResourceError, ValidationError
from newsprominence.similarity import (
    SentenceEmbeddingStore,
    SimilarityContext,
    SimilarityMethod,
    WordVectorTable,
    bow_similarity,
    cosine,
    cross_similarity,
    js_distance,
    load_sentence_embeddings,
    load_word_vectors,
    mean_word_vector,
    pair_similarity,
    sentence_similarity_matrix,
)

WORDS = ["salt", "blood", "pressure", "heart", "diet", "sugar", "risk", "study"]
token_lists = st.lists(st.sampled_from(WORDS), max_size=12)


def make_doc(doc_id, token_rows):
    sentences = tuple(Sentence(i, " ".join(t), tuple(t)) for i, t in enumerate(token_rows))
    return Document(doc_id, DocumentKind.NEWS, doc_id, "", sentences=sentences)


@pytest.fixture
def context():
    rng = np.random.default_rng(0)
    table = WordVectorTable(4, {w: rng.normal(size=4) for w in WORDS[:-1]})
    store = SentenceEmbeddingStore(4, {("a", i): rng.normal(size=4) for i in range(3)})
    store.entries.update({("b", i): rng.normal(size=4) for i in range(2)})
    return SimilarityContext(table, store)


def test_js_distance_known_values():
    assert js_distance([1, 0], [0, 1]) == 1.0
    assert js_distance([0.5, 0.5], [0.5, 0.5]) == 0.0
    assert js_distance([0.25, 0.75], [0.75, 0.25]) == pytest.approx(
        oracles.js_distance([0.25, 0.75], [0.75, 0.25]), abs=1e-12
    )


@pytest.mark.parametrize("p, q", [([0.5, 0.5], [1.0]), ([0.5, 0.6], [0.5, 0.5]),
                                  ([1.5, -0.5], [0.5, 0.5]), ([np.nan, 1.0], [0.5, 0.5])])
def test_js_distance_rejects_invalid_input(p, q):
    with pytest.raises(ValidationError):
        js_distance(p, q)


def test_bow_similarity_example():
    # "salt salt blood" vs "salt heart": m = (1/6, 1/4, 7/12) over (blood, heart, salt)
    a, b = ["salt", "salt", "blood"], ["salt", "heart"]
    jsd = 0.5 * (1 / 3 + 2 / 3 * math.log2(8 / 7)) + 0.5 * (1 / 2 + 1 / 2 * math.log2(6 / 7))
    assert bow_similarity(a, b) == pytest.approx(1 - math.sqrt(jsd), abs=1e-12)
    assert bow_similarity(a, b) == pytest.approx(oracles.bow_similarity(a, b), abs=1e-12)
    assert bow_similarity([], b) == 0.0
    assert bow_similarity(["salt"], ["sugar"]) == 0.0
    assert bow_similarity(a, list(reversed(a))) == 1.0


@settings(max_examples=200, deadline=None)
@given(token_lists, token_lists)
def test_bow_similarity_matches_oracle_and_is_symmetric(a, b):
    s = bow_similarity(a, b)
    assert s == bow_similarity(b, a)
    assert 0.0 <= s <= 1.0
    assert s == pytest.approx(oracles.bow_similarity(a, b), abs=1e-9)


def test_cosine_and_mean_vector(context):
    assert cosine([1, 0], [0, 2]) == 0.0
    assert cosine([0, 0], [1, 1]) == 0.0
    assert cosine([1, 2], [2, 4]) == pytest.approx(1.0)
    with pytest.raises(ValidationError):
        cosine([1, 2], [1, 2, 3])
    v = mean_word_vector(["salt", "study", "blood"], context.word_vectors)
    expected = (context.word_vectors.entries["salt"] + context.word_vectors.entries["blood"]) / 2
    assert np.allclose(v, expected)
    assert not mean_word_vector(["study"], context.word_vectors).any()


@pytest.mark.parametrize("method", list(SimilarityMethod))
def test_pair_similarity_symmetric_bounded(method, context):
    a = make_doc("a", [["salt", "blood"], ["heart", "study"], ["study"]])
    b = make_doc("b", [["salt", "diet", "risk"], ["sugar"]])
    for i in range(3):
        for j in range(2):
            s = pair_similarity(method, context, (a, i), (b, j))
            assert s == pair_similarity(method, context, (b, j), (a, i))
            assert 0.0 <= s <= 1.0


@pytest.mark.parametrize("method", list(SimilarityMethod))
def test_batched_forms_agree_with_pairwise(method, context):
    a = make_doc("a", [["salt", "blood"], ["heart", "study", "salt"], ["study"]])
    b = make_doc("b", [["salt", "diet", "risk"], ["sugar", "heart"]])
    cross = cross_similarity(method, context, a, range(3), b, range(2))
    within = sentence_similarity_matrix(method, context, a)
    for i in range(3):
        for j in range(2):
            assert cross[i, j] == pytest.approx(pair_similarity(method, context, (a, i), (b, j)), abs=1e-12)
        for j in range(3):
            expected = 0.0 if i == j else pair_similarity(method, context, (a, i), (a, j))
            assert within[i, j] == pytest.approx(expected, abs=1e-12)
    assert np.array_equal(within, within.T)


def test_wordvec_cosine_matches_oracle(context):
    a = make_doc("a", [["salt", "blood", "heart"]])
    b = make_doc("b", [["diet", "salt"]])
    t = context.word_vectors.entries
    u = [(t["salt"][k] + t["blood"][k] + t["heart"][k]) / 3 for k in range(4)]
    v = [(t["diet"][k] + t["salt"][k]) / 2 for k in range(4)]
    expected = max(0.0, oracles.cosine(u, v))
    assert pair_similarity("wordvec_cos", context, (a, 0), (b, 0)) == pytest.approx(expected, abs=1e-12)


def test_missing_resources_and_vectors(context):
    a = make_doc("a", [["salt"]] * 4)
    with pytest.raises(ResourceError, match="word-vector"):
        pair_similarity("wordvec_cos", SimilarityContext(), (a, 0), (a, 1))
    with pytest.raises(MissingVectorError) as info:
        pair_similarity("sentvec_cos", context, (a, 0), (a, 3))
    assert (info.value.doc_id, info.value.index) == ("a", 3)


def test_load_word_vectors(tmp_path):
    path = tmp_path / "v.txt"
    path.write_text("2 3\nSalt 1 0 0\nblood 0 1 0.5\n", encoding="utf-8")
    table = load_word_vectors(path)
    assert table.dimension == 3 and set(table.entries) == {"salt", "blood"}
    assert table.entries["blood"].tolist() == [0.0, 1.0, 0.5]


@pytest.mark.parametrize("body, message", [
    ("salt 1 0\nblood 1 0 0\n", "ragged"),
    ("salt 1 0\nSALT 0 1\n", "duplicate"),
    ("salt 1 nan\n", "non-finite"),
    ("salt 1 x\n", "non-numeric"),
    ("salt\n", "no vector"),
])
def test_load_word_vectors_errors(tmp_path, body, message):
    path = tmp_path / "v.txt"
    path.write_text(body, encoding="utf-8")
    with pytest.raises(ResourceError, match=message):
        load_word_vectors(path)


def test_empty_word_vector_table(tmp_path):
    path = tmp_path / "v.txt"
    path.write_text("", encoding="utf-8")
    table = load_word_vectors(path)
    with pytest.raises(ResourceError, match="dimension is undefined"):
        mean_word_vector(["salt"], table)


def test_load_sentence_embeddings(tmp_path):
    path = tmp_path / "e.jsonl"
    rows = [{"doc_id": "a", "sentence_index": 0, "vector": [1, 2]},
            {"doc_id": "a", "sentence_index": 1, "vector": [3, 4]}]
    path.write_text("\n".join(json.dumps(r) for r in rows), encoding="utf-8")
    store = load_sentence_embeddings(path)
    assert store.dimension == 2 and store.lookup("a", 1).tolist() == [3.0, 4.0]
    path.write_text(json.dumps(rows[0]) + "\n" + json.dumps(rows[0]), encoding="utf-8")
    with pytest.raises(ResourceError, match="duplicate"):
        load_sentence_embeddings(path)
    path.write_text('{"doc_id": "a"}', encoding="utf-8")
    with pytest.raises(ResourceError, match="malformed"):
        load_sentence_embeddings(path)


def test_shipped_vectors_load(data_dir):
    table = load_word_vectors(data_dir / "synthetic_vectors.txt")
    store = load_sentence_embeddings(data_dir / "synthetic_embeddings.jsonl")
    assert table.dimension == store.dimension == 50
    assert math.isfinite(float(np.sum(table.entries["salt"])))

"""Sentence similarity functions used as graph edge weights.

Three measures are available, all mapped into ``[0, 1]``:

``bow_jsd``
    one minus the base-2 Jensen-Shannon distance between the token count
    distributions of the two sentences;
``wordvec_cos``
    cosine between mean word vectors, negatives clamped to 0;
``sentvec_cos``
    cosine between precomputed sentence embeddings, negatives clamped to 0.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence

import numpy as np

from newsprominence import kernels
from newsprominence.corpus import Document, Sentence
from newsprominence.errors import MissingVectorError, ResourceError, ValidationError
from newsprominence.textproc import count_vector

NORMALIZATION_TOL = 1e-9


class SimilarityMethod(str, Enum):
    BOW_JSD = "bow_jsd"
    WORDVEC_COS = "wordvec_cos"
    SENTVEC_COS = "sentvec_cos"


@dataclass(frozen=True)
class WordVectorTable:
    dimension: Optional[int]
    entries: dict[str, np.ndarray] = field(default_factory=dict)

    def __len__(self):
        return len(self.entries)

    def __contains__(self, token):
        return token in self.entries

    def require_dimension(self) -> int:
        if self.dimension is None:
            raise ResourceError("word-vector table is empty; its dimension is undefined")
        return self.dimension


@dataclass(frozen=True)
class SentenceEmbeddingStore:
    dimension: Optional[int]
    entries: dict[tuple[str, int], np.ndarray] = field(default_factory=dict)

    def __len__(self):
        return len(self.entries)

    def lookup(self, doc_id: str, index: int) -> np.ndarray:
        try:
            return self.entries[(doc_id, index)]
        except KeyError:
            raise MissingVectorError(doc_id, index) from None


@dataclass(frozen=True)
class SimilarityContext:
    """Resources a similarity method may need, loaded once and shared."""

    word_vectors: Optional[WordVectorTable] = None
    sentence_embeddings: Optional[SentenceEmbeddingStore] = None

    def check(self, method: SimilarityMethod) -> None:
        if method is SimilarityMethod.WORDVEC_COS and self.word_vectors is None:
            raise ResourceError("wordvec_cos needs a word-vector table")
        if method is SimilarityMethod.SENTVEC_COS and self.sentence_embeddings is None:
            raise ResourceError("sentvec_cos needs a sentence-embedding store")


# --------------------------------------------------------------------------
# primitives


def js_distance(p, q) -> float:
    """Square root of the base-2 Jensen-Shannon divergence, in ``[0, 1]``."""
    p = np.ascontiguousarray(p, dtype=np.float64)
    q = np.ascontiguousarray(q, dtype=np.float64)
    if p.shape != q.shape or p.ndim != 1:
        raise ValidationError(f"length mismatch: {p.shape} vs {q.shape}")
    for name, v in (("p", p), ("q", q)):
        if not np.all(np.isfinite(v)) or np.any(v < 0):
            raise ValidationError(f"{name} must be non-negative and finite")
        if abs(v.sum() - 1.0) > NORMALIZATION_TOL:
            raise ValidationError(f"{name} does not sum to 1")
    return float(kernels.js_distance(p, q))


def _tokens(sent) -> Sequence[str]:
    return sent.tokens if isinstance(sent, Sentence) else sent


def bow_similarity(sent_a, sent_b) -> float:
    """``1 - js_distance`` of the two sentences' count distributions.

    Accepts tokenized :class:`Sentence` objects or plain token sequences.
    A sentence with no tokens is similar to nothing (0.0).
    """
    a, b = _tokens(sent_a), _tokens(sent_b)
    if not a or not b:
        return 0.0
    # sorted vocabulary keeps the result independent of argument order
    vocab = sorted(set(a) | set(b))
    counts = np.vstack([count_vector(a, vocab), count_vector(b, vocab)]).astype(np.float64)
    return float(kernels.bow_jsd_cross(counts[:1], counts[1:])[0, 0])


def cosine(u, v) -> float:
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    if u.shape != v.shape:
        raise ValidationError(f"dimension mismatch: {u.shape} vs {v.shape}")
    nu = math.sqrt(float(np.dot(u, u)))
    nv = math.sqrt(float(np.dot(v, v)))
    if nu == 0.0 or nv == 0.0:
        return 0.0
    return max(-1.0, min(1.0, float(np.dot(u, v)) / (nu * nv)))


def mean_word_vector(tokens: Sequence[str], table: WordVectorTable) -> np.ndarray:
    dim = table.require_dimension()
    known = [table.entries[t] for t in tokens if t in table.entries]
    if not known:
        return np.zeros(dim)
    return np.mean(known, axis=0)


def _sentence_vector(method, context, doc: Document, index: int) -> np.ndarray:
    if method is SimilarityMethod.WORDVEC_COS:
        return mean_word_vector(doc.sentences[index].tokens, context.word_vectors)
    return context.sentence_embeddings.lookup(doc.id, index)


def pair_similarity(method, context: SimilarityContext, a, b) -> float:
    """Similarity of sentences ``a`` and ``b``, each a ``(Document, index)``."""
    method = SimilarityMethod(method)
    (doc_a, ia), (doc_b, ib) = a, b
    if method is SimilarityMethod.BOW_JSD:
        return bow_similarity(doc_a.sentences[ia], doc_b.sentences[ib])
    context.check(method)
    return max(0.0, cosine(_sentence_vector(method, context, doc_a, ia),
                           _sentence_vector(method, context, doc_b, ib)))


# --------------------------------------------------------------------------
# batched forms used by graph construction and group aggregation


def _count_matrix(token_lists: Sequence[Sequence[str]], vocab: Sequence[str]) -> np.ndarray:
    index = {w: i for i, w in enumerate(vocab)}
    out = np.zeros((len(token_lists), len(vocab)), dtype=np.float64)
    for row, tokens in enumerate(token_lists):
        for tok in tokens:
            out[row, index[tok]] += 1.0
    return out


def _unit_rows(vectors: np.ndarray) -> np.ndarray:
    norms = np.linalg.norm(vectors, axis=1)
    safe = np.where(norms > 0, norms, 1.0)
    return np.where(norms[:, None] > 0, vectors / safe[:, None], 0.0)


def _vectors(method, context, doc: Document, indices: Sequence[int]) -> np.ndarray:
    if method is SimilarityMethod.WORDVEC_COS:
        dim = context.word_vectors.require_dimension()
    else:
        dim = context.sentence_embeddings.dimension or 0
    rows = [_sentence_vector(method, context, doc, i) for i in indices]
    return np.array(rows, dtype=np.float64).reshape(len(rows), dim)


def cross_similarity(
    method,
    context: SimilarityContext,
    doc_a: Document,
    indices_a: Sequence[int],
    doc_b: Document,
    indices_b: Sequence[int],
) -> np.ndarray:
    """``len(indices_a) x len(indices_b)`` matrix of pair similarities."""
    method = SimilarityMethod(method)
    if method is SimilarityMethod.BOW_JSD:
        ta = [doc_a.sentences[i].tokens for i in indices_a]
        tb = [doc_b.sentences[i].tokens for i in indices_b]
        vocab = sorted({t for toks in ta + tb for t in toks})
        return kernels.bow_jsd_cross(_count_matrix(ta, vocab), _count_matrix(tb, vocab))
    context.check(method)
    ua = _unit_rows(_vectors(method, context, doc_a, indices_a))
    ub = _unit_rows(_vectors(method, context, doc_b, indices_b))
    return np.clip(ua @ ub.T, 0.0, 1.0)


def sentence_similarity_matrix(method, context: SimilarityContext, doc: Document) -> np.ndarray:
    """Symmetric within-document similarity matrix with a zero diagonal."""
    method = SimilarityMethod(method)
    n = len(doc.sentences)
    if method is SimilarityMethod.BOW_JSD:
        token_lists = [s.tokens for s in doc.sentences]
        vocab = sorted({t for toks in token_lists for t in toks})
        return kernels.bow_jsd_matrix(_count_matrix(token_lists, vocab))
    context.check(method)
    unit = _unit_rows(_vectors(method, context, doc, range(n)))
    sim = np.clip(unit @ unit.T, 0.0, 1.0)
    upper = np.triu(sim, k=1)
    return upper + upper.T


# --------------------------------------------------------------------------
# resource loaders


def _finite_vector(values, where: str) -> np.ndarray:
    try:
        vec = np.array([float(v) for v in values], dtype=np.float64)
    except (TypeError, ValueError):
        raise ResourceError(f"{where}: non-numeric vector component") from None
    if not np.all(np.isfinite(vec)):
        raise ResourceError(f"{where}: non-finite vector component")
    return vec


def load_word_vectors(path) -> WordVectorTable:
    """Read a whitespace-separated ``token v1 ... vd`` text table.

    A leading ``<count> <dimension>`` header line, as written by word2vec,
    is skipped.
    """
    entries: dict[str, np.ndarray] = {}
    dim = None
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            parts = line.split()
            if not parts:
                continue
            if lineno == 1 and len(parts) == 2 and all(p.isdigit() for p in parts):
                continue
            token = parts[0].lower()
            vec = _finite_vector(parts[1:], f"{path}:{lineno}")
            if vec.size == 0:
                raise ResourceError(f"{path}:{lineno}: token {token!r} has no vector")
            if dim is None:
                dim = vec.size
            elif vec.size != dim:
                raise ResourceError(
                    f"{path}:{lineno}: ragged dimension {vec.size}, expected {dim}"
                )
            if token in entries:
                raise ResourceError(f"{path}:{lineno}: duplicate token {token!r}")
            entries[token] = vec
    return WordVectorTable(dim, entries)


def load_sentence_embeddings(path) -> SentenceEmbeddingStore:
    """Read ``{"doc_id", "sentence_index", "vector"}`` JSONL records."""
    entries: dict[tuple[str, int], np.ndarray] = {}
    dim = None
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            where = f"{path}:{lineno}"
            try:
                obj = json.loads(line)
                key = (str(obj["doc_id"]), int(obj["sentence_index"]))
                raw = obj["vector"]
            except (json.JSONDecodeError, KeyError, TypeError, ValueError):
                raise ResourceError(f"{where}: malformed embedding record") from None
            vec = _finite_vector(raw, where)
            if dim is None:
                dim = vec.size
            elif vec.size != dim:
                raise ResourceError(f"{where}: ragged dimension {vec.size}, expected {dim}")
            if key in entries:
                raise ResourceError(f"{where}: duplicate key {key}")
            entries[key] = vec
    return SentenceEmbeddingStore(dim, entries)

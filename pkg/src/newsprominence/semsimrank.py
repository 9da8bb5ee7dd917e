"""Sentence prominence ranking over a fully connected similarity graph.

Sentences are vertices; edge weights are pairwise similarities. After
row normalisation the graph is ranked by damped power iteration::

    P_i <- (1 - d) / S + d * sum_j E[j, i] * P_j

starting from the uniform vector, until the L1 change drops below the
threshold or the iteration budget runs out.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from newsprominence import kernels
from newsprominence.corpus import Document
from newsprominence.errors import ValidationError
from newsprominence.similarity import (
    SimilarityContext,
    SimilarityMethod,
    sentence_similarity_matrix,
)


class Ranker(str, Enum):
    SEMSIMRANK = "semsimrank"
    FIRST_SENTENCE = "first_sentence"
    RANDOM_SENTENCE = "random_sentence"


@dataclass(frozen=True)
class RankConfig:
    damping: float = 0.85
    max_iterations: int = 100
    convergence_threshold: float = 1e-6
    top_n: int = 1
    random_seed: int = 0

    def __post_init__(self):
        if not 0.0 < self.damping < 1.0:
            raise ValidationError("damping must lie in (0, 1)")
        if self.max_iterations < 1:
            raise ValidationError("max_iterations must be >= 1")
        if self.convergence_threshold <= 0:
            raise ValidationError("convergence_threshold must be positive")
        if self.top_n < 1:
            raise ValidationError("top_n must be >= 1")
        if not 0 <= self.random_seed < 2**64:
            raise ValidationError("random_seed must be an unsigned 64-bit integer")


@dataclass(frozen=True)
class SimilarityMatrix:
    weights: np.ndarray
    normalized: bool = False

    @property
    def size(self) -> int:
        return self.weights.shape[0]


@dataclass(frozen=True)
class RankVector:
    scores: np.ndarray
    iterations_used: int
    converged: bool


def build_graph(
    doc: Document, method=SimilarityMethod.BOW_JSD, context: Optional[SimilarityContext] = None
) -> SimilarityMatrix:
    if not doc.sentences:
        raise ValidationError(f"document {doc.id!r} has no sentences")
    weights = sentence_similarity_matrix(method, context or SimilarityContext(), doc)
    return SimilarityMatrix(np.ascontiguousarray(weights, dtype=np.float64))


def row_normalize(matrix: SimilarityMatrix) -> SimilarityMatrix:
    """Make every row sum to 1.

    A row with no weight (a sentence similar to nothing) spreads its mass
    uniformly over the other sentences.
    """
    w = np.array(matrix.weights, dtype=np.float64)
    s = w.shape[0]
    if s == 1:
        return SimilarityMatrix(np.zeros((1, 1)), normalized=True)
    sums = w.sum(axis=1)
    dangling = sums <= 0
    w[~dangling] /= sums[~dangling, None]
    if dangling.any():
        uniform = np.full(s, 1.0 / (s - 1))
        for i in np.flatnonzero(dangling):
            w[i] = uniform
            w[i, i] = 0.0
    return SimilarityMatrix(w, normalized=True)


def pagerank(matrix: SimilarityMatrix, config: Optional[RankConfig] = None) -> RankVector:
    config = config or RankConfig()
    if not matrix.normalized:
        raise ValidationError("pagerank expects a row-normalized matrix")
    if matrix.size == 1:
        return RankVector(np.ones(1), 0, True)
    scores, iterations, converged = kernels.power_iterate(
        np.ascontiguousarray(matrix.weights, dtype=np.float64),
        float(config.damping),
        int(config.max_iterations),
        float(config.convergence_threshold),
    )
    return RankVector(np.asarray(scores), int(iterations), bool(converged))


# scores closer than this are treated as tied; power iteration leaves
# last-bit noise between sentences that play identical roles in the graph
TIE_TOLERANCE = 1e-12


def ordering(scores) -> list[tuple[int, float]]:
    """(index, score) pairs, best first; ties go to the earlier sentence."""
    scores = np.asarray(scores, dtype=np.float64)
    keys = np.round(scores / TIE_TOLERANCE)
    order = sorted(range(len(scores)), key=lambda i: (-keys[i], i))
    return [(i, float(scores[i])) for i in order]


def rank_document(
    doc: Document,
    method=SimilarityMethod.BOW_JSD,
    config: Optional[RankConfig] = None,
    context: Optional[SimilarityContext] = None,
) -> RankVector:
    return pagerank(row_normalize(build_graph(doc, method, context)), config)


def rank_sentences(
    doc: Document,
    method=SimilarityMethod.BOW_JSD,
    config: Optional[RankConfig] = None,
    context: Optional[SimilarityContext] = None,
) -> list[tuple[int, float]]:
    return ordering(rank_document(doc, method, config, context).scores)


def select_top_n(ranking, n: int) -> list[int]:
    if n < 1:
        raise ValidationError("n must be >= 1")
    return [index for index, _ in ranking[:n]]


def first_sentence_baseline(doc: Document) -> int:
    if not doc.sentences:
        raise ValidationError(f"document {doc.id!r} has no sentences")
    return 0


def _doc_key(doc_id: str) -> int:
    return int.from_bytes(hashlib.sha256(doc_id.encode("utf-8")).digest()[:8], "little")


def random_sentence_baseline(doc: Document, seed: int) -> int:
    """Uniform sentence index that depends only on ``seed`` and the document id.

    Draws come from numpy's PCG64 seeded with ``[seed, sha256(id)[:8]]``, so
    a document keeps its pick across every experiment run with the same seed.
    """
    if not doc.sentences:
        raise ValidationError(f"document {doc.id!r} has no sentences")
    rng = np.random.Generator(np.random.PCG64([int(seed), _doc_key(doc.id)]))
    return int(rng.integers(len(doc.sentences)))


def prominent_sentences(
    doc: Document,
    ranker,
    method=SimilarityMethod.BOW_JSD,
    config: Optional[RankConfig] = None,
    context: Optional[SimilarityContext] = None,
) -> list[int]:
    """Indices of the sentences a ranker deems most prominent.

    The two baselines always yield one sentence; SemSimRank yields ``top_n``.
    """
    config = config or RankConfig()
    ranker = Ranker(ranker)
    if ranker is Ranker.FIRST_SENTENCE:
        return [first_sentence_baseline(doc)]
    if ranker is Ranker.RANDOM_SENTENCE:
        return [random_sentence_baseline(doc, config.random_seed)]
    return select_top_n(rank_sentences(doc, method, config, context), config.top_n)

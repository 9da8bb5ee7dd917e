"""Prominence of scientific papers in the news articles that cite them.

News sentences are ranked with SemSimRank (damped power iteration over a
sentence-similarity graph), compared with CoreSC-labelled sentences of the
linked paper, and aggregated per discourse group across REF-linked and
unlinked collections.
"""

__version__ = "0.1.0"

from newsprominence.corpus import (  # noqa: E402
    Corpus,
    Document,
    LinkRecord,
    Sentence,
    UoAResult,
    load_corpus,
    mean_uoa_score,
    partition_collections,
    save_corpus,
)
from newsprominence.semsimrank import RankConfig, rank_sentences  # noqa: E402
from newsprominence.similarity import SimilarityMethod, pair_similarity  # noqa: E402

__all__ = [
    "Corpus",
    "Document",
    "LinkRecord",
    "RankConfig",
    "Sentence",
    "SimilarityMethod",
    "UoAResult",
    "load_corpus",
    "mean_uoa_score",
    "pair_similarity",
    "partition_collections",
    "rank_sentences",
    "save_corpus",
]

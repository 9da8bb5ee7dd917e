"""End-to-end experiment: rank news sentences, compare them with CoreSC-grouped
paper sentences, and contrast the F (REF-linked) and D (unlinked) collections."""

from __future__ import annotations

import csv
import io
import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional, Sequence

from newsprominence import __version__
from newsprominence.coresc import GROUP_ORDER, group_similarity, load_coresc_labels
from newsprominence.corpus import (
    Collection,
    Corpus,
    DocumentKind,
    mean_uoa_score,
    partition_collections,
)
from newsprominence.errors import ResourceError, ValidationError
from newsprominence.semsimrank import RankConfig, Ranker, prominent_sentences
from newsprominence.similarity import (
    SimilarityContext,
    SimilarityMethod,
    load_sentence_embeddings,
    load_word_vectors,
)
from newsprominence.stats import (
    BootstrapConfig,
    SampleSet,
    bootstrap_mean_diff,
    dagostino_pearson,
    ks2_test,
    percent_difference,
)
from newsprominence.textproc import TokenFilterConfig, prepare_document, read_word_list

log = logging.getLogger(__name__)

PERCENT_DIFF_FORMULA = "100 * (mean_F - mean_D) / mean_D"
FORMATS = ("json", "csv", "tsv")


def _member(enum, value):
    try:
        return enum(value)
    except ValueError:
        choices = ", ".join(e.value for e in enum)
        raise ValidationError(f"unknown {enum.__name__} {value!r} (choose from {choices})") from None


@dataclass(frozen=True)
class ExperimentConfig:
    methods: tuple[SimilarityMethod, ...] = (SimilarityMethod.BOW_JSD,)
    rankers: tuple[Ranker, ...] = tuple(Ranker)
    rank_config: RankConfig = field(default_factory=RankConfig)
    bootstrap: BootstrapConfig = field(default_factory=BootstrapConfig)
    word_vectors: Optional[str] = None
    sentence_embeddings: Optional[str] = None
    coresc_labels: Optional[str] = None
    stopwords: Optional[str] = None
    abbreviations: Optional[str] = None
    jobs: int = 1

    def __post_init__(self):
        object.__setattr__(self, "methods", tuple(_member(SimilarityMethod, m) for m in self.methods))
        object.__setattr__(self, "rankers", tuple(_member(Ranker, r) for r in self.rankers))
        if not self.methods or not self.rankers:
            raise ValidationError("need at least one method and one ranker")
        if SimilarityMethod.SENTVEC_COS in self.methods and not self.sentence_embeddings:
            raise ValidationError("sentvec_cos requires a sentence-embedding file")
        if SimilarityMethod.WORDVEC_COS in self.methods and not self.word_vectors:
            raise ValidationError("wordvec_cos requires a word-vector file")

    def echo(self) -> dict:
        return {
            "methods": [m.value for m in self.methods],
            "rankers": [r.value for r in self.rankers],
            "rank_config": asdict(self.rank_config),
            "bootstrap": asdict(self.bootstrap),
            "word_vectors": Path(self.word_vectors).name if self.word_vectors else None,
            "sentence_embeddings": (
                Path(self.sentence_embeddings).name if self.sentence_embeddings else None
            ),
            "coresc_labels": Path(self.coresc_labels).name if self.coresc_labels else None,
            "stopwords": Path(self.stopwords).name if self.stopwords else None,
            "abbreviations": Path(self.abbreviations).name if self.abbreviations else None,
        }


@dataclass
class ExperimentReport:
    cells: list[dict]
    pair_counts: list[dict]
    skipped: list[dict]
    impact: Optional[dict]
    config: dict
    seed: int
    version: str = __version__

    def to_json(self) -> dict:
        return {
            "tool": "newsprominence",
            "version": self.version,
            "seed": self.seed,
            "percent_difference": PERCENT_DIFF_FORMULA,
            "config": self.config,
            "cells": self.cells,
            "pair_counts": self.pair_counts,
            "skipped": self.skipped,
            "impact": self.impact,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "ExperimentReport":
        return cls(
            cells=obj["cells"],
            pair_counts=obj["pair_counts"],
            skipped=obj["skipped"],
            impact=obj.get("impact"),
            config=obj["config"],
            seed=obj["seed"],
            version=obj.get("version", __version__),
        )


def load_context(config: ExperimentConfig) -> SimilarityContext:
    return SimilarityContext(
        word_vectors=load_word_vectors(config.word_vectors) if config.word_vectors else None,
        sentence_embeddings=(
            load_sentence_embeddings(config.sentence_embeddings)
            if config.sentence_embeddings
            else None
        ),
    )


# --------------------------------------------------------------------------
# per-pair work; module-level state lets worker processes receive it once

_STATE: dict = {}


def _init_worker(documents, config, context):
    _STATE["documents"] = documents
    _STATE["config"] = config
    _STATE["context"] = context


def _skip_reason(news, paper) -> Optional[str]:
    if paper.coresc_labels is None:
        return "paper has no CoreSC labels"
    if not paper.sentences:
        return "paper has no sentences"
    if not news.sentences:
        return "news article has no sentences"
    return None


def _process_pair(pair: tuple[str, str]):
    """Per-group means for every (method, ranker) cell of one pair."""
    documents, config, context = _STATE["documents"], _STATE["config"], _STATE["context"]
    news, paper = documents[pair[0]], documents[pair[1]]
    reason = _skip_reason(news, paper)
    if reason is not None:
        return pair, reason, None
    out = {}
    for method in config.methods:
        for ranker in config.rankers:
            prominent = prominent_sentences(news, ranker, method, config.rank_config, context)
            gs = group_similarity(news, paper, prominent, method, context, ranker)
            out[(method.value, ranker.value)] = {g.value: gs.mean(g) for g in GROUP_ORDER}
    return pair, None, out


def _run_pairs(pairs, documents, config, context):
    if config.jobs <= 1 or len(pairs) < 2:
        _init_worker(documents, config, context)
        try:
            return [_process_pair(p) for p in pairs]
        finally:
            _STATE.clear()
    with ProcessPoolExecutor(
        max_workers=config.jobs,
        initializer=_init_worker,
        initargs=(documents, config, context),
    ) as pool:
        chunk = max(1, len(pairs) // (4 * config.jobs))
        return list(pool.map(_process_pair, pairs, chunksize=chunk))


def _mean(values: Sequence[float]) -> Optional[float]:
    return sum(values) / len(values) if values else None


def run_experiment(
    corpus: Corpus,
    config: Optional[ExperimentConfig] = None,
    collections: Optional[tuple[Collection, Collection]] = None,
    context: Optional[SimilarityContext] = None,
) -> ExperimentReport:
    """Run the ranker x method grid over the F and D collections.

    Collection means are unweighted means over pairs of the per-pair group
    means. ``collections`` overrides the partition derived from the corpus.
    """
    config = config or ExperimentConfig()
    token_config = (
        TokenFilterConfig(stopwords=read_word_list(config.stopwords))
        if config.stopwords
        else TokenFilterConfig()
    )
    abbreviations = read_word_list(config.abbreviations) if config.abbreviations else None
    if config.coresc_labels:
        corpus = load_coresc_labels(config.coresc_labels, corpus, abbreviations)
    if context is None:
        context = load_context(config)
    f_coll, d_coll = collections or partition_collections(corpus)

    needed = sorted({doc_id for coll in (f_coll, d_coll) for pair in coll.pair_ids for doc_id in pair})
    documents = {
        doc_id: prepare_document(corpus[doc_id], token_config, abbreviations) for doc_id in needed
    }

    tagged = [(pair, "F") for pair in f_coll.pair_ids] + [(pair, "D") for pair in d_coll.pair_ids]
    tagged.sort(key=lambda item: (item[0], item[1]))
    results = _run_pairs([pair for pair, _ in tagged], documents, config, context)

    per_cell: dict[tuple[str, str, str], dict[str, list[float]]] = {}
    processed = {"F": 0, "D": 0}
    skipped = []
    for (pair, label), (_, reason, cells) in zip(tagged, results):
        if reason is not None:
            skipped.append({"news_id": pair[0], "paper_id": pair[1], "collection": label,
                            "reason": reason})
            continue
        processed[label] += 1
        for (method, ranker), groups in cells.items():
            for group, value in groups.items():
                if value is not None:
                    per_cell.setdefault((method, ranker, group), {"F": [], "D": []})[label].append(value)

    cells = []
    for method in config.methods:
        for ranker in config.rankers:
            for group in GROUP_ORDER:
                bucket = per_cell.get((method.value, ranker.value, group.value), {"F": [], "D": []})
                mean_f, mean_d = _mean(bucket["F"]), _mean(bucket["D"])
                pdiff = None
                if mean_f is not None and mean_d is not None and mean_d > 0:
                    pdiff = percent_difference(mean_f, mean_d)
                cells.append({
                    "method": method.value,
                    "ranker": ranker.value,
                    "group": group.value,
                    "mean_F": mean_f,
                    "mean_D": mean_d,
                    "percent_diff": pdiff,
                    "n_pairs_F": len(bucket["F"]),
                    "n_pairs_D": len(bucket["D"]),
                    "absent": not bucket["F"] and not bucket["D"],
                })

    total = len(tagged)
    pair_counts = [
        {
            "method": m.value,
            "ranker": r.value,
            "processed_F": processed["F"],
            "processed_D": processed["D"],
            "skipped": len(skipped),
            "total": total,
        }
        for m in config.methods
        for r in config.rankers
    ]

    impact = None
    if corpus.uoa_results and corpus.of_kind(DocumentKind.CASE_STUDY):
        try:
            impact = compare_impact_distributions(corpus, config.bootstrap)
        except ValidationError as exc:
            impact = {"error": str(exc)}

    log.info("experiment: %d pairs processed, %d skipped", sum(processed.values()), len(skipped))
    return ExperimentReport(
        cells=cells,
        pair_counts=pair_counts,
        skipped=skipped,
        impact=impact,
        config=config.echo(),
        seed=config.rank_config.random_seed,
    )


# --------------------------------------------------------------------------
# impact scores


def impact_samples(corpus: Corpus) -> tuple[SampleSet, SampleSet, list[str]]:
    """Scores of case studies with and without a known relation to news coverage.

    A case study counts as news-linked when it links to a news article, or to
    a paper that some news article links to. Case studies with no matching
    UoA result are listed separately.
    """
    covered_papers = {
        link.target_id
        for link in corpus.links
        if corpus[link.source_id].kind is DocumentKind.NEWS
    }
    targets: dict[str, list[str]] = {}
    for link in corpus.links:
        targets.setdefault(link.source_id, []).append(link.target_id)
    lookup = corpus.uoa_lookup()
    linked, unlinked, unscored = [], [], []
    for case in corpus.of_kind(DocumentKind.CASE_STUDY):
        result = lookup.get((case.institution, case.uoa))
        if result is None:
            unscored.append(case.id)
            continue
        score = mean_uoa_score(result)
        hits = targets.get(case.id, ())
        if any(corpus[t].kind is DocumentKind.NEWS or t in covered_papers for t in hits):
            linked.append(score)
        else:
            unlinked.append(score)
    return SampleSet.of("news_linked", linked), SampleSet.of("not_linked", unlinked), unscored


def compare_impact_distributions(
    corpus_or_samples, bootstrap: Optional[BootstrapConfig] = None
) -> dict:
    """Normality of each score set, KS-2 between them, bootstrap of the mean gap.

    Accepts a corpus or an already built ``(linked, unlinked)`` pair of samples.
    """
    bootstrap = bootstrap or BootstrapConfig()
    unscored: list[str] = []
    if isinstance(corpus_or_samples, Corpus):
        linked, unlinked, unscored = impact_samples(corpus_or_samples)
    else:
        linked, unlinked = corpus_or_samples
    for sample in (linked, unlinked):
        if len(sample) == 0:
            raise ValidationError(f"sample {sample.label!r} is empty")

    normality, notices = {}, []
    for sample in (linked, unlinked):
        if len(sample) < 20:
            normality[sample.label] = None
            notices.append(
                f"normality test skipped for {sample.label}: {len(sample)} < 20 scores"
            )
            continue
        try:
            normality[sample.label] = dagostino_pearson(sample).to_json()
        except ValidationError as exc:
            normality[sample.label] = None
            notices.append(f"normality test skipped for {sample.label}: {exc}")
    return {
        "sizes": {linked.label: len(linked), unlinked.label: len(unlinked)},
        "means": {
            linked.label: sum(linked.values) / len(linked),
            unlinked.label: sum(unlinked.values) / len(unlinked),
        },
        "normality": normality,
        "ks": ks2_test(linked, unlinked).to_json(),
        "bootstrap": bootstrap_mean_diff(linked, unlinked, bootstrap).to_json(),
        "unscored_case_studies": unscored,
        "notices": notices,
    }


# --------------------------------------------------------------------------
# output


def _fmt(value) -> str:
    return "" if value is None else repr(value)


def report_json(report: ExperimentReport) -> str:
    return json.dumps(report.to_json(), indent=2, sort_keys=False, allow_nan=False) + "\n"


def report_csv(report: ExperimentReport) -> str:
    """Grid of percent differences: one row per method x ranker, one column per group."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["method", "ranker"] + [g.value for g in GROUP_ORDER])
    rows: dict[tuple[str, str], dict[str, object]] = {}
    for cell in report.cells:
        rows.setdefault((cell["method"], cell["ranker"]), {})[cell["group"]] = cell["percent_diff"]
    for (method, ranker), groups in rows.items():
        writer.writerow([method, ranker] + [_fmt(groups.get(g.value)) for g in GROUP_ORDER])
    return buf.getvalue()


def report_tsv(report: ExperimentReport) -> str:
    columns = ["method", "ranker", "group", "mean_F", "mean_D", "percent_diff",
               "n_pairs_F", "n_pairs_D"]
    lines = ["\t".join(columns)]
    for cell in report.cells:
        lines.append("\t".join(_fmt(cell[c]) if not isinstance(cell[c], str) else cell[c]
                               for c in columns))
    return "\n".join(lines) + "\n"


_WRITERS = {
    "json": ("report.json", report_json),
    "csv": ("percent_diff_grid.csv", report_csv),
    "tsv": ("plot_data.tsv", report_tsv),
}


def emit_report(report: ExperimentReport, out_dir, formats: Sequence[str] = FORMATS) -> list[Path]:
    unknown = [f for f in formats if f not in _WRITERS]
    if unknown:
        raise ValidationError(f"unknown report format(s): {', '.join(unknown)}")
    out_dir = Path(out_dir)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise ResourceError(f"cannot create output directory {out_dir}: {exc}") from None
    written = []
    for fmt in formats:
        name, render = _WRITERS[fmt]
        path = out_dir / name
        try:
            with open(path, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(render(report))
        except OSError as exc:
            raise ResourceError(f"cannot write {path}: {exc}") from None
        written.append(path)
    return written

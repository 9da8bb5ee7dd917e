"""CoreSC discourse labels: ingestion, grouping, per-group similarity."""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Optional, Sequence

from newsprominence.errors import CorpusError, ValidationError


class CoreSCCategory(str, Enum):
    BACKGROUND = "Background"
    MOTIVATION = "Motivation"
    GOAL = "Goal"
    OBJECT = "Object"
    HYPOTHESIS = "Hypothesis"
    METHOD = "Method"
    EXPERIMENT = "Experiment"
    MODEL = "Model"
    OBSERVATION = "Observation"
    RESULT = "Result"
    CONCLUSION = "Conclusion"


class CoreSCGroup(str, Enum):
    BACKGROUND = "Background"
    GOALS = "Goals"
    METHOD = "Method"
    OUTCOMES = "Outcomes"


GROUP_ORDER = tuple(CoreSCGroup)

GROUP_OF = {
    CoreSCCategory.BACKGROUND: CoreSCGroup.BACKGROUND,
    CoreSCCategory.MOTIVATION: CoreSCGroup.BACKGROUND,
    CoreSCCategory.GOAL: CoreSCGroup.GOALS,
    CoreSCCategory.OBJECT: CoreSCGroup.GOALS,
    CoreSCCategory.HYPOTHESIS: CoreSCGroup.GOALS,
    CoreSCCategory.METHOD: CoreSCGroup.METHOD,
    CoreSCCategory.EXPERIMENT: CoreSCGroup.METHOD,
    CoreSCCategory.MODEL: CoreSCGroup.METHOD,
    CoreSCCategory.OBSERVATION: CoreSCGroup.OUTCOMES,
    CoreSCCategory.RESULT: CoreSCGroup.OUTCOMES,
    CoreSCCategory.CONCLUSION: CoreSCGroup.OUTCOMES,
}

# SAPIENTA's three-letter codes and the "Objective" spelling of Object
_ALIASES = {
    "bac": CoreSCCategory.BACKGROUND,
    "mot": CoreSCCategory.MOTIVATION,
    "goa": CoreSCCategory.GOAL,
    "obj": CoreSCCategory.OBJECT,
    "objective": CoreSCCategory.OBJECT,
    "objectives": CoreSCCategory.OBJECT,
    "hyp": CoreSCCategory.HYPOTHESIS,
    "met": CoreSCCategory.METHOD,
    "exp": CoreSCCategory.EXPERIMENT,
    "mod": CoreSCCategory.MODEL,
    "obs": CoreSCCategory.OBSERVATION,
    "res": CoreSCCategory.RESULT,
    "con": CoreSCCategory.CONCLUSION,
}
_ALIASES.update({c.value.lower(): c for c in CoreSCCategory})


def canonical_category(label: str) -> CoreSCCategory:
    if isinstance(label, CoreSCCategory):
        return label
    if not isinstance(label, str):
        raise ValidationError(f"unknown CoreSC category {label!r}")
    try:
        return _ALIASES[label.strip().lower()]
    except KeyError:
        raise ValidationError(f"unknown CoreSC category {label!r}") from None


def map_group(category) -> CoreSCGroup:
    return GROUP_OF[canonical_category(category)]


@dataclass(frozen=True)
class GroupStat:
    mean: float
    max: float
    count: int


@dataclass(frozen=True)
class GroupSimilarity:
    pair: tuple[str, str]
    method: str
    ranker: str
    # groups with no labelled paper sentence are left out, never zero-filled
    groups: dict[CoreSCGroup, GroupStat] = field(default_factory=dict)

    def mean(self, group: CoreSCGroup) -> Optional[float]:
        stat = self.groups.get(group)
        return None if stat is None else stat.mean


def group_similarity(
    news,
    paper,
    prominent: Sequence[int],
    method="bow_jsd",
    context=None,
    ranker: str = "semsimrank",
) -> GroupSimilarity:
    """Compare every labelled paper sentence with every prominent news sentence
    and aggregate the similarities by CoreSC group."""
    from newsprominence.similarity import SimilarityContext, SimilarityMethod, cross_similarity

    if paper.coresc_labels is None:
        raise ValidationError(f"paper {paper.id!r} has no CoreSC labels")
    if not prominent:
        raise ValidationError("no prominent news sentences to compare")
    if len(paper.coresc_labels) != len(paper.sentences):
        raise ValidationError(
            f"paper {paper.id!r}: {len(paper.coresc_labels)} labels for "
            f"{len(paper.sentences)} sentences"
        )
    method = SimilarityMethod(method)
    sims = cross_similarity(
        method,
        context or SimilarityContext(),
        paper,
        range(len(paper.sentences)),
        news,
        list(prominent),
    )
    buckets: dict[CoreSCGroup, list[float]] = {}
    for row, label in enumerate(paper.coresc_labels):
        buckets.setdefault(map_group(label), []).extend(float(v) for v in sims[row])
    groups = {}
    for group in GROUP_ORDER:
        values = buckets.get(group)
        if values:
            groups[group] = GroupStat(sum(values) / len(values), max(values), len(values))
    return GroupSimilarity((news.id, paper.id), method.value, str(getattr(ranker, "value", ranker)), groups)


def load_coresc_labels(path, corpus, abbreviations=None):
    """Attach ``{"doc_id", "labels"}`` JSONL label records to papers in ``corpus``.

    Papers without stored sentences are segmented first so the label count
    can be checked against the sentence count.
    """
    from newsprominence.corpus import DocumentKind
    from newsprominence.textproc import segment_sentences

    updated = []
    seen = set()
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusError(f"malformed JSON ({exc.msg})", lineno) from None
            doc_id, labels = obj.get("doc_id"), obj.get("labels")
            if doc_id not in corpus:
                raise CorpusError(f"unknown doc_id {doc_id!r}", lineno)
            if doc_id in seen:
                raise CorpusError(f"duplicate labels for {doc_id!r}", lineno)
            seen.add(doc_id)
            doc = corpus[doc_id]
            if doc.kind is not DocumentKind.PAPER:
                raise CorpusError(f"{doc_id!r} is not a paper", lineno)
            if not isinstance(labels, list):
                raise CorpusError("labels must be a list", lineno)
            try:
                canon = tuple(canonical_category(label).value for label in labels)
            except ValidationError as exc:
                raise CorpusError(str(exc), lineno) from None
            sentences = doc.sentences or tuple(segment_sentences(doc.raw_text, abbreviations))
            if len(canon) != len(sentences):
                raise CorpusError(
                    f"{doc_id!r}: {len(canon)} labels for {len(sentences)} sentences", lineno
                )
            updated.append(replace(doc, sentences=sentences, coresc_labels=canon))
    return corpus.with_documents(updated)

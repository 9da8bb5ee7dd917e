"""Document, link and REF score data model, with the JSONL corpus reader/writer.

A corpus file holds one JSON object per line. The ``record`` field selects
the record type::

    {"record": "document", "id": "n1", "kind": "news", "title": "...", "raw_text": "..."}
    {"record": "link", "source_id": "n1", "target_id": "p1", "method": "doi"}
    {"record": "uoa_result", "institution": "...", "uoa": "...", "counts": {"4": 2, ...}}

``save_corpus`` writes records in canonical form (documents, then links,
then UoA results, fixed key order, omitted empty fields) so that a file
written by it survives ``load_corpus``/``save_corpus`` byte for byte.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path
from typing import Iterable, Iterator, Optional

from newsprominence.errors import CorpusError, ValidationError


class DocumentKind(str, Enum):
    NEWS = "news"
    PAPER = "paper"
    CASE_STUDY = "case_study"


class LinkMethod(str, Enum):
    DOI = "doi"
    HYPERLINK = "hyperlink"
    INFERRED = "inferred"


class CollectionLabel(str, Enum):
    F_LINKED = "F_linked"
    D_UNLINKED = "D_unlinked"


STARS = (4, 3, 2, 1, 0)


@dataclass(frozen=True)
class Sentence:
    index: int
    text: str
    tokens: tuple[str, ...] = ()


@dataclass(frozen=True)
class Document:
    id: str
    kind: DocumentKind
    title: str
    raw_text: str
    doi: Optional[str] = None
    outlet_or_venue: Optional[str] = None
    sentences: tuple[Sentence, ...] = ()
    coresc_labels: Optional[tuple[str, ...]] = None
    # case studies only: key into the UoA score table
    institution: Optional[str] = None
    uoa: Optional[str] = None

    @property
    def is_segmented(self) -> bool:
        return bool(self.sentences)


@dataclass(frozen=True)
class LinkRecord:
    source_id: str
    target_id: str
    method: LinkMethod

    def to_json(self) -> dict:
        return {
            "record": "link",
            "source_id": self.source_id,
            "target_id": self.target_id,
            "method": self.method.value,
        }


@dataclass(frozen=True)
class UoAResult:
    institution: str
    uoa: str
    counts: dict[int, int]
    fte: Optional[float] = None

    @property
    def key(self) -> tuple[str, str]:
        return (self.institution, self.uoa)


@dataclass(frozen=True)
class Collection:
    label: CollectionLabel
    pair_ids: tuple[tuple[str, str], ...]

    def __len__(self) -> int:
        return len(self.pair_ids)


@dataclass(frozen=True)
class Corpus:
    documents: dict[str, Document] = field(default_factory=dict)
    links: tuple[LinkRecord, ...] = ()
    uoa_results: tuple[UoAResult, ...] = ()

    def __getitem__(self, doc_id: str) -> Document:
        return self.documents[doc_id]

    def __contains__(self, doc_id: str) -> bool:
        return doc_id in self.documents

    def of_kind(self, kind: DocumentKind) -> list[Document]:
        return [d for d in self.documents.values() if d.kind is kind]

    def news_paper_pairs(self) -> list[tuple[str, str]]:
        """Distinct (news id, paper id) link pairs in first-seen order."""
        seen = {}
        for link in self.links:
            if self.documents[link.source_id].kind is DocumentKind.NEWS:
                seen.setdefault((link.source_id, link.target_id), None)
        return list(seen)

    def uoa_lookup(self) -> dict[tuple[str, str], UoAResult]:
        return {r.key: r for r in self.uoa_results}

    def with_documents(self, documents: Iterable[Document]) -> "Corpus":
        """Copy with the given documents replacing those sharing their ids."""
        updated = dict(self.documents)
        for doc in documents:
            if doc.id not in updated:
                raise ValidationError(f"unknown document id {doc.id!r}")
            updated[doc.id] = doc
        return replace(self, documents=updated)

    def with_links(self, links: Iterable[LinkRecord]) -> "Corpus":
        corpus = replace(self, links=self.links + tuple(links))
        _validate_links(corpus)
        return corpus


def mean_uoa_score(result: UoAResult) -> float:
    """Mean star rating of a UoA submission, unclassified counting as 0."""
    total = sum(result.counts.get(star, 0) for star in STARS)
    if total <= 0:
        raise ValidationError(
            f"undefined score: no case studies counted for {result.institution!r}/{result.uoa!r}"
        )
    weighted = sum(star * result.counts.get(star, 0) for star in STARS)
    return weighted / total


def partition_collections(corpus: Corpus) -> tuple[Collection, Collection]:
    """Split linked (news, paper) pairs by REF case-study involvement.

    A pair goes to F when some case study links to either its news article
    or its paper; every other pair goes to D.
    """
    cited = {
        link.target_id
        for link in corpus.links
        if corpus.documents[link.source_id].kind is DocumentKind.CASE_STUDY
    }
    linked, unlinked = [], []
    for news_id, paper_id in corpus.news_paper_pairs():
        if news_id in cited or paper_id in cited:
            linked.append((news_id, paper_id))
        else:
            unlinked.append((news_id, paper_id))
    return (
        Collection(CollectionLabel.F_LINKED, tuple(linked)),
        Collection(CollectionLabel.D_UNLINKED, tuple(unlinked)),
    )


# --------------------------------------------------------------------------
# JSONL reading


def _require(obj: dict, key: str, kind: type, line: int):
    if key not in obj:
        raise CorpusError(f"missing field {key!r}", line)
    value = obj[key]
    if not isinstance(value, kind):
        raise CorpusError(f"field {key!r} must be {kind.__name__}", line)
    return value


def _optional_str(obj: dict, key: str, line: int) -> Optional[str]:
    value = obj.get(key)
    if value is not None and not isinstance(value, str):
        raise CorpusError(f"field {key!r} must be a string", line)
    return value


def _parse_document(obj: dict, line: int) -> Document:
    from newsprominence.coresc import canonical_category
    from newsprominence.linkextract import normalize_doi

    doc_id = _require(obj, "id", str, line)
    try:
        kind = DocumentKind(_require(obj, "kind", str, line))
    except ValueError:
        raise CorpusError(f"unknown document kind {obj['kind']!r}", line) from None

    doi = _optional_str(obj, "doi", line)
    if doi is not None:
        normalized = normalize_doi(doi, strict=False)
        if normalized is None:
            raise CorpusError(f"document {doc_id!r} has malformed DOI {doi!r}", line)
        doi = normalized

    sentences = []
    for pos, item in enumerate(obj.get("sentences") or ()):
        if not isinstance(item, dict) or not isinstance(item.get("text"), str):
            raise CorpusError(f"document {doc_id!r}: malformed sentence {pos}", line)
        if item.get("index") != pos:
            raise CorpusError(
                f"document {doc_id!r}: sentence indices must be 0..n-1 in order", line
            )
        if not item["text"].strip():
            raise CorpusError(f"document {doc_id!r}: empty sentence {pos}", line)
        sentences.append(Sentence(pos, item["text"]))

    labels = obj.get("coresc_labels")
    if labels is not None:
        if not isinstance(labels, list):
            raise CorpusError(f"document {doc_id!r}: coresc_labels must be a list", line)
        try:
            labels = tuple(canonical_category(label).value for label in labels)
        except ValidationError as exc:
            raise CorpusError(f"document {doc_id!r}: {exc}", line) from None

    return Document(
        id=doc_id,
        kind=kind,
        title=_require(obj, "title", str, line),
        raw_text=_require(obj, "raw_text", str, line),
        doi=doi,
        outlet_or_venue=_optional_str(obj, "outlet_or_venue", line),
        sentences=tuple(sentences),
        coresc_labels=labels,
        institution=_optional_str(obj, "institution", line),
        uoa=_optional_str(obj, "uoa", line),
    )


def _parse_link(obj: dict, line: int) -> LinkRecord:
    try:
        method = LinkMethod(_require(obj, "method", str, line))
    except ValueError:
        raise CorpusError(f"unknown link method {obj['method']!r}", line) from None
    return LinkRecord(
        _require(obj, "source_id", str, line),
        _require(obj, "target_id", str, line),
        method,
    )


def _parse_uoa(obj: dict, line: int) -> UoAResult:
    raw = _require(obj, "counts", dict, line)
    counts = {}
    for key, value in raw.items():
        if key not in {"0", "1", "2", "3", "4"}:
            raise CorpusError(f"unknown star rating {key!r}", line)
        if not isinstance(value, int) or isinstance(value, bool) or value < 0:
            raise CorpusError("star counts must be non-negative integers", line)
        counts[int(key)] = value
    counts = {star: counts.get(star, 0) for star in STARS}
    fte = obj.get("fte")
    if fte is not None:
        if isinstance(fte, bool) or not isinstance(fte, (int, float)) or fte < 0:
            raise CorpusError("fte must be a non-negative number", line)
        fte = float(fte)
    return UoAResult(
        _require(obj, "institution", str, line), _require(obj, "uoa", str, line), counts, fte
    )


def _validate_links(corpus: Corpus) -> None:
    seen = set()
    docs = corpus.documents
    for link in corpus.links:
        for doc_id in (link.source_id, link.target_id):
            if doc_id not in docs:
                raise CorpusError(f"dangling link: no document with id {doc_id!r}")
        pair = (link.source_id, link.target_id)
        if pair in seen:
            raise CorpusError(f"duplicate link {link.source_id!r} -> {link.target_id!r}")
        seen.add(pair)
        source, target = docs[link.source_id].kind, docs[link.target_id].kind
        ok = (source is DocumentKind.NEWS and target is DocumentKind.PAPER) or (
            source is DocumentKind.CASE_STUDY
            and target in (DocumentKind.NEWS, DocumentKind.PAPER)
        )
        if not ok:
            raise CorpusError(
                f"link {link.source_id!r} -> {link.target_id!r}: "
                f"{source.value} -> {target.value} links are not allowed"
            )


def _validate_labels(doc: Document) -> None:
    if doc.coresc_labels is None:
        return
    if doc.kind is not DocumentKind.PAPER:
        raise CorpusError(f"document {doc.id!r}: only papers carry CoreSC labels")
    if doc.sentences:
        n = len(doc.sentences)
    else:
        from newsprominence.textproc import segment_sentences

        n = len(segment_sentences(doc.raw_text))
    if n != len(doc.coresc_labels):
        raise CorpusError(
            f"document {doc.id!r}: {len(doc.coresc_labels)} CoreSC labels for {n} sentences"
        )


def iter_records(path) -> Iterator[tuple[int, dict]]:
    with open(path, encoding="utf-8") as fh:
        for lineno, text in enumerate(fh, start=1):
            if not text.strip():
                continue
            try:
                obj = json.loads(text)
            except json.JSONDecodeError as exc:
                raise CorpusError(f"malformed JSON ({exc.msg})", lineno) from None
            if not isinstance(obj, dict):
                raise CorpusError("record must be a JSON object", lineno)
            yield lineno, obj


def load_corpus(path) -> Corpus:
    """Read and validate a JSONL corpus file."""
    documents: dict[str, Document] = {}
    links, results = [], []
    uoa_keys = set()
    for line, obj in iter_records(path):
        record = obj.get("record")
        if record == "document":
            doc = _parse_document(obj, line)
            if doc.id in documents:
                raise CorpusError(f"duplicate document id {doc.id!r}", line)
            try:
                _validate_labels(doc)
            except CorpusError as exc:
                raise CorpusError(str(exc), line) from None
            documents[doc.id] = doc
        elif record == "link":
            links.append(_parse_link(obj, line))
        elif record == "uoa_result":
            result = _parse_uoa(obj, line)
            if result.key in uoa_keys:
                raise CorpusError(f"duplicate UoA result {result.key}", line)
            uoa_keys.add(result.key)
            results.append(result)
        else:
            raise CorpusError(f"unknown record type {record!r}", line)
    corpus = Corpus(documents, tuple(links), tuple(results))
    _validate_links(corpus)
    return corpus


# --------------------------------------------------------------------------
# JSONL writing


def document_to_json(doc: Document) -> dict:
    out = {"record": "document", "id": doc.id, "kind": doc.kind.value, "title": doc.title}
    for key in ("doi", "outlet_or_venue", "institution", "uoa"):
        value = getattr(doc, key)
        if value is not None:
            out[key] = value
    out["raw_text"] = doc.raw_text
    if doc.sentences:
        out["sentences"] = [{"index": s.index, "text": s.text} for s in doc.sentences]
    if doc.coresc_labels is not None:
        out["coresc_labels"] = list(doc.coresc_labels)
    return out


def uoa_to_json(result: UoAResult) -> dict:
    out = {
        "record": "uoa_result",
        "institution": result.institution,
        "uoa": result.uoa,
        "counts": {str(star): result.counts.get(star, 0) for star in STARS},
    }
    if result.fte is not None:
        out["fte"] = result.fte
    return out


def dumps_record(obj: dict) -> str:
    return json.dumps(obj, ensure_ascii=False, separators=(", ", ": "))


def corpus_lines(corpus: Corpus) -> Iterator[str]:
    for doc in corpus.documents.values():
        yield dumps_record(document_to_json(doc))
    for link in corpus.links:
        yield dumps_record(link.to_json())
    for result in corpus.uoa_results:
        yield dumps_record(uoa_to_json(result))


def save_corpus(corpus: Corpus, path) -> None:
    with open(Path(path), "w", encoding="utf-8", newline="\n") as fh:
        for line in corpus_lines(corpus):
            fh.write(line + "\n")


def write_links(links: Iterable[LinkRecord], path) -> None:
    with open(Path(path), "w", encoding="utf-8", newline="\n") as fh:
        for link in links:
            fh.write(dumps_record(link.to_json()) + "\n")

"""Offline DOI extraction from text and saved publisher HTML pages."""

from __future__ import annotations

import re
from dataclasses import dataclass
from html.parser import HTMLParser
from pathlib import Path
from typing import Optional
from urllib.parse import unquote

from newsprominence.corpus import Corpus, DocumentKind, LinkMethod, LinkRecord

TRAILING_PUNCT = ".,;:)]}\"'"

# registrant of 4+ digits in free text, where false positives are the risk
_STRICT = r"10\.\d{4,}(?:\.\d+)*/[^\s\"<>]+"
# metadata tags and doi.org URLs are DOI contexts already; accept short registrants
_RELAXED = r"10\.\d+(?:\.\d+)*/[^\s\"<>]+"

_PREFIX = r"(?:(?:https?://)?(?:dx\.)?doi\.org/|doi:\s*|info:doi/|urn:doi:)?"
_TEXT_RE = re.compile(_PREFIX + r"(?<![\w.\-])(" + _STRICT + ")", re.IGNORECASE)
_STRICT_FULL = re.compile(_STRICT + r"\Z")
_RELAXED_FULL = re.compile(_RELAXED + r"\Z")
_STRIP_PREFIX = re.compile(
    r"^(?:(?:https?://)?(?:dx\.|www\.)?doi\.org/|doi:\s*|info:doi/|urn:doi:)", re.IGNORECASE
)

META_PRIORITY = ("citation_doi", "dc.identifier", "prism.doi")


@dataclass(frozen=True)
class DoiCandidate:
    raw: str
    normalized: str
    char_span: tuple[int, int]


def normalize_doi(value: str, strict: bool = True) -> Optional[str]:
    """Canonical lowercase DOI, or ``None`` when ``value`` is not a DOI.

    Resolver URLs and ``doi:`` style prefixes are stripped, along with
    trailing sentence punctuation.
    """
    text = value.strip()
    while True:
        stripped = _STRIP_PREFIX.sub("", text, count=1).strip()
        if stripped == text:
            break
        text = stripped
    text = text.rstrip(TRAILING_PUNCT).lower()
    pattern = _STRICT_FULL if strict else _RELAXED_FULL
    return text if pattern.match(text) else None


def extract_dois(text: str) -> list[DoiCandidate]:
    """All DOIs in free text, in order of appearance."""
    found = []
    for match in _TEXT_RE.finditer(text):
        raw = match.group(0)
        trimmed = raw.rstrip(TRAILING_PUNCT)
        normalized = normalize_doi(match.group(1))
        if normalized is None:
            continue
        start = match.start()
        found.append(DoiCandidate(trimmed, normalized, (start, start + len(trimmed))))
    return found


class _MetaCollector(HTMLParser):
    def __init__(self):
        super().__init__(convert_charrefs=True)
        self.meta: dict[str, list[str]] = {}
        self.hrefs: list[str] = []

    def handle_starttag(self, tag, attrs):
        attrs = {k.lower(): (v or "") for k, v in attrs}
        if tag == "meta":
            name = (attrs.get("name") or attrs.get("property") or "").strip().lower()
            if name in META_PRIORITY:
                self.meta.setdefault(name, []).append(attrs.get("content", ""))
        elif tag == "a" and "href" in attrs:
            self.hrefs.append(attrs["href"])

    handle_startendtag = handle_starttag


def _doi_from_href(href: str) -> Optional[str]:
    href = unquote(href)
    lowered = href.lower()
    pos = lowered.find("doi.org/")
    if pos < 0:
        return None
    return normalize_doi(href[pos + len("doi.org/"):].split("?")[0].split("#")[0], strict=False)


_RAW_META_RE = re.compile(
    r"<meta[^>]+name\s*=\s*[\"']?(citation_doi|dc\.identifier|prism\.doi)[\"']?[^>]*"
    r"content\s*=\s*[\"']([^\"']*)",
    re.IGNORECASE,
)


def _regex_fallback(html: str) -> Optional[str]:
    hits = {}
    for name, content in _RAW_META_RE.findall(html):
        doi = normalize_doi(content, strict=False)
        if doi is not None:
            hits.setdefault(name.lower(), doi)
    for name in META_PRIORITY:
        if name in hits:
            return hits[name]
    candidates = extract_dois(html)
    return candidates[0].normalized if candidates else None


def _parse(html: str) -> Optional[_MetaCollector]:
    collector = _MetaCollector()
    try:
        collector.feed(html)
        collector.close()
    except Exception:
        return None
    return collector


def extract_doi_from_html(html: str) -> Optional[str]:
    """DOI declared by a saved publisher page.

    Meta tags are consulted in ``META_PRIORITY`` order, then anchors pointing
    at doi.org. Pages the parser chokes on are scanned with regexes instead.
    """
    collector = _parse(html)
    if collector is None:
        return _regex_fallback(html)
    for name in META_PRIORITY:
        for content in collector.meta.get(name, ()):
            doi = normalize_doi(content, strict=False)
            if doi is not None:
                return doi
    for href in collector.hrefs:
        doi = _doi_from_href(href)
        if doi is not None:
            return doi
    return None


def _page_dois(html: str) -> list[str]:
    """Every DOI a saved news page cites: metadata, doi.org anchors, body text."""
    collector = _parse(html)
    found = []
    if collector is None:
        single = _regex_fallback(html)
        found = [single] if single else []
    else:
        for name in META_PRIORITY:
            found += [normalize_doi(c, strict=False) for c in collector.meta.get(name, ())]
        found += [_doi_from_href(h) for h in collector.hrefs]
    found += [c.normalized for c in extract_dois(html)]
    return [d for d in dict.fromkeys(found) if d]


def _read_page(html_dir, doc_id: str) -> Optional[str]:
    if html_dir is None:
        return None
    page = Path(html_dir) / f"{doc_id}.html"
    if not page.is_file():
        return None
    return page.read_text(encoding="utf-8", errors="replace")


def link_documents(corpus: Corpus, html_dir=None) -> list[LinkRecord]:
    """New news -> paper links found by DOI matching.

    A news article links to every paper whose DOI appears in its text. With
    ``html_dir``, saved pages named ``<document id>.html`` are read too: a
    news page contributes the DOIs it cites, and a publisher page supplies
    the DOI of a paper that has none in the corpus. Every emitted link has
    method ``doi``; pairs already linked are never emitted again.
    """
    papers = {}
    for paper in corpus.of_kind(DocumentKind.PAPER):
        doi = paper.doi
        if doi is None:
            html = _read_page(html_dir, paper.id)
            doi = extract_doi_from_html(html) if html is not None else None
        if doi is not None:
            papers.setdefault(doi, paper.id)
    existing = {(link.source_id, link.target_id) for link in corpus.links}
    out = []
    for news in corpus.of_kind(DocumentKind.NEWS):
        dois = [c.normalized for c in extract_dois(news.raw_text)]
        html = _read_page(html_dir, news.id)
        if html is not None:
            dois += _page_dois(html)
        for doi in dict.fromkeys(dois):
            paper_id = papers.get(doi)
            if paper_id is None or (news.id, paper_id) in existing:
                continue
            existing.add((news.id, paper_id))
            out.append(LinkRecord(news.id, paper_id, LinkMethod.DOI))
    return out

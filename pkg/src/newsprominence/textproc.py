"""Sentence segmentation, tokenization and bag-of-words counting."""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from functools import lru_cache
from importlib import resources
from typing import Iterable, Optional, Sequence

import numpy as np

from newsprominence.corpus import Document, Sentence
from newsprominence.errors import ValidationError

_BOUNDARY = re.compile(r"[.!?]+[\"'”’)\]]*\s+")
_OPENERS = "\"'“‘("
_TOKEN = re.compile(r"[^\W_]+")
_SPACE = re.compile(r"\s+")


def read_word_list(path=None, name: str = "stopwords.txt") -> frozenset[str]:
    """One lowercase entry per line; blank lines and ``#`` comments skipped."""
    if path is None:
        text = resources.files("newsprominence").joinpath("data", name).read_text("utf-8")
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    return frozenset(
        line.strip().lower()
        for line in text.splitlines()
        if line.strip() and not line.lstrip().startswith("#")
    )


@lru_cache(maxsize=None)
def default_stopwords() -> frozenset[str]:
    return read_word_list(name="stopwords.txt")


@lru_cache(maxsize=None)
def default_abbreviations() -> frozenset[str]:
    return read_word_list(name="abbreviations.txt")


@dataclass(frozen=True)
class TokenFilterConfig:
    stopwords: frozenset[str] = field(default_factory=default_stopwords)
    min_token_len: int = 3
    lowercase: bool = True

    def __post_init__(self):
        if self.min_token_len < 1:
            raise ValidationError("min_token_len must be >= 1")


def _is_abbreviation(text: str, dot: int, abbreviations: frozenset[str]) -> bool:
    start = dot
    while start > 0 and not text[start - 1].isspace():
        start -= 1
    return text[start:dot + 1].lower() in abbreviations


def segment_sentences(
    raw_text: str, abbreviations: Optional[frozenset[str]] = None
) -> list[Sentence]:
    """Split text at ``.``/``!``/``?`` followed by whitespace and a capital,
    digit or opening quote.

    Single periods closing a listed abbreviation ("Dr.", "al.") never end a
    sentence. Runs of whitespace inside a sentence collapse to one space.
    """
    if abbreviations is None:
        abbreviations = default_abbreviations()
    pieces = []
    start = 0
    for match in _BOUNDARY.finditer(raw_text):
        nxt = match.end()
        if nxt >= len(raw_text):
            continue
        c = raw_text[nxt]
        if not (c.isupper() or c.isdigit() or c in _OPENERS):
            continue
        punct = match.group(0).rstrip()
        if punct == "." and _is_abbreviation(raw_text, match.start(), abbreviations):
            continue
        cut = match.start() + len(punct)
        pieces.append(raw_text[start:cut])
        start = cut
    pieces.append(raw_text[start:])

    sentences = []
    for piece in pieces:
        text = _SPACE.sub(" ", piece).strip()
        if text:
            sentences.append(Sentence(len(sentences), text))
    return sentences


def tokenize(sentence_text: str, config: Optional[TokenFilterConfig] = None) -> list[str]:
    config = config or TokenFilterConfig()
    tokens = []
    for tok in _TOKEN.findall(sentence_text):
        lowered = tok.lower()
        if lowered in config.stopwords or len(tok) < config.min_token_len:
            continue
        tokens.append(lowered if config.lowercase else tok)
    return tokens


def count_vector(tokens: Iterable[str], vocabulary: Sequence[str]) -> np.ndarray:
    index = {word: i for i, word in enumerate(vocabulary)}
    out = np.zeros(len(vocabulary), dtype=np.int64)
    for tok in tokens:
        i = index.get(tok)
        if i is not None:
            out[i] += 1
    return out


def prepare_document(
    doc: Document,
    config: Optional[TokenFilterConfig] = None,
    abbreviations: Optional[frozenset[str]] = None,
) -> Document:
    """Segment (when no sentences are stored) and tokenize every sentence."""
    config = config or TokenFilterConfig()
    sentences = doc.sentences or tuple(segment_sentences(doc.raw_text, abbreviations))
    return replace(
        doc,
        sentences=tuple(
            Sentence(s.index, s.text, tuple(tokenize(s.text, config))) for s in sentences
        ),
    )

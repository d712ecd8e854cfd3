"""Tweet tokenization, vocabulary building, and area-term stripping."""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass
from pathlib import Path

TokenList = list[str]

_URL_PREFIXES = ("http://", "https://", "www.")


def _is_trimmable(ch: str) -> bool:
    return unicodedata.category(ch)[0] in ("P", "S")


def _trim(token: str) -> str:
    start, end = 0, len(token)
    while start < end and _is_trimmable(token[start]):
        start += 1
    while end > start and _is_trimmable(token[end - 1]):
        end -= 1
    return token[start:end]


def tokenize(text: str) -> TokenList:
    """Split tweet text into lowercase word tokens.

    URLs and @mentions are dropped, hashtags keep their word (the '#' goes),
    and surrounding punctuation/symbols are trimmed from each token while
    inner apostrophes ("don't") survive.
    """
    tokens: TokenList = []
    for raw in text.lower().split():
        if raw.startswith("@"):
            continue
        word = _trim(raw)
        if not word or word.startswith(_URL_PREFIXES):
            continue
        tokens.append(word)
    return tokens


@dataclass(frozen=True)
class Vocabulary:
    """Token->index map with corpus frequencies; indices are 0..size-1.

    Indices follow lexicographic token order so a vocabulary built from the
    same documents is identical across runs and platforms.
    """

    index: dict[str, int]
    counts: dict[str, int]

    @property
    def size(self) -> int:
        return len(self.index)

    def __post_init__(self) -> None:
        if sorted(self.index.values()) != list(range(len(self.index))):
            raise ValueError("vocabulary indices must be exactly 0..size-1")
        if set(self.index) != set(self.counts):
            raise ValueError("index and counts must cover the same tokens")


def build_vocabulary(docs: list[TokenList], min_freq: int = 1) -> Vocabulary:
    """Collect every token with corpus frequency >= ``min_freq``."""
    if min_freq < 1:
        raise ValueError("min_freq must be >= 1")
    counts: dict[str, int] = {}
    for doc in docs:
        for token in doc:
            counts[token] = counts.get(token, 0) + 1
    kept = sorted(t for t, c in counts.items() if c >= min_freq)
    return Vocabulary(
        index={token: i for i, token in enumerate(kept)},
        counts={token: counts[token] for token in kept},
    )


def strip_area_terms(tokens: TokenList, blocklist: set[str] | frozenset[str]) -> TokenList:
    """Drop blocklisted tokens (area/event-specific words), keeping order."""
    for term in blocklist:
        if term != term.lower():
            raise ValueError(f"blocklist term {term!r} must be lowercase")
    return [t for t in tokens if t not in blocklist]


def load_blocklist(path: str | Path) -> frozenset[str]:
    """Read one term per line; '#'-prefixed lines are comments."""
    terms = set()
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            term = line.strip()
            if term and not term.startswith("#"):
                terms.add(term.lower())
    return frozenset(terms)

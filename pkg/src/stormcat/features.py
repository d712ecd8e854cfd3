"""Feature vectors: term-frequency bag-of-words and averaged word embeddings.

Both representations sit behind fit/transform estimators so they slot into
cross-validation (vocabulary built from training folds only) and compose
with scikit-learn pipelines.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import IO

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.exceptions import NotFittedError

from .text import TokenList, Vocabulary, build_vocabulary

logger = logging.getLogger(__name__)


def bow_vectorize(tokens: TokenList, vocab: Vocabulary) -> np.ndarray:
    """Raw term-frequency vector over ``vocab``; unknown tokens are ignored."""
    if vocab.size == 0:
        raise ValueError("cannot vectorize over an empty vocabulary")
    vec = np.zeros(vocab.size, dtype=np.float64)
    index = vocab.index
    for token in tokens:
        i = index.get(token)
        if i is not None:
            vec[i] += 1.0
    return vec


@dataclass(frozen=True)
class EmbeddingTable:
    """Immutable token->vector map loaded from the text embedding format."""

    dim: int
    vectors: dict[str, np.ndarray]
    declared_count: int

    def __contains__(self, token: str) -> bool:
        return token in self.vectors

    def __len__(self) -> int:
        return len(self.vectors)


def load_embeddings(source: IO[str] | str | Path) -> EmbeddingTable:
    """Load a whitespace-delimited embedding table.

    First line is ``count dim``; each following line is a token and ``dim``
    floats. Duplicate tokens keep their first vector (with a warning);
    malformed lines raise with their line number.
    """
    if isinstance(source, (str, Path)):
        with open(source, encoding="utf-8") as fh:
            return load_embeddings(fh)
    header = source.readline()
    parts = header.split()
    if len(parts) != 2:
        raise ValueError("missing header: expected 'count dim' on line 1")
    try:
        declared_count, dim = int(parts[0]), int(parts[1])
    except ValueError as exc:
        raise ValueError("missing header: expected two integers on line 1") from exc
    if dim <= 0:
        raise ValueError("embedding dimension must be positive")
    vectors: dict[str, np.ndarray] = {}
    duplicates = 0
    for lineno, line in enumerate(source, start=2):
        if not line.strip():
            continue
        fields = line.rstrip("\n").split(" ")
        token, values = fields[0], fields[1:]
        if len(values) != dim:
            raise ValueError(f"vector length mismatch at line {lineno}: expected {dim} values, got {len(values)}")
        try:
            vec = np.array([float(v) for v in values], dtype=np.float64)
        except ValueError as exc:
            raise ValueError(f"non-numeric entry at line {lineno}") from exc
        if token in vectors:
            duplicates += 1
            continue
        vec.setflags(write=False)
        vectors[token] = vec
    if duplicates:
        logger.warning("embedding table had %d duplicate token(s); kept first occurrence", duplicates)
    return EmbeddingTable(dim=dim, vectors=vectors, declared_count=declared_count)


def save_embeddings(table: EmbeddingTable, destination: IO[str] | str | Path) -> None:
    """Write a table back in the text format (count reflects stored tokens)."""
    if isinstance(destination, (str, Path)):
        with open(destination, "w", encoding="utf-8") as fh:
            save_embeddings(table, fh)
        return
    destination.write(f"{len(table.vectors)} {table.dim}\n")
    for token, vec in table.vectors.items():
        destination.write(token + " " + " ".join(repr(float(v)) for v in vec) + "\n")


def embed_average(tokens: TokenList, table: EmbeddingTable) -> tuple[np.ndarray, int]:
    """Arithmetic mean of the vectors of in-table tokens (repeats count each time).

    All-out-of-vocabulary input yields the zero vector with count 0.
    """
    total = np.zeros(table.dim, dtype=np.float64)
    count = 0
    for token in tokens:
        vec = table.vectors.get(token)
        if vec is not None:
            total += vec
            count += 1
    if count == 0:
        return total, 0
    return total / count, count


class BowVectorizer(BaseEstimator, TransformerMixin):
    """Term-frequency bag-of-words over a vocabulary learned in :meth:`fit`."""

    def __init__(self, min_freq: int = 1):
        self.min_freq = min_freq

    def fit(self, docs: list[TokenList], y=None) -> "BowVectorizer":
        self.vocabulary_ = build_vocabulary(docs, min_freq=self.min_freq)
        return self

    def transform(self, docs: list[TokenList]) -> np.ndarray:
        if not hasattr(self, "vocabulary_"):
            raise NotFittedError("BowVectorizer must be fitted before transform")
        if self.vocabulary_.size == 0:
            raise ValueError("cannot vectorize over an empty vocabulary")
        out = np.zeros((len(docs), self.vocabulary_.size), dtype=np.float64)
        for i, doc in enumerate(docs):
            out[i] = bow_vectorize(doc, self.vocabulary_)
        return out

    @property
    def dim(self) -> int:
        return self.vocabulary_.size


class EmbeddingVectorizer(BaseEstimator, TransformerMixin):
    """Averaged pre-trained embeddings; :meth:`fit` is a no-op (table is fixed)."""

    def __init__(self, table: EmbeddingTable):
        self.table = table

    def fit(self, docs: list[TokenList] | None = None, y=None) -> "EmbeddingVectorizer":
        return self

    def transform(self, docs: list[TokenList]) -> np.ndarray:
        X, counts = self.transform_with_counts(docs)
        return X

    def transform_with_counts(self, docs: list[TokenList]) -> tuple[np.ndarray, np.ndarray]:
        """Also report per-document in-table token counts (0 marks all-OOV docs)."""
        rows = np.zeros((len(docs), self.table.dim), dtype=np.float64)
        counts = np.zeros(len(docs), dtype=np.int64)
        for i, doc in enumerate(docs):
            rows[i], counts[i] = embed_average(doc, self.table)
        oov_docs = int(np.sum(counts == 0))
        if oov_docs:
            logger.warning("%d document(s) had no in-table tokens; kept as zero vectors", oov_docs)
        return rows, counts

    @property
    def dim(self) -> int:
        return self.table.dim

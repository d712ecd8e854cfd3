import io

import numpy as np
import pytest
from hypothesis import given, strategies as st

from stormcat.features import (
    BowVectorizer,
    EmbeddingVectorizer,
    bow_vectorize,
    embed_average,
    load_embeddings,
    save_embeddings,
)
from stormcat.text import Vocabulary, build_vocabulary

VOCAB = Vocabulary(index={"flood": 0, "storm": 1, "surge": 2},
                   counts={"flood": 1, "storm": 1, "surge": 1})


class TestBowVectorize:
    def test_counts_by_definition(self):
        vec = bow_vectorize(["storm", "storm", "surge"], VOCAB)
        assert vec.tolist() == [0.0, 2.0, 1.0]

    def test_oov_ignored(self):
        assert bow_vectorize(["unknownword"], VOCAB).tolist() == [0.0, 0.0, 0.0]

    def test_empty_tokens_zero_vector(self):
        assert bow_vectorize([], VOCAB).tolist() == [0.0, 0.0, 0.0]

    def test_empty_vocabulary_rejected(self):
        empty = Vocabulary(index={}, counts={})
        with pytest.raises(ValueError, match="empty vocabulary"):
            bow_vectorize(["a"], empty)

    @given(st.lists(st.sampled_from(["flood", "storm", "surge", "zzz"]), max_size=20))
    def test_l1_norm_counts_in_vocab_occurrences(self, tokens):
        vec = bow_vectorize(tokens, VOCAB)
        assert vec.sum() == sum(1 for t in tokens if t in VOCAB.index)

    @given(st.lists(st.sampled_from(["flood", "storm", "surge", "zzz"]), max_size=20),
           st.randoms())
    def test_permutation_invariant(self, tokens, rnd):
        shuffled = tokens[:]
        rnd.shuffle(shuffled)
        assert bow_vectorize(tokens, VOCAB).tolist() == bow_vectorize(shuffled, VOCAB).tolist()


def embeddings_stream(text):
    return io.StringIO(text)


class TestLoadEmbeddings:
    def test_two_token_table(self):
        table = load_embeddings(embeddings_stream("2 3\nstorm 1 0 0\nsurge 0 1 0\n"))
        assert table.dim == 3
        assert table.declared_count == 2
        assert len(table) == 2
        assert table.vectors["storm"].tolist() == [1.0, 0.0, 0.0]

    def test_length_mismatch_names_line(self):
        with pytest.raises(ValueError, match="vector length mismatch at line 2"):
            load_embeddings(embeddings_stream("1 3\nstorm 1 0\n"))

    def test_empty_file_missing_header(self):
        with pytest.raises(ValueError, match="missing header"):
            load_embeddings(embeddings_stream(""))

    def test_non_numeric_entry_names_line(self):
        with pytest.raises(ValueError, match="non-numeric entry at line 3"):
            load_embeddings(embeddings_stream("2 2\na 1 2\nb 1 x\n"))

    def test_duplicate_keeps_first_with_warning(self, caplog):
        with caplog.at_level("WARNING"):
            table = load_embeddings(embeddings_stream("2 1\na 1\na 2\n"))
        assert table.vectors["a"].tolist() == [1.0]
        assert any("duplicate" in r.message for r in caplog.records)

    def test_round_trip(self):
        table = load_embeddings(embeddings_stream("2 3\nstorm 1.5 -0.25 0\nsurge 0 1 3e-2\n"))
        out = io.StringIO()
        save_embeddings(table, out)
        again = load_embeddings(io.StringIO(out.getvalue()))
        assert again.dim == table.dim
        assert set(again.vectors) == set(table.vectors)
        for token in table.vectors:
            assert again.vectors[token].tolist() == table.vectors[token].tolist()


class TestEmbedAverage:
    TABLE = load_embeddings(embeddings_stream("2 2\na 1 0\nb 0 1\n"))

    def test_mean_of_two_unit_vectors(self):
        vec, count = embed_average(["a", "b"], self.TABLE)
        assert vec.tolist() == [0.5, 0.5]
        assert count == 2

    def test_single_token_identity(self):
        vec, count = embed_average(["a"], self.TABLE)
        assert vec.tolist() == [1.0, 0.0]
        assert count == 1

    def test_all_oov_zero_vector(self):
        vec, count = embed_average(["zzz"], self.TABLE)
        assert vec.tolist() == [0.0, 0.0]
        assert count == 0

    def test_repeats_contribute_each_occurrence(self):
        vec, count = embed_average(["a", "a", "b"], self.TABLE)
        assert count == 3
        assert vec.tolist() == pytest.approx([2 / 3, 1 / 3])

    @given(st.lists(st.sampled_from(["a", "b", "zzz"]), min_size=1, max_size=10))
    def test_output_within_coordinate_envelope(self, tokens):
        vec, count = embed_average(tokens, self.TABLE)
        if count == 0:
            assert vec.tolist() == [0.0, 0.0]
            return
        used = [self.TABLE.vectors[t] for t in tokens if t in self.TABLE]
        lo, hi = np.min(used, axis=0), np.max(used, axis=0)
        assert np.all(vec >= lo - 1e-12) and np.all(vec <= hi + 1e-12)


class TestVectorizers:
    DOCS = [["storm", "storm"], ["surge", "storm"], ["calm"]]

    def test_bow_vectorizer_builds_vocab_on_fit(self):
        vec = BowVectorizer().fit(self.DOCS)
        X = vec.transform(self.DOCS)
        assert X.shape == (3, 3)  # calm, storm, surge
        assert X[0].tolist() == [0.0, 2.0, 0.0]

    def test_bow_vectorizer_unfitted_raises(self):
        from sklearn.exceptions import NotFittedError

        with pytest.raises(NotFittedError):
            BowVectorizer().transform(self.DOCS)

    def test_bow_min_freq_filters(self):
        vec = BowVectorizer(min_freq=2).fit(self.DOCS)
        assert set(vec.vocabulary_.index) == {"storm"}

    def test_embedding_vectorizer_transform_with_counts(self, caplog):
        table = load_embeddings(embeddings_stream("2 2\nstorm 1 0\nsurge 0 1\n"))
        vec = EmbeddingVectorizer(table).fit()
        with caplog.at_level("WARNING"):
            X, counts = vec.transform_with_counts([["storm"], ["calm"]])
        assert X[0].tolist() == [1.0, 0.0]
        assert X[1].tolist() == [0.0, 0.0]
        assert counts.tolist() == [1, 0]
        assert any("no in-table tokens" in r.message for r in caplog.records)

    def test_sklearn_clone_compatible(self):
        from sklearn.base import clone

        vec = BowVectorizer(min_freq=3)
        assert clone(vec).min_freq == 3

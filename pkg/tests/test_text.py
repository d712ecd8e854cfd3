import pytest
from hypothesis import given, strategies as st

from stormcat.text import build_vocabulary, strip_area_terms, tokenize

words = st.lists(st.text(alphabet="abcdefgh'", min_size=1, max_size=6), max_size=12)


class TestTokenize:
    def test_storm_tweet_segmentation(self):
        text = "Rockport getting bad & it's just the start of the storm, don't underestimate #Harvey"
        assert tokenize(text) == [
            "rockport", "getting", "bad", "it's", "just", "the", "start",
            "of", "the", "storm", "don't", "underestimate", "harvey",
        ]

    def test_all_noise_yields_empty(self):
        assert tokenize("https://t.co/xyz @NWS") == []

    def test_empty_string(self):
        assert tokenize("") == []

    def test_urls_removed(self):
        assert tokenize("see http://a.b and WWW.example.com now") == ["see", "and", "now"]

    def test_mentions_removed_hashtags_kept(self):
        assert tokenize("@someone thanks #FloodRelief!") == ["thanks", "floodrelief"]

    def test_surrounding_punctuation_trimmed_inner_apostrophe_kept(self):
        assert tokenize("'don't' (really)...") == ["don't", "really"]

    def test_invariants_on_output(self):
        tokens = tokenize("Mixed #CASE @who http://x 'y'  z!!")
        for t in tokens:
            assert t == t.lower()
            assert t
            assert not t.startswith(("#", "@"))
            assert " " not in t

    @given(st.text(max_size=80))
    def test_retokenizing_the_join_is_stable(self, text):
        once = tokenize(text)
        assert tokenize(" ".join(once)) == once


class TestVocabulary:
    def test_min_freq_one(self):
        vocab = build_vocabulary([["storm", "storm"], ["surge"]], min_freq=1)
        assert vocab.size == 2
        assert set(vocab.index) == {"storm", "surge"}
        assert vocab.counts == {"storm": 2, "surge": 1}

    def test_min_freq_two(self):
        vocab = build_vocabulary([["storm", "storm"], ["surge"]], min_freq=2)
        assert set(vocab.index) == {"storm"}

    def test_empty_docs(self):
        assert build_vocabulary([], min_freq=1).size == 0

    def test_min_freq_must_be_positive(self):
        with pytest.raises(ValueError):
            build_vocabulary([], min_freq=0)

    def test_indices_are_lexicographic_and_bijective(self):
        vocab = build_vocabulary([["c", "a", "b", "a"]], min_freq=1)
        assert vocab.index == {"a": 0, "b": 1, "c": 2}

    @given(st.lists(words, max_size=8))
    def test_index_is_bijection_onto_range(self, docs):
        vocab = build_vocabulary(docs, min_freq=1)
        assert sorted(vocab.index.values()) == list(range(vocab.size))


class TestStripAreaTerms:
    def test_blocklist_removes_area_words(self):
        tokens = ["flooding", "in", "texas", "houston", "harvey"]
        assert strip_area_terms(tokens, {"texas", "houston", "harvey"}) == ["flooding", "in"]

    def test_empty_blocklist_is_identity(self):
        tokens = ["a", "b"]
        assert strip_area_terms(tokens, set()) == tokens

    def test_all_blocked(self):
        assert strip_area_terms(["a", "a"], {"a"}) == []

    def test_uppercase_blocklist_rejected(self):
        with pytest.raises(ValueError):
            strip_area_terms(["a"], {"Texas"})

    @given(words, st.sets(st.sampled_from("abcdefgh"), max_size=4),
           st.sets(st.sampled_from("abcdefgh"), max_size=4))
    def test_union_distributes_over_sequential_stripping(self, tokens, b1, b2):
        via_union = strip_area_terms(tokens, b1 | b2)
        sequential = strip_area_terms(strip_area_terms(tokens, b1), b2)
        assert via_union == sequential


class TestBlocklistFile:
    def test_load_blocklist(self, tmp_path):
        from stormcat.text import load_blocklist

        path = tmp_path / "blocked.txt"
        path.write_text("# area names\ntexas\nHOUSTON\n\nharvey\n")
        assert load_blocklist(path) == {"texas", "houston", "harvey"}

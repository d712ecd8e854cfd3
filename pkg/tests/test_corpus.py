import io
import json

import pytest
from hypothesis import given, strategies as st

from stormcat.corpus import (
    FilterSpec,
    GeoPoint,
    Tweet,
    filter_tweets,
    label_tweets,
    parse_corpus,
)
from stormcat.labels import merge_category


def make_tweet(i, **kwargs):
    defaults = dict(
        id=f"t{i}",
        text=f"storm update {i}",
        timestamp=1503700000.0 + i,
        place_name="Rockport",
        hashtags=("harvey",),
        lang="en",
        country_code="US",
    )
    defaults.update(kwargs)
    return Tweet(**defaults)


def record(i, **kwargs):
    rec = {
        "id": f"t{i}",
        "text": f"storm update {i}",
        "created_at": "2017-08-26T03:00:00Z",
        "lat": 28.02,
        "lon": -97.05,
        "place_name": "Rockport",
        "hashtags": ["harvey"],
        "lang": "en",
        "country_code": "US",
    }
    rec.update(kwargs)
    return rec


def jsonl(*records):
    return io.BytesIO("".join(json.dumps(r) + "\n" for r in records).encode())


class TestParseCorpus:
    def test_well_formed_record(self):
        tweets, errors = parse_corpus(jsonl(record(1)))
        assert errors == []
        assert len(tweets) == 1
        t = tweets[0]
        assert t.id == "t1"
        assert t.geo == GeoPoint(28.02, -97.05)
        assert t.hashtags == ("harvey",)
        assert t.timestamp == 1503716400.0  # 2017-08-26T03:00:00Z

    def test_empty_input(self):
        tweets, errors = parse_corpus(io.BytesIO(b""))
        assert tweets == [] and errors == []

    def test_latitude_out_of_range(self):
        tweets, errors = parse_corpus(jsonl(record(1, lat=95)))
        assert tweets == []
        assert len(errors) == 1
        assert errors[0].line == 1
        assert "latitude out of range" in errors[0].reason

    def test_malformed_line_reported_not_dropped(self):
        stream = io.BytesIO(b'{"id": "a"\n' + (json.dumps(record(2)) + "\n").encode())
        tweets, errors = parse_corpus(stream)
        assert len(tweets) == 1 and tweets[0].id == "t2"
        assert len(errors) == 1 and errors[0].line == 1

    def test_duplicate_id_is_error(self):
        tweets, errors = parse_corpus(jsonl(record(1), record(1)))
        assert len(tweets) == 1
        assert len(errors) == 1 and "duplicate id" in errors[0].reason

    def test_missing_text_is_error(self):
        rec = record(1)
        del rec["text"]
        tweets, errors = parse_corpus(jsonl(rec))
        assert tweets == [] and "text" in errors[0].reason

    def test_geo_optional(self):
        rec = record(1)
        del rec["lat"], rec["lon"]
        tweets, errors = parse_corpus(jsonl(rec))
        assert errors == [] and tweets[0].geo is None

    def test_order_preserved(self):
        tweets, _ = parse_corpus(jsonl(record(3), record(1), record(2)))
        assert [t.id for t in tweets] == ["t3", "t1", "t2"]

    def test_csv_format(self):
        text = (
            "id,text,created_at,lat,lon,place_name,hashtags,lang,country_code\n"
            't9,"wind picking up",2017-08-26T03:00:00Z,28.02,-97.05,Rockport,harvey irma,en,US\n'
        )
        tweets, errors = parse_corpus(io.BytesIO(text.encode()), format="csv")
        assert errors == []
        assert tweets[0].hashtags == ("harvey", "irma")
        assert tweets[0].geo.lat == pytest.approx(28.02)

    def test_unknown_format_rejected(self):
        with pytest.raises(ValueError, match="unknown corpus format"):
            parse_corpus(io.BytesIO(b""), format="parquet")


class TestFilterTweets:
    def test_all_of_table_one_style_corpus_passes_four_filters(self):
        # a corpus built with 416 matching tweets plus decoys returns exactly the 416
        matching = [make_tweet(i, place_name="Corpus Christi") for i in range(416)]
        decoys = [
            make_tweet(1000, place_name="Corpus Christi", hashtags=("irma",)),
            make_tweet(1001, place_name="Rockport"),
            make_tweet(1002, place_name="Corpus Christi", lang="es"),
            make_tweet(1003, place_name="Corpus Christi", country_code="MX"),
            make_tweet(1004, place_name=None),
        ]
        spec = FilterSpec(
            place_names=frozenset({"Corpus Christi"}),
            hashtags=frozenset({"harvey"}),
            lang="en",
            country_code="US",
        )
        assert len(filter_tweets(matching + decoys, spec)) == 416

    def test_language_mismatch_excluded(self):
        out = filter_tweets([make_tweet(1, lang="es")], FilterSpec(lang="en"))
        assert out == []

    def test_empty_spec_is_identity(self):
        tweets = [make_tweet(i) for i in range(5)]
        assert filter_tweets(tweets, FilterSpec()) == tweets

    def test_place_match_case_insensitive(self):
        tweets = [make_tweet(1, place_name="rockPORT")]
        assert len(filter_tweets(tweets, FilterSpec(place_names=frozenset({"Rockport"})))) == 1

    def test_hashtag_intersection(self):
        t = make_tweet(1, hashtags=("flood", "harvey"))
        assert filter_tweets([t], FilterSpec(hashtags=frozenset({"harvey", "other"}))) == [t]
        assert filter_tweets([t], FilterSpec(hashtags=frozenset({"irma"}))) == []

    def test_idempotent(self):
        tweets = [make_tweet(i, lang="en" if i % 2 else "es") for i in range(10)]
        spec = FilterSpec(lang="en")
        once = filter_tweets(tweets, spec)
        assert filter_tweets(once, spec) == once


class TestMergeCategory:
    @pytest.mark.parametrize("raw,expected", [(1, "12"), (2, "12"), (3, "34"), (4, "34")])
    def test_merge(self, raw, expected):
        assert merge_category(raw) == expected

    @pytest.mark.parametrize("raw", [0, 5, -1, 6])
    def test_out_of_range_rejected(self, raw):
        with pytest.raises(ValueError):
            merge_category(raw)

    def test_partition_is_exact(self):
        groups = {"12": set(), "34": set()}
        for raw in (1, 2, 3, 4):
            groups[merge_category(raw)].add(raw)
        assert groups == {"12": {1, 2}, "34": {3, 4}}


class TestLabelTweets:
    def test_rockport_labeled_severe(self):
        labeled, skipped = label_tweets([make_tweet(1)], {"rockport": 4}, event="harvey")
        assert skipped == 0
        assert labeled[0].label == "34"
        assert labeled[0].place == "rockport"
        assert labeled[0].event == "harvey"

    def test_no_place_is_skipped(self):
        labeled, skipped = label_tweets([make_tweet(1, place_name=None)], {"rockport": 4}, "harvey")
        assert labeled == [] and skipped == 1

    def test_empty_input(self):
        labeled, skipped = label_tweets([], {"rockport": 4}, "harvey")
        assert labeled == [] and skipped == 0

    def test_empty_table_rejected(self):
        with pytest.raises(ValueError):
            label_tweets([make_tweet(1)], {}, "harvey")

    def test_unmergeable_category_skips_with_warning(self, caplog):
        tweets = [make_tweet(1, place_name="Inland Town")]
        with caplog.at_level("WARNING"):
            labeled, skipped = label_tweets(tweets, {"Inland Town": 0, "Rockport": 4}, "harvey")
        assert labeled == [] and skipped == 1
        assert any("unmergeable" in r.message for r in caplog.records)

    @given(
        st.lists(
            st.tuples(st.sampled_from(["Rockport", "Fulton", "Dallas", None]), st.integers(0, 9)),
            max_size=30,
        )
    )
    def test_output_plus_skipped_partitions_input(self, placed):
        tweets = [
            make_tweet(i, place_name=place, id=f"p{i}")
            for i, (place, _) in enumerate(placed)
        ]
        labeled, skipped = label_tweets(tweets, {"Rockport": 4, "Fulton": 3}, "harvey")
        assert len(labeled) + skipped == len(tweets)


class TestTweetInvariants:
    def test_empty_text_rejected(self):
        with pytest.raises(ValueError):
            make_tweet(1, text="")

    def test_uppercase_hashtag_rejected(self):
        with pytest.raises(ValueError):
            make_tweet(1, hashtags=("Harvey",))

    def test_geopoint_bounds(self):
        with pytest.raises(ValueError):
            GeoPoint(91, 0)
        with pytest.raises(ValueError):
            GeoPoint(0, 181)

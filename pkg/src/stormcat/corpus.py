"""Tweet corpus parsing, filtering, and severity labeling.

The corpus lives in one of two on-disk shapes: line-delimited JSON records
(one object per line) or a delimited table (CSV with the same columns,
hashtags space-separated inside their cell). Fields: ``id``, ``text``,
``created_at`` (ISO-8601 UTC), optional ``lat``/``lon``, optional
``place_name``, ``hashtags``, ``lang``, ``country_code``.
"""

from __future__ import annotations

import csv
import io
import json
import logging
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import IO, Iterable

from .labels import merge_category

logger = logging.getLogger(__name__)

CORPUS_FORMATS = ("jsonl", "csv")
_CSV_COLUMNS = (
    "id", "text", "created_at", "lat", "lon",
    "place_name", "hashtags", "lang", "country_code",
)


@dataclass(frozen=True)
class GeoPoint:
    lat: float
    lon: float

    def __post_init__(self) -> None:
        if not -90.0 <= self.lat <= 90.0:
            raise ValueError(f"latitude out of range: {self.lat}")
        if not -180.0 <= self.lon <= 180.0:
            raise ValueError(f"longitude out of range: {self.lon}")


@dataclass(frozen=True)
class Tweet:
    """One social-media post with the metadata the filters need."""

    id: str
    text: str
    timestamp: float
    geo: GeoPoint | None = None
    place_name: str | None = None
    hashtags: tuple[str, ...] = ()
    lang: str = ""
    country_code: str = ""

    def __post_init__(self) -> None:
        if not self.text:
            raise ValueError("tweet text must be non-empty")
        for tag in self.hashtags:
            if "#" in tag or tag != tag.lower():
                raise ValueError(f"hashtag {tag!r} must be lowercase without '#'")


@dataclass(frozen=True)
class LabeledTweet:
    """A tweet annotated with its severity label and labeling provenance."""

    tweet: Tweet
    label: str
    place: str  # the place-table key that supplied the label
    event: str  # hurricane name, e.g. "harvey"


@dataclass(frozen=True)
class FilterSpec:
    """Conjunction of the four corpus filters; empty/unset means no constraint.

    Place names match case-insensitively; hashtags match when the tweet
    shares at least one tag with the spec.
    """

    place_names: frozenset[str] = frozenset()
    hashtags: frozenset[str] = frozenset()
    lang: str | None = None
    country_code: str | None = None

    def __post_init__(self) -> None:
        for tag in self.hashtags:
            if tag != tag.lower():
                raise ValueError(f"filter hashtag {tag!r} must be lowercase")


@dataclass(frozen=True)
class ParseError:
    line: int
    reason: str


def _parse_timestamp(value: str) -> float:
    # Python 3.10's fromisoformat rejects the 'Z' suffix.
    text = value.strip()
    if text.endswith(("Z", "z")):
        text = text[:-1] + "+00:00"
    dt = datetime.fromisoformat(text)
    if dt.tzinfo is None:
        dt = dt.replace(tzinfo=timezone.utc)
    return dt.timestamp()


def _tweet_from_record(rec: dict) -> Tweet:
    missing = [k for k in ("id", "text", "created_at", "lang", "country_code") if rec.get(k) in (None, "")]
    if missing:
        raise ValueError(f"missing field(s): {', '.join(missing)}")
    lat, lon = rec.get("lat"), rec.get("lon")
    if (lat is None) != (lon is None):
        raise ValueError("lat and lon must be supplied together")
    geo = None
    if lat is not None:
        if not -90.0 <= float(lat) <= 90.0:
            raise ValueError("latitude out of range")
        if not -180.0 <= float(lon) <= 180.0:
            raise ValueError("longitude out of range")
        geo = GeoPoint(float(lat), float(lon))
    hashtags = rec.get("hashtags") or []
    if isinstance(hashtags, str):
        raise ValueError("hashtags must be an array of strings")
    return Tweet(
        id=str(rec["id"]),
        text=str(rec["text"]),
        timestamp=_parse_timestamp(str(rec["created_at"])),
        geo=geo,
        place_name=rec.get("place_name") or None,
        hashtags=tuple(str(t) for t in hashtags),
        lang=str(rec["lang"]),
        country_code=str(rec["country_code"]),
    )


def _iter_jsonl(stream: IO[str]) -> Iterable[tuple[int, dict | None, str | None]]:
    for lineno, line in enumerate(stream, start=1):
        if not line.strip():
            continue
        try:
            rec = json.loads(line)
        except json.JSONDecodeError as exc:
            yield lineno, None, f"invalid JSON: {exc.msg}"
            continue
        if not isinstance(rec, dict):
            yield lineno, None, "record is not an object"
            continue
        if "_provenance" in rec:
            continue
        yield lineno, rec, None


def _iter_csv(stream: IO[str]) -> Iterable[tuple[int, dict | None, str | None]]:
    reader = csv.DictReader(stream)
    if reader.fieldnames is None:
        return
    for rec in reader:
        lineno = reader.line_num
        row: dict = {k: (v if v != "" else None) for k, v in rec.items()}
        tags = row.get("hashtags")
        row["hashtags"] = tags.split() if tags else []
        for key in ("lat", "lon"):
            if row.get(key) is not None:
                try:
                    row[key] = float(row[key])
                except ValueError:
                    yield lineno, None, f"non-numeric {key}"
                    break
        else:
            yield lineno, row, None


def parse_corpus(source: IO[bytes] | IO[str], format: str = "jsonl") -> tuple[list[Tweet], list[ParseError]]:
    """Parse a tweet corpus stream, reporting malformed records instead of dropping them.

    Returns the well-formed tweets in input order plus one :class:`ParseError`
    per rejected record (schema violation, bad JSON, duplicate id, ...).
    """
    if format not in CORPUS_FORMATS:
        raise ValueError(f"unknown corpus format {format!r}; expected one of {CORPUS_FORMATS}")
    stream: IO[str]
    if isinstance(source, io.TextIOBase):
        stream = source
    else:
        stream = io.TextIOWrapper(source, encoding="utf-8")  # type: ignore[arg-type]

    records = _iter_jsonl(stream) if format == "jsonl" else _iter_csv(stream)
    tweets: list[Tweet] = []
    errors: list[ParseError] = []
    seen_ids: set[str] = set()
    for lineno, rec, reason in records:
        if rec is None:
            errors.append(ParseError(lineno, reason or "malformed record"))
            continue
        try:
            tweet = _tweet_from_record(rec)
        except (ValueError, TypeError) as exc:
            errors.append(ParseError(lineno, str(exc)))
            continue
        if tweet.id in seen_ids:
            errors.append(ParseError(lineno, f"duplicate id {tweet.id!r}"))
            continue
        seen_ids.add(tweet.id)
        tweets.append(tweet)
    return tweets, errors


def load_corpus(path: str | Path, format: str = "jsonl") -> tuple[list[Tweet], list[ParseError]]:
    with open(path, "rb") as fh:
        return parse_corpus(fh, format=format)


def filter_tweets(tweets: list[Tweet], spec: FilterSpec) -> list[Tweet]:
    """Keep the tweets passing every constraint of ``spec``, preserving order."""
    places = {p.casefold() for p in spec.place_names}
    tags = set(spec.hashtags)
    kept = []
    for t in tweets:
        if places and (t.place_name is None or t.place_name.casefold() not in places):
            continue
        if tags and not tags.intersection(t.hashtags):
            continue
        if spec.lang is not None and t.lang != spec.lang:
            continue
        if spec.country_code is not None and t.country_code != spec.country_code:
            continue
        kept.append(t)
    return kept


def label_tweets(
    tweets: list[Tweet], table: dict[str, int], event: str
) -> tuple[list[LabeledTweet], int]:
    """Label each tweet whose place appears in the place->category table.

    Matching is case-insensitive; the emitted ``place`` is the table's own
    key. Tweets without a usable place, and tweets whose place carries a
    category the binary merge rejects (e.g. 0, below hurricane strength),
    are counted as skipped.
    """
    if not table:
        raise ValueError("place-category table must be non-empty")
    merged: dict[str, tuple[str, str]] = {}
    for place, raw in table.items():
        try:
            merged[place.casefold()] = (place, merge_category(raw))
        except ValueError:
            logger.warning("place %r has unmergeable category %r; its tweets will be skipped", place, raw)
    labeled: list[LabeledTweet] = []
    skipped = 0
    for t in tweets:
        entry = merged.get(t.place_name.casefold()) if t.place_name else None
        if entry is None:
            skipped += 1
            continue
        place, label = entry
        labeled.append(LabeledTweet(tweet=t, label=label, place=place, event=event))
    return labeled, skipped


def load_place_table(path: str | Path) -> dict[str, int]:
    """Read a two-column ``place,category`` table ('#' lines are comments)."""
    table: dict[str, int] = {}
    with open(path, encoding="utf-8") as fh:
        rows = [line for line in fh if not line.lstrip().startswith("#")]
    reader = csv.DictReader(rows)
    if reader.fieldnames is None or [f.strip() for f in reader.fieldnames[:2]] != ["place", "category"]:
        raise ValueError(f"{path}: expected header 'place,category'")
    for rec in reader:
        table[rec["place"]] = int(rec["category"])
    return table


def write_place_table(table: dict[str, int], path: str | Path, header_lines: list[str] | None = None) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        for line in header_lines or []:
            fh.write(f"# {line}\n")
        writer = csv.writer(fh)
        writer.writerow(["place", "category"])
        for place in sorted(table):
            writer.writerow([place, table[place]])


def tweet_to_record(tweet: Tweet) -> dict:
    created = datetime.fromtimestamp(tweet.timestamp, tz=timezone.utc)
    return {
        "id": tweet.id,
        "text": tweet.text,
        "created_at": created.isoformat().replace("+00:00", "Z"),
        "lat": tweet.geo.lat if tweet.geo else None,
        "lon": tweet.geo.lon if tweet.geo else None,
        "place_name": tweet.place_name,
        "hashtags": list(tweet.hashtags),
        "lang": tweet.lang,
        "country_code": tweet.country_code,
    }


def write_labeled_dataset(
    labeled: list[LabeledTweet], path: str | Path, provenance: dict | None = None
) -> None:
    """Write labeled tweets as JSONL; an optional provenance object leads the file."""
    with open(path, "w", encoding="utf-8") as fh:
        if provenance is not None:
            fh.write(json.dumps({"_provenance": provenance}, sort_keys=True) + "\n")
        for item in labeled:
            rec = tweet_to_record(item.tweet)
            rec.update({"label": item.label, "place": item.place, "event": item.event})
            fh.write(json.dumps(rec, sort_keys=True) + "\n")


def load_labeled_dataset(path: str | Path) -> list[LabeledTweet]:
    labeled: list[LabeledTweet] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            rec = json.loads(line)
            if "_provenance" in rec:
                continue
            try:
                tweet = _tweet_from_record(rec)
                labeled.append(
                    LabeledTweet(
                        tweet=tweet,
                        label=str(rec["label"]),
                        place=str(rec["place"]),
                        event=str(rec["event"]),
                    )
                )
            except (KeyError, ValueError) as exc:
                raise ValueError(f"{path}:{lineno}: bad labeled record: {exc}") from exc
    return labeled

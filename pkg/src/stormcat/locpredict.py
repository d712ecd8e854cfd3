"""Majority-vote prediction of a location's hurricane category.

Classify every tweet collected for a place, tally the labels, and assign
the place the majority label; a tally tie resolves to the more severe
class. Predictions built from very few tweets carry a warning annotation
(small samples are unreliable), but are never blocked.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .corpus import Tweet
from .labels import LABEL_12, LABEL_34, LABELS, check_label
from .text import TokenList, strip_area_terms, tokenize

DEFAULT_MIN_TWEETS = 10


@dataclass(frozen=True)
class LocationPrediction:
    place: str
    n_tweets: int
    tally: dict[str, int]
    predicted: str
    correct_fraction: float | None = None
    warnings: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "place": self.place,
            "n_tweets": self.n_tweets,
            "tally": dict(self.tally),
            "predicted": self.predicted,
            "correct_fraction": self.correct_fraction,
            "warnings": list(self.warnings),
        }


def majority_label(per_tweet_labels: list[str]) -> tuple[str, dict[str, int]]:
    """Majority label and the per-label tally; a tie goes to "34"."""
    if not per_tweet_labels:
        raise ValueError("cannot take a majority over zero labels")
    tally = {lbl: 0 for lbl in LABELS}
    for label in per_tweet_labels:
        tally[check_label(label)] += 1
    predicted = LABEL_12 if tally[LABEL_12] > tally[LABEL_34] else LABEL_34
    return predicted, tally


def correct_fraction(per_tweet_labels: list[str], truth: str) -> float:
    """Fraction of per-tweet labels equal to the true label."""
    if not per_tweet_labels:
        raise ValueError("cannot score zero labels")
    check_label(truth)
    hits = sum(1 for label in per_tweet_labels if check_label(label) == truth)
    return hits / len(per_tweet_labels)


def predict_location(
    model,
    tweets: list[Tweet],
    vectorizer,
    *,
    place: str = "",
    tokenizer=None,
    blocklist: frozenset[str] | None = None,
    truth: str | None = None,
    min_tweets: int = DEFAULT_MIN_TWEETS,
) -> LocationPrediction:
    """Classify each tweet of a place and return the majority-vote verdict.

    ``vectorizer`` must be the fitted feature context the model was trained
    with. ``tokenizer`` defaults to the standard tweet tokenizer; a
    blocklist, when given, strips area-specific terms before vectorizing.
    """
    if not tweets:
        raise ValueError("cannot predict a location from zero tweets")
    tokenizer = tokenizer or tokenize
    docs: list[TokenList] = [tokenizer(t.text) for t in tweets]
    if blocklist:
        docs = [strip_area_terms(doc, blocklist) for doc in docs]
    X = vectorizer.transform(docs)
    per_tweet = [str(label) for label in np.asarray(model.predict(X))]
    predicted, tally = majority_label(per_tweet)
    warnings: tuple[str, ...] = ()
    if len(tweets) < min_tweets:
        warnings = (
            f"only {len(tweets)} tweet(s) for this place (< {min_tweets}); "
            "small samples make the verdict unreliable",
        )
    fraction = correct_fraction(per_tweet, truth) if truth is not None else None
    return LocationPrediction(
        place=place,
        n_tweets=len(tweets),
        tally=tally,
        predicted=predicted,
        correct_fraction=fraction,
        warnings=warnings,
    )

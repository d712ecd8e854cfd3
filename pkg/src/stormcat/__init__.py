"""stormcat: hurricane severity from geo-tagged tweets.

Filter and label a tweet corpus against hurricane-track ground truth,
vectorize the text (term-frequency bag-of-words or averaged embeddings),
evaluate five classifiers under stratified k-fold cross-validation, and
predict a location's hurricane category by majority vote over its tweets.
"""

__version__ = "0.1.0"

from .corpus import (
    FilterSpec,
    GeoPoint,
    LabeledTweet,
    ParseError,
    Tweet,
    filter_tweets,
    label_tweets,
    load_corpus,
    parse_corpus,
)
from .classifiers import (
    DecisionTreeGini,
    LinearSVMPegasos,
    LogisticRegressionGD,
    NaiveBayesClassifier,
    RandomForestGini,
    make_classifier,
    predict_label,
)
from .evaluation import (
    ConfusionMatrix,
    FoldAssignment,
    MetricsReport,
    cross_validate,
    f1_from_confusion,
    stratified_kfold,
)
from .features import (
    BowVectorizer,
    EmbeddingTable,
    EmbeddingVectorizer,
    bow_vectorize,
    embed_average,
    load_embeddings,
)
from .geolabel import PlaceEntry, TrackPoint, assign_category, build_place_table, haversine_km
from .labels import LABEL_12, LABEL_34, LABELS, POSITIVE_LABEL, merge_category
from .locpredict import LocationPrediction, correct_fraction, majority_label, predict_location
from .text import Vocabulary, build_vocabulary, strip_area_terms, tokenize

__all__ = [
    "BowVectorizer",
    "ConfusionMatrix",
    "DecisionTreeGini",
    "EmbeddingTable",
    "EmbeddingVectorizer",
    "FilterSpec",
    "FoldAssignment",
    "GeoPoint",
    "LABELS",
    "LABEL_12",
    "LABEL_34",
    "LabeledTweet",
    "LinearSVMPegasos",
    "LocationPrediction",
    "LogisticRegressionGD",
    "MetricsReport",
    "NaiveBayesClassifier",
    "POSITIVE_LABEL",
    "ParseError",
    "PlaceEntry",
    "RandomForestGini",
    "TrackPoint",
    "Tweet",
    "Vocabulary",
    "assign_category",
    "bow_vectorize",
    "build_place_table",
    "build_vocabulary",
    "correct_fraction",
    "cross_validate",
    "embed_average",
    "f1_from_confusion",
    "filter_tweets",
    "haversine_km",
    "label_tweets",
    "load_corpus",
    "load_embeddings",
    "majority_label",
    "make_classifier",
    "merge_category",
    "parse_corpus",
    "predict_label",
    "predict_location",
    "stratified_kfold",
    "strip_area_terms",
    "tokenize",
]

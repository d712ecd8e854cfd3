"""The five classifiers behind one fit/predict contract."""

from __future__ import annotations

import numpy as np

from ..validation import as_feature_matrix
from .forest import RandomForestGini
from .logistic import LogisticRegressionGD, TrainingError, loss_and_gradient
from .naive_bayes import NaiveBayesClassifier
from .serialize import dumps_model, load_model, model_from_dict, model_to_dict, save_model
from .svm import LinearSVMPegasos
from .tree import DecisionTreeGini

ALGORITHMS = {
    "naive_bayes": NaiveBayesClassifier,
    "logistic_regression": LogisticRegressionGD,
    "decision_tree": DecisionTreeGini,
    "random_forest": RandomForestGini,
    "linear_svm": LinearSVMPegasos,
}


def make_classifier(algorithm: str, **hyperparameters):
    """Instantiate a classifier by name, passing through hyperparameters."""
    cls = ALGORITHMS.get(algorithm)
    if cls is None:
        raise ValueError(f"unknown algorithm {algorithm!r}; expected one of {sorted(ALGORITHMS)}")
    return cls(**hyperparameters)


def predict_label(model, x) -> str:
    """Predict the severity label of a single feature vector."""
    x = as_feature_matrix(np.asarray(x), dim=getattr(model, "n_features_in_", None))
    return str(model.predict(x)[0])


__all__ = [
    "ALGORITHMS",
    "DecisionTreeGini",
    "LinearSVMPegasos",
    "LogisticRegressionGD",
    "NaiveBayesClassifier",
    "RandomForestGini",
    "TrainingError",
    "dumps_model",
    "load_model",
    "loss_and_gradient",
    "make_classifier",
    "model_from_dict",
    "model_to_dict",
    "predict_label",
    "save_model",
]

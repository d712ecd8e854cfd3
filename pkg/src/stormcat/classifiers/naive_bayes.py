"""Naive Bayes: multinomial (term counts) and Gaussian (dense embeddings)."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin
from sklearn.utils.validation import check_is_fitted

from ..labels import LABEL_12, LABEL_34
from ..validation import as_feature_matrix, check_training_data

NB_VARIANTS = ("multinomial", "gaussian")
VARIANCE_FLOOR = 1e-9


class NaiveBayesClassifier(BaseEstimator, ClassifierMixin):
    """Two-class naive Bayes.

    The multinomial variant models term-frequency vectors with add-alpha
    smoothing: the log-likelihood of feature f in class c is
    log((count_cf + alpha) / (total_c + alpha * dim)). The Gaussian variant
    fits a per-class, per-feature normal with the variance floored to keep
    log densities finite on constant features.
    """

    def __init__(self, variant: str = "multinomial", alpha: float = 1.0):
        self.variant = variant
        self.alpha = alpha

    def fit(self, X, y) -> "NaiveBayesClassifier":
        if self.variant not in NB_VARIANTS:
            raise ValueError(f"unknown variant {self.variant!r}; expected one of {NB_VARIANTS}")
        if self.alpha <= 0:
            raise ValueError("alpha must be positive")
        X, y = check_training_data(X, y)
        n, dim = X.shape
        masks = [y == LABEL_12, y == LABEL_34]
        self.class_log_prior_ = np.array([np.log(m.sum() / n) for m in masks])
        if self.variant == "multinomial":
            if np.any(X < 0):
                raise ValueError("multinomial naive Bayes requires nonnegative features")
            counts = np.stack([X[m].sum(axis=0) for m in masks])  # (2, dim)
            totals = counts.sum(axis=1, keepdims=True)
            self.feature_log_likelihood_ = np.log(
                (counts + self.alpha) / (totals + self.alpha * dim)
            )
        else:
            self.theta_ = np.stack([X[m].mean(axis=0) for m in masks])
            self.var_ = np.maximum(
                np.stack([X[m].var(axis=0) for m in masks]), VARIANCE_FLOOR
            )
        self.n_features_in_ = dim
        self.classes_ = np.array([LABEL_12, LABEL_34])
        return self

    def log_posterior(self, X) -> np.ndarray:
        """Unnormalized per-class log posterior, shape (n, 2); columns follow classes_."""
        check_is_fitted(self, "class_log_prior_")
        X = as_feature_matrix(X, dim=self.n_features_in_)
        if self.variant == "multinomial":
            if np.any(X < 0):
                raise ValueError("multinomial naive Bayes requires nonnegative features")
            return self.class_log_prior_ + X @ self.feature_log_likelihood_.T
        # Gaussian log density summed over features, per class
        out = np.empty((X.shape[0], 2))
        for c in range(2):
            diff = X - self.theta_[c]
            out[:, c] = self.class_log_prior_[c] + np.sum(
                -0.5 * np.log(2.0 * np.pi * self.var_[c]) - diff**2 / (2.0 * self.var_[c]),
                axis=1,
            )
        return out

    def predict(self, X) -> np.ndarray:
        scores = self.log_posterior(X)
        # ties go to the more severe class
        return np.where(scores[:, 1] >= scores[:, 0], LABEL_34, LABEL_12).astype("U2")

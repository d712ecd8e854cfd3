"""Linear SVM trained by epoch-batched Pegasos subgradient descent."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin
from sklearn.utils.validation import check_is_fitted

from ..labels import LABEL_12, LABEL_34
from ..validation import as_feature_matrix, check_training_data
from .logistic import TrainingError


class LinearSVMPegasos(BaseEstimator, ClassifierMixin):
    """Minimizes lam*||w||^2/2 + mean hinge loss, labels encoded "34" -> +1.

    Epoch t applies one aggregated Pegasos step at rate 1/(lam*t): the
    margin-violating examples are visited in an order drawn from that
    epoch's seed substream and their subgradients averaged over the full
    training set. Aggregating per epoch keeps training deterministic and
    makes the fit invariant (up to float summation order) under uniform
    duplication of the training set. The bias is updated by the hinge
    subgradient but is not regularized.
    """

    def __init__(self, lam: float = 1e-3, epochs: int = 50, seed: int = 0):
        self.lam = lam
        self.epochs = epochs
        self.seed = seed

    def fit(self, X, y) -> "LinearSVMPegasos":
        if self.lam <= 0:
            raise ValueError("lam must be positive")
        if self.epochs < 0:
            raise ValueError("epochs must be >= 0")
        X, y = check_training_data(X, y)
        n = X.shape[0]
        sign = np.where(y == LABEL_34, 1.0, -1.0)
        w = np.zeros(X.shape[1])
        b = 0.0
        streams = np.random.SeedSequence(self.seed & (2**64 - 1)).spawn(self.epochs)
        for epoch in range(1, self.epochs + 1):
            rng = np.random.default_rng(streams[epoch - 1])
            order = rng.permutation(n)
            rate = 1.0 / (self.lam * epoch)
            margins = sign * (X @ w + b)
            violating = order[margins[order] < 1.0]
            if violating.size:
                push_w = (sign[violating, None] * X[violating]).sum(axis=0) / n
                push_b = sign[violating].sum() / n
            else:
                push_w = np.zeros_like(w)
                push_b = 0.0
            w = (1.0 - rate * self.lam) * w + rate * push_w
            b = b + rate * push_b
            if not (np.all(np.isfinite(w)) and np.isfinite(b)):
                raise TrainingError("non-finite SVM weights", epoch)
        self.weights_ = w
        self.bias_ = float(b)
        self.n_features_in_ = X.shape[1]
        self.classes_ = np.array([LABEL_12, LABEL_34])
        return self

    def decision_function(self, X) -> np.ndarray:
        check_is_fitted(self, "weights_")
        X = as_feature_matrix(X, dim=self.n_features_in_)
        return X @ self.weights_ + self.bias_

    def predict(self, X) -> np.ndarray:
        z = self.decision_function(X)
        return np.where(z >= 0.0, LABEL_34, LABEL_12).astype("U2")

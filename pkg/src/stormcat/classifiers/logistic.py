"""L2-regularized logistic regression trained by full-batch gradient descent."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin
from sklearn.utils.validation import check_is_fitted

from ..labels import LABEL_12, LABEL_34
from ..validation import as_feature_matrix, check_training_data

MIN_LEARNING_RATE = 1e-12


class TrainingError(RuntimeError):
    """Numerical failure during training, carrying the offending iteration."""

    def __init__(self, message: str, iteration: int):
        super().__init__(f"{message} (iteration {iteration})")
        self.iteration = iteration


def loss_and_gradient(
    w: np.ndarray, b: float, X: np.ndarray, y01: np.ndarray, lam: float
) -> tuple[float, np.ndarray, float]:
    """Mean log-loss plus lam*||w||^2, with its gradient in (w, b).

    The log-loss term uses log(1+exp(z)) - y*z computed via logaddexp, so the
    value stays finite for any z.
    """
    z = X @ w + b
    loss = float(np.mean(np.logaddexp(0.0, z) - y01 * z) + lam * np.dot(w, w))
    p = np.empty_like(z)
    pos = z >= 0
    p[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    exp_z = np.exp(z[~pos])
    p[~pos] = exp_z / (1.0 + exp_z)
    residual = p - y01
    grad_w = X.T @ residual / X.shape[0] + 2.0 * lam * w
    grad_b = float(np.mean(residual))
    return loss, grad_w, grad_b


class LogisticRegressionGD(BaseEstimator, ClassifierMixin):
    """Gradient-descent logistic regression starting from w=0, b=0.

    Each iteration takes a step at the current learning rate; if the step
    would increase the loss, the rate is halved (persistently) and the step
    retried, so the recorded loss history is non-increasing. Training stops
    at ``max_iters`` accepted steps or when the gradient infinity-norm drops
    below ``tol``.
    """

    def __init__(
        self,
        lam: float = 1e-4,
        learning_rate: float = 0.1,
        max_iters: int = 500,
        tol: float = 1e-6,
    ):
        self.lam = lam
        self.learning_rate = learning_rate
        self.max_iters = max_iters
        self.tol = tol

    def fit(self, X, y) -> "LogisticRegressionGD":
        if self.lam < 0 or self.learning_rate <= 0 or self.max_iters < 0 or self.tol <= 0:
            raise ValueError("lam must be >= 0 and learning_rate/tol positive, max_iters >= 0")
        X, y = check_training_data(X, y)
        y01 = (y == LABEL_34).astype(np.float64)
        w = np.zeros(X.shape[1])
        b = 0.0
        rate = self.learning_rate
        loss, grad_w, grad_b = loss_and_gradient(w, b, X, y01, self.lam)
        history = [loss]
        iterations = 0
        for iteration in range(self.max_iters):
            if not np.isfinite(loss):
                raise TrainingError("non-finite training loss", iteration)
            if max(np.max(np.abs(grad_w), initial=0.0), abs(grad_b)) < self.tol:
                break
            while True:
                w_new = w - rate * grad_w
                b_new = b - rate * grad_b
                new_loss, new_gw, new_gb = loss_and_gradient(w_new, b_new, X, y01, self.lam)
                if np.isfinite(new_loss) and new_loss <= loss:
                    break
                rate *= 0.5
                if rate < MIN_LEARNING_RATE:
                    break
            if rate < MIN_LEARNING_RATE:
                break
            w, b, loss, grad_w, grad_b = w_new, b_new, new_loss, new_gw, new_gb
            history.append(loss)
            iterations = iteration + 1
        self.weights_ = w
        self.bias_ = float(b)
        self.n_iter_ = iterations
        self.final_learning_rate_ = rate
        self.loss_history_ = history
        self.n_features_in_ = X.shape[1]
        self.classes_ = np.array([LABEL_12, LABEL_34])
        return self

    def decision_function(self, X) -> np.ndarray:
        check_is_fitted(self, "weights_")
        X = as_feature_matrix(X, dim=self.n_features_in_)
        return X @ self.weights_ + self.bias_

    def predict(self, X) -> np.ndarray:
        # sigmoid(z) >= 0.5 iff z >= 0; the boundary itself is the severe class
        z = self.decision_function(X)
        return np.where(z >= 0.0, LABEL_34, LABEL_12).astype("U2")

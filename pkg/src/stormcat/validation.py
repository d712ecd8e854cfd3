"""Input-validation helpers shared by the estimators."""

from __future__ import annotations

import numpy as np

from .labels import LABELS


def as_feature_matrix(X, *, dim: int | None = None) -> np.ndarray:
    """Coerce to a finite 2-D float64 array, optionally checking the width."""
    X = np.asarray(X, dtype=np.float64)
    if X.ndim == 1:
        X = X.reshape(1, -1)
    if X.ndim != 2:
        raise ValueError(f"expected a 2-D feature matrix, got ndim={X.ndim}")
    if X.shape[1] == 0:
        raise ValueError("feature matrix has zero columns")
    if not np.all(np.isfinite(X)):
        raise ValueError("feature matrix contains non-finite entries")
    if dim is not None and X.shape[1] != dim:
        raise ValueError(f"feature dimension mismatch: expected {dim}, got {X.shape[1]}")
    return X


def as_label_array(y) -> np.ndarray:
    y = np.asarray(y, dtype=object)
    if y.ndim != 1:
        raise ValueError("labels must be one-dimensional")
    bad = [v for v in y if v not in LABELS]
    if bad:
        raise ValueError(f"invalid label(s) {sorted(set(map(repr, bad)))}; expected {LABELS}")
    return y.astype("U2")


def check_training_data(X, y) -> tuple[np.ndarray, np.ndarray]:
    """Validate a training set: matching lengths, >= 2 rows, both classes present."""
    X = as_feature_matrix(X)
    y = as_label_array(y)
    if X.shape[0] != y.shape[0]:
        raise ValueError(f"X has {X.shape[0]} rows but y has {y.shape[0]} labels")
    if X.shape[0] < 2:
        raise ValueError("training data needs at least 2 examples")
    present = set(y.tolist())
    if len(present) < 2:
        raise ValueError(f"training data contains a single class {present.pop()!r}; both labels are required")
    return X, y

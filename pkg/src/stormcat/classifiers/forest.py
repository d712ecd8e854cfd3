"""Random forest of Gini trees over bootstrap samples."""

from __future__ import annotations

import math

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin
from sklearn.utils.validation import check_is_fitted

from ..labels import LABEL_12, LABEL_34
from ..validation import as_feature_matrix, check_training_data
from .tree import TreeNode, grow_tree, predict_tree


class RandomForestGini(BaseEstimator, ClassifierMixin):
    """Majority vote over ``n_trees`` independently seeded Gini trees.

    The master seed expands into one spawned substream per tree, so each
    tree's bootstrap draw and per-split feature samples are independent of
    how the trees are scheduled; refitting with the same seed reproduces the
    forest exactly. Per split, ceil(sqrt(dim)) candidate features are drawn
    unless ``max_features`` overrides it; vote ties go to the severe class.
    """

    def __init__(
        self,
        n_trees: int = 100,
        max_depth: int = 20,
        min_samples_split: int = 2,
        max_features: int | None = None,
        bootstrap: bool = True,
        seed: int = 0,
    ):
        self.n_trees = n_trees
        self.max_depth = max_depth
        self.min_samples_split = min_samples_split
        self.max_features = max_features
        self.bootstrap = bootstrap
        self.seed = seed

    def fit(self, X, y) -> "RandomForestGini":
        if self.n_trees < 1:
            raise ValueError("n_trees must be >= 1")
        X, y = check_training_data(X, y)
        n, dim = X.shape
        y01 = (y == LABEL_34).astype(np.int64)
        k = self.max_features if self.max_features is not None else math.isqrt(dim - 1) + 1
        if not 1 <= k <= dim:
            raise ValueError(f"max_features must be in 1..{dim}")
        streams = np.random.SeedSequence(self.seed & (2**64 - 1)).spawn(self.n_trees)
        self.trees_: list[TreeNode] = []
        for stream in streams:
            rng = np.random.default_rng(stream)
            if self.bootstrap:
                idx = rng.integers(0, n, size=n)
                Xb, yb = X[idx], y01[idx]
            else:
                Xb, yb = X, y01
            self.trees_.append(
                grow_tree(
                    Xb,
                    yb,
                    max_depth=self.max_depth,
                    min_samples_split=self.min_samples_split,
                    max_features=k,
                    rng=rng,
                )
            )
        self.n_features_in_ = dim
        self.classes_ = np.array([LABEL_12, LABEL_34])
        return self

    def predict(self, X) -> np.ndarray:
        check_is_fitted(self, "trees_")
        X = as_feature_matrix(X, dim=self.n_features_in_)
        out = np.empty(X.shape[0], dtype="U2")
        for i, row in enumerate(X):
            votes_34 = sum(1 for tree in self.trees_ if predict_tree(tree, row) == LABEL_34)
            out[i] = LABEL_34 if 2 * votes_34 >= len(self.trees_) else LABEL_12
        return out

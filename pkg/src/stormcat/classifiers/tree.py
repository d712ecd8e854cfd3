"""Greedy binary classification tree minimizing weighted Gini impurity."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin
from sklearn.utils.validation import check_is_fitted

from ..labels import LABEL_12, LABEL_34
from ..validation import as_feature_matrix, check_training_data


@dataclass(frozen=True)
class TreeNode:
    """Internal split (feature, threshold, children) or leaf (label + counts)."""

    label: str | None = None
    n_12: int = 0
    n_34: int = 0
    feature: int | None = None
    threshold: float | None = None
    left: "TreeNode | None" = None
    right: "TreeNode | None" = None

    @property
    def is_leaf(self) -> bool:
        return self.label is not None


def _leaf(y01: np.ndarray) -> TreeNode:
    n_34 = int(y01.sum())
    n_12 = int(y01.size - n_34)
    # majority label; exact tie resolves to the more severe class
    return TreeNode(label=LABEL_34 if n_34 >= n_12 else LABEL_12, n_12=n_12, n_34=n_34)


def _best_split(X: np.ndarray, y01: np.ndarray, feature_ids: np.ndarray) -> tuple[int, float] | None:
    """Best (feature, threshold) among ``feature_ids`` by weighted Gini.

    Candidate thresholds are midpoints between consecutive distinct sorted
    values. Score ties are broken toward the lower feature index, then the
    lower threshold, so refits are reproducible. Returns None when every
    candidate feature is constant within the node.
    """
    n = y01.size
    best: tuple[float, int, float] | None = None
    for f in feature_ids:
        col = X[:, f]
        order = np.argsort(col, kind="stable")
        sorted_col = col[order]
        prefix_34 = np.cumsum(y01[order])
        # boundary i splits off the first i sorted rows; valid iff values differ across it
        boundaries = np.nonzero(sorted_col[1:] > sorted_col[:-1])[0] + 1
        if boundaries.size == 0:
            continue
        n_left = boundaries.astype(np.float64)
        n_right = n - n_left
        left_34 = prefix_34[boundaries - 1].astype(np.float64)
        right_34 = prefix_34[-1] - left_34
        gini_left = 1.0 - (left_34 / n_left) ** 2 - ((n_left - left_34) / n_left) ** 2
        gini_right = 1.0 - (right_34 / n_right) ** 2 - ((n_right - right_34) / n_right) ** 2
        scores = (n_left * gini_left + n_right * gini_right) / n
        i = int(np.argmin(scores))  # first minimum: lowest threshold wins ties
        if best is None or scores[i] < best[0]:
            threshold = 0.5 * (sorted_col[boundaries[i] - 1] + sorted_col[boundaries[i]])
            best = (float(scores[i]), int(f), float(threshold))
    if best is None:
        return None
    return best[1], best[2]


def grow_tree(
    X: np.ndarray,
    y01: np.ndarray,
    *,
    max_depth: int,
    min_samples_split: int,
    max_features: int | None = None,
    rng: np.random.Generator | None = None,
    depth: int = 0,
) -> TreeNode:
    """Recursive CART fit on 0/1-encoded labels (1 = "34").

    ``max_features``, when set, draws a fresh uniform feature sample per
    split from ``rng`` (forest mode); candidates are evaluated in ascending
    index order so tie-breaking matches the plain tree.
    """
    n, d = X.shape
    if (
        depth >= max_depth
        or n < min_samples_split
        or y01.min() == y01.max()
    ):
        return _leaf(y01)
    if max_features is not None and max_features < d:
        assert rng is not None
        feature_ids = np.sort(rng.choice(d, size=max_features, replace=False))
    else:
        feature_ids = np.arange(d)
    split = _best_split(X, y01, feature_ids)
    if split is None:
        return _leaf(y01)
    feature, threshold = split
    mask = X[:, feature] <= threshold
    if not mask.any() or mask.all():  # degenerate float midpoint
        return _leaf(y01)
    common = dict(max_depth=max_depth, min_samples_split=min_samples_split,
                  max_features=max_features, rng=rng, depth=depth + 1)
    return TreeNode(
        feature=feature,
        threshold=threshold,
        n_12=int(y01.size - y01.sum()),
        n_34=int(y01.sum()),
        left=grow_tree(X[mask], y01[mask], **common),
        right=grow_tree(X[~mask], y01[~mask], **common),
    )


def predict_tree(node: TreeNode, x: np.ndarray) -> str:
    while not node.is_leaf:
        node = node.left if x[node.feature] <= node.threshold else node.right
    return node.label  # type: ignore[return-value]


def tree_depth(node: TreeNode) -> int:
    if node.is_leaf:
        return 0
    return 1 + max(tree_depth(node.left), tree_depth(node.right))


class DecisionTreeGini(BaseEstimator, ClassifierMixin):
    """CART-style binary decision tree (Gini impurity, no pruning)."""

    def __init__(self, max_depth: int = 20, min_samples_split: int = 2):
        self.max_depth = max_depth
        self.min_samples_split = min_samples_split

    def fit(self, X, y) -> "DecisionTreeGini":
        X, y = check_training_data(X, y)
        if self.max_depth < 0:
            raise ValueError("max_depth must be >= 0")
        if self.min_samples_split < 2:
            raise ValueError("min_samples_split must be >= 2")
        y01 = (y == LABEL_34).astype(np.int64)
        self.tree_ = grow_tree(
            X, y01, max_depth=self.max_depth, min_samples_split=self.min_samples_split
        )
        self.n_features_in_ = X.shape[1]
        self.classes_ = np.array([LABEL_12, LABEL_34])
        return self

    def predict(self, X) -> np.ndarray:
        check_is_fitted(self, "tree_")
        X = as_feature_matrix(X, dim=self.n_features_in_)
        return np.array([predict_tree(self.tree_, row) for row in X], dtype="U2")

    @property
    def depth_(self) -> int:
        check_is_fitted(self, "tree_")
        return tree_depth(self.tree_)

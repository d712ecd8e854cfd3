"""Stratified k-fold cross-validation with precision/recall/F1 reporting.

Per fold, features are built from the training folds only (no test-fold
leakage) unless the explicitly named leaky mode is requested for
comparison. Reports carry per-fold metrics, their means, and pooled
metrics over all held-out predictions; "34" is the positive class. The
headline F1 is the class-support-weighted average over pooled predictions;
macro and positive-class variants are reported alongside it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from sklearn.base import clone

from .labels import LABEL_12, LABEL_34, LABELS
from .validation import as_label_array


@dataclass(frozen=True)
class FoldAssignment:
    """Fold index per example; every fold holds each class's share within 1."""

    k: int
    assignment: np.ndarray

    def indices(self, fold: int) -> np.ndarray:
        return np.nonzero(self.assignment == fold)[0]


@dataclass(frozen=True)
class ConfusionMatrix:
    tp: int = 0
    fp: int = 0
    fn: int = 0
    tn: int = 0

    def __add__(self, other: "ConfusionMatrix") -> "ConfusionMatrix":
        return ConfusionMatrix(
            self.tp + other.tp, self.fp + other.fp, self.fn + other.fn, self.tn + other.tn
        )

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.fn + self.tn

    def to_dict(self) -> dict:
        return {"tp": self.tp, "fp": self.fp, "fn": self.fn, "tn": self.tn}


def confusion_from_labels(truth, predicted) -> ConfusionMatrix:
    truth = as_label_array(truth)
    predicted = as_label_array(predicted)
    if truth.shape != predicted.shape:
        raise ValueError("truth and predictions must have equal length")
    pos_t, pos_p = truth == LABEL_34, predicted == LABEL_34
    return ConfusionMatrix(
        tp=int(np.sum(pos_t & pos_p)),
        fp=int(np.sum(~pos_t & pos_p)),
        fn=int(np.sum(pos_t & ~pos_p)),
        tn=int(np.sum(~pos_t & ~pos_p)),
    )


def _ratio(num: float, den: float) -> float:
    return num / den if den > 0 else 0.0


def f1_from_confusion(cm: ConfusionMatrix) -> tuple[float, float, float]:
    """(precision, recall, F1) for the positive class; 0/0 ratios are 0."""
    precision = _ratio(cm.tp, cm.tp + cm.fp)
    recall = _ratio(cm.tp, cm.tp + cm.fn)
    f1 = _ratio(2.0 * precision * recall, precision + recall)
    return precision, recall, f1


def _per_class_metrics(cm: ConfusionMatrix) -> dict[str, dict[str, float]]:
    p34, r34, f34 = f1_from_confusion(cm)
    # swap roles to score "12" as the positive class
    p12, r12, f12 = f1_from_confusion(ConfusionMatrix(tp=cm.tn, fp=cm.fn, fn=cm.fp, tn=cm.tp))
    return {
        LABEL_12: {"precision": p12, "recall": r12, "f1": f12},
        LABEL_34: {"precision": p34, "recall": r34, "f1": f34},
    }


def _weighted(metrics: dict[str, dict[str, float]], support: dict[str, int], key: str) -> float:
    total = sum(support.values())
    if total == 0:
        return 0.0
    return sum(metrics[lbl][key] * support[lbl] for lbl in LABELS) / total


def stratified_kfold(labels, k: int, seed: int, order_keys=None) -> FoldAssignment:
    """Deal each class round-robin into k folds after a seeded shuffle.

    Each class is pre-sorted by ``order_keys`` (tweet ids, typically) and
    shuffled by its own substream of ``seed``, so the assignment depends on
    the multiset of (key, label) pairs rather than input order. A class
    with fewer than k examples is an error naming the class.
    """
    labels = as_label_array(labels)
    if k < 2:
        raise ValueError("k must be >= 2")
    if order_keys is not None and len(order_keys) != labels.shape[0]:
        raise ValueError("order_keys must align with labels")
    assignment = np.full(labels.shape[0], -1, dtype=np.int64)
    for class_index, label in enumerate(LABELS):
        idx = np.nonzero(labels == label)[0]
        if idx.size < k:
            raise ValueError(f'class "{label}" has {idx.size} example(s); need at least k={k}')
        if order_keys is not None:
            idx = idx[np.argsort([order_keys[i] for i in idx], kind="stable")]
        rng = np.random.default_rng(
            np.random.SeedSequence(entropy=seed & (2**64 - 1), spawn_key=(class_index,))
        )
        idx = idx[rng.permutation(idx.size)]
        assignment[idx] = np.arange(idx.size) % k
    return FoldAssignment(k=k, assignment=assignment)


@dataclass(frozen=True)
class FoldMetrics:
    fold: int
    n_test: int
    confusion: ConfusionMatrix
    per_class: dict[str, dict[str, float]]
    weighted: dict[str, float]

    def to_dict(self) -> dict:
        return {
            "fold": self.fold,
            "n_test": self.n_test,
            "confusion": self.confusion.to_dict(),
            "per_class": self.per_class,
            "weighted": self.weighted,
        }


@dataclass(frozen=True)
class MetricsReport:
    """Cross-validation outcome plus the configuration that produced it."""

    algorithm: str
    features: str
    k: int
    seed: int
    leaky_vocab: bool
    n_examples: int
    class_counts: dict[str, int]
    folds: list[FoldMetrics]
    mean_per_class: dict[str, dict[str, float]]
    mean_weighted: dict[str, float]
    pooled_confusion: ConfusionMatrix
    pooled_per_class: dict[str, dict[str, float]]
    weighted_f1: float
    macro_f1: float
    positive_f1: float
    notes: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "config": {
                "algorithm": self.algorithm,
                "features": self.features,
                "k": self.k,
                "seed": self.seed,
                "leaky_vocab": self.leaky_vocab,
            },
            "n_examples": self.n_examples,
            "class_counts": self.class_counts,
            "folds": [f.to_dict() for f in self.folds],
            "mean_per_class": self.mean_per_class,
            "mean_weighted": self.mean_weighted,
            "pooled_confusion": self.pooled_confusion.to_dict(),
            "pooled_per_class": self.pooled_per_class,
            "weighted_f1": self.weighted_f1,
            "macro_f1": self.macro_f1,
            "positive_f1": self.positive_f1,
            "notes": list(self.notes),
        }

    def table_rows(self) -> list[dict]:
        """Flat per-fold rows (weighted metrics) for the plot-ready table."""
        return [
            {
                "fold": fm.fold,
                "algorithm": self.algorithm,
                "features": self.features,
                "precision": fm.weighted["precision"],
                "recall": fm.weighted["recall"],
                "f1": fm.weighted["f1"],
            }
            for fm in self.folds
        ]


class FoldEvaluationError(RuntimeError):
    def __init__(self, fold: int, cause: Exception):
        super().__init__(f"fold {fold}: {cause}")
        self.fold = fold
        self.cause = cause


def _fold_metrics(fold: int, truth, predicted) -> FoldMetrics:
    cm = confusion_from_labels(truth, predicted)
    per_class = _per_class_metrics(cm)
    support = {lbl: int(np.sum(as_label_array(truth) == lbl)) for lbl in LABELS}
    weighted = {key: _weighted(per_class, support, key) for key in ("precision", "recall", "f1")}
    return FoldMetrics(fold=fold, n_test=cm.total, confusion=cm, per_class=per_class, weighted=weighted)


def cross_validate(
    docs,
    labels,
    classifier,
    *,
    vectorizer=None,
    k: int = 10,
    seed: int = 0,
    ids=None,
    leaky_vocab: bool = False,
    algorithm_name: str | None = None,
    features_name: str | None = None,
    notes: tuple[str, ...] = (),
) -> MetricsReport:
    """Stratified k-fold evaluation of a classifier prototype.

    ``docs`` is either a list of token lists (with a fit/transform
    ``vectorizer`` prototype) or an already-vectorized feature matrix
    (``vectorizer=None``). Prototypes are cloned per fold, so the caller's
    estimators are never mutated and every fold starts fresh.
    """
    labels = as_label_array(labels)
    n = labels.shape[0]
    if len(docs) != n:
        raise ValueError("docs and labels must have equal length")
    folds = stratified_kfold(labels, k=k, seed=seed, order_keys=ids)

    shared_vectorizer = None
    if vectorizer is not None and leaky_vocab:
        shared_vectorizer = clone(vectorizer).fit(docs)

    fold_metrics: list[FoldMetrics] = []
    pooled = ConfusionMatrix()
    for fold in range(k):
        test_idx = folds.indices(fold)
        train_idx = np.nonzero(folds.assignment != fold)[0]
        try:
            if vectorizer is None:
                X = np.asarray(docs, dtype=np.float64)
                X_train, X_test = X[train_idx], X[test_idx]
            else:
                train_docs = [docs[i] for i in train_idx]
                test_docs = [docs[i] for i in test_idx]
                vec = shared_vectorizer or clone(vectorizer).fit(train_docs)
                X_train, X_test = vec.transform(train_docs), vec.transform(test_docs)
            model = clone(classifier).fit(X_train, labels[train_idx])
            predicted = model.predict(X_test)
        except (ValueError, RuntimeError) as exc:
            raise FoldEvaluationError(fold, exc) from exc
        fm = _fold_metrics(fold, labels[test_idx], predicted)
        fold_metrics.append(fm)
        pooled = pooled + fm.confusion

    mean_per_class = {
        lbl: {
            key: float(np.mean([fm.per_class[lbl][key] for fm in fold_metrics]))
            for key in ("precision", "recall", "f1")
        }
        for lbl in LABELS
    }
    mean_weighted = {
        key: float(np.mean([fm.weighted[key] for fm in fold_metrics]))
        for key in ("precision", "recall", "f1")
    }
    pooled_per_class = _per_class_metrics(pooled)
    class_counts = {lbl: int(np.sum(labels == lbl)) for lbl in LABELS}
    weighted_f1 = _weighted(pooled_per_class, class_counts, "f1")
    macro_f1 = float(np.mean([pooled_per_class[lbl]["f1"] for lbl in LABELS]))
    return MetricsReport(
        algorithm=algorithm_name or type(classifier).__name__,
        features=features_name or (type(vectorizer).__name__ if vectorizer is not None else "precomputed"),
        k=k,
        seed=seed,
        leaky_vocab=leaky_vocab,
        n_examples=n,
        class_counts=class_counts,
        folds=fold_metrics,
        mean_per_class=mean_per_class,
        mean_weighted=mean_weighted,
        pooled_confusion=pooled,
        pooled_per_class=pooled_per_class,
        weighted_f1=weighted_f1,
        macro_f1=macro_f1,
        positive_f1=pooled_per_class[LABEL_34]["f1"],
        notes=notes,
    )

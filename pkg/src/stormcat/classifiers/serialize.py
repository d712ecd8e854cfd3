"""Versioned text serialization for trained models.

Models serialize to JSON with sorted keys and shortest round-trip float
repr, so two fits from the same data and seed produce byte-identical files
and deserialized models predict identically to the originals.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .forest import RandomForestGini
from .logistic import LogisticRegressionGD
from .naive_bayes import NaiveBayesClassifier
from .svm import LinearSVMPegasos
from .tree import DecisionTreeGini, TreeNode

FORMAT_VERSION = 1

KIND_NAMES = {
    NaiveBayesClassifier: "naive_bayes",
    LogisticRegressionGD: "logistic_regression",
    DecisionTreeGini: "decision_tree",
    RandomForestGini: "random_forest",
    LinearSVMPegasos: "linear_svm",
}
_CLASSES = {name: cls for cls, name in KIND_NAMES.items()}


def _floats(arr) -> list:
    return np.asarray(arr, dtype=np.float64).tolist()


def _node_to_dict(node: TreeNode) -> dict:
    if node.is_leaf:
        return {"leaf": node.label, "n_12": node.n_12, "n_34": node.n_34}
    return {
        "feature": node.feature,
        "threshold": node.threshold,
        "n_12": node.n_12,
        "n_34": node.n_34,
        "left": _node_to_dict(node.left),
        "right": _node_to_dict(node.right),
    }


def _node_from_dict(data: dict) -> TreeNode:
    if "leaf" in data:
        return TreeNode(label=data["leaf"], n_12=data["n_12"], n_34=data["n_34"])
    return TreeNode(
        feature=int(data["feature"]),
        threshold=float(data["threshold"]),
        n_12=data["n_12"],
        n_34=data["n_34"],
        left=_node_from_dict(data["left"]),
        right=_node_from_dict(data["right"]),
    )


def _parameters(model) -> dict:
    if isinstance(model, NaiveBayesClassifier):
        params = {"class_log_prior": _floats(model.class_log_prior_)}
        if model.variant == "multinomial":
            params["feature_log_likelihood"] = _floats(model.feature_log_likelihood_)
        else:
            params["theta"] = _floats(model.theta_)
            params["var"] = _floats(model.var_)
        return params
    if isinstance(model, (LogisticRegressionGD, LinearSVMPegasos)):
        return {"weights": _floats(model.weights_), "bias": model.bias_}
    if isinstance(model, DecisionTreeGini):
        return {"tree": _node_to_dict(model.tree_)}
    if isinstance(model, RandomForestGini):
        return {"trees": [_node_to_dict(t) for t in model.trees_]}
    raise TypeError(f"cannot serialize {type(model).__name__}")


def model_to_dict(model) -> dict:
    kind = KIND_NAMES.get(type(model))
    if kind is None:
        raise TypeError(f"unknown model type {type(model).__name__}")
    return {
        "format_version": FORMAT_VERSION,
        "kind": kind,
        "dim": int(model.n_features_in_),
        "hyperparameters": model.get_params(),
        "parameters": _parameters(model),
    }


def model_from_dict(data: dict):
    if data.get("format_version") != FORMAT_VERSION:
        raise ValueError(f"unsupported model format version {data.get('format_version')!r}")
    cls = _CLASSES.get(data.get("kind"))
    if cls is None:
        raise ValueError(f"unknown model kind {data.get('kind')!r}")
    model = cls(**data["hyperparameters"])
    params = data["parameters"]
    if cls is NaiveBayesClassifier:
        model.class_log_prior_ = np.array(params["class_log_prior"])
        if model.variant == "multinomial":
            model.feature_log_likelihood_ = np.array(params["feature_log_likelihood"])
        else:
            model.theta_ = np.array(params["theta"])
            model.var_ = np.array(params["var"])
    elif cls in (LogisticRegressionGD, LinearSVMPegasos):
        model.weights_ = np.array(params["weights"])
        model.bias_ = float(params["bias"])
    elif cls is DecisionTreeGini:
        model.tree_ = _node_from_dict(params["tree"])
    else:
        model.trees_ = [_node_from_dict(t) for t in params["trees"]]
    model.n_features_in_ = int(data["dim"])
    model.classes_ = np.array(["12", "34"])
    return model


def dumps_model(model) -> str:
    return json.dumps(model_to_dict(model), sort_keys=True, indent=2, allow_nan=False) + "\n"


def save_model(model, path: str | Path) -> None:
    Path(path).write_text(dumps_model(model), encoding="utf-8")


def load_model(path: str | Path):
    return model_from_dict(json.loads(Path(path).read_text(encoding="utf-8")))

"""Regularized log-linear classifier over feature vectors.

Scores are logistic outputs in [0, 1], which is exactly the contract the
co-training stage needs.  Features are standardized before fitting and
the standardization constants travel with the model, so callers always
pass raw feature vectors.  Training is full-batch gradient descent with
a fixed epoch count: deterministic for a given configuration.
"""

from __future__ import annotations

import json
from collections.abc import Sequence
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .features import FeatureVector


class TrainingError(ValueError):
    """Unusable training input."""


class SchemaMismatchError(ValueError):
    """Feature vector does not match the model's schema."""


@dataclass(frozen=True)
class TrainConfig:
    regularization_strength: float = 1e-4
    learning_rate: float = 0.5
    epochs: int = 400
    seed: int = 0
    class_weighting: str = "none"

    def __post_init__(self):
        if self.regularization_strength <= 0:
            raise TrainingError("regularization_strength must be positive")
        if self.learning_rate <= 0:
            raise TrainingError("learning_rate must be positive")
        if self.epochs <= 0:
            raise TrainingError("epochs must be positive")
        if self.class_weighting not in ("none", "balanced"):
            raise TrainingError(
                f"class_weighting must be 'none' or 'balanced', got {self.class_weighting!r}"
            )


@dataclass(frozen=True, eq=False)
class Model:
    schema_id: str
    feature_names: tuple[str, ...]
    weights: np.ndarray
    bias: float
    feature_means: np.ndarray
    feature_scales: np.ndarray
    threshold: float = 0.5

    def __post_init__(self):
        if self.weights.shape != (len(self.feature_names),):
            raise TrainingError("weight length must equal schema length")
        if np.any(self.feature_scales <= 0):
            raise TrainingError("feature scales must be strictly positive")
        if not 0.0 < self.threshold < 1.0:
            raise TrainingError("threshold must lie in (0, 1)")


def _sigmoid(z: np.ndarray) -> np.ndarray:
    z = np.asarray(z, dtype=np.float64)
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def loss_and_gradient(
    weights: np.ndarray,
    bias: float,
    X: np.ndarray,
    y: np.ndarray,
    sample_weight: np.ndarray,
    l2: float,
) -> tuple[float, np.ndarray, float]:
    """Weighted cross-entropy plus L2 penalty on the weights (not the
    bias), with its analytic gradient."""
    z = X @ weights + bias
    point_losses = y * np.logaddexp(0.0, -z) + (1.0 - y) * np.logaddexp(0.0, z)
    weight_total = sample_weight.sum()
    loss = float(
        (sample_weight * point_losses).sum() / weight_total
        + 0.5 * l2 * (weights @ weights)
    )
    residual = sample_weight * (_sigmoid(z) - y) / weight_total
    grad_w = X.T @ residual + l2 * weights
    grad_b = float(residual.sum())
    return loss, grad_w, grad_b


def _validate_examples(
    examples: Sequence[tuple[FeatureVector, bool]]
) -> tuple[str, tuple[str, ...], np.ndarray, np.ndarray]:
    if not examples:
        raise TrainingError("no training examples")
    schema_id = examples[0][0].schema_id
    names = examples[0][0].names
    for fv, _ in examples:
        if fv.schema_id != schema_id or fv.names != names:
            raise SchemaMismatchError(
                f"mixed feature schemas: {fv.schema_id!r} vs {schema_id!r}"
            )
    X = np.stack([fv.values for fv, _ in examples])
    y = np.array([1.0 if label else 0.0 for _, label in examples])
    if y.min() == y.max():
        raise TrainingError("training data contains a single class")
    return schema_id, names, X, y


def train(examples: Sequence[tuple[FeatureVector, bool]], cfg: TrainConfig) -> Model:
    """Standardize, then fit by full-batch gradient descent."""
    schema_id, names, X, y = _validate_examples(examples)

    means = X.mean(axis=0)
    scales = X.std(axis=0)
    scales[scales == 0.0] = 1.0
    Xs = (X - means) / scales

    if cfg.class_weighting == "balanced":
        n = y.shape[0]
        n_pos = float(y.sum())
        n_neg = n - n_pos
        sample_weight = np.where(y == 1.0, n / (2.0 * n_pos), n / (2.0 * n_neg))
    else:
        sample_weight = np.ones_like(y)

    weights = np.zeros(Xs.shape[1])
    bias = 0.0
    for _ in range(cfg.epochs):
        _, grad_w, grad_b = loss_and_gradient(
            weights, bias, Xs, y, sample_weight, cfg.regularization_strength
        )
        weights = weights - cfg.learning_rate * grad_w
        bias = bias - cfg.learning_rate * grad_b

    return Model(
        schema_id=schema_id,
        feature_names=names,
        weights=weights,
        bias=bias,
        feature_means=means,
        feature_scales=scales,
    )


def _check_schema(model: Model, fv: FeatureVector) -> None:
    if fv.schema_id != model.schema_id or fv.names != model.feature_names:
        raise SchemaMismatchError(
            f"vector schema {fv.schema_id!r} does not match model {model.schema_id!r}"
        )


def predict_score(model: Model, fv: FeatureVector) -> float:
    _check_schema(model, fv)
    scaled = (fv.values - model.feature_means) / model.feature_scales
    return float(_sigmoid(np.array([scaled @ model.weights + model.bias]))[0])


def predict_scores(model: Model, vectors: Sequence[FeatureVector]) -> np.ndarray:
    for fv in vectors:
        _check_schema(model, fv)
    X = np.stack([fv.values for fv in vectors])
    scaled = (X - model.feature_means) / model.feature_scales
    return _sigmoid(scaled @ model.weights + model.bias)


def predict(model: Model, fv: FeatureVector) -> bool:
    return predict_score(model, fv) >= model.threshold


def model_to_json(model: Model) -> str:
    return json.dumps(
        {
            "schema_id": model.schema_id,
            "feature_names": list(model.feature_names),
            "weights": list(model.weights),
            "bias": model.bias,
            "feature_means": list(model.feature_means),
            "feature_scales": list(model.feature_scales),
            "threshold": model.threshold,
        },
        ensure_ascii=False,
        sort_keys=True,
    )


def model_from_json(text: str) -> Model:
    payload = json.loads(text)
    return Model(
        schema_id=payload["schema_id"],
        feature_names=tuple(payload["feature_names"]),
        weights=np.array(payload["weights"], dtype=np.float64),
        bias=float(payload["bias"]),
        feature_means=np.array(payload["feature_means"], dtype=np.float64),
        feature_scales=np.array(payload["feature_scales"], dtype=np.float64),
        threshold=float(payload["threshold"]),
    )


def save_model(model: Model, path: str | Path) -> None:
    Path(path).write_text(model_to_json(model), encoding="utf-8")


def load_model(path: str | Path) -> Model:
    return model_from_json(Path(path).read_text(encoding="utf-8"))

"""L2-regularised logistic regression trained by full-batch gradient descent."""

from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError
from .rng import XorShift64Star


@dataclass(frozen=True)
class LogisticModel:
    weights: np.ndarray
    bias: float
    l2_strength: float = 0.0


def _sigmoid(z):
    z = np.asarray(z, dtype=float)
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def decision_function(model, X):
    X = np.atleast_2d(np.asarray(X, dtype=float))
    if X.shape[1] != model.weights.size:
        raise ConfigurationError(
            f"model has {model.weights.size} weights, samples have {X.shape[1]} features"
        )
    return X @ model.weights + model.bias


def predict_proba(model, X):
    """p(ransomware | x). Scalar for a single vector, array for a matrix."""
    single = np.asarray(X).ndim == 1
    p = _sigmoid(decision_function(model, X))
    return float(p[0]) if single else p


def predict(model, X, threshold=0.5):
    return (np.atleast_1d(predict_proba(model, X)) >= threshold).astype(int)


def loss(weights, bias, X, y, l2_strength):
    """Mean cross-entropy plus ``l2_strength / 2 * |w|^2`` (bias unpenalised)."""
    z = X @ weights + bias
    # log(1 + e^z) - y z, written to avoid overflow
    ce = np.logaddexp(0.0, z) - y * z
    return float(ce.mean() + 0.5 * l2_strength * weights @ weights)


def loss_gradient(weights, bias, X, y, l2_strength):
    r = _sigmoid(X @ weights + bias) - y
    gw = X.T @ r / len(y) + l2_strength * weights
    gb = float(r.mean())
    return gw, gb


def fit_logistic(X_train, y_train, l2_strength=None, max_epochs=500, learning_rate=0.1, seed=42):
    """Full-batch gradient descent from zero weights.

    A step that would raise the loss is rejected and the learning rate halved,
    so the training loss never increases. ``l2_strength`` defaults to ``1/N``.
    The seed only permutes row order (the optimum does not depend on it).
    """
    X = np.asarray(X_train, dtype=float)
    y = np.asarray(y_train, dtype=float)
    if X.ndim != 2 or len(y) != X.shape[0]:
        raise ConfigurationError("X_train must be N x D with N labels")
    if not np.isin(y, (0, 1)).all():
        raise ConfigurationError("labels must be 0 or 1")
    if y.min() == y.max():
        raise ConfigurationError("logistic regression needs both classes in the training set")
    if l2_strength is None:
        l2_strength = 1.0 / len(y)
    if l2_strength < 0:
        raise ConfigurationError("l2_strength must be >= 0")

    perm = XorShift64Star(seed).permutation(len(y))
    X, y = X[perm], y[perm]

    w = np.zeros(X.shape[1])
    b = 0.0
    lr = learning_rate
    current = loss(w, b, X, y, l2_strength)
    for _ in range(max_epochs):
        gw, gb = loss_gradient(w, b, X, y, l2_strength)
        while lr > 1e-12:
            w_new, b_new = w - lr * gw, b - lr * gb
            trial = loss(w_new, b_new, X, y, l2_strength)
            if trial <= current:
                w, b, current = w_new, b_new, trial
                break
            lr *= 0.5
        else:
            break
    return LogisticModel(w, float(b), float(l2_strength))

"""Standardisation and PCA, both fitted on training rows only."""

from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError


@dataclass(frozen=True)
class ScalerModel:
    means: np.ndarray
    stds: np.ndarray

    @property
    def zero_variance(self):
        return self.stds == 0.0

    @property
    def n_features(self):
        return self.means.size


@dataclass(frozen=True)
class PcaModel:
    mean: np.ndarray
    components: np.ndarray  # D x n, orthonormal columns
    explained_variance: np.ndarray
    explained_variance_ratio: np.ndarray

    @property
    def n_components(self):
        return self.components.shape[1]


def _as_matrix(X):
    X = np.asarray(X, dtype=float)
    if X.ndim != 2:
        raise ConfigurationError(f"expected a 2-D sample matrix, got shape {X.shape}")
    return X


def fit_scaler(X_train):
    """Per-feature mean and population (divide-by-N) standard deviation."""
    X = _as_matrix(X_train)
    if X.shape[0] < 2:
        raise ConfigurationError("scaler needs at least two training rows")
    means = X.mean(axis=0)
    stds = X.std(axis=0)
    # exact zeros for constant columns, whatever the rounding in std
    stds[np.all(X == X[0], axis=0)] = 0.0
    return ScalerModel(means, stds)


def transform_scaler(model, X):
    X = _as_matrix(X)
    if X.shape[1] != model.n_features:
        raise ConfigurationError(
            f"scaler was fitted on {model.n_features} features, got {X.shape[1]}"
        )
    safe = np.where(model.zero_variance, 1.0, model.stds)
    out = (X - model.means) / safe
    out[:, model.zero_variance] = 0.0
    return out


def _fix_signs(W):
    idx = np.argmax(np.abs(W), axis=0)
    signs = np.sign(W[idx, np.arange(W.shape[1])])
    signs[signs == 0] = 1.0
    return W * signs


def fit_pca(X_train, n_components, method="auto"):
    """Top principal axes of the training covariance.

    ``method`` is ``"covariance"`` (eigendecomposition of the D x D
    covariance), ``"gram"`` (N x N Gram matrix, cheaper when D > N) or
    ``"auto"``, which picks the smaller of the two.
    """
    X = _as_matrix(X_train)
    N, D = X.shape
    if not 1 <= n_components <= min(D, N):
        raise ConfigurationError(
            f"n_components must be in [1, {min(D, N)}], got {n_components}"
        )
    if N < 2:
        raise ConfigurationError("PCA needs at least two training rows")
    if method == "auto":
        method = "covariance" if D <= N else "gram"
    mean = X.mean(axis=0)
    Xc = X - mean
    total = float((Xc**2).sum()) / (N - 1)

    if method == "covariance":
        evals, evecs = np.linalg.eigh(Xc.T @ Xc / (N - 1))
        order = np.argsort(evals)[::-1][:n_components]
        evals, W = evals[order], evecs[:, order]
    elif method == "gram":
        evals, U = np.linalg.eigh(Xc @ Xc.T / (N - 1))
        order = np.argsort(evals)[::-1][:n_components]
        evals, U = evals[order], U[:, order]
        if np.any(evals <= 0):
            raise ConfigurationError("data rank is below n_components")
        W = Xc.T @ U / np.sqrt((N - 1) * evals)
        # one re-orthonormalisation pass removes rounding drift
        W, _ = np.linalg.qr(W)
    else:
        raise ConfigurationError(f"unknown PCA method {method!r}")

    evals = np.clip(evals, 0.0, None)
    ratio = evals / total if total > 0 else np.zeros_like(evals)
    return PcaModel(mean, _fix_signs(W), evals, ratio)


def transform_pca(model, X):
    X = _as_matrix(X)
    if X.shape[1] != model.mean.size:
        raise ConfigurationError(
            f"PCA was fitted on {model.mean.size} features, got {X.shape[1]}"
        )
    return (X - model.mean) @ model.components


def cumulative_variance_report(model):
    """Rows of (number of components, cumulative explained variance in %)."""
    cumulative = np.cumsum(model.explained_variance_ratio) * 100.0
    return [(k + 1, float(c)) for k, c in enumerate(cumulative)]

"""Input validation helpers for array-shaped channel and state data."""
from __future__ import annotations

import numpy as np
from sklearn.utils.validation import check_array

from .channels import GaussianChannel, GaussianState
from .exceptions import InvalidChannelError

N_CHANNEL_FEATURES = 8  # K (row-major 2x2) followed by alpha (row-major 2x2)


def check_channel_array(X) -> np.ndarray:
    """Validate an ``(n_samples, 8)`` array of flattened one-mode channels.

    A 3-D input of shape ``(n_samples, 2, 4)`` (``[K | alpha]`` side by side)
    is accepted and flattened.
    """
    X = np.asarray(X, dtype=float)
    if X.ndim == 3 and X.shape[1:] == (2, 4):
        X = np.concatenate([X[:, :, :2].reshape(len(X), 4), X[:, :, 2:].reshape(len(X), 4)], axis=1)
    X = check_array(X, dtype=float, ensure_all_finite=True)
    if X.shape[1] != N_CHANNEL_FEATURES:
        raise InvalidChannelError(
            f"expected {N_CHANNEL_FEATURES} features per channel (K then alpha, row-major), got {X.shape[1]}"
        )
    return X


def channels_from_array(X) -> list[GaussianChannel]:
    X = check_channel_array(X)
    return [GaussianChannel(row[:4].reshape(2, 2), row[4:].reshape(2, 2)) for row in X]


def channel_to_row(ch: GaussianChannel) -> np.ndarray:
    return np.concatenate([ch.K.ravel(), ch.alpha.ravel()])


def check_covariance_array(X, tol: float) -> np.ndarray:
    """Validate an ``(n_samples, 4)`` array of flattened one-mode covariances."""
    X = np.asarray(X, dtype=float)
    if X.ndim == 3 and X.shape[1:] == (2, 2):
        X = X.reshape(len(X), 4)
    X = check_array(X, dtype=float, ensure_all_finite=True)
    if X.shape[1] != 4:
        raise InvalidChannelError(f"expected 4 features per covariance, got {X.shape[1]}")
    for i, row in enumerate(X):
        s = GaussianState.from_cov(row.reshape(2, 2))
        if np.max(np.abs(s.cov - s.cov.T)) > 1e-12 or not s.is_legal(tol):
            raise InvalidChannelError(f"row {i} is not a legal one-mode covariance matrix")
    return X

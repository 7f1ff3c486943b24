"""scikit-learn compatible front ends.

Channels are passed as rows of 8 numbers: ``K`` row-major followed by
``alpha`` row-major.  Covariances are rows of 4 numbers.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import channel_to_row, channels_from_array, check_covariance_array
from .canonical import ChannelClass, build_canonical, classify, decomposition_residuals
from .channels import GaussianChannel, GaussianState, apply_to_state, require_valid
from .symplectic import DEFAULT_TOL

CLASS_LABELS = np.array([c.value for c in ChannelClass])


class CanonicalFormClassifier(ClassifierMixin, BaseEstimator):
    """Assign one-mode Gaussian channels to their canonical class.

    Nothing is learned; ``fit`` only validates input and fixes ``classes_``.
    ``predict`` returns the class labels, ``transform`` the canonical
    parameters as columns ``(N0, Nc, k)`` (NaN where not applicable), and
    ``decompose`` the full reductions.

    Parameters
    ----------
    tol : float
        Tolerance for the validity test and the class boundaries.
    """

    def __init__(self, tol=DEFAULT_TOL):
        self.tol = tol

    def fit(self, X, y=None):
        channels = channels_from_array(X)
        for ch in channels:
            require_valid(ch, self.tol)
        self.classes_ = CLASS_LABELS.copy()
        self.n_features_in_ = 8
        return self

    def decompose(self, X):
        check_is_fitted(self)
        return [classify(ch, self.tol) for ch in channels_from_array(X)]

    def predict(self, X):
        return np.array([d.form.tag.value for d in self.decompose(X)])

    def transform(self, X):
        rows = []
        for d in self.decompose(X):
            f = d.form
            rows.append([np.nan if v is None else v for v in (f.N0, f.Nc, f.k)])
        return np.array(rows, dtype=float)

    def canonical_channels(self, X):
        """Rows of canonical ``(K, alpha)`` for each input channel."""
        return np.array([channel_to_row(build_canonical(d.form)) for d in self.decompose(X)])

    def residuals(self, X):
        chans = channels_from_array(X)
        decs = self.decompose(X)
        return np.array([[r["K"], r["alpha"]] for r in map(decomposition_residuals, chans, decs)])

    def fit_transform(self, X, y=None, **fit_params):
        return self.fit(X, y).transform(X)


class GaussianChannelTransformer(TransformerMixin, BaseEstimator):
    """Push one-mode covariance matrices through a fixed Gaussian channel.

    Parameters
    ----------
    K, alpha : array-like of shape (2, 2)
        The channel.
    tol : float
        Tolerance for channel validity and input legality.
    """

    def __init__(self, K=None, alpha=None, tol=DEFAULT_TOL):
        self.K = K
        self.alpha = alpha
        self.tol = tol

    def fit(self, X=None, y=None):
        K = np.eye(2) if self.K is None else self.K
        alpha = np.zeros((2, 2)) if self.alpha is None else self.alpha
        self.channel_ = require_valid(GaussianChannel(K, alpha), self.tol)
        if X is not None:
            check_covariance_array(X, self.tol)
        self.n_features_in_ = 4
        return self

    def transform(self, X):
        check_is_fitted(self, "channel_")
        X = check_covariance_array(X, self.tol)
        out = [apply_to_state(self.channel_, GaussianState.from_cov(r.reshape(2, 2))).cov.ravel() for r in X]
        return np.array(out)

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import make_pipeline

from onemode._validation import channel_to_row, check_channel_array, check_covariance_array
from onemode.canonical import ChannelClass, build_canonical
from onemode.estimators import CanonicalFormClassifier, GaussianChannelTransformer
from onemode.exceptions import InvalidChannelError
from onemode.symplectic import random_symplectic

from conftest import conjugate, random_form


@pytest.fixture
def batch():
    rng = np.random.default_rng(5)
    rows, labels = [], []
    for tag in ChannelClass:
        for _ in range(10):
            ch = conjugate(build_canonical(random_form(tag, rng)), random_symplectic(rng), random_symplectic(rng))
            rows.append(channel_to_row(ch))
            labels.append(tag.value)
    return np.array(rows), np.array(labels)


def test_predict_and_score(batch):
    X, y = batch
    clf = CanonicalFormClassifier().fit(X)
    np.testing.assert_array_equal(clf.predict(X), y)
    assert clf.score(X, y) == 1.0
    assert list(clf.classes_) == [c.value for c in ChannelClass]


def test_transform_columns(batch):
    X, y = batch
    params = CanonicalFormClassifier().fit_transform(X)
    assert params.shape == (len(X), 3)
    assert np.all(np.isnan(params[y == "B1"]))
    assert np.all(~np.isnan(params[y == "C"][:, [0, 2]]))
    res = CanonicalFormClassifier().fit(X).residuals(X)
    assert res.max() <= 1e-7


def test_canonical_channels(batch):
    X, _ = batch
    can = CanonicalFormClassifier().fit(X).canonical_channels(X[:3])
    assert can.shape == (3, 8)


def test_params_and_clone():
    clf = CanonicalFormClassifier(tol=1e-7)
    assert clf.get_params() == {"tol": 1e-7}
    assert clone(clf).tol == 1e-7
    assert clf.set_params(tol=1e-6).tol == 1e-6


def test_not_fitted(batch):
    with pytest.raises(NotFittedError):
        CanonicalFormClassifier().predict(batch[0])


def test_invalid_channel_rejected_at_fit():
    X = np.array([[0, 0, 0, 0, 0.4, 0, 0, 0.4]])
    with pytest.raises(InvalidChannelError):
        CanonicalFormClassifier().fit(X)


def test_channel_array_forms():
    three_d = np.array([[[1, 0, 0.5, 0], [0, 1, 0, 0.5]]], dtype=float)
    np.testing.assert_array_equal(check_channel_array(three_d), [[1, 0, 0, 1, 0.5, 0, 0, 0.5]])
    with pytest.raises(InvalidChannelError):
        check_channel_array(np.zeros((2, 5)))
    with pytest.raises(ValueError):
        check_channel_array([[np.inf] * 8])


def test_channel_transformer():
    k = 0.8
    tr = GaussianChannelTransformer(K=k * np.eye(2), alpha=0.5 * (1 - k * k) * np.eye(2))
    X = np.array([[0.5, 0, 0, 0.5], [2.5, 0, 0, 2.5]])
    out = tr.fit(X).transform(X)
    np.testing.assert_allclose(out[0], [0.5, 0, 0, 0.5])
    np.testing.assert_allclose(out[1], [0.64 * 2.0 + 0.5, 0, 0, 0.64 * 2.0 + 0.5])
    two = make_pipeline(clone(tr), clone(tr)).fit(X)
    np.testing.assert_allclose(two.transform(X)[1, 0], 0.64**2 * 2.0 + 0.5)


def test_transformer_validation():
    with pytest.raises(InvalidChannelError):
        GaussianChannelTransformer(K=np.zeros((2, 2)), alpha=0.1 * np.eye(2)).fit()
    tr = GaussianChannelTransformer().fit()
    with pytest.raises(InvalidChannelError):
        tr.transform([[0.3, 0, 0, 0.3]])
    with pytest.raises(NotFittedError):
        GaussianChannelTransformer().transform([[0.5, 0, 0, 0.5]])
    np.testing.assert_array_equal(check_covariance_array(np.eye(2)[None] * 0.5, 1e-9), [[0.5, 0, 0, 0.5]])

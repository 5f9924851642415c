"""scikit-learn wrapper: learn the fewest parity queries that reproduce a
labelled set of binary vectors."""

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.utils.multiclass import unique_labels
from sklearn.utils.validation import check_array, check_is_fitted, check_X_y

from ._errors import UsageError, check_dimension
from .boolfn import PartialFn
from .nadt import synthesize_nadt

__all__ = ["ParityQueryClassifier"]


def _points(X) -> np.ndarray:
    """Rows of a 0/1 matrix as point indices, column 0 the lowest bit."""
    if np.any((X != 0) & (X != 1)):
        raise ValueError("features must be 0 or 1")
    weights = np.left_shift(1, np.arange(X.shape[1], dtype=np.int64))
    return X.astype(np.int64) @ weights


class ParityQueryClassifier(ClassifierMixin, TransformerMixin, BaseEstimator):
    """Binary classifier on {0,1}^n that predicts through a minimum set of
    parity queries consistent with the training labels.

    The training set defines a partial function; fitting finds a non-adaptive
    parity decision tree of minimum depth for it. ``transform`` returns the
    query answers, so the fitted model also works as a feature map.
    Syndromes that no training point reaches predict the first class.
    """

    def fit(self, X, y):
        X, y = check_X_y(X, y)
        self.classes_ = unique_labels(y)
        if len(self.classes_) > 2:
            raise ValueError("only binary targets are supported")
        n = X.shape[1]
        check_dimension(n)
        encoded = np.searchsorted(self.classes_, y)
        points = _points(X)
        defined = np.zeros(1 << n, dtype=bool)
        value = np.zeros(1 << n, dtype=bool)
        defined[points] = True
        value[points[encoded == 1]] = True
        if np.any(value[points[encoded == 0]]):
            raise UsageError("the same feature vector carries both labels")
        f = PartialFn.from_arrays(defined, value)
        protocol = synthesize_nadt(f)
        self.protocol_ = protocol
        self.n_features_in_ = n
        self.n_queries_ = protocol.p
        self.queries_ = np.array(
            [[(row >> j) & 1 for j in range(n)] for row in protocol.queries.rows], dtype=np.int8
        ).reshape(protocol.p, n)
        return self

    def transform(self, X) -> np.ndarray:
        check_is_fitted(self, "protocol_")
        X = check_array(X)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(f"expected {self.n_features_in_} features, got {X.shape[1]}")
        return (X.astype(np.int64) @ self.queries_.T.astype(np.int64)) % 2

    def predict(self, X) -> np.ndarray:
        answers = self.transform(X)
        syndromes = answers @ np.left_shift(1, np.arange(self.n_queries_, dtype=np.int64))
        table = np.asarray(self.protocol_.table, dtype=np.int64)
        return self.classes_[np.minimum(table[syndromes], len(self.classes_) - 1)]

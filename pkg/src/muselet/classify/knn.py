"""k-nearest-neighbour classification under Euclidean distance."""

import numpy as np

from muselet.classify._labels import as_matrix, encode
from muselet.errors import EmptyTrainingSet


class KNearestNeighbors:
    """Majority vote among the k closest training points.

    Equal distances are ranked by training index. A tied vote goes to the
    tied class whose member appears first in that ranking.
    """

    def __init__(self, k: int = 5, seed=None):
        if k < 1:
            raise ValueError("k must be >= 1")
        self.k = k

    def fit(self, X, y):
        X = as_matrix(X)
        self.classes_, self._codes = encode(y)
        if X.shape[0] != self._codes.size:
            raise ValueError("X and y disagree on the number of samples")
        if self.k > X.shape[0]:
            raise ValueError(f"k={self.k} exceeds the {X.shape[0]} training samples")
        self._X = X
        return self

    def predict(self, X):
        X = as_matrix(X)
        if not hasattr(self, "_X"):
            raise EmptyTrainingSet("predict called before fit")
        diff = X[:, None, :] - self._X[None, :, :]
        dist = np.sqrt((diff * diff).sum(axis=2))
        order = np.argsort(dist, axis=1, kind="stable")[:, :self.k]
        g = self.classes_.size
        out = np.empty(X.shape[0], dtype=int)
        for i, nearest in enumerate(order):
            codes = self._codes[nearest]
            votes = np.bincount(codes, minlength=g)
            tied = np.flatnonzero(votes == votes.max())
            if tied.size == 1:
                out[i] = tied[0]
            else:
                out[i] = next(c for c in codes if c in tied)
        return self.classes_[out]


def knn_fit_predict(train, test, k: int = 5):
    X, y = train
    return KNearestNeighbors(k).fit(X, y).predict(test)

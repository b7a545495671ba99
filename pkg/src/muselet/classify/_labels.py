import numpy as np

from muselet.errors import EmptyTrainingSet


def encode(y):
    """Sorted class labels and the integer code of each sample."""
    y = np.asarray(y)
    if y.size == 0:
        raise EmptyTrainingSet("no training samples")
    classes, codes = np.unique(y, return_inverse=True)
    return classes, codes.ravel()


def as_matrix(X) -> np.ndarray:
    X = np.asarray(X, dtype=np.float64)
    if X.ndim == 1:
        X = X[:, None]
    if X.ndim != 2:
        raise ValueError("feature matrix must be 2-D")
    if not np.isfinite(X).all():
        raise ValueError("feature matrix contains non-finite values")
    return X


def argmax_first(scores: np.ndarray) -> np.ndarray:
    """Row-wise argmax; ties resolve to the smallest column index."""
    return np.argmax(scores, axis=1)

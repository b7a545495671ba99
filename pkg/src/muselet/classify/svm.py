"""One-vs-rest linear soft-margin SVM.

Each binary problem is solved in the dual,

    min_a  1/2 a'Qa - e'a   s.t.  0 <= a_i <= C,  y'a = 0,
    Q_ij = y_i y_j <x_i, x_j>,

by sequential minimal optimisation with maximal-violating-pair selection.
The solver stops when the KKT gap ``max_{I_up} -y_i g_i - min_{I_low} -y_i g_i``
falls to ``tol``.
"""

import numpy as np

from muselet.classify._labels import argmax_first, as_matrix, encode
from muselet.errors import SolverDidNotConverge, TooFewClasses

TAU = 1e-12


def smo_binary(X: np.ndarray, y: np.ndarray, C: float = 1.0, tol: float = 1e-3,
               max_iter: int = 100_000):
    """Train one binary linear SVM; ``y`` holds +1/-1.

    Returns ``(w, b, alpha, iterations)``.
    """
    n = y.size
    kernel = X @ X.T
    Q = (y[:, None] * y[None, :]) * kernel
    a = np.zeros(n)
    grad = -np.ones(n)
    pos = y > 0

    for it in range(max_iter):
        score = -y * grad
        up = (pos & (a < C)) | (~pos & (a > 0))
        low = (pos & (a > 0)) | (~pos & (a < C))
        if not up.any() or not low.any():
            break
        i = np.flatnonzero(up)[np.argmax(score[up])]
        j = np.flatnonzero(low)[np.argmin(score[low])]
        if score[i] - score[j] <= tol:
            break

        ai, aj = a[i], a[j]
        if y[i] != y[j]:
            quad = max(Q[i, i] + Q[j, j] + 2 * Q[i, j], TAU)
            delta = (-grad[i] - grad[j]) / quad
            diff = ai - aj
            ai += delta
            aj += delta
            if diff > 0:
                if aj < 0:
                    aj, ai = 0.0, diff
            elif ai < 0:
                ai, aj = 0.0, -diff
            if diff > 0:
                if ai > C:
                    ai, aj = C, C - diff
            elif aj > C:
                aj, ai = C, C + diff
        else:
            quad = max(Q[i, i] + Q[j, j] - 2 * Q[i, j], TAU)
            delta = (grad[i] - grad[j]) / quad
            total = ai + aj
            ai -= delta
            aj += delta
            if total > C:
                if ai > C:
                    ai, aj = C, total - C
            elif aj < 0:
                aj, ai = 0.0, total
            if total > C:
                if aj > C:
                    aj, ai = C, total - C
            elif ai < 0:
                ai, aj = 0.0, total

        grad += Q[:, i] * (ai - a[i]) + Q[:, j] * (aj - a[j])
        a[i], a[j] = ai, aj
    else:
        raise SolverDidNotConverge(f"SMO did not reach tol={tol} in {max_iter} iterations")

    w = (a * y) @ X
    free = (a > 0) & (a < C)
    score = -y * grad
    if free.any():
        b = float(score[free].mean())
    else:
        up = (pos & (a < C)) | (~pos & (a > 0))
        low = (pos & (a > 0)) | (~pos & (a < C))
        hi = score[up].max() if up.any() else score.max()
        lo = score[low].min() if low.any() else score.min()
        b = 0.5 * (hi + lo)
    return w, b, a, it


class LinearSVM:
    def __init__(self, C: float = 1.0, tol: float = 1e-3, max_iter: int = 100_000, seed=None):
        if C <= 0:
            raise ValueError("C must be positive")
        self.C, self.tol, self.max_iter = C, tol, max_iter

    def fit(self, X, y):
        X = as_matrix(X)
        self.classes_, codes = encode(y)
        g = self.classes_.size
        if g < 2:
            raise TooFewClasses("an SVM needs at least two classes")
        self.coef_ = np.empty((g, X.shape[1]))
        self.intercept_ = np.empty(g)
        for k in range(g):
            target = np.where(codes == k, 1.0, -1.0)
            w, b, _, _ = smo_binary(X, target, self.C, self.tol, self.max_iter)
            self.coef_[k], self.intercept_[k] = w, b
        return self

    def decision_function(self, X):
        return as_matrix(X) @ self.coef_.T + self.intercept_

    def predict(self, X):
        return self.classes_[argmax_first(self.decision_function(X))]


def svm_fit(train, C: float = 1.0, tol: float = 1e-3) -> LinearSVM:
    X, y = train
    return LinearSVM(C=C, tol=tol).fit(X, y)


def svm_predict(model: LinearSVM, X):
    return model.predict(X)

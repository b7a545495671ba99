"""Penalised discriminant analysis.

Discriminant directions maximise w'S_b w / w'(S_w + Omega)w with
Omega = omega_scale * I. Samples are assigned to the nearest class centroid
in the projected space.
"""

import numpy as np
from scipy import linalg

from muselet.classify._labels import as_matrix, encode
from muselet.errors import SingularWithinScatter, TooFewClasses

RCOND_LIMIT = 1e-12


def scatter_matrices(X: np.ndarray, codes: np.ndarray, g: int):
    mu = X.mean(axis=0)
    p = X.shape[1]
    within = np.zeros((p, p))
    between = np.zeros((p, p))
    means = np.empty((g, p))
    for k in range(g):
        Xk = X[codes == k]
        means[k] = Xk.mean(axis=0)
        centred = Xk - means[k]
        within += centred.T @ centred
        d = (means[k] - mu)[:, None]
        between += Xk.shape[0] * (d @ d.T)
    return within, between, means


class PenalizedDiscriminant:
    def __init__(self, omega_scale: float = 1.0, seed=None):
        if omega_scale < 0:
            raise ValueError("omega_scale must be >= 0")
        self.omega_scale = omega_scale

    def fit(self, X, y):
        X = as_matrix(X)
        self.classes_, codes = encode(y)
        g = self.classes_.size
        if g < 2:
            raise TooFewClasses("discriminant analysis needs at least two classes")
        within, between, means = scatter_matrices(X, codes, g)
        p = X.shape[1]
        penalised = within + self.omega_scale * np.eye(p)

        # whiten with the Cholesky factor of the penalised within-class
        # scatter, then take the symmetric eigenproblem
        try:
            L = np.linalg.cholesky(penalised)
        except np.linalg.LinAlgError:
            raise SingularWithinScatter(
                "within-class scatter is singular; use omega_scale > 0"
            ) from None
        diag = np.diag(L)
        if diag.min() <= np.sqrt(RCOND_LIMIT) * diag.max():
            raise SingularWithinScatter("within-class scatter is numerically singular")
        L_inv = linalg.solve_triangular(L, np.eye(p), lower=True)
        sym = L_inv @ between @ L_inv.T
        evals, evecs = np.linalg.eigh(0.5 * (sym + sym.T))
        r = min(g - 1, p)
        order = np.argsort(evals)[::-1][:r]
        W = L_inv.T @ evecs[:, order]
        # fix the sign so the largest-magnitude coefficient is positive
        signs = np.sign(W[np.argmax(np.abs(W), axis=0), np.arange(r)])
        self.directions_ = W * signs
        self.eigenvalues_ = evals[order]
        self.centroids_ = means @ self.directions_
        return self

    def transform(self, X):
        return as_matrix(X) @ self.directions_

    def predict(self, X):
        Z = self.transform(X)
        dist = ((Z[:, None, :] - self.centroids_[None, :, :]) ** 2).sum(axis=2)
        return self.classes_[np.argmin(dist, axis=1)]


def pda_fit(train, omega_scale: float = 1.0) -> PenalizedDiscriminant:
    X, y = train
    return PenalizedDiscriminant(omega_scale).fit(X, y)


def pda_predict(model: PenalizedDiscriminant, X):
    return model.predict(X)

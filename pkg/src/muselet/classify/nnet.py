"""Single-hidden-layer network on principal components."""

import numpy as np
from scipy.special import expit, log_softmax, softmax

from muselet.classify._labels import argmax_first, as_matrix, encode
from muselet.errors import DegenerateCovariance, TooFewSamples


class PCA:
    """Drops constant features, standardises the rest and keeps the fewest
    leading components that explain ``var_keep`` of the variance."""

    def __init__(self, var_keep: float = 0.95):
        if not 0 < var_keep <= 1:
            raise ValueError("var_keep must lie in (0, 1]")
        self.var_keep = var_keep

    def fit(self, X):
        X = as_matrix(X)
        if X.shape[0] < 2:
            raise TooFewSamples("PCA needs at least two samples")
        self.n_features_ = X.shape[1]
        self.kept_ = np.flatnonzero(np.ptp(X, axis=0) > 0)
        if self.kept_.size == 0:
            raise DegenerateCovariance("every feature is constant")
        Z = X[:, self.kept_]
        self.mean_ = Z.mean(axis=0)
        self.scale_ = Z.std(axis=0, ddof=1)
        Z = (Z - self.mean_) / self.scale_
        cov = Z.T @ Z / (Z.shape[0] - 1)
        evals, evecs = np.linalg.eigh(cov)
        evals, evecs = evals[::-1].clip(min=0), evecs[:, ::-1]
        ratio = np.cumsum(evals) / evals.sum()
        n_comp = int(np.searchsorted(ratio, self.var_keep - 1e-12) + 1)
        comps = evecs[:, :n_comp]
        # deterministic sign: largest-magnitude loading positive
        signs = np.sign(comps[np.argmax(np.abs(comps), axis=0), np.arange(n_comp)])
        self.components_ = comps * signs
        self.explained_variance_ = evals[:n_comp]
        return self

    @property
    def loadings(self) -> np.ndarray:
        """Components expressed over all original features (zeros for the
        dropped constant ones)."""
        full = np.zeros((self.n_features_, self.components_.shape[1]))
        full[self.kept_] = self.components_
        return full

    def transform(self, X):
        X = as_matrix(X)
        return ((X[:, self.kept_] - self.mean_) / self.scale_) @ self.components_


def init_params(n_in: int, hidden: int, n_out: int, rng: np.random.Generator, scale: float = 0.5):
    return {
        "W1": rng.normal(0.0, scale, (n_in, hidden)),
        "b1": np.zeros(hidden),
        "W2": rng.normal(0.0, scale, (hidden, n_out)),
        "b2": np.zeros(n_out),
    }


def forward(params, Y):
    H = expit(Y @ params["W1"] + params["b1"])
    logits = H @ params["W2"] + params["b2"]
    return H, logits


def loss_and_grad(params, Y, T):
    """Mean cross-entropy of the softmax outputs against one-hot ``T`` and
    its gradient with respect to every parameter array."""
    n = Y.shape[0]
    H, logits = forward(params, Y)
    loss = -float((T * log_softmax(logits, axis=1)).sum()) / n
    d_logits = (softmax(logits, axis=1) - T) / n
    d_hidden = (d_logits @ params["W2"].T) * H * (1.0 - H)
    grads = {
        "W1": Y.T @ d_hidden,
        "b1": d_hidden.sum(axis=0),
        "W2": H.T @ d_logits,
        "b2": d_logits.sum(axis=0),
    }
    return loss, grads


class PcaNeuralNet:
    """Logistic hidden layer, softmax output, full-batch gradient descent on
    the PCA scores of standardised inputs."""

    def __init__(self, var_keep: float = 0.95, hidden: int = 5, epochs: int = 500,
                 lr: float = 0.5, seed=0):
        self.var_keep = var_keep
        self.hidden = hidden
        self.epochs = epochs
        self.lr = lr
        self.seed = seed

    def fit(self, X, y):
        X = as_matrix(X)
        self.classes_, codes = encode(y)
        if X.shape[0] < 2:
            raise TooFewSamples("need at least two training samples")
        self.pca_ = PCA(self.var_keep).fit(X)
        Y = self.pca_.transform(X)
        T = np.eye(self.classes_.size)[codes]
        rng = np.random.default_rng(self.seed)
        self.params_ = init_params(Y.shape[1], self.hidden, self.classes_.size, rng)
        self.loss_curve_ = []
        for _ in range(self.epochs):
            loss, grads = loss_and_grad(self.params_, Y, T)
            self.loss_curve_.append(loss)
            for name, g in grads.items():
                self.params_[name] -= self.lr * g
        return self

    def predict_proba(self, X):
        _, logits = forward(self.params_, self.pca_.transform(X))
        return softmax(logits, axis=1)

    def predict(self, X):
        return self.classes_[argmax_first(self.predict_proba(X))]


def pca_nn_fit(train, var_keep=0.95, hidden=5, epochs=500, lr=0.5, seed=0) -> PcaNeuralNet:
    X, y = train
    return PcaNeuralNet(var_keep, hidden, epochs, lr, seed).fit(X, y)


def pca_nn_predict(model: PcaNeuralNet, X):
    return model.predict(X)

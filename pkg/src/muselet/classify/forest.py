"""Random forest of fully grown Gini CART trees."""

import math

import numpy as np

from muselet.classify._labels import argmax_first, as_matrix, encode

LEAF = -1


class GiniTree:
    """Binary classification tree grown until every leaf is pure or
    unsplittable. At each node ``max_features`` candidate features are drawn
    without replacement; if none of them separates the node, the remaining
    features are tried in random order."""

    def __init__(self, max_features: int, n_classes: int, rng: np.random.Generator):
        self.max_features = max_features
        self.n_classes = n_classes
        self.rng = rng

    def fit(self, X: np.ndarray, codes: np.ndarray):
        self.feature, self.threshold, self.left, self.right, self.value = [], [], [], [], []
        onehot = np.eye(self.n_classes, dtype=np.int64)[codes]
        root = self._new_node(np.bincount(codes, minlength=self.n_classes))
        stack = [(root, np.arange(codes.size))]
        while stack:
            node, idx = stack.pop()
            if np.count_nonzero(self.value[node]) <= 1:
                continue
            split = self._best_split(X, onehot, idx)
            if split is None:
                continue
            f, thr = split
            go_left = X[idx, f] <= thr
            li, ri = idx[go_left], idx[~go_left]
            self.feature[node], self.threshold[node] = f, thr
            self.left[node] = self._new_node(onehot[li].sum(axis=0))
            self.right[node] = self._new_node(onehot[ri].sum(axis=0))
            stack.append((self.right[node], ri))
            stack.append((self.left[node], li))
        self.feature = np.array(self.feature)
        self.threshold = np.array(self.threshold)
        self.left = np.array(self.left)
        self.right = np.array(self.right)
        self.value = np.array(self.value)
        return self

    def _new_node(self, counts) -> int:
        self.feature.append(LEAF)
        self.threshold.append(0.0)
        self.left.append(LEAF)
        self.right.append(LEAF)
        self.value.append(np.asarray(counts))
        return len(self.value) - 1

    def _best_split(self, X, onehot, idx):
        p = X.shape[1]
        perm = self.rng.permutation(p)
        first, rest = perm[:self.max_features], perm[self.max_features:]
        split = self._search(X, onehot, idx, first)
        if split is None and rest.size:
            split = self._search(X, onehot, idx, rest)
        return split

    @staticmethod
    def _search(X, onehot, idx, feats):
        """Split minimising weighted Gini impurity over ``feats``.

        Minimising n_L*G_L + n_R*G_R is the same as maximising
        sum_c n_Lc^2/n_L + sum_c n_Rc^2/n_R.
        """
        m = idx.size
        xs = X[np.ix_(idx, feats)]
        order = np.argsort(xs, axis=0, kind="stable")
        xs = np.take_along_axis(xs, order, axis=0)
        y_sorted = onehot[idx][order]                      # m x d x g
        left = np.cumsum(y_sorted, axis=0)[:-1]            # split after row i
        total = left[-1] + y_sorted[-1]
        right = total - left
        n_left = np.arange(1, m)[:, None]
        score = (left ** 2).sum(axis=2) / n_left + (right ** 2).sum(axis=2) / (m - n_left)
        valid = xs[:-1] < xs[1:]
        if not valid.any():
            return None
        score = np.where(valid, score, -np.inf)
        # column-major flat order: best feature in candidate order, then position
        flat = int(np.argmax(score.T))
        j, i = divmod(flat, m - 1)
        lo, hi = xs[i, j], xs[i + 1, j]
        thr = 0.5 * (lo + hi)
        if not lo <= thr < hi:
            thr = lo
        return int(feats[j]), float(thr)

    def apply(self, X: np.ndarray) -> np.ndarray:
        node = np.zeros(X.shape[0], dtype=int)
        while True:
            internal = self.feature[node] != LEAF
            if not internal.any():
                return node
            rows = np.flatnonzero(internal)
            cur = node[rows]
            go_left = X[rows, self.feature[cur]] <= self.threshold[cur]
            node[rows] = np.where(go_left, self.left[cur], self.right[cur])

    def predict_codes(self, X: np.ndarray) -> np.ndarray:
        return argmax_first(self.value[self.apply(X)])

    @property
    def n_nodes(self) -> int:
        return len(self.value)


class RandomForest:
    """Bagged Gini trees with per-node feature sampling.

    ``max_features`` defaults to floor(sqrt(p)). Prediction is the mode of
    the tree votes, ties to the smallest class index.
    """

    def __init__(self, n_trees: int = 500, max_features=None, bootstrap: bool = True, seed=0):
        if n_trees < 1:
            raise ValueError("n_trees must be >= 1")
        self.n_trees = n_trees
        self.max_features = max_features
        self.bootstrap = bootstrap
        self.seed = seed

    def fit(self, X, y):
        X = as_matrix(X)
        self.classes_, codes = encode(y)
        n, p = X.shape
        d = self.max_features if self.max_features is not None else max(1, math.isqrt(p))
        if not 1 <= d <= p:
            raise ValueError(f"max_features must lie in [1, {p}]")
        g = self.classes_.size
        rng = np.random.default_rng(self.seed)
        self.trees_ = []
        for _ in range(self.n_trees):
            rows = rng.integers(0, n, size=n) if self.bootstrap else np.arange(n)
            tree = GiniTree(d, g, rng).fit(X[rows], codes[rows])
            self.trees_.append(tree)
        return self

    def predict(self, X):
        X = as_matrix(X)
        g = self.classes_.size
        votes = np.zeros((X.shape[0], g), dtype=np.int64)
        rows = np.arange(X.shape[0])
        for tree in self.trees_:
            np.add.at(votes, (rows, tree.predict_codes(X)), 1)
        return self.classes_[argmax_first(votes)]


def rf_fit(train, B: int = 500, d=None, seed=0, bootstrap: bool = True) -> RandomForest:
    X, y = train
    return RandomForest(n_trees=B, max_features=d, bootstrap=bootstrap, seed=seed).fit(X, y)


def rf_predict(forest: RandomForest, X):
    return forest.predict(X)

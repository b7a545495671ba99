"""Repeated k-fold cross-validation of the classifiers."""

from __future__ import annotations

import json
import logging
import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np

from muselet.classify._labels import as_matrix
from muselet.errors import ClassAbsentFromTrainingFold, TooFewClasses, TooFewSamples

logger = logging.getLogger(__name__)

TOPIC_PROPORTIONS = "topic_proportions"
RAW_COUNTS = "raw_counts"


@dataclass(frozen=True)
class LabeledDataset:
    X: np.ndarray
    y: np.ndarray
    feature_kind: str = TOPIC_PROPORTIONS
    names: tuple = ()

    def __post_init__(self):
        X = as_matrix(self.X)
        y = np.asarray(self.y).astype(str)
        if X.shape[0] != y.size:
            raise ValueError(f"{X.shape[0]} feature rows but {y.size} labels")
        if self.feature_kind not in (TOPIC_PROPORTIONS, RAW_COUNTS):
            raise ValueError(f"unknown feature kind {self.feature_kind!r}")
        if np.unique(y).size < 2:
            raise TooFewClasses("cross-validation needs at least two classes")
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "y", y)

    @property
    def classes(self) -> np.ndarray:
        return np.unique(self.y)

    @property
    def n(self) -> int:
        return self.y.size


@dataclass
class FoldResult:
    repeat: int
    fold: int
    classifier: str
    test_index: np.ndarray
    predictions: np.ndarray
    confusion: np.ndarray

    @property
    def error(self) -> float:
        total = self.confusion.sum()
        return 1.0 - np.trace(self.confusion) / total


@dataclass
class SkippedFold:
    repeat: int
    fold: int
    reason: str


@dataclass
class CvReport:
    classes: tuple
    classifiers: tuple
    folds: int
    repeats: int
    results: list = field(default_factory=list)
    skipped: list = field(default_factory=list)

    def errors(self, classifier: str) -> np.ndarray:
        return np.array([r.error for r in self.results if r.classifier == classifier])

    def summary(self) -> list[dict]:
        out = []
        for name in self.classifiers:
            errs = self.errors(name)
            var = float(errs.var(ddof=1)) if errs.size > 1 else float("nan")
            out.append({
                "classifier": name,
                "n_folds": int(errs.size),
                "mean": float(errs.mean()) if errs.size else float("nan"),
                "sd": math.sqrt(var) if math.isfinite(var) else float("nan"),
                "var": var,
            })
        return out

    def best(self) -> str:
        """Classifier with the lowest mean error; ties keep the listed order."""
        rows = [r for r in self.summary() if math.isfinite(r["mean"])]
        return min(rows, key=lambda r: r["mean"])["classifier"]

    def long_csv(self) -> str:
        lines = ["repeat,fold,classifier,error"]
        for r in self.results:
            lines.append(f"{r.repeat},{r.fold},{r.classifier},{r.error!r}")
        return "\n".join(lines) + "\n"

    def summary_csv(self) -> str:
        lines = ["classifier,n_folds,mean,sd,var"]
        for row in self.summary():
            cells = [repr(row[k]) if math.isfinite(row[k]) else "" for k in ("mean", "sd", "var")]
            lines.append(",".join([row["classifier"], str(row["n_folds"]), *cells]))
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        def finite(v):
            return v if math.isfinite(v) else None

        doc = {
            "classes": list(self.classes),
            "classifiers": list(self.classifiers),
            "folds": self.folds,
            "repeats": self.repeats,
            "summary": [{k: finite(v) if isinstance(v, float) else v for k, v in row.items()}
                        for row in self.summary()],
            "results": [
                {
                    "repeat": r.repeat,
                    "fold": r.fold,
                    "classifier": r.classifier,
                    "error": r.error,
                    "test_index": r.test_index.tolist(),
                    "predictions": r.predictions.tolist(),
                    "confusion": r.confusion.tolist(),
                }
                for r in self.results
            ],
            "skipped": [{"repeat": s.repeat, "fold": s.fold, "reason": s.reason} for s in self.skipped],
        }
        return json.dumps(doc, indent=1) + "\n"


def stratified_folds(y: np.ndarray, folds: int, rng: np.random.Generator) -> list[np.ndarray]:
    """Deal each class's shuffled members round-robin over the folds.

    The dealing position carries over from one class to the next, so fold
    sizes differ by at most one.
    """
    assignment = np.empty(y.size, dtype=int)
    pos = 0
    for label in np.unique(y):
        members = rng.permutation(np.flatnonzero(y == label))
        assignment[members] = (pos + np.arange(members.size)) % folds
        pos = (pos + members.size) % folds
    return [np.flatnonzero(assignment == f) for f in range(folds)]


def sequential_folds(n: int, folds: int, rng: np.random.Generator) -> list[np.ndarray]:
    """Contiguous blocks of a seeded permutation."""
    order = rng.permutation(n)
    return [np.sort(block) for block in np.array_split(order, folds)]


def _cell_seed(seed: int, repeat: int, fold: int, index: int) -> int:
    ss = np.random.SeedSequence([seed, repeat, fold, index])
    return int(ss.generate_state(1, dtype=np.uint32)[0])


def cross_validate(ds: LabeledDataset, classifiers: Mapping[str, Callable], folds: int = 10,
                   repeats: int = 3, seed: int = 0, stratified: bool = True) -> CvReport:
    """Estimate each classifier's 0-1 error by ``repeats`` x ``folds``-fold CV.

    ``classifiers`` maps a name to a factory ``f(seed) -> estimator`` whose
    result has ``fit(X, y)`` and ``predict(X)``. A fold whose training part
    lacks one of the classes is skipped with a warning and listed in
    ``report.skipped``.
    """
    if folds < 2:
        raise ValueError("folds must be >= 2")
    if repeats < 1:
        raise ValueError("repeats must be >= 1")
    if ds.n < folds:
        raise TooFewSamples(f"{ds.n} samples cannot fill {folds} folds")
    classes = ds.classes
    g = classes.size
    codes = np.searchsorted(classes, ds.y)
    names = tuple(classifiers)
    report = CvReport(tuple(classes.tolist()), names, folds, repeats)
    rng = np.random.default_rng(seed)

    for rep in range(repeats):
        parts = stratified_folds(ds.y, folds, rng) if stratified else sequential_folds(ds.n, folds, rng)
        for f, test in enumerate(parts):
            train = np.setdiff1d(np.arange(ds.n), test)
            missing = np.setdiff1d(classes, ds.y[train])
            if missing.size:
                exc = ClassAbsentFromTrainingFold(
                    f"repeat {rep} fold {f}: training part lacks {', '.join(missing)}")
                warnings.warn(str(exc), RuntimeWarning, stacklevel=2)
                report.skipped.append(SkippedFold(rep, f, str(exc)))
                continue
            for c, name in enumerate(names):
                model = classifiers[name](_cell_seed(seed, rep, f, c))
                model.fit(ds.X[train], ds.y[train])
                pred = np.asarray(model.predict(ds.X[test])).astype(str)
                confusion = np.zeros((g, g), dtype=np.int64)
                np.add.at(confusion, (codes[test], np.searchsorted(classes, pred)), 1)
                report.results.append(FoldResult(rep, f, name, test, pred, confusion))
            logger.debug("repeat %d fold %d done", rep, f)
    return report


def random_label_control(ds: LabeledDataset, seed: int = 0) -> LabeledDataset:
    """The same features with labels shuffled by a seeded permutation."""
    rng = np.random.default_rng(seed)
    return LabeledDataset(ds.X, rng.permutation(ds.y), ds.feature_kind, ds.names)


"""Classifiers on topic-proportion features and their cross-validation."""

from muselet.classify.cv import (
    CvReport,
    FoldResult,
    LabeledDataset,
    cross_validate,
    random_label_control,
    sequential_folds,
    stratified_folds,
)
from muselet.classify.forest import RandomForest, rf_fit, rf_predict
from muselet.classify.knn import KNearestNeighbors, knn_fit_predict
from muselet.classify.nnet import PCA, PcaNeuralNet, pca_nn_fit, pca_nn_predict
from muselet.classify.pda import PenalizedDiscriminant, pda_fit, pda_predict
from muselet.classify.svm import LinearSVM, svm_fit, svm_predict


_CLASSES = {
    "knn": KNearestNeighbors,
    "svm": LinearSVM,
    "rf": RandomForest,
    "pca_nn": PcaNeuralNet,
    "pda": PenalizedDiscriminant,
}
_DEFAULTS = {
    "knn": {"k": 5},
    "svm": {"C": 1.0, "tol": 1e-3},
    "rf": {"n_trees": 500},
    "pca_nn": {"var_keep": 0.95, "hidden": 5, "epochs": 500, "lr": 0.5},
    "pda": {"omega_scale": 1.0},
}


def _factory(cls, kwargs):
    return lambda seed: cls(seed=seed, **kwargs)


# name -> factory(seed) with the default hyper-parameters
CLASSIFIERS = {name: _factory(cls, _DEFAULTS[name]) for name, cls in _CLASSES.items()}


def classifier_set(names=None, **overrides) -> dict:
    """Factories for ``names`` (all by default, in registry order).

    ``overrides`` maps a classifier name to keyword arguments replacing its
    defaults, e.g. ``classifier_set(["rf"], rf={"n_trees": 50})``.
    """
    names = list(CLASSIFIERS) if names is None else list(names)
    unknown = [n for n in names if n not in CLASSIFIERS]
    if unknown:
        raise KeyError(f"unknown classifier(s): {', '.join(unknown)}")
    return {n: _factory(_CLASSES[n], {**_DEFAULTS[n], **overrides.get(n, {})}) for n in names}


__all__ = [
    "CLASSIFIERS",
    "PCA",
    "CvReport",
    "FoldResult",
    "KNearestNeighbors",
    "LabeledDataset",
    "LinearSVM",
    "PcaNeuralNet",
    "PenalizedDiscriminant",
    "RandomForest",
    "classifier_set",
    "cross_validate",
    "knn_fit_predict",
    "pca_nn_fit",
    "pca_nn_predict",
    "pda_fit",
    "pda_predict",
    "random_label_control",
    "rf_fit",
    "rf_predict",
    "sequential_folds",
    "stratified_folds",
    "svm_fit",
    "svm_predict",
]

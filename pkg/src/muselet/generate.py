"""Synthetic corpora drawn from the LDA generative process.

These supply ground truth (topics, proportions, assignments) for recovery
and classification tests; they are statistical stand-ins, not music.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from muselet.corpus import DocumentTermMatrix, Vocabulary
from muselet.errors import InvalidWeights
from muselet.represent import NOTE_BASED, N_PITCH_CLASSES, PITCH_CLASS_NAMES, Document


@dataclass(frozen=True)
class GenerativeSpec:
    K: int
    V: int
    M: int
    alpha: float
    eta: Union[float, np.ndarray]
    doc_length: Union[int, Sequence[int]]
    seed: int = 0

    def __post_init__(self):
        if min(self.K, self.V, self.M) < 1:
            raise ValueError("K, V and M must be >= 1")
        if self.alpha <= 0:
            raise ValueError("alpha must be positive")
        if np.ndim(self.eta) == 0:
            if self.eta <= 0:
                raise ValueError("eta must be positive")
        else:
            beta = np.asarray(self.eta, dtype=float)
            if beta.shape != (self.K, self.V):
                raise ValueError(f"planted topics must be {self.K}x{self.V}")
            if (beta < 0).any() or not np.allclose(beta.sum(axis=1), 1.0):
                raise ValueError("planted topic rows must be probability vectors")
        lengths = np.broadcast_to(np.asarray(self.doc_length), (self.M,))
        if (lengths < 1).any():
            raise ValueError("document lengths must be >= 1")

    def lengths(self) -> np.ndarray:
        return np.broadcast_to(np.asarray(self.doc_length, dtype=int), (self.M,)).copy()


@dataclass
class Planted:
    theta: np.ndarray
    beta: np.ndarray
    z: list


def sample_dirichlet(rng: np.random.Generator, concentration, size: int = 1) -> np.ndarray:
    """Dirichlet draws as normalised independent Gamma variates.

    For shape < 1 the Gamma variate is drawn in log space as
    ``log G(a+1) + log(U)/a`` so tiny concentrations do not underflow to an
    all-zero vector.
    """
    a = np.asarray(concentration, dtype=float)
    small = a < 1.0
    n_small = int(small.sum())
    log_g = np.empty((size, a.size))
    if n_small < a.size:
        log_g[:, ~small] = np.log(rng.gamma(a[~small], size=(size, a.size - n_small)))
    if n_small:
        boosted = rng.gamma(a[small] + 1.0, size=(size, n_small))
        u = rng.random((size, n_small))
        log_g[:, small] = np.log(boosted) + np.log(u) / a[small]
    log_g -= log_g.max(axis=1, keepdims=True)
    w = np.exp(log_g)
    return w / w.sum(axis=1, keepdims=True)


def term_names(V: int) -> tuple[str, ...]:
    width = len(str(V - 1))
    return tuple(f"t{j:0{width}d}" for j in range(V))


def sample_corpus(spec: GenerativeSpec, labels: Sequence[str] = None):
    """Draw a corpus and its latent ground truth.

    Returns ``(dtm, planted)``; topic indices in ``planted.z`` are 0-based.
    Each document uses its own child seed so the draw for document ``d`` is
    independent of how many documents precede it.
    """
    root = np.random.SeedSequence(spec.seed)
    topic_seq, *doc_seqs = root.spawn(spec.M + 1)

    if np.ndim(spec.eta) == 0:
        rng = np.random.default_rng(topic_seq)
        beta = sample_dirichlet(rng, np.full(spec.V, float(spec.eta)), size=spec.K)
    else:
        beta = np.array(spec.eta, dtype=float)
        beta /= beta.sum(axis=1, keepdims=True)

    lengths = spec.lengths()
    theta = np.empty((spec.M, spec.K))
    counts = np.zeros((spec.M, spec.V), dtype=np.int64)
    z_all = []
    for d in range(spec.M):
        rng = np.random.default_rng(doc_seqs[d])
        theta[d] = sample_dirichlet(rng, np.full(spec.K, spec.alpha))[0]
        z = rng.choice(spec.K, size=lengths[d], p=theta[d])
        words = np.empty(lengths[d], dtype=np.int64)
        for k in range(spec.K):
            sel = np.flatnonzero(z == k)
            if sel.size:
                words[sel] = rng.choice(spec.V, size=sel.size, p=beta[k])
        np.add.at(counts[d], words, 1)
        z_all.append(z)

    width = len(str(spec.M))
    names = tuple(f"doc{d + 1:0{width}d}" for d in range(spec.M))
    if labels is None:
        labels = ("synthetic",) * spec.M
    dtm = DocumentTermMatrix(counts, names, tuple(labels), Vocabulary(term_names(spec.V)))
    return dtm, Planted(theta=theta, beta=beta, z=z_all)


def disjoint_topics(K: int, V: int) -> np.ndarray:
    """K uniform topics over consecutive, non-overlapping blocks of terms."""
    if V < K:
        raise ValueError("need at least one term per topic")
    beta = np.zeros((K, V))
    for k, block in enumerate(np.array_split(np.arange(V), K)):
        beta[k, block] = 1.0 / block.size
    return beta


def planted_genre_corpus(classes, songs_per_class: int, measures_per_song: int,
                         seed: int = 0) -> list[Document]:
    """Note-based documents whose measures activate pitch classes drawn from
    a per-class weight vector (1 to 4 active classes per measure)."""
    checked = []
    for label, weights in classes:
        w = np.asarray(weights, dtype=float)
        if w.shape != (N_PITCH_CLASSES,) or (w < 0).any() or not np.isfinite(w).all() \
                or w.sum() == 0:
            raise InvalidWeights(f"class {label!r}: need 12 non-negative weights, not all zero")
        checked.append((label, w / w.sum()))

    rng = np.random.default_rng(seed)
    docs = []
    for label, p in checked:
        support = int((p > 0).sum())
        for s in range(songs_per_class):
            tokens = []
            for _ in range(measures_per_song):
                n_active = min(int(rng.integers(1, 5)), support)
                active = rng.choice(N_PITCH_CLASSES, size=n_active, replace=False, p=p)
                bits = ["0"] * N_PITCH_CLASSES
                for pc in active:
                    bits[pc] = "1"
                tokens.append("".join(bits))
            docs.append(Document(name=f"{label} {s + 1}", label=label, tokens=tuple(tokens),
                                 scheme=NOTE_BASED))
    return docs


def pitch_class_weights(names: Sequence[str]) -> np.ndarray:
    """Uniform weight vector over the named pitch classes (e.g. "C", "F#")."""
    w = np.zeros(N_PITCH_CLASSES)
    for n in names:
        w[PITCH_CLASS_NAMES.index(n)] = 1.0
    return w

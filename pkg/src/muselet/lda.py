"""Smoothed latent Dirichlet allocation fitted by variational EM.

The model places a symmetric Dirichlet(alpha) prior on each document's topic
proportions and a symmetric Dirichlet(eta) prior on each topic's term
distribution. Inference keeps a fully factorised variational posterior

    q(beta, z, theta) = prod_k Dir(beta_k | lambda_k)
                        prod_d Dir(theta_d | gamma_d) prod_n Cat(z_dn | phi_dn)

and maximises the evidence lower bound by coordinate ascent. Tokens of the
same term inside one document share a single responsibility row, so all
per-token work runs over the non-zero cells of the document-term matrix.
"""

from __future__ import annotations

import json
import logging
import math
import os
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np
from scipy import sparse
from scipy.special import digamma, gammaln, polygamma, xlogy

from muselet.corpus import DocumentTermMatrix, Vocabulary
from muselet.errors import EmptyCorpus, NonFiniteElbo, TopicOutOfRange

logger = logging.getLogger(__name__)

PARAM_BOUNDS = (1e-4, 1e3)
METRIC_FLOOR = 1e-12
MODEL_FORMAT = "muselet-lda/1"
GRIFFITHS_LABEL = "griffiths2004 (VEM proxy)"
METRIC_COLUMNS = ("topics", GRIFFITHS_LABEL, "caojuan2009", "arun2010", "deveaud2014")


@dataclass(frozen=True)
class LdaConfig:
    K: int = 10
    alpha0: float = 0.5
    eta0: float = 0.1
    estimate_alpha: bool = True
    estimate_eta: bool = False
    max_outer: int = 100
    max_inner: int = 50
    tol_elbo: float = 1e-6
    tol_gamma: float = 1e-4
    seed: int = 0
    n_init: int = 1
    init_scale: float = 0.01

    def __post_init__(self):
        if self.K < 1:
            raise ValueError("K must be >= 1")
        if self.alpha0 <= 0 or self.eta0 <= 0:
            raise ValueError("alpha0 and eta0 must be positive")
        if self.max_outer < 1 or self.max_inner < 1:
            raise ValueError("iteration caps must be >= 1")
        if self.tol_elbo <= 0 or self.tol_gamma <= 0:
            raise ValueError("tolerances must be positive")
        if self.n_init < 1 or self.init_scale <= 0:
            raise ValueError("n_init must be >= 1 and init_scale positive")


class _Triplets:
    """Non-zero cells of a document-term matrix, row-major."""

    def __init__(self, counts: np.ndarray):
        counts = np.asarray(counts)
        self.n_docs, self.n_terms = counts.shape
        self.doc, self.term = np.nonzero(counts)
        self.count = counts[self.doc, self.term].astype(np.float64)
        nnz = self.count.size
        cols = np.arange(nnz)
        # row sums of these products give per-document / per-term totals in
        # a fixed order, independent of how documents are batched
        self.doc_sum = sparse.csr_matrix((self.count, (self.doc, cols)), shape=(self.n_docs, nnz))
        self.term_sum = sparse.csr_matrix((self.count, (self.term, cols)), shape=(self.n_terms, nnz))
        self.doc_lengths = counts.sum(axis=1).astype(np.float64)
        self.doc_start = np.searchsorted(self.doc, np.arange(self.n_docs + 1))

    def block(self, lo: int, hi: int) -> "_Triplets":
        out = object.__new__(_Triplets)
        a, b = self.doc_start[lo], self.doc_start[hi]
        out.n_docs, out.n_terms = hi - lo, self.n_terms
        out.doc = self.doc[a:b] - lo
        out.term = self.term[a:b]
        out.count = self.count[a:b]
        out.doc_sum = self.doc_sum[lo:hi, a:b]
        out.doc_lengths = self.doc_lengths[lo:hi]
        out.doc_start = self.doc_start[lo:hi + 1] - a
        return out


@dataclass
class TopicAssignmentState:
    """Token-level topic responsibilities.

    ``phi[c]`` is the responsibility row shared by the ``count[c]`` tokens
    of term ``term[c]`` in document ``doc[c]``.
    """

    doc: np.ndarray
    term: np.ndarray
    count: np.ndarray
    phi: np.ndarray

    def for_document(self, d: int) -> np.ndarray:
        """N_d x K responsibility matrix, tokens grouped in vocabulary order."""
        sel = self.doc == d
        return np.repeat(self.phi[sel], self.count[sel].astype(int), axis=0)


@dataclass
class LdaModel:
    lam: np.ndarray
    alpha: float
    eta: float
    gamma: np.ndarray
    elbo_trace: list = field(default_factory=list)
    vocab: Optional[Vocabulary] = None
    doc_names: tuple = ()
    config: LdaConfig = field(default_factory=LdaConfig)
    assignments: Optional[TopicAssignmentState] = None

    @property
    def K(self) -> int:
        return self.lam.shape[0]

    @property
    def V(self) -> int:
        return self.lam.shape[1]

    @property
    def beta_hat(self) -> np.ndarray:
        return self.lam / self.lam.sum(axis=1, keepdims=True)

    def expected_log_beta(self) -> np.ndarray:
        return digamma(self.lam) - digamma(self.lam.sum(axis=1, keepdims=True))


# ---------------------------------------------------------------------------
# inference


def _worker_count() -> int:
    raw = os.environ.get("MUSELET_THREADS", "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _expected_log_dirichlet(params: np.ndarray) -> np.ndarray:
    return digamma(params) - digamma(params.sum(axis=1, keepdims=True))


def _e_step_block(tr: _Triplets, log_topics: np.ndarray, alpha: float,
                  gamma: np.ndarray, phi: np.ndarray, max_inner: int, tol: float) -> None:
    """Coordinate ascent on (phi, gamma) for one batch of documents, in place.

    Each document stops updating once its mean absolute gamma change drops
    below ``tol``, so its trajectory does not depend on its batch mates.
    """
    if tr.doc.size == 0:
        gamma[:] = alpha
        return
    active = np.ones(tr.n_docs, dtype=bool)
    word_part = log_topics[:, tr.term].T
    for _ in range(max_inner):
        elog_theta = _expected_log_dirichlet(gamma)
        tok = active[tr.doc]
        log_phi = elog_theta[tr.doc[tok]] + word_part[tok]
        log_phi -= log_phi.max(axis=1, keepdims=True)
        new_phi = np.exp(log_phi)
        new_phi /= new_phi.sum(axis=1, keepdims=True)
        phi[tok] = new_phi
        new_gamma = alpha + tr.doc_sum @ phi
        change = np.abs(new_gamma - gamma).mean(axis=1)
        gamma[active] = new_gamma[active]
        active &= change >= tol
        if not active.any():
            break


def _e_step(tr: _Triplets, log_topics, alpha, gamma, phi, max_inner, tol, workers=None):
    workers = workers or _worker_count()
    if workers == 1 or tr.n_docs < 2 * workers:
        _e_step_block(tr, log_topics, alpha, gamma, phi, max_inner, tol)
        return
    edges = np.linspace(0, tr.n_docs, workers + 1).astype(int)
    jobs = []
    for lo, hi in zip(edges[:-1], edges[1:]):
        a, b = tr.doc_start[lo], tr.doc_start[hi]
        jobs.append((tr.block(lo, hi), gamma[lo:hi], phi[a:b]))

    def run(job):
        block, g, p = job
        _e_step_block(block, log_topics, alpha, g, p, max_inner, tol)

    # gamma/phi slices are views, so blocks write straight into the arrays
    with ThreadPoolExecutor(max_workers=workers) as pool:
        list(pool.map(run, jobs))


def _doc_bounds(tr: _Triplets, log_topics, alpha, gamma, phi) -> np.ndarray:
    """Per-document bound terms that involve theta and z."""
    K = gamma.shape[1]
    elog_theta = _expected_log_dirichlet(gamma)
    per_cell = (phi * (elog_theta[tr.doc] + log_topics[:, tr.term].T) - xlogy(phi, phi)).sum(axis=1)
    out = np.asarray(tr.doc_sum @ per_cell).ravel()
    out += gammaln(K * alpha) - K * gammaln(alpha) + (alpha - 1) * elog_theta.sum(axis=1)
    out -= (gammaln(gamma.sum(axis=1)) - gammaln(gamma).sum(axis=1)
            + ((gamma - 1) * elog_theta).sum(axis=1))
    return out


def _topic_bound(lam: np.ndarray, eta: float) -> float:
    K, V = lam.shape
    elog_beta = _expected_log_dirichlet(lam)
    val = K * (gammaln(V * eta) - V * gammaln(eta)) + (eta - 1) * elog_beta.sum()
    val -= (gammaln(lam.sum(axis=1)).sum() - gammaln(lam).sum() + ((lam - 1) * elog_beta).sum())
    return float(val)


def _full_elbo(tr, lam, alpha, eta, gamma, phi) -> float:
    elog_beta = _expected_log_dirichlet(lam)
    value = float(_doc_bounds(tr, elog_beta, alpha, gamma, phi).sum()) + _topic_bound(lam, eta)
    if not math.isfinite(value):
        raise NonFiniteElbo(f"lower bound evaluated to {value}")
    return value


def _symmetric_dirichlet_objective(a, groups, dim, suff):
    return groups * (gammaln(dim * a) - dim * gammaln(a)) + (a - 1) * suff


def _maximize_symmetric_dirichlet(current: float, groups: int, dim: int, suff: float,
                                  bounds=PARAM_BOUNDS, max_iter: int = 100) -> float:
    """Maximise ``groups*(lnG(dim*a) - dim*lnG(a)) + (a-1)*suff`` over ``a``.

    The objective is concave, so a Newton iteration inside a shrinking
    sign-change bracket (bisection when Newton leaves it) finds the optimum.
    """
    if dim < 2 or groups == 0:
        return current

    def grad(a):
        return groups * dim * (digamma(dim * a) - digamma(a)) + suff

    def hess(a):
        return groups * dim * (dim * polygamma(1, dim * a) - polygamma(1, a))

    lo, hi = bounds
    if grad(lo) <= 0:
        best = lo
    elif grad(hi) >= 0:
        best = hi
    else:
        a = min(max(current, lo), hi)
        for _ in range(max_iter):
            g = grad(a)
            if g > 0:
                lo = a
            else:
                hi = a
            step = g / hess(a)
            cand = a - step
            if not (lo < cand < hi):
                cand = 0.5 * (lo + hi)
            if abs(cand - a) <= 1e-12 * a:
                a = cand
                break
            a = cand
        best = a

    f = _symmetric_dirichlet_objective
    if f(best, groups, dim, suff) < f(current, groups, dim, suff):
        return current
    return float(best)


def initial_lambda(config: LdaConfig, V: int, total_tokens: float, restart: int = 0) -> np.ndarray:
    """eta0 plus seeded uniform noise of scale ``init_scale * N / (K V)``.

    The literal start lambda = eta is a symmetric fixed point; the noise
    breaks the tie between topics.
    """
    rng = np.random.default_rng([config.seed, restart])
    eps = config.init_scale * total_tokens / (config.K * V)
    return config.eta0 + eps * rng.random((config.K, V))


def fit(dtm: DocumentTermMatrix, config: LdaConfig, init_lambda: Optional[np.ndarray] = None,
        callback: Optional[Callable[[int, LdaModel], None]] = None) -> LdaModel:
    """Fit smoothed LDA to ``dtm`` by variational EM.

    With ``config.n_init > 1`` the fit is restarted from independently seeded
    topics and the run with the highest final bound is kept. An explicit
    ``init_lambda`` gives a single run from that start.

    ``callback(iteration, model)`` is invoked after every outer iteration with
    a snapshot of the current state.
    """
    counts = np.asarray(dtm.counts)
    M, V = counts.shape
    if M == 0 or V == 0 or counts.sum() == 0:
        raise EmptyCorpus("cannot fit a topic model to an empty corpus")
    K = config.K
    if K > V:
        warnings.warn(f"K={K} exceeds vocabulary size V={V}", RuntimeWarning, stacklevel=2)

    tr = _Triplets(counts)
    if init_lambda is not None:
        lam = np.array(init_lambda, dtype=np.float64)
        if lam.shape != (K, V) or not (lam > 0).all():
            raise ValueError(f"init_lambda must be a positive {K}x{V} matrix")
        return _fit_from(dtm, config, tr, lam, callback)

    best = None
    for restart in range(config.n_init):
        lam = initial_lambda(config, V, tr.count.sum(), restart)
        model = _fit_from(dtm, config, tr, lam, callback)
        if best is None or model.elbo_trace[-1] > best.elbo_trace[-1]:
            best = model
    return best


def _fit_from(dtm, config: LdaConfig, tr: _Triplets, lam: np.ndarray, callback) -> LdaModel:
    M, K = tr.n_docs, config.K
    V = tr.n_terms
    alpha, eta = float(config.alpha0), float(config.eta0)
    gamma = alpha + np.repeat(tr.doc_lengths[:, None] / K, K, axis=1)
    phi = np.full((tr.count.size, K), 1.0 / K)

    trace = []
    for it in range(1, config.max_outer + 1):
        # E-step: documents against a frozen snapshot of the topics
        elog_beta = _expected_log_dirichlet(lam)
        _e_step(tr, elog_beta, alpha, gamma, phi, config.max_inner, config.tol_gamma)
        lam = eta + np.asarray((tr.term_sum @ phi).T)

        # M-step
        if config.estimate_alpha:
            suff = _expected_log_dirichlet(gamma).sum()
            alpha = _maximize_symmetric_dirichlet(alpha, M, K, suff)
        if config.estimate_eta:
            suff = _expected_log_dirichlet(lam).sum()
            eta = _maximize_symmetric_dirichlet(eta, K, V, suff)
            # lambda's optimum moves with eta; refresh it so the bound is
            # evaluated at a coordinate-wise optimum
            lam = eta + np.asarray((tr.term_sum @ phi).T)

        value = _full_elbo(tr, lam, alpha, eta, gamma, phi)
        trace.append(value)
        logger.debug("VEM iteration %d: elbo=%.6f alpha=%.5g eta=%.5g", it, value, alpha, eta)

        model = _assemble(dtm, config, tr, lam, alpha, eta, gamma, phi, trace)
        if callback is not None:
            callback(it, _snapshot(model))
        if len(trace) > 1 and abs(trace[-1] - trace[-2]) <= config.tol_elbo * abs(trace[-2]):
            break
    return model


def _assemble(dtm, config, tr, lam, alpha, eta, gamma, phi, trace) -> LdaModel:
    return LdaModel(
        lam=lam,
        alpha=alpha,
        eta=eta,
        gamma=gamma,
        elbo_trace=trace,
        vocab=dtm.vocab,
        doc_names=tuple(dtm.doc_names),
        config=config,
        assignments=TopicAssignmentState(tr.doc, tr.term, tr.count, phi),
    )


def _snapshot(model: LdaModel) -> LdaModel:
    a = model.assignments
    return LdaModel(
        lam=model.lam.copy(),
        alpha=model.alpha,
        eta=model.eta,
        gamma=model.gamma.copy(),
        elbo_trace=list(model.elbo_trace),
        vocab=model.vocab,
        doc_names=model.doc_names,
        config=model.config,
        assignments=TopicAssignmentState(a.doc, a.term, a.count, a.phi.copy()),
    )


def _check_vocab(model: LdaModel, dtm: DocumentTermMatrix) -> None:
    if dtm.n_terms != model.V:
        raise ValueError(f"corpus has {dtm.n_terms} terms, model has {model.V}")
    if model.vocab is not None and dtm.vocab != model.vocab:
        raise ValueError("corpus vocabulary differs from the model's")


def elbo(model: LdaModel, dtm: DocumentTermMatrix) -> float:
    """Evidence lower bound of the model's variational state on ``dtm``."""
    _check_vocab(model, dtm)
    tr = _Triplets(dtm.counts)
    if model.gamma.shape[0] != dtm.n_docs:
        raise ValueError("model state was fitted on a different number of documents")
    if model.assignments is not None and model.assignments.phi.shape[0] == tr.count.size:
        phi = model.assignments.phi
    else:
        phi = np.full((tr.count.size, model.K), 1.0 / model.K)
    return _full_elbo(tr, model.lam, model.alpha, model.eta, model.gamma, phi)


def infer(model: LdaModel, dtm: DocumentTermMatrix, plug_in: bool = False):
    """Fold new documents into a fitted model, topics held fixed.

    Returns ``(gamma, per-document bound)``. With ``plug_in`` the topics are
    the point estimate ``beta_hat`` instead of the variational expectation.
    """
    _check_vocab(model, dtm)
    tr = _Triplets(dtm.counts)
    K = model.K
    log_topics = np.log(model.beta_hat) if plug_in else model.expected_log_beta()
    gamma = model.alpha + np.repeat(tr.doc_lengths[:, None] / K, K, axis=1)
    phi = np.full((tr.count.size, K), 1.0 / K)
    cfg = model.config
    _e_step(tr, log_topics, model.alpha, gamma, phi, cfg.max_inner, cfg.tol_gamma)
    bounds = _doc_bounds(tr, log_topics, model.alpha, gamma, phi)
    if not np.isfinite(bounds).all():
        raise NonFiniteElbo("per-document bound is not finite")
    return gamma, bounds


def perplexity(model: LdaModel, dtm: DocumentTermMatrix) -> float:
    """exp(-sum_d log p(w_d) / sum_d N_d), each log p(w_d) replaced by its
    variational lower bound under the point-estimate topics."""
    _, bounds = infer(model, dtm, plug_in=True)
    n_tokens = float(np.asarray(dtm.counts).sum())
    if n_tokens == 0:
        raise EmptyCorpus("perplexity of an empty corpus")
    value = math.exp(-float(bounds.sum()) / n_tokens)
    if not math.isfinite(value):
        raise NonFiniteElbo("perplexity is not finite")
    return value


def topic_proportions(model: LdaModel) -> np.ndarray:
    return model.gamma / model.gamma.sum(axis=1, keepdims=True)


def top_tokens(model: LdaModel, topic: int, n: int = 10) -> list[tuple[str, float]]:
    if not 0 <= topic < model.K:
        raise TopicOutOfRange(f"topic {topic} not in [0, {model.K})")
    row = model.beta_hat[topic]
    terms = model.vocab.terms if model.vocab is not None else tuple(str(j) for j in range(model.V))
    order = sorted(range(model.V), key=lambda j: (-row[j], terms[j]))
    return [(terms[j], float(row[j])) for j in order[:max(n, 0)]]


# ---------------------------------------------------------------------------
# topic-count selection


def _pairs(K):
    i, j = np.triu_indices(K, k=1)
    return i, j


def caojuan2009(beta: np.ndarray) -> float:
    """Mean pairwise cosine similarity of topic rows (lower is better)."""
    K = beta.shape[0]
    if K < 2:
        return float("nan")
    unit = beta / np.linalg.norm(beta, axis=1, keepdims=True)
    sim = unit @ unit.T
    i, j = _pairs(K)
    return float(sim[i, j].mean())


def deveaud2014(beta: np.ndarray) -> float:
    """Mean pairwise Jensen-Shannon divergence of topic rows, natural log
    (higher is better)."""
    K = beta.shape[0]
    if K < 2:
        return float("nan")
    total = 0.0
    i_idx, j_idx = _pairs(K)
    for i, j in zip(i_idx, j_idx):
        p, q = beta[i], beta[j]
        m = 0.5 * (p + q)
        total += 0.5 * (_kl(p, m) + _kl(q, m))
    return total / len(i_idx)


def _kl(p, q):
    mask = p > 0
    return float(np.sum(p[mask] * np.log(p[mask] / np.maximum(q[mask], METRIC_FLOOR))))


def arun2010(beta: np.ndarray, gamma: np.ndarray) -> float:
    """Symmetric KL between the sorted singular-value spectrum of the topic
    matrix and the sorted corpus-wide topic marginal (lower is better)."""
    K = beta.shape[0]
    sv = np.zeros(K)
    s = np.linalg.svd(beta, compute_uv=False)
    sv[:s.size] = s
    marginal = gamma.sum(axis=0)
    p = np.maximum(np.sort(sv)[::-1] / sv.sum(), METRIC_FLOOR)
    q = np.maximum(np.sort(marginal)[::-1] / marginal.sum(), METRIC_FLOOR)
    return float(np.sum(p * np.log(p / q)) + np.sum(q * np.log(q / p)))


@dataclass
class MetricsRow:
    K: int
    griffiths2004: float
    caojuan2009: float
    arun2010: float
    deveaud2014: float
    error: Optional[str] = None


# direction of the optimum for each metric
METRIC_GOALS = {
    "griffiths2004": "max",
    "caojuan2009": "min",
    "arun2010": "min",
    "deveaud2014": "max",
}


def model_metrics(model: LdaModel) -> MetricsRow:
    beta = model.beta_hat
    return MetricsRow(
        K=model.K,
        griffiths2004=float(model.elbo_trace[-1]),
        caojuan2009=caojuan2009(beta),
        arun2010=arun2010(beta, model.gamma),
        deveaud2014=deveaud2014(beta),
    )


def selection_metrics(dtm: DocumentTermMatrix, k_grid: Sequence[int], config: LdaConfig,
                      keep_models: bool = False):
    """Fit one model per K and score it with the four selection metrics.

    A K whose fit fails gets a row with NaN metrics and the error message.
    Returns the rows, plus a ``{K: model}`` dict when ``keep_models``.
    """
    rows, models = [], {}
    for K in k_grid:
        if K < 2:
            raise ValueError("selection grid values must be >= 2")
        try:
            model = fit(dtm, _with(config, K=K))
        except (NonFiniteElbo, EmptyCorpus, np.linalg.LinAlgError) as exc:
            logger.warning("fit for K=%d failed: %s", K, exc)
            nan = float("nan")
            rows.append(MetricsRow(K, nan, nan, nan, nan, error=f"{type(exc).__name__}: {exc}"))
            continue
        rows.append(model_metrics(model))
        if keep_models:
            models[K] = model
    return (rows, models) if keep_models else rows


def best_k(rows: Sequence[MetricsRow], metric: str = "caojuan2009") -> int:
    """K at the metric's optimum; ties go to the smaller K."""
    goal = METRIC_GOALS[metric]
    scored = [(getattr(r, metric), r.K) for r in rows if r.error is None]
    scored = [(v, k) for v, k in scored if math.isfinite(v)]
    if not scored:
        raise ValueError("no successfully fitted K to choose from")
    if goal == "min":
        return min(scored, key=lambda vk: (vk[0], vk[1]))[1]
    return min(scored, key=lambda vk: (-vk[0], vk[1]))[1]


def metrics_csv(rows: Sequence[MetricsRow]) -> str:
    lines = [",".join(f'"{c}"' if " " in c else c for c in METRIC_COLUMNS)]
    for r in rows:
        vals = [r.griffiths2004, r.caojuan2009, r.arun2010, r.deveaud2014]
        cells = ["" if not math.isfinite(v) else repr(float(v)) for v in vals]
        lines.append(",".join([str(r.K), *cells]))
    return "\n".join(lines) + "\n"


def _with(config: LdaConfig, **changes) -> LdaConfig:
    d = asdict(config)
    d.update(changes)
    return LdaConfig(**d)


# ---------------------------------------------------------------------------
# persistence


def model_to_json(model: LdaModel) -> str:
    doc = {
        "format": MODEL_FORMAT,
        "config": asdict(model.config),
        "K": model.K,
        "V": model.V,
        "alpha": model.alpha,
        "eta": model.eta,
        "lambda": model.lam.tolist(),
        "gamma": model.gamma.tolist(),
        "elbo_trace": [float(v) for v in model.elbo_trace],
        "vocab_hash": model.vocab.digest() if model.vocab is not None else None,
        "vocabulary": list(model.vocab.terms) if model.vocab is not None else None,
        "doc_names": list(model.doc_names),
    }
    return json.dumps(doc, indent=1) + "\n"


def model_from_json(text: str) -> LdaModel:
    doc = json.loads(text)
    if doc.get("format") != MODEL_FORMAT:
        raise ValueError(f"not a {MODEL_FORMAT} document")
    vocab = None
    if doc.get("vocabulary") is not None:
        vocab = Vocabulary(tuple(doc["vocabulary"]))
        if doc.get("vocab_hash") and vocab.digest() != doc["vocab_hash"]:
            raise ValueError("vocabulary does not match its recorded hash")
    lam = np.array(doc["lambda"], dtype=np.float64)
    gamma = np.array(doc["gamma"], dtype=np.float64).reshape(-1, lam.shape[0])
    return LdaModel(
        lam=lam,
        alpha=float(doc["alpha"]),
        eta=float(doc["eta"]),
        gamma=gamma,
        elbo_trace=list(doc["elbo_trace"]),
        vocab=vocab,
        doc_names=tuple(doc.get("doc_names", ())),
        config=LdaConfig(**doc["config"]),
    )

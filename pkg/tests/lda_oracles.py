"""Independent references for the topic-model tests.

The exact log marginal of a tiny corpus under smoothed LDA is obtained by
enumerating every topic assignment z. Given z, the topic-word part is a
Polya (Dirichlet-multinomial) term per topic. The document-topic part is
integrated over theta either numerically (Gauss-Jacobi quadrature, K=2) or
in closed form; the two routes must agree.
"""

import functools
import itertools
import math

import numpy as np
from scipy.special import gammaln, logsumexp, roots_jacobi


def log_polya(counts, conc):
    """log of int prod_i p_i^{n_i} Dir(p | conc) dp, for sequences of tokens
    (no multinomial coefficient)."""
    counts = np.asarray(counts, dtype=float)
    conc = np.broadcast_to(np.asarray(conc, dtype=float), counts.shape)
    return (gammaln(conc.sum()) - gammaln(conc.sum() + counts.sum())
            + np.sum(gammaln(conc + counts) - gammaln(conc)))


def theta_integral_closed(topic_counts, alpha):
    return log_polya(topic_counts, np.full(len(topic_counts), alpha))


@functools.lru_cache(maxsize=64)
def _jacobi(points, alpha):
    return roots_jacobi(points, alpha - 1.0, alpha - 1.0)


def theta_integral_quadrature(topic_counts, alpha, points=200):
    """K=2 only: E_{t ~ Beta(alpha, alpha)}[t^n1 (1-t)^n2] by Gauss-Jacobi."""
    n1, n2 = topic_counts
    x, w = _jacobi(points, float(alpha))
    t = 0.5 * (1.0 + x)
    # substitution t = (1+x)/2 turns the Beta kernel into the Jacobi weight
    log_norm = -(2 * alpha - 1) * math.log(2.0) - (2 * gammaln(alpha) - gammaln(2 * alpha))
    vals = w * t ** n1 * (1.0 - t) ** n2
    return math.log(vals.sum()) + log_norm


def exact_log_marginal(docs, V, K, alpha, eta, route="quadrature"):
    """log p(docs | alpha, eta) by enumerating all topic assignments.

    ``docs`` is a list of token-id lists.
    """
    theta_part = theta_integral_quadrature if route == "quadrature" else theta_integral_closed
    if route == "quadrature" and K != 2:
        raise ValueError("quadrature route implemented for K=2")
    tokens = [(d, w) for d, doc in enumerate(docs) for w in doc]
    terms = []
    for z in itertools.product(range(K), repeat=len(tokens)):
        doc_topic = np.zeros((len(docs), K))
        topic_word = np.zeros((K, V))
        for (d, w), k in zip(tokens, z):
            doc_topic[d, k] += 1
            topic_word[k, w] += 1
        val = sum(theta_part(doc_topic[d], alpha) for d in range(len(docs)))
        val += sum(log_polya(topic_word[k], eta) for k in range(K))
        terms.append(val)
    return float(logsumexp(terms))

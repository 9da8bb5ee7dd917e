"""Straightforward reference implementations used to check the library.

They share no code with the package and favour clarity over speed.
"""

import math
from collections import Counter


def jsd_bits(p, q):
    """Jensen-Shannon divergence in bits via entropies: H(m) - (H(p) + H(q)) / 2."""

    def entropy(v):
        return -sum(x * math.log2(x) for x in v if x > 0)

    m = [(a + b) / 2 for a, b in zip(p, q)]
    return entropy(m) - (entropy(p) + entropy(q)) / 2


def js_distance(p, q):
    return math.sqrt(max(0.0, jsd_bits(p, q)))


def bow_similarity(tokens_a, tokens_b):
    if not tokens_a or not tokens_b:
        return 0.0
    ca, cb = Counter(tokens_a), Counter(tokens_b)
    vocab = sorted(set(ca) | set(cb))
    p = [ca[w] / len(tokens_a) for w in vocab]
    q = [cb[w] / len(tokens_b) for w in vocab]
    return 1.0 - js_distance(p, q)


def cosine(u, v):
    dot = sum(a * b for a, b in zip(u, v))
    nu = math.sqrt(sum(a * a for a in u))
    nv = math.sqrt(sum(b * b for b in v))
    return 0.0 if nu == 0 or nv == 0 else dot / (nu * nv)


def dense_power_iteration(rows, damping, max_iterations, threshold):
    """Damped power iteration over a row-stochastic list-of-lists matrix."""
    s = len(rows)
    p = [1.0 / s] * s
    for _ in range(max_iterations):
        new = [
            (1 - damping) / s + damping * sum(rows[j][i] * p[j] for j in range(s))
            for i in range(s)
        ]
        delta = sum(abs(a - b) for a, b in zip(new, p))
        p = new
        if delta < threshold:
            break
    total = sum(p)
    return [x / total for x in p]


def ecdf_ks(a, b):
    """KS distance: the largest ECDF gap, evaluated at every observed value."""
    best = 0.0
    for x in list(a) + list(b):
        fa = sum(1 for v in a if v <= x) / len(a)
        fb = sum(1 for v in b if v <= x) / len(b)
        best = max(best, abs(fa - fb))
    return best


def kolmogorov_sf(x, terms=200):
    """P(K > x) for the Kolmogorov distribution, from its alternating series."""
    if x <= 0:
        return 1.0
    total = sum((-1) ** (k - 1) * math.exp(-2 * k * k * x * x) for k in range(1, terms + 1))
    return min(1.0, max(0.0, 2 * total))

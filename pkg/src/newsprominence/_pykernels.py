"""Pure-Python (numpy) versions of the compiled kernels in ``_ckernels``."""

import numpy as np


def _jsd_terms(p, q):
    m = 0.5 * (p + q)
    with np.errstate(divide="ignore", invalid="ignore"):
        tp = np.where(p > 0.0, p * np.log2(p / m), 0.0)
        tq = np.where(q > 0.0, q * np.log2(q / m), 0.0)
    return 0.5 * (tp + tq)


def _distance_from_jsd(jsd):
    return np.sqrt(np.clip(jsd, 0.0, 1.0))


def js_distance(p, q):
    p = np.asarray(p, dtype=np.float64)
    q = np.asarray(q, dtype=np.float64)
    return float(_distance_from_jsd(_jsd_terms(p, q).sum()))


def bow_jsd_cross(a, b):
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape[1] != b.shape[1]:
        raise ValueError("count matrices must share a vocabulary")
    ta = a.sum(axis=1)
    tb = b.sum(axis=1)
    with np.errstate(divide="ignore", invalid="ignore"):
        pa = np.where(ta[:, None] > 0, a / ta[:, None], 0.0)
        pb = np.where(tb[:, None] > 0, b / tb[:, None], 0.0)
        # (n, m, V) broadcast; fine at sentence scale.  Weighting by raw counts
        # and dividing by the totals once makes disjoint rows diverge by exactly 1.
        p, q = pa[:, None, :], pb[None, :, :]
        m = 0.5 * (p + q)
        sa = np.where(p > 0.0, a[:, None, :] * np.log2(p / m), 0.0).sum(axis=2)
        sb = np.where(q > 0.0, b[None, :, :] * np.log2(q / m), 0.0).sum(axis=2)
        jsd = 0.5 * (sa / ta[:, None] + sb / tb[None, :])
    sim = 1.0 - _distance_from_jsd(np.nan_to_num(jsd))
    sim[ta <= 0, :] = 0.0
    sim[:, tb <= 0] = 0.0
    return sim


def bow_jsd_matrix(counts):
    sim = bow_jsd_cross(counts, counts)
    # mirror the upper triangle so the result is exactly symmetric
    upper = np.triu(sim, k=1)
    return upper + upper.T


def power_iterate(weights, damping, max_iterations, threshold):
    weights = np.asarray(weights, dtype=np.float64)
    s = weights.shape[0]
    base = (1.0 - damping) / s
    p = np.full(s, 1.0 / s)
    it = 0
    converged = False
    while it < max_iterations:
        it += 1
        # a column reduction adds rows in index order, as the compiled loop
        # does; BLAS matrix-vector products may reorder the additions per row
        new = base + damping * (weights * p[:, None]).sum(axis=0)
        delta = np.abs(new - p).sum()
        p = new
        if delta < threshold:
            converged = True
            break
    return p / p.sum(), it, converged


def ks_statistic(a, b):
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    pooled = np.concatenate([a, b])
    ia = np.searchsorted(a, pooled, side="right")
    ib = np.searchsorted(b, pooled, side="right")
    return float(np.max(np.abs(ia / a.size - ib / b.size)))

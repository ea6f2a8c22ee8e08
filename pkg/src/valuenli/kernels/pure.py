"""Pure-Python/numpy kernels; reference implementation and import fallback.

Same contract as the compiled module (see kernels/__init__.py for the packed
array layout). Accumulation orders match the compiled loops so both backends
agree to the last few bits.
"""

from __future__ import annotations

import numpy as np

BACKEND_NAME = "pure"


def _text_tables(ids, weights, offsets):
    """Per-text token-id sets and id->weight dicts from packed arrays."""
    sets = []
    dicts = []
    id_list = ids.tolist()
    w_list = weights.tolist()
    for t in range(len(offsets) - 1):
        lo, hi = int(offsets[t]), int(offsets[t + 1])
        seg_ids = id_list[lo:hi]
        sets.append(frozenset(seg_ids))
        dicts.append(dict(zip(seg_ids, w_list[lo:hi])))
    return sets, dicts


def pair_feature_matrix(
    p_ids, p_w, p_off, p_norm, p_len,
    h_ids, h_w, h_off, h_norm, h_len,
    hc_ids, hc_off,
    pair_p, pair_h,
):
    p_sets, p_dicts = _text_tables(p_ids, p_w, p_off)
    h_sets, h_dicts = _text_tables(h_ids, h_w, h_off)
    hc_list = hc_ids.tolist()
    content = [
        hc_list[int(hc_off[t]) : int(hc_off[t + 1])] for t in range(len(hc_off) - 1)
    ]

    n_pairs = len(pair_p)
    out = np.empty((n_pairs, 4), dtype=np.float64)
    for row in range(n_pairs):
        pi = int(pair_p[row])
        hi = int(pair_h[row])
        sp = p_sets[pi]
        sh = h_sets[hi]

        inter = len(sp & sh)
        union = len(sp) + len(sh) - inter
        out[row, 0] = inter / union if union else 0.0

        # Visit shared ids in the hypothesis' sorted order, matching the
        # compiled merge join bit for bit.
        dot = 0.0
        dp = p_dicts[pi]
        for token, weight in h_dicts[hi].items():
            pw = dp.get(token)
            if pw is not None:
                dot += pw * weight
        denom = p_norm[pi] * h_norm[hi]
        out[row, 1] = dot / denom if denom > 0.0 else 0.0

        content_ids = content[hi]
        if content_ids:
            covered = sum(1 for token in content_ids if token in sp)
            out[row, 2] = covered / len(content_ids)
        else:
            out[row, 2] = 0.0

        lp = int(p_len[pi])
        lh = int(h_len[hi])
        longer = max(lp, lh)
        out[row, 3] = (min(lp, lh) / longer) if longer else 1.0
    return out


def _softplus(z):
    return np.maximum(z, 0.0) + np.log1p(np.exp(-np.abs(z)))


def logistic_loss_grad(X, y, sample_weight, params):
    """Mean weighted cross-entropy of sigmoid(X w + b) and its gradient.

    params is (w0..w3, b); returns (loss, gradient over all 5 params).
    """
    n = X.shape[0]
    z = X @ params[:4] + params[4]
    loss = float(np.sum(sample_weight * (_softplus(z) - y * z)) / n)
    delta = sample_weight * (_sigmoid(z) - y) / n
    grad = np.empty(5, dtype=np.float64)
    grad[:4] = X.T @ delta
    grad[4] = np.sum(delta)
    return loss, grad


def _sigmoid(z):
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    expz = np.exp(z[~pos])
    out[~pos] = expz / (1.0 + expz)
    return out


def logistic_scores(X, params):
    """sigmoid(X w + b) as float64."""
    return _sigmoid(X @ params[:4] + params[4])

"""Hot numeric kernels with a compiled core and a pure fallback.

The compiled extension (valuenli.kernels._native, built from _native.pyx) is
preferred; when it is unavailable the numpy implementation in
valuenli.kernels.pure is used instead. Set VALUENLI_KERNELS=pure or =native
to force a backend (forcing native raises if the extension is not built).

Kernel contract
---------------
pair_feature_matrix packs each distinct text as a segment of concatenated
arrays: sorted unique token ids (int64), aligned tf-idf weights (float64),
and an offsets array of length n_texts + 1. Per text there is also a
precomputed weight norm (float64) and a total token count (int64);
hypotheses additionally carry packed sorted content-word ids. pair_p/pair_h
index into the premise/hypothesis tables, one entry per output row. The
result is an (n_pairs, 4) float64 matrix of:

  0. token Jaccard overlap of the two type sets
  1. tf-idf cosine similarity
  2. fraction of the hypothesis' content words present in the premise
  3. length ratio min(|p|, |h|) / max(|p|, |h|)

logistic_loss_grad / logistic_scores implement a 4-feature logistic model
with bias; params has shape (5,).
"""

import os

from valuenli.kernels import pure as _pure

_forced = os.environ.get("VALUENLI_KERNELS", "").strip().lower()
if _forced not in ("", "native", "pure"):
    raise ImportError(
        f"VALUENLI_KERNELS must be 'native' or 'pure', got {_forced!r}"
    )

if _forced == "pure":
    _impl = _pure
else:
    try:
        from valuenli.kernels import _native as _impl  # type: ignore[attr-defined]
    except ImportError:
        if _forced == "native":
            raise
        _impl = _pure

BACKEND = _impl.BACKEND_NAME

pair_feature_matrix = _impl.pair_feature_matrix
logistic_loss_grad = _impl.logistic_loss_grad
logistic_scores = _impl.logistic_scores


def available_backends() -> dict:
    """Name -> module for every importable backend (used by benchmarks/tests)."""
    backends = {"pure": _pure}
    try:
        from valuenli.kernels import _native  # type: ignore[attr-defined]

        backends["native"] = _native
    except ImportError:
        pass
    return backends

"""Deterministic lexical features for (premise, hypothesis) pairs.

Tokens are hashed to stable 63-bit ids (blake2b), so feature extraction is
reproducible across processes and platforms; no vocabulary files are kept.
The featurizer is fitted once on the training texts (document frequencies
for tf-idf) and is immutable afterwards apart from an internal per-text
cache.
"""

from __future__ import annotations

import hashlib
import math
import re
from typing import Iterable, Sequence

import numpy as np

from valuenli import kernels
from valuenli.errors import ReadinessError

FEATURE_NAMES = (
    "token_jaccard",
    "tfidf_cosine",
    "hypothesis_content_coverage",
    "length_ratio",
)

_TOKEN_RE = re.compile(r"[a-z0-9']+")

# Small fixed function-word list; everything else counts as content.
STOPWORDS = frozenset(
    """a an and are as at be been being by did do does for from had has have
    he her hers him his i if in into is it its me my no nor not of on or our
    ours she so than that the their theirs them they this these those to was
    we were what when where which who whom why will with you your yours
    """.split()
)


def tokenize(text: str) -> list[str]:
    return _TOKEN_RE.findall(text.lower())


def _token_id(token: str, _cache={}) -> int:
    cached = _cache.get(token)
    if cached is None:
        digest = hashlib.blake2b(token.encode("utf-8"), digest_size=8).digest()
        cached = int.from_bytes(digest, "big") & 0x7FFFFFFFFFFFFFFF
        _cache[token] = cached
    return cached


class _TextStats:
    """Packed per-text arrays consumed by the kernels."""

    __slots__ = ("ids", "weights", "norm", "content_ids", "n_tokens")

    def __init__(self, ids, weights, norm, content_ids, n_tokens):
        self.ids = ids
        self.weights = weights
        self.norm = norm
        self.content_ids = content_ids
        self.n_tokens = n_tokens


class LexicalFeaturizer:
    """Maps text pairs to the fixed four-feature vector."""

    def __init__(self):
        self._idf: dict[int, float] = {}
        self._default_idf = 0.0
        self._fitted = False
        self._stats_cache: dict[str, _TextStats] = {}

    @property
    def fitted(self) -> bool:
        return self._fitted

    def fit(self, texts: Iterable[str]) -> "LexicalFeaturizer":
        """Fit idf over the distinct texts (each counted once)."""
        df: dict[int, int] = {}
        n_docs = 0
        seen = set()
        for text in texts:
            if text in seen:
                continue
            seen.add(text)
            n_docs += 1
            for token in set(tokenize(text)):
                tid = _token_id(token)
                df[tid] = df.get(tid, 0) + 1
        self._idf = {
            tid: math.log((1.0 + n_docs) / (1.0 + count)) + 1.0
            for tid, count in df.items()
        }
        self._default_idf = math.log(1.0 + n_docs) + 1.0
        self._fitted = True
        self._stats_cache = {}
        return self

    def _stats(self, text: str) -> _TextStats:
        cached = self._stats_cache.get(text)
        if cached is not None:
            return cached
        tokens = tokenize(text)
        counts: dict[int, int] = {}
        content: set[int] = set()
        for token in tokens:
            tid = _token_id(token)
            counts[tid] = counts.get(tid, 0) + 1
            if token not in STOPWORDS:
                content.add(tid)
        ids = np.array(sorted(counts), dtype=np.int64)
        weights = np.array(
            [counts[tid] * self._idf.get(tid, self._default_idf) for tid in ids],
            dtype=np.float64,
        )
        norm = float(np.sqrt(np.dot(weights, weights))) if len(weights) else 0.0
        stats = _TextStats(
            ids=ids,
            weights=weights,
            norm=norm,
            content_ids=np.array(sorted(content), dtype=np.int64),
            n_tokens=len(tokens),
        )
        self._stats_cache[text] = stats
        return stats

    def feature_matrix(self, pairs: Sequence[tuple[str, str]]) -> np.ndarray:
        """(n_pairs, 4) float64 feature matrix for raw text pairs."""
        if not self._fitted:
            raise ReadinessError("featurizer used before fit()")
        premise_index: dict[str, int] = {}
        hypothesis_index: dict[str, int] = {}
        pair_p = np.empty(len(pairs), dtype=np.int64)
        pair_h = np.empty(len(pairs), dtype=np.int64)
        premises: list[_TextStats] = []
        hypotheses: list[_TextStats] = []
        for row, (premise, hypothesis) in enumerate(pairs):
            pi = premise_index.get(premise)
            if pi is None:
                pi = len(premises)
                premise_index[premise] = pi
                premises.append(self._stats(premise))
            hi = hypothesis_index.get(hypothesis)
            if hi is None:
                hi = len(hypotheses)
                hypothesis_index[hypothesis] = hi
                hypotheses.append(self._stats(hypothesis))
            pair_p[row] = pi
            pair_h[row] = hi

        p_ids, p_w, p_off, p_norm, p_len = _pack(premises)
        h_ids, h_w, h_off, h_norm, h_len = _pack(hypotheses)
        hc_ids, hc_off = _pack_content(hypotheses)
        return kernels.pair_feature_matrix(
            p_ids, p_w, p_off, p_norm, p_len,
            h_ids, h_w, h_off, h_norm, h_len,
            hc_ids, hc_off,
            pair_p, pair_h,
        )

    def features(self, premise: str, hypothesis: str) -> np.ndarray:
        return self.feature_matrix([(premise, hypothesis)])[0]


def _pack(stats: list[_TextStats]):
    offsets = np.zeros(len(stats) + 1, dtype=np.int64)
    for i, st in enumerate(stats):
        offsets[i + 1] = offsets[i] + len(st.ids)
    total = int(offsets[-1])
    ids = np.empty(total, dtype=np.int64)
    weights = np.empty(total, dtype=np.float64)
    for i, st in enumerate(stats):
        ids[offsets[i] : offsets[i + 1]] = st.ids
        weights[offsets[i] : offsets[i + 1]] = st.weights
    norms = np.array([st.norm for st in stats], dtype=np.float64)
    lengths = np.array([st.n_tokens for st in stats], dtype=np.int64)
    return ids, weights, offsets, norms, lengths


def _pack_content(stats: list[_TextStats]):
    offsets = np.zeros(len(stats) + 1, dtype=np.int64)
    for i, st in enumerate(stats):
        offsets[i + 1] = offsets[i] + len(st.content_ids)
    ids = np.empty(int(offsets[-1]), dtype=np.int64)
    for i, st in enumerate(stats):
        ids[offsets[i] : offsets[i + 1]] = st.content_ids
    return ids, offsets

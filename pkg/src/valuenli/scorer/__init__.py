"""Entailment scorers: the contract, a trainable baseline, a protocol client."""

from valuenli.scorer.base import Scorer, binarize, check_pair
from valuenli.scorer.baseline import (
    BaselineScorer,
    EvalPoint,
    TrainConfig,
    TrainHistory,
    train_baseline,
)
from valuenli.scorer.external import (
    DEFAULT_TIMEOUT,
    MAX_PAIRS_PER_REQUEST,
    ExternalScorer,
    connect_external,
)
from valuenli.scorer.features import FEATURE_NAMES, LexicalFeaturizer, tokenize
from valuenli.scorer.weights import LabelWeights, compute_label_weights

__all__ = [
    "Scorer",
    "binarize",
    "check_pair",
    "BaselineScorer",
    "EvalPoint",
    "TrainConfig",
    "TrainHistory",
    "train_baseline",
    "DEFAULT_TIMEOUT",
    "MAX_PAIRS_PER_REQUEST",
    "ExternalScorer",
    "connect_external",
    "FEATURE_NAMES",
    "LexicalFeaturizer",
    "tokenize",
    "LabelWeights",
    "compute_label_weights",
]

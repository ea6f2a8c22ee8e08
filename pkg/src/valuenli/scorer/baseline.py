"""Desk-scale trainable baseline: logistic regression over lexical features.

Trains in seconds on a CPU, which keeps the full pipeline testable without a
neural backend; the scorer contract isolates this choice, so a protocol
scorer can be swapped in for the same experiments. Training is mini-batch
gradient descent on (optionally per-batch inverse-frequency weighted)
cross-entropy, keeping the parameters with the lowest validation loss and
stopping early after `patience` evaluations without improvement. Fully
deterministic for a fixed seed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from valuenli import kernels
from valuenli.augment import Gold, NliInstance
from valuenli.errors import DataValueError, EmptyInputError, ReadinessError
from valuenli.scorer.base import Scorer, check_pair
from valuenli.scorer.features import LexicalFeaturizer
from valuenli.scorer.weights import compute_label_weights


@dataclass(frozen=True)
class TrainConfig:
    max_epochs: int = 5
    batch_size: int = 128
    weighted_loss: bool = False
    patience: int = 10
    eval_every: int = 50
    seed: int = 0
    learning_rate: float = 0.1

    def __post_init__(self):
        if self.max_epochs < 1:
            raise DataValueError("max_epochs must be >= 1")
        if self.batch_size < 1:
            raise DataValueError("batch_size must be >= 1")
        if self.patience < 1:
            raise DataValueError("patience must be >= 1")
        if self.eval_every < 1:
            raise DataValueError("eval_every must be >= 1")
        if self.learning_rate <= 0:
            raise DataValueError("learning_rate must be positive")


@dataclass(frozen=True)
class EvalPoint:
    step: int
    val_loss: float
    improved: bool


@dataclass
class TrainHistory:
    evaluations: list[EvalPoint] = field(default_factory=list)
    best_step: int = 0
    best_val_loss: float = float("inf")
    steps_run: int = 0
    stopped_early: bool = False


class BaselineScorer(Scorer):
    """Lexical-logistic entailment scorer; immutable once trained."""

    name = "baseline"

    def __init__(self):
        self._featurizer: LexicalFeaturizer | None = None
        self._params: np.ndarray | None = None
        self.history: TrainHistory | None = None

    @property
    def trained(self) -> bool:
        return self._params is not None

    @property
    def params(self) -> np.ndarray:
        self._require_trained()
        return self._params.copy()

    @property
    def best_val_loss(self) -> float:
        self._require_trained()
        return self.history.best_val_loss

    def _require_trained(self) -> None:
        if self._params is None:
            raise ReadinessError("baseline scorer has not been trained")

    def score(self, premise: str, hypothesis: str) -> float:
        return self.score_batch([(premise, hypothesis)])[0]

    def score_batch(self, pairs: Sequence[tuple[str, str]]) -> list[float]:
        self._require_trained()
        for premise, hypothesis in pairs:
            check_pair(premise, hypothesis)
        if not pairs:
            return []
        X = self._featurizer.feature_matrix(pairs)
        return kernels.logistic_scores(X, self._params).tolist()


def _materialize(instances: Iterable[NliInstance], what: str):
    pairs = []
    golds = []
    for instance in instances:
        if instance.gold is None:
            raise DataValueError(
                f"{what} instance {instance.argument_id}/{instance.statement_id} "
                "has no gold label"
            )
        pairs.append((instance.premise, instance.hypothesis))
        golds.append(1.0 if instance.gold is Gold.ENTAILMENT else 0.0)
    if not pairs:
        raise EmptyInputError(f"{what} stream is empty")
    return pairs, np.array(golds, dtype=np.float64)


def train_baseline(
    instances: Iterable[NliInstance],
    config: TrainConfig,
    validation: Iterable[NliInstance],
) -> BaselineScorer:
    """Train the baseline scorer; returns it with best-validation parameters."""
    train_pairs, y = _materialize(instances, "training")
    val_pairs, y_val = _materialize(validation, "validation")

    featurizer = LexicalFeaturizer()
    featurizer.fit(text for pair in train_pairs for text in pair)
    X = featurizer.feature_matrix(train_pairs)
    X_val = featurizer.feature_matrix(val_pairs)
    ones_val = np.ones(len(y_val), dtype=np.float64)

    params = np.zeros(5, dtype=np.float64)
    best_params = params.copy()
    history = TrainHistory()
    rng = np.random.default_rng(config.seed)
    n = len(y)
    stale = 0
    step = 0
    last_eval_step = -1

    def evaluate() -> None:
        nonlocal stale
        val_loss, _ = kernels.logistic_loss_grad(X_val, y_val, ones_val, params)
        improved = val_loss < history.best_val_loss
        if improved:
            history.best_val_loss = val_loss
            history.best_step = step
            best_params[:] = params
            stale = 0
        else:
            stale += 1
        history.evaluations.append(EvalPoint(step, val_loss, improved))

    stop = False
    for _ in range(config.max_epochs):
        order = rng.permutation(n)
        for start in range(0, n, config.batch_size):
            batch = order[start : start + config.batch_size]
            Xb = np.ascontiguousarray(X[batch])
            yb = y[batch]
            if config.weighted_loss:
                n_entail = int(yb.sum())
                lw = compute_label_weights(n_entail, len(yb) - n_entail)
                sw = np.where(yb == 1.0, lw.w_entail, lw.w_not)
            else:
                sw = np.ones(len(yb), dtype=np.float64)
            _, grad = kernels.logistic_loss_grad(Xb, yb, sw, params)
            params -= config.learning_rate * grad
            step += 1
            if step % config.eval_every == 0:
                last_eval_step = step
                evaluate()
                if stale >= config.patience:
                    stop = True
                    break
        if stop:
            break

    if last_eval_step != step and not stop:
        last_eval_step = step
        evaluate()

    history.steps_run = step
    history.stopped_early = stop

    scorer = BaselineScorer()
    scorer._featurizer = featurizer
    scorer._params = best_params
    scorer.history = history
    return scorer

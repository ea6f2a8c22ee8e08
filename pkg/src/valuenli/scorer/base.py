"""The entailment-scorer contract and score binarization.

A scorer maps a (premise, hypothesis) text pair to the probability, in
[0, 1], that the premise entails the hypothesis. Trained/connected scorers
are immutable; concurrent score calls are safe.
"""

from __future__ import annotations

import abc
from typing import Sequence

from valuenli.errors import DataValueError


class Scorer(abc.ABC):
    """Abstract entailment scorer."""

    name = "scorer"

    @abc.abstractmethod
    def score(self, premise: str, hypothesis: str) -> float:
        """Entailment probability in [0, 1]; pure and deterministic."""

    def score_batch(self, pairs: Sequence[tuple[str, str]]) -> list[float]:
        return [self.score(premise, hypothesis) for premise, hypothesis in pairs]


def check_pair(premise: str, hypothesis: str) -> None:
    if not premise:
        raise DataValueError("premise must be nonempty")
    if not hypothesis:
        raise DataValueError("hypothesis must be nonempty")


def binarize(score: float, cut: float = 0.5) -> int:
    """1 iff score is strictly above the cut."""
    if not 0.0 <= cut <= 1.0:
        raise DataValueError(f"cut must be in [0, 1], got {cut!r}")
    return 1 if score > cut else 0

"""Per-category aggregation of statement-level predictions and thresholding.

For one premise and one value category with n definitional statements, the
scorer yields n statement-level results; these are averaged into a single
probability-like mean and compared (strictly) against a tuned threshold.
The default mode binarizes each statement score at 0.5 before averaging;
mean-of-scores averages the raw probabilities instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Mapping, Sequence

from valuenli.categories import CATEGORIES, ValueCategory
from valuenli.corpus import ValueLabels
from valuenli.errors import AlignmentError, CoverageError, DataValueError, EmptyInputError
from valuenli.metrics import confusion_from_flags, macro_f1_own, prf1
from valuenli.scorer.base import Scorer, binarize
from valuenli.statements import StatementBank

VOTE_CUT = 0.5

DEFAULT_GRID = tuple(i / 10 for i in range(10))


class AggregationMode(Enum):
    BINARIZE_THEN_MEAN = "binarize-then-mean"
    MEAN_OF_SCORES = "mean-of-scores"


@dataclass(frozen=True)
class ThresholdConfig:
    grid: tuple[float, ...] = DEFAULT_GRID
    chosen: float = 0.0
    mode: AggregationMode = AggregationMode.BINARIZE_THEN_MEAN

    def __post_init__(self):
        if not self.grid:
            raise DataValueError("threshold grid must be nonempty")
        if any(not 0.0 <= t < 1.0 for t in self.grid):
            raise DataValueError("grid thresholds must lie in [0, 1)")
        if any(b <= a for a, b in zip(self.grid, self.grid[1:])):
            raise DataValueError("grid must be strictly increasing")
        if self.chosen not in self.grid:
            raise DataValueError(f"chosen threshold {self.chosen!r} not in grid")


@dataclass(frozen=True)
class AggregationInput:
    """Statement-level results for one (premise, category)."""

    premise_id: str
    category: ValueCategory
    per_statement: tuple[float, ...]
    mode: AggregationMode = AggregationMode.BINARIZE_THEN_MEAN

    def __post_init__(self):
        if not self.per_statement:
            raise CoverageError(
                f"{self.premise_id!r}/{self.category.name!r}: no statement predictions"
            )
        if self.mode is AggregationMode.BINARIZE_THEN_MEAN:
            if any(v not in (0.0, 1.0) for v in self.per_statement):
                raise DataValueError("binary mode entries must be 0 or 1")
        elif any(not 0.0 <= v <= 1.0 for v in self.per_statement):
            raise DataValueError("score mode entries must lie in [0, 1]")


def aggregate_category(aggregation_input: AggregationInput) -> float:
    """Arithmetic mean of the statement-level entries."""
    values = aggregation_input.per_statement
    return sum(values) / len(values)


def decide(mean: float, threshold: float) -> int:
    """1 (entail) iff mean is strictly above the threshold.

    Strictness makes threshold 0.0 the "at least one statement fired" rule.
    """
    if not 0.0 <= mean <= 1.0:
        raise DataValueError(f"mean must be in [0, 1], got {mean!r}")
    if not 0.0 <= threshold <= 1.0:
        raise DataValueError(f"threshold must be in [0, 1], got {threshold!r}")
    return 1 if mean > threshold else 0


def category_means(
    premise: str,
    bank: StatementBank,
    scorer: Scorer,
    mode: AggregationMode = AggregationMode.BINARIZE_THEN_MEAN,
) -> dict[ValueCategory, float]:
    """Score every statement and average per category (pre-threshold)."""
    bank.require_full_coverage()
    statements = list(bank)
    scores = scorer.score_batch([(premise, stmt.text) for stmt in statements])
    by_category: dict[ValueCategory, list[float]] = {c: [] for c in CATEGORIES}
    for stmt, score in zip(statements, scores):
        value = (
            float(binarize(score, VOTE_CUT))
            if mode is AggregationMode.BINARIZE_THEN_MEAN
            else score
        )
        by_category[stmt.category].append(value)
    return {
        category: sum(values) / len(values)
        for category, values in by_category.items()
    }


def predict_argument(
    premise: str,
    bank: StatementBank,
    scorer: Scorer,
    config: ThresholdConfig,
) -> list[int]:
    """Twenty binary decisions in canonical category order."""
    means = category_means(premise, bank, scorer, config.mode)
    return [decide(means[category], config.chosen) for category in CATEGORIES]


@dataclass(frozen=True)
class ThresholdSearch:
    """Result of the validation grid search."""

    chosen: float
    table: tuple[tuple[float, float], ...]  # (threshold, macro F1) per grid point


def tune_threshold(
    val_means: Mapping[tuple[str, ValueCategory], float],
    val_labels: Sequence[ValueLabels],
    grid: Sequence[float] = DEFAULT_GRID,
) -> ThresholdSearch:
    """Pick the grid threshold maximizing macro F1 on validation means.

    Ties break toward the smallest threshold. The search recomputes the
    macro F1 (mean of per-category F1) over exactly the categories present
    in val_means.
    """
    if not val_means:
        raise EmptyInputError("val_means is empty")
    if not val_labels:
        raise EmptyInputError("val_labels is empty")
    if not grid:
        raise EmptyInputError("threshold grid is empty")

    labels_by_id = {row.argument_id: row for row in val_labels}
    categories = sorted({cat for _, cat in val_means}, key=lambda c: c.index)
    entries = []
    for (argument_id, category), mean in val_means.items():
        row = labels_by_id.get(argument_id)
        if row is None:
            raise AlignmentError(f"no validation labels for argument {argument_id!r}")
        entries.append((category, mean, row.labels[category.index]))

    table = []
    best_threshold = None
    best_f1 = -1.0
    for threshold in grid:
        per_category = {}
        for category in categories:
            flags = [
                (decide(mean, threshold), gold)
                for cat, mean, gold in entries
                if cat is category
            ]
            per_category[category] = prf1(
                confusion_from_flags(
                    [pred for pred, _ in flags], [gold for _, gold in flags]
                )
            )
        score = macro_f1_own(per_category, categories=categories)
        table.append((threshold, score))
        if score > best_f1:
            best_f1 = score
            best_threshold = threshold
    return ThresholdSearch(chosen=best_threshold, table=tuple(table))

"""Evaluation metrics: both macro-F1 variants, baselines, agreement.

Two macro-F1 definitions coexist deliberately. The "own" variant is the
unweighted mean of the 20 per-category F1 scores; the "official" variant
first averages precision and recall over categories and then takes their
harmonic mean. They agree when all categories share identical (P, R) and
can diverge otherwise, so reports carry both. All 0/0 ratios are defined
as 0, which keeps all-zero categories representable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Mapping, Optional, Sequence

from valuenli.categories import CATEGORIES, ValueCategory
from valuenli.corpus import ValueLabels
from valuenli.errors import (
    AlignmentError,
    CoverageError,
    DataValueError,
    EmptyInputError,
    UndefinedAlphaError,
)
from valuenli import tsvio


@dataclass(frozen=True)
class ConfusionCounts:
    tp: int
    fp: int
    fn: int
    tn: int

    def __post_init__(self):
        if min(self.tp, self.fp, self.fn, self.tn) < 0:
            raise DataValueError("confusion counts must be nonnegative")

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.fn + self.tn


@dataclass(frozen=True)
class Prf:
    precision: float
    recall: float
    f1: float


def confusion_from_flags(preds: Sequence[int], golds: Sequence[int]) -> ConfusionCounts:
    """Binary confusion over aligned flag sequences."""
    if len(preds) != len(golds):
        raise AlignmentError(
            f"preds and golds differ in length: {len(preds)} vs {len(golds)}"
        )
    tp = fp = fn = tn = 0
    for pred, gold in zip(preds, golds):
        if pred == 1 and gold == 1:
            tp += 1
        elif pred == 1:
            fp += 1
        elif gold == 1:
            fn += 1
        else:
            tn += 1
    return ConfusionCounts(tp, fp, fn, tn)


def confusion(
    preds: Sequence[ValueLabels], golds: Sequence[ValueLabels]
) -> dict[ValueCategory, ConfusionCounts]:
    """Per-category confusion counts, aligning rows by argument id."""
    pred_ids = {row.argument_id for row in preds}
    gold_ids = {row.argument_id for row in golds}
    if pred_ids != gold_ids:
        difference = sorted(pred_ids.symmetric_difference(gold_ids))
        raise AlignmentError(
            f"prediction and gold ids differ on {len(difference)} arguments: "
            f"{difference[:10]}"
        )
    gold_by_id = {row.argument_id: row for row in golds}
    out = {}
    for category in CATEGORIES:
        index = category.index
        out[category] = confusion_from_flags(
            [row.labels[index] for row in preds],
            [gold_by_id[row.argument_id].labels[index] for row in preds],
        )
    return out


def prf1(counts: ConfusionCounts) -> Prf:
    """Precision, recall, F1 with the 0/0 -> 0 convention."""
    precision = counts.tp / (counts.tp + counts.fp) if counts.tp + counts.fp else 0.0
    recall = counts.tp / (counts.tp + counts.fn) if counts.tp + counts.fn else 0.0
    f1 = (
        2.0 * precision * recall / (precision + recall)
        if precision + recall
        else 0.0
    )
    return Prf(precision, recall, f1)


def _check_categories(
    per_category: Mapping[Hashable, Prf], categories: Optional[Sequence[Hashable]]
):
    if categories is None:
        categories = CATEGORIES
    missing = [c for c in categories if c not in per_category]
    if missing:
        names = [getattr(c, "name", c) for c in missing]
        raise CoverageError(f"missing categories in metrics input: {names}")
    return categories


def macro_f1_own(
    per_category: Mapping[Hashable, Prf],
    categories: Optional[Sequence[Hashable]] = None,
) -> float:
    """Unweighted mean of the per-category F1 scores."""
    categories = _check_categories(per_category, categories)
    return sum(per_category[c].f1 for c in categories) / len(categories)


def macro_f1_official(
    per_category: Mapping[Hashable, Prf],
    categories: Optional[Sequence[Hashable]] = None,
) -> float:
    """F1 of the category-averaged precision and recall."""
    categories = _check_categories(per_category, categories)
    mean_p = sum(per_category[c].precision for c in categories) / len(categories)
    mean_r = sum(per_category[c].recall for c in categories) / len(categories)
    if mean_p + mean_r == 0.0:
        return 0.0
    return 2.0 * mean_p * mean_r / (mean_p + mean_r)


@dataclass(frozen=True)
class MetricsReport:
    per_category: dict[ValueCategory, Prf]
    macro_own: float
    macro_official: float


def evaluate_labels(
    preds: Sequence[ValueLabels], golds: Sequence[ValueLabels]
) -> MetricsReport:
    """Full 20-category report for aligned prediction/gold label lists."""
    if not preds or not golds:
        raise EmptyInputError("cannot evaluate empty label lists")
    per_category = {cat: prf1(counts) for cat, counts in confusion(preds, golds).items()}
    return MetricsReport(
        per_category=per_category,
        macro_own=macro_f1_own(per_category),
        macro_official=macro_f1_official(per_category),
    )


def one_baseline(golds: Sequence[ValueLabels]) -> MetricsReport:
    """Metrics of the constant predictor that assigns every category."""
    if not golds:
        raise EmptyInputError("cannot compute the 1-baseline of an empty gold list")
    all_ones = [
        ValueLabels(row.argument_id, (1,) * len(CATEGORIES)) for row in golds
    ]
    return evaluate_labels(all_ones, golds)


def render_report(rows: Sequence[tuple[str, MetricsReport]]) -> str:
    """Report table: approaches as rows, macros then per-category F1 columns."""
    header = ["Approach", "macro-F1-own", "macro-F1-official"] + [
        c.name for c in CATEGORIES
    ]
    lines = ["\t".join(header)]
    for name, report in rows:
        cells = [name, f"{report.macro_own:.4f}", f"{report.macro_official:.4f}"]
        cells += [f"{report.per_category[c].f1:.4f}" for c in CATEGORIES]
        lines.append("\t".join(cells))
    return "\n".join(lines) + "\n"


def write_report(rows: Sequence[tuple[str, MetricsReport]], sink: tsvio.Source) -> None:
    with tsvio.LineWriter(sink) as out:
        for line in render_report(rows).splitlines():
            out.write_line(line)


@dataclass(frozen=True)
class ReliabilityData:
    """Ratings of units by raters; missing ratings are simply absent."""

    units: tuple
    raters: tuple
    values: Mapping[tuple, Hashable]  # (unit, rater) -> nominal value

    def __post_init__(self):
        if len(self.raters) < 2:
            raise DataValueError("reliability data needs at least two raters")

    @classmethod
    def from_rows(cls, rows: Mapping[Hashable, Sequence]) -> "ReliabilityData":
        """Build from rater -> list of values (None marks a missing rating)."""
        raters = tuple(rows)
        lengths = {len(v) for v in rows.values()}
        if len(lengths) > 1:
            raise DataValueError("all raters must rate the same unit list")
        units = tuple(range(lengths.pop())) if lengths else ()
        values = {}
        for rater, ratings in rows.items():
            for unit, value in enumerate(ratings):
                if value is not None:
                    values[(unit, rater)] = value
        return cls(units=units, raters=raters, values=values)


def krippendorff_alpha(data: ReliabilityData) -> float:
    """Nominal-metric Krippendorff's alpha via the coincidence matrix.

    Each unit with m >= 2 ratings contributes 1/(m-1) per ordered pair of
    distinct rating slots; alpha = 1 - D_o / D_e with expected disagreement
    taken from the value marginals.
    """
    ratings_per_unit = []
    for unit in data.units:
        ratings = [
            data.values[(unit, rater)]
            for rater in data.raters
            if (unit, rater) in data.values
        ]
        if len(ratings) >= 2:
            ratings_per_unit.append(ratings)
    if not ratings_per_unit:
        raise UndefinedAlphaError("no unit has two or more ratings")

    coincidence: dict[tuple, float] = {}
    marginals: dict[Hashable, float] = {}
    for ratings in ratings_per_unit:
        m = len(ratings)
        pair_weight = 1.0 / (m - 1)
        for i, a in enumerate(ratings):
            for j, b in enumerate(ratings):
                if i == j:
                    continue
                coincidence[(a, b)] = coincidence.get((a, b), 0.0) + pair_weight
                marginals[a] = marginals.get(a, 0.0) + pair_weight

    n_total = sum(marginals.values())
    observed_disagreement = sum(
        mass for (a, b), mass in coincidence.items() if a != b
    )
    expected_disagreement = sum(
        marginals[a] * marginals[b]
        for a in marginals
        for b in marginals
        if a != b
    ) / (n_total - 1.0)
    if expected_disagreement == 0.0:
        raise UndefinedAlphaError(
            "expected disagreement is zero (all ratings share one value)"
        )
    return 1.0 - observed_disagreement / expected_disagreement

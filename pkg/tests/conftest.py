"""Shared fixtures: corpora, banks and mock scorers used across test modules."""

from __future__ import annotations

import io

import pytest

from valuenli.categories import CATEGORIES
from valuenli.corpus import Argument, Stance, ValueLabels
from valuenli.scorer.base import Scorer
from valuenli.statements import (
    REFERENCE_COUNTS,
    DefinitionalStatement,
    StatementBank,
    StatementSource,
)


def build_reference_shaped_bank() -> StatementBank:
    """A 637-statement bank matching the reference per-category/source counts."""
    statements = []
    for category in CATEGORIES:
        n_annotation, n_survey = REFERENCE_COUNTS[category.name]
        slug = category.name.lower().replace(" ", "").replace(":", "")
        for i in range(n_annotation):
            statements.append(
                DefinitionalStatement(
                    id=f"A-{category.index:02d}-{i:02d}",
                    category=category,
                    source=StatementSource.ANNOTATION,
                    text=f"It is important to watch aspect {i} of {slug}",
                )
            )
        for i in range(n_survey):
            statements.append(
                DefinitionalStatement(
                    id=f"S-{category.index:02d}-{i:02d}",
                    category=category,
                    source=StatementSource.SURVEY,
                    text=f"It is important to hold item {i} of {slug}",
                )
            )
    return StatementBank(statements)


@pytest.fixture(scope="session")
def reference_bank() -> StatementBank:
    return build_reference_shaped_bank()


class ConstantScorer(Scorer):
    """Returns one fixed score for every pair."""

    name = "constant"

    def __init__(self, value: float):
        self.value = value

    def score(self, premise: str, hypothesis: str) -> float:
        return self.value


class KeywordScorer(Scorer):
    """Scores 1.0 when the hypothesis contains the keyword, else 0.0."""

    name = "keyword"

    def __init__(self, keyword: str):
        self.keyword = keyword

    def score(self, premise: str, hypothesis: str) -> float:
        return 1.0 if self.keyword in hypothesis else 0.0


def make_argument(arg_id: str, premise: str = "X causes harm") -> Argument:
    return Argument(
        id=arg_id,
        conclusion="We should ban X",
        stance=Stance.AGAINST,
        premise=premise,
    )


def labels_for(arg_id: str, positives: tuple[int, ...] = ()) -> ValueLabels:
    flags = [0] * len(CATEGORIES)
    for index in positives:
        flags[index] = 1
    return ValueLabels(arg_id, tuple(flags))


def tsv_bytes(*rows: str) -> io.BytesIO:
    return io.BytesIO(("\n".join(rows) + "\n").encode("utf-8"))


def write_fixture_files(directory, n_arguments=60, statements_per_category=2, seed=0):
    """Materialize a synthetic fixture as corpus/bank TSVs; returns the paths."""
    from valuenli.corpus import write_arguments, write_labels
    from valuenli.statements import write_statements
    from valuenli.synthetic import make_separable_fixture

    fx = make_separable_fixture(n_arguments, statements_per_category, seed)
    paths = {
        "arguments": directory / "arguments.tsv",
        "labels": directory / "labels.tsv",
        "statements": directory / "statements.tsv",
    }
    write_arguments(fx.arguments, paths["arguments"])
    write_labels(fx.labels, paths["labels"])
    write_statements(fx.bank, paths["statements"])
    return paths, fx

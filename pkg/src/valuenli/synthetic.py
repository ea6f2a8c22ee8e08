"""Synthetic lexically-separable corpora for demos and desk-scale tests.

Each category owns a disjoint keyword vocabulary. Statements for a category
mention its keywords; an argument's premise contains every keyword of each
category it is positive for and none of the others. Token overlap therefore
separates entailing from non-entailing pairs: an entailing pair shares all
of the hypothesis' keyword content, a non-entailing pair shares almost none.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from valuenli.categories import CATEGORIES
from valuenli.corpus import Argument, Stance, ValueLabels
from valuenli.statements import DefinitionalStatement, StatementBank, StatementSource

KEYWORDS_PER_CATEGORY = 8
KEYWORDS_PER_STATEMENT = 6


@dataclass(frozen=True)
class SyntheticFixture:
    arguments: list[Argument]
    labels: list[ValueLabels]
    bank: StatementBank


def _keywords(category_index: int) -> list[str]:
    return [
        f"topic{category_index:02d}word{j}" for j in range(KEYWORDS_PER_CATEGORY)
    ]


def _positive_categories(i: int) -> tuple[int, ...]:
    first = i % len(CATEGORIES)
    second = (i + 1 + (i * 7) % 11) % len(CATEGORIES)
    return (first,) if second == first else (first, second)


def make_separable_fixture(
    n_arguments: int = 200,
    statements_per_category: int = 3,
    seed: int = 0,
) -> SyntheticFixture:
    rng = random.Random(seed)

    statements = []
    for category in CATEGORIES:
        words = _keywords(category.index)
        for s in range(statements_per_category):
            picked = [
                words[(s + offset) % KEYWORDS_PER_CATEGORY]
                for offset in range(KEYWORDS_PER_STATEMENT)
            ]
            source = (
                StatementSource.ANNOTATION if s % 2 == 0 else StatementSource.SURVEY
            )
            statements.append(
                DefinitionalStatement(
                    id=f"S{category.index:02d}-{s}",
                    category=category,
                    source=source,
                    text="It is important to value " + " ".join(picked),
                )
            )
    bank = StatementBank(statements)

    arguments = []
    labels = []
    for i in range(n_arguments):
        positives = _positive_categories(i)
        words = []
        for ci in positives:
            words.extend(_keywords(ci))
        rng.shuffle(words)
        premise = f"We value {' '.join(words)} in case{i:04d}"
        stance = Stance.IN_FAVOR_OF if i % 2 == 0 else Stance.AGAINST
        arguments.append(
            Argument(
                id=f"A{i:04d}",
                conclusion=f"We should act on case {i:04d}",
                stance=stance,
                premise=premise,
            )
        )
        flags = [0] * len(CATEGORIES)
        for ci in positives:
            flags[ci] = 1
        labels.append(ValueLabels(f"A{i:04d}", tuple(flags)))
    return SyntheticFixture(arguments=arguments, labels=labels, bank=bank)

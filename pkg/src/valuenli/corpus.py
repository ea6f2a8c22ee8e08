"""Argument corpus handling: parsing, validation, splitting, label stats.

The on-disk layout follows the challenge corpus conventions: a UTF-8
``arguments.tsv`` with columns "Argument ID", "Conclusion", "Stance",
"Premise", and a ``labels.tsv`` with "Argument ID" plus one 0/1 column per
value category. Label columns may appear in any order; they are remapped by
header name. Parsed corpora are immutable and safe to share across threads.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Iterable, Sequence

from valuenli.categories import CATEGORIES, CATEGORY_NAMES, NUM_CATEGORIES, ValueCategory
from valuenli.errors import (
    DataValueError,
    DuplicateIdError,
    EmptyInputError,
    SchemaError,
)
from valuenli import tsvio

ARGUMENT_COLUMNS = ("Argument ID", "Conclusion", "Stance", "Premise")
DEFAULT_FRACTIONS = (0.61, 0.21, 0.18)

SPLIT_FILE_NAMES = ("train.txt", "validation.txt", "test.txt")


class Stance(Enum):
    IN_FAVOR_OF = "in favor of"
    AGAINST = "against"


_STANCE_BY_TEXT = {s.value: s for s in Stance}


@dataclass(frozen=True)
class Argument:
    """One debate argument; the premise is the only field used for modeling."""

    id: str
    conclusion: str
    stance: Stance
    premise: str


@dataclass(frozen=True)
class ValueLabels:
    """Binary gold flags for one argument, indexed by canonical category order."""

    argument_id: str
    labels: tuple[int, ...]

    def __post_init__(self):
        if len(self.labels) != NUM_CATEGORIES:
            raise DataValueError(
                f"labels for {self.argument_id!r}: expected {NUM_CATEGORIES} flags, "
                f"got {len(self.labels)}"
            )
        if any(flag not in (0, 1) for flag in self.labels):
            raise DataValueError(f"labels for {self.argument_id!r}: flags must be 0 or 1")

    def label_for(self, category: ValueCategory) -> int:
        return self.labels[category.index]


@dataclass(frozen=True)
class DatasetSplit:
    """Disjoint train/validation/test id sets covering one corpus."""

    train: frozenset[str]
    validation: frozenset[str]
    test: frozenset[str]
    fractions: tuple[float, float, float] = DEFAULT_FRACTIONS

    def sizes(self) -> tuple[int, int, int]:
        return len(self.train), len(self.validation), len(self.test)


def parse_arguments(source: tsvio.Source) -> list[Argument]:
    """Parse arguments.tsv into Argument records, in file order."""
    header, rows = tsvio.read_rows(source)
    pos = tsvio.require_columns(header, ARGUMENT_COLUMNS)
    arguments = []
    seen = set()
    for number, fields in rows:
        arg_id = fields[pos["Argument ID"]]
        if not arg_id:
            raise DataValueError(f"row {number}: empty Argument ID")
        if arg_id in seen:
            raise DuplicateIdError(f"row {number}: duplicate Argument ID {arg_id!r}")
        seen.add(arg_id)
        stance_text = fields[pos["Stance"]]
        stance = _STANCE_BY_TEXT.get(stance_text)
        if stance is None:
            raise DataValueError(
                f"row {number}: unknown stance {stance_text!r} "
                f"(expected one of {sorted(_STANCE_BY_TEXT)})"
            )
        conclusion = fields[pos["Conclusion"]]
        premise = fields[pos["Premise"]]
        if not conclusion:
            raise DataValueError(f"row {number}: empty Conclusion")
        if not premise:
            raise DataValueError(f"row {number}: empty Premise")
        arguments.append(Argument(arg_id, conclusion, stance, premise))
    return arguments


def parse_labels(source: tsvio.Source) -> list[ValueLabels]:
    """Parse labels.tsv; label columns are matched by name, not position."""
    header, rows = tsvio.read_rows(source)
    pos = tsvio.require_columns(header, ("Argument ID",))
    id_col = pos["Argument ID"]
    category_cols: dict[int, int] = {}
    for col, name in enumerate(header):
        if col == id_col:
            continue
        if name not in CATEGORY_NAMES:
            raise SchemaError(f"unknown category column: {name!r}")
        category_cols[CATEGORY_NAMES.index(name)] = col
    missing = [name for i, name in enumerate(CATEGORY_NAMES) if i not in category_cols]
    if missing:
        raise SchemaError(f"missing category columns: {missing}")

    labels = []
    seen = set()
    for number, fields in rows:
        arg_id = fields[id_col]
        if not arg_id:
            raise DataValueError(f"row {number}: empty Argument ID")
        if arg_id in seen:
            raise DuplicateIdError(f"row {number}: duplicate Argument ID {arg_id!r}")
        seen.add(arg_id)
        flags = []
        for index in range(NUM_CATEGORIES):
            cell = fields[category_cols[index]]
            if cell not in ("0", "1"):
                raise DataValueError(
                    f"row {number}, column {CATEGORY_NAMES[index]!r}: "
                    f"expected 0 or 1, got {cell!r}"
                )
            flags.append(int(cell))
        labels.append(ValueLabels(arg_id, tuple(flags)))
    return labels


def write_arguments(arguments: Iterable[Argument], sink: tsvio.Source) -> None:
    with tsvio.LineWriter(sink) as out:
        out.write_line("\t".join(ARGUMENT_COLUMNS))
        for arg in arguments:
            out.write_line(
                "\t".join((arg.id, arg.conclusion, arg.stance.value, arg.premise))
            )


def write_labels(labels: Iterable[ValueLabels], sink: tsvio.Source) -> None:
    """Write the labels.tsv schema; predictions use the identical layout."""
    with tsvio.LineWriter(sink) as out:
        out.write_line("\t".join(("Argument ID",) + CATEGORY_NAMES))
        for row in labels:
            out.write_line("\t".join((row.argument_id,) + tuple(map(str, row.labels))))


def split_dataset(
    ids: Sequence[str],
    fractions: tuple[float, float, float] = DEFAULT_FRACTIONS,
    seed: int = 0,
) -> DatasetSplit:
    """Seeded fallback split; organizer-provided split files take precedence.

    Validation and test get floor(n * fraction) ids each; the remainder goes
    to train. Deterministic for a fixed (ids, seed).
    """
    if not ids:
        raise EmptyInputError("cannot split an empty id list")
    if len(fractions) != 3:
        raise DataValueError("fractions must be a (train, validation, test) triple")
    if any(f < 0 for f in fractions):
        raise DataValueError("fractions must be nonnegative")
    if abs(sum(fractions) - 1.0) > 1e-9:
        raise DataValueError(f"fractions must sum to 1.0, got {sum(fractions)!r}")
    unique = set(ids)
    if len(unique) != len(ids):
        raise DuplicateIdError("id list contains duplicates")

    n = len(ids)
    n_val = int(n * fractions[1])
    n_test = int(n * fractions[2])
    n_train = n - n_val - n_test

    order = list(ids)
    random.Random(seed).shuffle(order)
    return DatasetSplit(
        train=frozenset(order[:n_train]),
        validation=frozenset(order[n_train : n_train + n_val]),
        test=frozenset(order[n_train + n_val :]),
        fractions=tuple(fractions),
    )


def read_split_files(directory) -> DatasetSplit:
    """Read organizer split files (train.txt, validation.txt, test.txt)."""
    directory = Path(directory)
    parts = []
    for name in SPLIT_FILE_NAMES:
        path = directory / name
        if not path.exists():
            raise SchemaError(f"missing split file: {path}")
        ids = [line.strip() for line in path.read_text(encoding="utf-8").splitlines()]
        parts.append(frozenset(i for i in ids if i))
    train, validation, test = parts
    overlap = (train & validation) | (train & test) | (validation & test)
    if overlap:
        raise DataValueError(f"split files overlap on ids: {sorted(overlap)[:5]}")
    return DatasetSplit(train=train, validation=validation, test=test)


def check_split_covers(split: DatasetSplit, ids: Iterable[str]) -> None:
    """Require the split's union to equal the corpus id set."""
    corpus_ids = set(ids)
    union = set(split.train) | set(split.validation) | set(split.test)
    if union != corpus_ids:
        missing = sorted(corpus_ids - union)[:5]
        extra = sorted(union - corpus_ids)[:5]
        raise DataValueError(
            f"split does not cover the corpus (missing {missing}, extra {extra})"
        )


def select(arguments: Sequence[Argument], id_set: frozenset[str]) -> list[Argument]:
    """Subset arguments by id while preserving corpus order."""
    return [arg for arg in arguments if arg.id in id_set]


def label_prevalence(labels: Sequence[ValueLabels]) -> dict[ValueCategory, float]:
    """Fraction of arguments labelled positive, per category."""
    if not labels:
        raise EmptyInputError("cannot compute prevalence of an empty label list")
    total = len(labels)
    return {
        category: sum(row.labels[category.index] for row in labels) / total
        for category in CATEGORIES
    }

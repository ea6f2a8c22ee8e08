"""The definitional-statement bank.

A definitional statement is one harmonized sentence expressing a sub-aspect
of a value category, sourced either from annotation instructions or from
validated survey items. Harmonization is validated, never performed: every
text must already start with "It is important to ...". Banks are immutable
after construction; sampling returns a new bank.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Union

import numpy as np

from valuenli.categories import CATEGORIES, ValueCategory, category_for
from valuenli.errors import (
    CoverageError,
    DataValueError,
    DuplicateIdError,
    FormatError,
)
from valuenli import tsvio

HARMONIZATION_PREFIX = "It is important to "

STATEMENT_COLUMNS = ("ID", "Category", "Source", "Text")


class StatementSource(Enum):
    ANNOTATION = "annotation"
    SURVEY = "survey"


_SOURCE_BY_TEXT = {s.value: s for s in StatementSource}

# Reference bank composition (annotation, survey) per category, canonical
# order. A user-supplied full bank can be diffed against these via
# audit_counts; the shipped sample bank is intentionally much smaller.
REFERENCE_COUNTS = {
    "Self-direction: thought": (18, 18),
    "Self-direction: action": (17, 19),
    "Stimulation": (15, 15),
    "Hedonism": (6, 24),
    "Achievement": (26, 31),
    "Power: dominance": (11, 11),
    "Power: resources": (7, 9),
    "Face": (9, 13),
    "Security: personal": (28, 28),
    "Security: societal": (12, 14),
    "Tradition": (12, 21),
    "Conformity: rules": (13, 20),
    "Conformity: interpersonal": (8, 13),
    "Humility": (12, 16),
    "Benevolence: caring": (28, 30),
    "Benevolence: dependability": (11, 14),
    "Universalism: concern": (18, 17),
    "Universalism: nature": (18, 14),
    "Universalism: tolerance": (12, 9),
    "Universalism: objectivity": (13, 7),
}


@dataclass(frozen=True)
class DefinitionalStatement:
    """One harmonized hypothesis sentence tied to a category and a source."""

    id: str
    category: ValueCategory
    source: StatementSource
    text: str

    def __post_init__(self):
        if not self.text.startswith(HARMONIZATION_PREFIX):
            raise FormatError(
                f"statement {self.id!r}: text must start with "
                f"{HARMONIZATION_PREFIX!r}"
            )


class StatementBank:
    """Immutable collection of statements with per-(category, source) counts."""

    def __init__(self, statements: Iterable[DefinitionalStatement]):
        self.statements = tuple(statements)
        seen = set()
        by_category: dict[ValueCategory, list[DefinitionalStatement]] = {}
        counts: dict[tuple[ValueCategory, StatementSource], int] = {}
        for stmt in self.statements:
            if stmt.id in seen:
                raise DuplicateIdError(f"duplicate statement id {stmt.id!r}")
            seen.add(stmt.id)
            by_category.setdefault(stmt.category, []).append(stmt)
            key = (stmt.category, stmt.source)
            counts[key] = counts.get(key, 0) + 1
        self._by_category = {cat: tuple(group) for cat, group in by_category.items()}
        self.counts = counts

    def __len__(self) -> int:
        return len(self.statements)

    def __iter__(self):
        return iter(self.statements)

    def for_category(self, category: ValueCategory) -> tuple[DefinitionalStatement, ...]:
        return self._by_category.get(category, ())

    def categories_present(self) -> tuple[ValueCategory, ...]:
        return tuple(c for c in CATEGORIES if c in self._by_category)

    def missing_categories(self) -> tuple[ValueCategory, ...]:
        return tuple(c for c in CATEGORIES if not self._by_category.get(c))

    def require_full_coverage(self) -> None:
        missing = self.missing_categories()
        if missing:
            raise CoverageError(
                "bank has no statements for: "
                + ", ".join(c.name for c in missing)
            )


def load_statements(source: tsvio.Source) -> StatementBank:
    """Load and validate a statements.tsv bank."""
    header, rows = tsvio.read_rows(source)
    pos = tsvio.require_columns(header, STATEMENT_COLUMNS)
    statements = []
    for number, fields in rows:
        stmt_id = fields[pos["ID"]]
        if not stmt_id:
            raise DataValueError(f"row {number}: empty ID")
        category = category_for(fields[pos["Category"]])
        source_text = fields[pos["Source"]]
        stmt_source = _SOURCE_BY_TEXT.get(source_text)
        if stmt_source is None:
            raise DataValueError(
                f"row {number}: unknown source {source_text!r} "
                f"(expected one of {sorted(_SOURCE_BY_TEXT)})"
            )
        statements.append(
            DefinitionalStatement(stmt_id, category, stmt_source, fields[pos["Text"]])
        )
    return StatementBank(statements)


def write_statements(bank: StatementBank, sink: tsvio.Source) -> None:
    with tsvio.LineWriter(sink) as out:
        out.write_line("\t".join(STATEMENT_COLUMNS))
        for stmt in bank:
            out.write_line(
                "\t".join((stmt.id, stmt.category.name, stmt.source.value, stmt.text))
            )


def filter_by_source(
    bank: StatementBank, selector: Union[StatementSource, str]
) -> StatementBank:
    """Keep only statements of the selected source; "both" is the identity.

    Every category present in the input bank must survive the filter.
    """
    if isinstance(selector, str):
        if selector == "both":
            return StatementBank(bank.statements)
        if selector not in _SOURCE_BY_TEXT:
            raise DataValueError(
                f"unknown source selector {selector!r} "
                "(expected 'annotation', 'survey' or 'both')"
            )
        selector = _SOURCE_BY_TEXT[selector]
    kept = [s for s in bank if s.source is selector]
    filtered = StatementBank(kept)
    for category in bank.categories_present():
        if not filtered.for_category(category):
            raise CoverageError(
                f"filtering to source {selector.value!r} leaves no statements "
                f"for {category.name!r}"
            )
    return filtered


def _category_seed(seed: int, category: ValueCategory) -> int:
    digest = hashlib.blake2b(category.name.encode("utf-8"), digest_size=8).digest()
    return (seed ^ int.from_bytes(digest, "big")) & 0xFFFFFFFFFFFFFFFF


def sample_statements(bank: StatementBank, k: int, seed: int) -> StatementBank:
    """Draw k statements per category, uniformly with replacement.

    Each category uses its own RNG stream derived from (seed, category name),
    so the draw for one category never depends on the others. Duplicate draws
    become distinct bank entries with fresh ids ("origid#1", "origid#2", ...).
    """
    if k < 1:
        raise DataValueError(f"k must be >= 1, got {k}")
    bank.require_full_coverage()
    sampled = []
    occurrences: dict[str, int] = {}
    for category in CATEGORIES:
        pool = bank.for_category(category)
        rng = np.random.default_rng(_category_seed(seed, category))
        for index in rng.integers(0, len(pool), size=k):
            original = pool[int(index)]
            occurrence = occurrences.get(original.id, 0) + 1
            occurrences[original.id] = occurrence
            sampled.append(
                DefinitionalStatement(
                    id=f"{original.id}#{occurrence}",
                    category=original.category,
                    source=original.source,
                    text=original.text,
                )
            )
    return StatementBank(sampled)


@dataclass(frozen=True)
class StatementAudit:
    """Per-category/source statement counts, diffable against a reference."""

    by_category: dict[ValueCategory, dict[StatementSource, int]]
    source_totals: dict[StatementSource, int]
    total: int

    def count(self, category: ValueCategory, source: StatementSource) -> int:
        return self.by_category[category][source]

    def category_total(self, category: ValueCategory) -> int:
        return sum(self.by_category[category].values())

    def render(self) -> str:
        """Rows = annotation/survey/total, columns = categories plus Total."""
        lines = ["\t".join(("Source",) + tuple(c.name for c in CATEGORIES) + ("Total",))]
        for source in StatementSource:
            cells = [str(self.by_category[c][source]) for c in CATEGORIES]
            lines.append(
                "\t".join([source.value] + cells + [str(self.source_totals[source])])
            )
        totals = [str(self.category_total(c)) for c in CATEGORIES]
        lines.append("\t".join(["total"] + totals + [str(self.total)]))
        return "\n".join(lines) + "\n"

    def diff_reference(self, reference=None) -> list[str]:
        """Human-readable mismatches against the reference composition."""
        reference = REFERENCE_COUNTS if reference is None else reference
        problems = []
        for category in CATEGORIES:
            expected = reference[category.name]
            got = (
                self.by_category[category][StatementSource.ANNOTATION],
                self.by_category[category][StatementSource.SURVEY],
            )
            if got != tuple(expected):
                problems.append(
                    f"{category.name}: annotation/survey {got[0]}/{got[1]}, "
                    f"reference {expected[0]}/{expected[1]}"
                )
        return problems


def audit_counts(bank: StatementBank) -> StatementAudit:
    """Count statements per (category, source); zeros for absent combinations."""
    by_category = {
        category: {
            source: bank.counts.get((category, source), 0)
            for source in StatementSource
        }
        for category in CATEGORIES
    }
    source_totals = {
        source: sum(by_category[c][source] for c in CATEGORIES)
        for source in StatementSource
    }
    return StatementAudit(
        by_category=by_category,
        source_totals=source_totals,
        total=len(bank),
    )

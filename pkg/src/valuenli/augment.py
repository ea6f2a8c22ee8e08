"""Cross-product generation of premise/statement inference pairs.

Every argument premise is paired with every definitional statement; the pair
is labelled "entailment" exactly when the argument's gold flag for the
statement's category is 1. Conclusion and stance are dropped: the premise
alone carries the signal. Generation is streaming; the full cross-product
never has to fit in memory.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Optional, Sequence

from valuenli.categories import ValueCategory, category_for
from valuenli.corpus import Argument, ValueLabels
from valuenli.errors import ConsistencyError, DataValueError, WriteError
from valuenli.statements import StatementBank
from valuenli import tsvio

PAIR_COLUMNS = ("ArgumentID", "StatementID", "Category", "Premise", "Hypothesis", "Gold")


class Gold(Enum):
    ENTAILMENT = "entailment"
    NOT_ENTAILMENT = "not-entailment"


@dataclass(frozen=True)
class NliInstance:
    """One (premise, hypothesis) pair; gold is None for unlabeled data."""

    argument_id: str
    statement_id: str
    category: ValueCategory
    premise: str
    hypothesis: str
    gold: Optional[Gold] = None


def generate_pairs(
    arguments: Sequence[Argument],
    bank: StatementBank,
    labels: Optional[Sequence[ValueLabels]] = None,
) -> Iterator[NliInstance]:
    """Stream the cross-product, arguments outer, statements inner.

    Emits exactly len(arguments) * len(bank) instances in deterministic
    order. With labels, every argument id must have a label row.
    """
    label_map = None
    if labels is not None:
        label_map = {row.argument_id: row for row in labels}
        missing = [arg.id for arg in arguments if arg.id not in label_map]
        if missing:
            raise ConsistencyError(
                f"labeled mode but no label rows for argument ids: {missing[:5]}"
            )

    def stream() -> Iterator[NliInstance]:
        for arg in arguments:
            row = label_map[arg.id] if label_map is not None else None
            for stmt in bank:
                gold = None
                if row is not None:
                    gold = (
                        Gold.ENTAILMENT
                        if row.labels[stmt.category.index] == 1
                        else Gold.NOT_ENTAILMENT
                    )
                yield NliInstance(
                    argument_id=arg.id,
                    statement_id=stmt.id,
                    category=stmt.category,
                    premise=arg.premise,
                    hypothesis=stmt.text,
                    gold=gold,
                )

    return stream()


def pair_count(n_arguments: int, bank: StatementBank) -> int:
    """Closed form for the stream length."""
    if n_arguments < 0:
        raise DataValueError(f"n_arguments must be >= 0, got {n_arguments}")
    return n_arguments * len(bank)


_ESCAPES = {"\\": "\\\\", "\t": "\\t", "\n": "\\n", "\r": "\\r"}


def escape_cell(text: str) -> str:
    """Escape embedded backslashes and whitespace so TSV cells round-trip."""
    if not any(ch in text for ch in _ESCAPES):
        return text
    return "".join(_ESCAPES.get(ch, ch) for ch in text)


def unescape_cell(text: str) -> str:
    if "\\" not in text:
        return text
    out = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\\" and i + 1 < len(text):
            nxt = text[i + 1]
            mapped = {"\\": "\\", "t": "\t", "n": "\n", "r": "\r"}.get(nxt)
            if mapped is not None:
                out.append(mapped)
                i += 2
                continue
        out.append(ch)
        i += 1
    return "".join(out)


def write_pairs(stream: Iterable[NliInstance], sink: tsvio.Source) -> int:
    """Write pairs.tsv; returns the number of instances written.

    On I/O failure the error carries the count written so far.
    """
    written = 0
    try:
        with tsvio.LineWriter(sink) as out:
            out.write_line("\t".join(PAIR_COLUMNS))
            for instance in stream:
                out.write_line(
                    "\t".join(
                        (
                            escape_cell(instance.argument_id),
                            escape_cell(instance.statement_id),
                            instance.category.name,
                            escape_cell(instance.premise),
                            escape_cell(instance.hypothesis),
                            instance.gold.value if instance.gold is not None else "",
                        )
                    )
                )
                written += 1
    except OSError as exc:
        raise WriteError(f"failed writing pairs after {written} rows: {exc}", written)
    return written


def read_pairs(source: tsvio.Source) -> Iterator[NliInstance]:
    """Parse a pairs.tsv produced by write_pairs."""
    header, rows = tsvio.read_rows(source)
    pos = tsvio.require_columns(header, PAIR_COLUMNS)
    for number, fields in rows:
        gold_cell = fields[pos["Gold"]]
        if gold_cell == "":
            gold = None
        elif gold_cell in (Gold.ENTAILMENT.value, Gold.NOT_ENTAILMENT.value):
            gold = Gold(gold_cell)
        else:
            raise DataValueError(f"row {number}: unknown gold value {gold_cell!r}")
        yield NliInstance(
            argument_id=unescape_cell(fields[pos["ArgumentID"]]),
            statement_id=unescape_cell(fields[pos["StatementID"]]),
            category=category_for(fields[pos["Category"]]),
            premise=unescape_cell(fields[pos["Premise"]]),
            hypothesis=unescape_cell(fields[pos["Hypothesis"]]),
            gold=gold,
        )

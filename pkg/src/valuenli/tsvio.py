"""Minimal TSV reading/writing helpers.

All corpus-facing files are UTF-8, tab-separated, header-first. LF line
endings are accepted with or without a trailing CR. The csv module is
deliberately avoided: these files carry no quoting, and a quote character
inside a cell must survive verbatim.
"""

from __future__ import annotations

import io
from pathlib import Path
from typing import IO, Iterator, Union

from valuenli.errors import SchemaError

Source = Union[str, Path, IO[bytes], IO[str]]


def _decode(source: Source) -> str:
    if isinstance(source, (str, Path)):
        data = Path(source).read_bytes()
    else:
        data = source.read()
    if isinstance(data, bytes):
        return data.decode("utf-8-sig")
    return data.lstrip("﻿")


def read_rows(source: Source) -> tuple[list[str], Iterator[tuple[int, list[str]]]]:
    """Return (header, iterator of (1-based data row number, fields)).

    Every data row must have exactly as many fields as the header.
    """
    text = _decode(source)
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise SchemaError("empty file: missing header row")
    stripped = [line[:-1] if line.endswith("\r") else line for line in lines]
    header = stripped[0].split("\t")

    def rows() -> Iterator[tuple[int, list[str]]]:
        for number, line in enumerate(stripped[1:], start=1):
            fields = line.split("\t")
            if len(fields) != len(header):
                raise SchemaError(
                    f"row {number}: expected {len(header)} fields, got {len(fields)}"
                )
            yield number, fields

    return header, rows()


def require_columns(header: list[str], required: tuple[str, ...]) -> dict[str, int]:
    """Map required column names to their positions, or fail naming the gap."""
    positions = {}
    for name in required:
        try:
            positions[name] = header.index(name)
        except ValueError:
            raise SchemaError(f"missing required column: {name!r}") from None
    return positions


class LineWriter:
    """Write LF-terminated UTF-8 lines to a path, text stream or byte stream."""

    def __init__(self, sink: Source):
        self._close = False
        if isinstance(sink, (str, Path)):
            self._stream = open(sink, "wb")
            self._close = True
        else:
            self._stream = sink
        self._binary = not isinstance(self._stream, io.TextIOBase)

    def write_line(self, line: str) -> None:
        data = line + "\n"
        self._stream.write(data.encode("utf-8") if self._binary else data)

    def close(self) -> None:
        if self._close:
            self._stream.close()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()

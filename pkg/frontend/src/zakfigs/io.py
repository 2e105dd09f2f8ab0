"""CSV readers for the simulator's export schema."""

from __future__ import annotations

import csv

from .errors import EmptyInput, MissingColumn


def read_table(path: str, required: tuple[str, ...]) -> dict[str, list[str]]:
    """Read a CSV into columns, checking the schema before anything renders."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise EmptyInput(str(path)) from None
        for col in required:
            if col not in header:
                raise MissingColumn(col, str(path))
        rows = list(reader)
    if not rows:
        raise EmptyInput(str(path))
    table = {name: [] for name in header}
    for row in rows:
        for name, value in zip(header, row):
            table[name].append(value)
    return table


def floats(table: dict[str, list[str]], column: str) -> list[float]:
    return [float(x) for x in table[column]]

"""Reading and writing contingency tables.

The canonical on-disk form is CSV: a header row with the R category
labels (optionally preceded by an empty corner cell), then exactly R data
rows, each a row label followed by R non-negative integer counts. Row
labels must repeat the header labels in the same order. A JSON body with
the same content ({"labels": [...], "counts": [[...]]}) is accepted as an
alternative.
"""

from __future__ import annotations

import csv
import io
import json
import re
from pathlib import Path
from typing import IO

from .errors import LabelOrderMismatchError, MalformedCsvError
from .table import ContingencyTable, validate_table

_INT_RE = re.compile(r"^[+]?\d+$")


def _cell_to_count(cell: str, row_label: str, col_label: str) -> int:
    text = cell.strip()
    if not _INT_RE.match(text):
        raise MalformedCsvError(
            f"cell ({row_label!r}, {col_label!r}) is not a non-negative integer: {cell!r}"
        )
    return int(text)


def parse_table_csv(source: str | IO[str]) -> ContingencyTable:
    """Parse a contingency table from CSV text or a text stream."""
    if isinstance(source, str):
        source = io.StringIO(source)
    rows = [row for row in csv.reader(source)]
    rows = [row for row in rows if any(cell.strip() for cell in row)]
    if not rows:
        raise MalformedCsvError("empty input")
    header = [cell.strip() for cell in rows[0]]
    if header and header[0] == "":
        header = header[1:]
    if not header:
        raise MalformedCsvError("header row holds no labels")
    size = len(header)
    data_rows = rows[1:]
    if len(data_rows) != size:
        raise MalformedCsvError(f"expected {size} data rows, found {len(data_rows)}")
    labels: list[str] = []
    counts: list[list[int]] = []
    for r, row in enumerate(data_rows):
        cells = [cell.strip() for cell in row]
        if len(cells) != size + 1:
            raise MalformedCsvError(
                f"row {r + 2} holds {len(cells)} cells, expected label + {size} counts"
            )
        labels.append(cells[0])
        counts.append(
            [_cell_to_count(cells[j + 1], cells[0], header[j]) for j in range(size)]
        )
    if labels != header:
        raise LabelOrderMismatchError(
            f"row labels {labels} do not match column labels {header} in order"
        )
    return validate_table(labels, counts)


def serialize_table_csv(t: ContingencyTable) -> str:
    """CSV form of a table; parse_table_csv inverts this exactly."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow([""] + list(t.labels))
    for label, row in zip(t.labels, t.counts):
        writer.writerow([label] + [int(x) for x in row])
    return out.getvalue()


def parse_table_json(text: str) -> ContingencyTable:
    """Parse the JSON alternative body {"labels": [...], "counts": [[...]]}."""
    try:
        body = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedCsvError(f"invalid JSON table: {exc}") from exc
    if not isinstance(body, dict) or "labels" not in body or "counts" not in body:
        raise MalformedCsvError('JSON table requires "labels" and "counts" fields')
    counts = body["counts"]
    if not isinstance(counts, list) or not all(
        isinstance(row, list) and all(isinstance(x, int) and not isinstance(x, bool) for x in row)
        for row in counts
    ):
        raise MalformedCsvError('"counts" must be a matrix of integers')
    return validate_table([str(x) for x in body["labels"]], counts)


def load_table(path: str | Path) -> ContingencyTable:
    """Load a table from a CSV or JSON file, sniffing by content."""
    text = Path(path).read_text(encoding="utf-8")
    if text.lstrip().startswith("{"):
        return parse_table_json(text)
    return parse_table_csv(text)

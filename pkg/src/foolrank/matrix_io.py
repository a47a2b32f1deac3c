"""Matrix files: JSON or CSV, entries always written as exact strings.

JSON::

    {"field": "gf:2", "n_rows": 2, "n_cols": 2,
     "entries": [["1", "0"], ["0", "1"]]}

CSV: ``field,<tag>`` then ``shape,<rows>,<cols>``, then one line per row.
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

from .exact_algebra import ExactMatrix, FieldSpec


class MatrixFormatError(ValueError):
    pass


def _cell(x) -> str:
    return str(x)


def dumps_json(m: ExactMatrix) -> str:
    head = json.dumps({"field": m.field.tag, "n_rows": m.n_rows, "n_cols": m.n_cols})
    rows = ",\n  ".join(json.dumps([_cell(x) for x in row]) for row in m.rows)
    return head[:-1] + ',\n "entries": [\n  ' + rows + "\n ]\n}\n"


def dumps_csv(m: ExactMatrix) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["field", m.field.tag])
    w.writerow(["shape", m.n_rows, m.n_cols])
    for row in m.rows:
        w.writerow([_cell(x) for x in row])
    return buf.getvalue()


def dumps(m: ExactMatrix, fmt: str = "json") -> str:
    if fmt == "json":
        return dumps_json(m)
    if fmt == "csv":
        return dumps_csv(m)
    raise ValueError(f"unknown format {fmt!r}")


def _build(field_tag: str, n_rows: int, n_cols: int, rows: list[list[str]]) -> ExactMatrix:
    try:
        field = FieldSpec.parse(field_tag)
    except ValueError as e:
        raise MatrixFormatError(str(e)) from None
    if n_rows < 1 or n_cols < 1:
        raise MatrixFormatError(f"bad shape {n_rows}x{n_cols}")
    if len(rows) != n_rows or any(len(r) != n_cols for r in rows):
        raise MatrixFormatError(f"entries do not match declared shape {n_rows}x{n_cols}")
    if not field.is_rational and any("/" in str(x) for r in rows for x in r):
        raise MatrixFormatError(f"fractions are not valid entries over {field}")
    try:
        return ExactMatrix(field, rows)
    except (ValueError, TypeError, ZeroDivisionError) as e:
        raise MatrixFormatError(f"bad entry: {e}") from None


def loads_json(text: str) -> ExactMatrix:
    try:
        obj = json.loads(text)
        tag, n_rows, n_cols, entries = obj["field"], obj["n_rows"], obj["n_cols"], obj["entries"]
    except (json.JSONDecodeError, KeyError, TypeError) as e:
        raise MatrixFormatError(f"malformed matrix JSON: {e}") from None
    if not isinstance(entries, list) or not all(isinstance(r, list) for r in entries):
        raise MatrixFormatError("entries must be a list of rows")
    if any(not isinstance(x, str) for r in entries for x in r):
        raise MatrixFormatError("entries must be strings")
    return _build(tag, int(n_rows), int(n_cols), entries)


def loads_csv(text: str) -> ExactMatrix:
    lines = list(csv.reader(io.StringIO(text)))
    lines = [l for l in lines if l]
    if len(lines) < 2 or lines[0][:1] != ["field"] or lines[1][:1] != ["shape"]:
        raise MatrixFormatError("CSV must start with 'field,<tag>' and 'shape,<rows>,<cols>'")
    try:
        tag = lines[0][1]
        n_rows, n_cols = int(lines[1][1]), int(lines[1][2])
    except (IndexError, ValueError):
        raise MatrixFormatError("bad CSV header") from None
    return _build(tag, n_rows, n_cols, [[x.strip() for x in l] for l in lines[2:]])


def loads(text: str) -> ExactMatrix:
    if text.lstrip().startswith("{"):
        return loads_json(text)
    return loads_csv(text)


def read_matrix(path: str | Path) -> ExactMatrix:
    return loads(Path(path).read_text())


def write_matrix(m: ExactMatrix, path: str | Path, fmt: str | None = None) -> None:
    path = Path(path)
    if fmt is None:
        fmt = "csv" if path.suffix.lower() == ".csv" else "json"
    path.write_text(dumps(m, fmt))

"""JSON / CSV / TSV writers.  Exact numbers go out as strings, never floats."""
from __future__ import annotations

import csv
import io
import json
from fractions import Fraction

FORMATS = ("json", "csv", "tsv")


def plain(value):
    """Recursively turn Fractions into "p/q" strings and tuples into lists."""
    if isinstance(value, Fraction):
        return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    if isinstance(value, dict):
        return {str(k): plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [plain(v) for v in value]
    if isinstance(value, float):
        raise TypeError("refusing to serialize a float")
    return value


def _cell(value) -> str:
    value = plain(value)
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return ""
    if isinstance(value, (list, dict)):
        return json.dumps(value, separators=(",", ":"))
    return str(value)


def render(rows: list[dict] | None, obj=None, fmt: str = "json") -> str:
    """Render a result.

    ``rows`` is the tabular view used for CSV/TSV; ``obj`` (if given) is the
    JSON view, otherwise JSON gets the rows themselves.
    """
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}")
    if fmt == "json":
        return json.dumps(plain(obj if obj is not None else rows), indent=2) + "\n"
    if rows is None:
        rows = [obj] if isinstance(obj, dict) else []
    header: list[str] = []
    for row in rows:
        for k in row:
            if k not in header:
                header.append(k)
    buf = io.StringIO()
    w = csv.writer(buf, delimiter="," if fmt == "csv" else "\t", lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_cell(row.get(k)) for k in header])
    return buf.getvalue()

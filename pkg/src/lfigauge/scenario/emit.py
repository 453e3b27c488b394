"""Deterministic CSV and JSON writers."""

import csv
import io
import json
import math
from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class Table:
    name: str
    columns: tuple
    rows: list = field(default_factory=list)
    meta: dict = field(default_factory=dict)


def format_value(v):
    """12 significant digits for reals; strings and booleans pass through."""
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        v = float(v)
        if v == 0.0:
            return "0"
        return format(v, ".12g")
    return str(v)


def _json_value(v):
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, (float, np.floating)):
        v = float(v)
        return None if not math.isfinite(v) else float(format_value(v))
    if isinstance(v, dict):
        return {k: _json_value(x) for k, x in v.items()}
    if isinstance(v, (list, tuple, np.ndarray)):
        return [_json_value(x) for x in v]
    return v


def csv_bytes(table):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(table.columns)
    for row in table.rows:
        writer.writerow([format_value(v) for v in row])
    return buf.getvalue().encode("utf-8")


def json_bytes(tables):
    doc = {t.name: {"columns": list(t.columns), "rows": _json_value(t.rows),
                    "meta": _json_value(t.meta)} for t in tables}
    return (json.dumps(doc, sort_keys=True, indent=2) + "\n").encode("utf-8")


def emit(tables, fmt, directory, stem):
    """Write result tables; returns the list of paths written.

    CSV writes one file per table (``stem.csv`` when there is a single
    table, ``stem_<name>.csv`` otherwise); JSON writes ``stem.json``.
    """
    directory.mkdir(parents=True, exist_ok=True)
    if fmt == "json":
        path = directory / f"{stem}.json"
        path.write_bytes(json_bytes(tables))
        return [path]
    paths = []
    for t in tables:
        path = directory / (f"{stem}.csv" if len(tables) == 1 else f"{stem}_{t.name}.csv")
        path.write_bytes(csv_bytes(t))
        paths.append(path)
    return paths

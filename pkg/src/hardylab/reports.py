"""Deterministic machine-readable reports.

CSV files carry exactly a header row plus data rows (RFC 4180, '.' decimal
separator, 17 significant digits); JSON reports are objects
{config, rows, summary}. Identical (config, seed) runs produce byte-identical
files. HARDYLAB_THREADS caps the thread pool used for batch maps; results are
always collected in input order, so the output does not depend on it.
"""

from __future__ import annotations

import csv
import io
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Sequence

__all__ = ["format_number", "render_csv", "render_json", "emit_report",
           "thread_count", "ordered_map"]


def format_number(x) -> str:
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


def render_csv(rows: Sequence[dict], header: Sequence[str] | None = None) -> str:
    if rows:
        row_header = list(rows[0].keys())
        if header is not None and list(header) != row_header:
            raise ValueError("declared header does not match row keys")
        header = row_header
        for row in rows:
            if list(row.keys()) != header:
                raise ValueError("rows must be homogeneous")
    elif header is None:
        raise ValueError("empty report needs an explicit header")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_number(v) for v in row.values()])
    return buf.getvalue()


def render_json(config: dict, rows: Sequence[dict], summary: dict) -> str:
    return json.dumps({"config": config, "rows": list(rows),
                       "summary": summary}, indent=2) + "\n"


def emit_report(rows: Sequence[dict], fmt: str, path: str | None,
                config: dict, summary: dict,
                header: Sequence[str] | None = None) -> None:
    """Write the run report; CSV keeps the table clean (header + rows only)
    and surfaces the resolved config on stderr instead."""
    if fmt == "csv":
        text = render_csv(rows, header)
        print(json.dumps({"config": config, "summary": summary}),
              file=sys.stderr)
    elif fmt == "json":
        text = render_json(config, rows, summary)
    else:
        raise ValueError(f"unknown output format {fmt!r}")
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def thread_count() -> int:
    raw = os.environ.get("HARDYLAB_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def ordered_map(fn: Callable, items: Iterable) -> list:
    """Map preserving input order; parallel when HARDYLAB_THREADS > 1."""
    items = list(items)
    n = thread_count()
    if n <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))

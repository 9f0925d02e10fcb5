# src/midicoth/io/report_writer.py
import csv  # built-in CSV handling module
import json  # standard JSON serialization module
import platform  # OS / interpreter info for run summaries
import time
from typing import Any, Dict, Iterable, List, Optional, Sequence, TextIO

import numpy as np


def write_csv_stream(stream: TextIO, rows: Iterable[Dict]) -> int:  # same layout as write_rows_csv, to an open stream
    rows = list(rows)
    if not rows:
        return 0
    w = csv.DictWriter(stream, fieldnames=list(rows[0].keys()), lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow(r)
    return len(rows)


def write_rows_csv(path: str, rows: Iterable[Dict]) -> int:  # one CSV line per report row; returns rows written
    with open(path, "w", newline="", encoding="utf-8") as f:  # UTF-8, no extra newlines
        return write_csv_stream(f, rows)


def write_json(path: str, data: Any):  # pretty JSON, Unicode kept
    with open(path, "w", encoding="utf-8") as f:
        json.dump(data, f, ensure_ascii=False, indent=2)


def system_info() -> Dict[str, str]:
    return {"os": platform.platform(), "python": platform.python_version(), "numpy": np.__version__}


def run_summary(command: str, inputs: Sequence[str], results: Dict[str, Any],
                extra: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
    """Top-level JSON written by `bench --json`: what ran, on what, where."""
    summ = {
        "command": command,
        "finished_at": time.strftime("%Y-%m-%d %H:%M:%S"),
        "inputs": list(inputs),
        "system": system_info(),
        "results": results,
    }
    if extra:
        summ.update(extra)
    return summ


def _cell(v: Any) -> str:
    if isinstance(v, float):
        return f"{v:.4f}" if abs(v) < 10 else f"{v:,.1f}"
    if isinstance(v, int) and not isinstance(v, bool):
        return f"{v:,}"
    return str(v)


def format_table(rows: Iterable[Dict], columns: Optional[List[str]] = None) -> str:
    """Aligned plain-text table; text columns left, numbers right."""
    rows = list(rows)
    if not rows:
        return ""
    columns = columns or list(rows[0].keys())
    cells = [[_cell(r[c]) for c in columns] for r in rows]
    widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(columns)]
    numeric = [all(isinstance(r[c], (int, float)) for r in rows) for c in columns]

    def line(values: List[str]) -> str:
        return "  ".join(v.rjust(w) if num else v.ljust(w) for v, w, num in zip(values, widths, numeric)).rstrip()

    out = [line(columns), line(["-" * w for w in widths])]
    out.extend(line(row) for row in cells)
    return "\n".join(out)

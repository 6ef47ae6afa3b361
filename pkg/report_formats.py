#!/usr/bin/env python3
"""
Report Formats
JSON, CSV and plain rendering of toolkit results
"""

import csv
import dataclasses
import io
import json
import logging
import sys
from enum import Enum
from typing import Any, Dict, List, Optional

import numpy as np

logger = logging.getLogger(__name__)

# Reals in reports carry 12 significant digits
REAL_DIGITS = 12


class ReportJSONEncoder(json.JSONEncoder):
    """Encode toolkit objects to valid JSON"""
    def default(self, obj):
        if isinstance(obj, Enum):
            return obj.value
        if isinstance(obj, (set, frozenset)):
            return sorted(obj)
        if isinstance(obj, np.integer):
            return int(obj)
        if isinstance(obj, np.floating):
            return round_real(float(obj))
        if isinstance(obj, np.ndarray):
            return obj.tolist()
        if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
            return dataclasses.asdict(obj)
        return super().default(obj)


def round_real(x: float) -> float:
    return float(f"{x:.{REAL_DIGITS}g}")


def _normalize(obj: Any) -> Any:
    """Turn dataclasses into dicts and round every real, recursively."""
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        obj = dataclasses.asdict(obj)
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, (float, np.floating)):
        return round_real(float(obj))
    if isinstance(obj, dict):
        return {(k.value if isinstance(k, Enum) else k): _normalize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_normalize(v) for v in obj]
    return obj


def to_json(obj: Any) -> str:
    return json.dumps(_normalize(obj), indent=2, cls=ReportJSONEncoder)


def to_csv(rows: List[Dict[str, Any]]) -> str:
    """One CSV line per row; nested values are written as JSON."""
    if not rows:
        return ""
    buffer = io.StringIO()
    columns = list(_normalize(rows[0]).keys())
    writer = csv.DictWriter(buffer, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        flat = {}
        for key, value in _normalize(row).items():
            if isinstance(value, (dict, list)):
                flat[key] = json.dumps(value, cls=ReportJSONEncoder)
            elif value is None:
                flat[key] = ""
            else:
                flat[key] = value
        writer.writerow(flat)
    return buffer.getvalue()


def _plain_value(value: Any) -> str:
    return value if isinstance(value, str) else json.dumps(value, cls=ReportJSONEncoder)


def to_plain(obj: Any) -> str:
    """Compact key: value lines for dicts, one item per line for lists."""
    obj = _normalize(obj)
    if isinstance(obj, dict):
        return "\n".join(f"{k}: {_plain_value(v)}" for k, v in obj.items())
    if isinstance(obj, list):
        return "\n".join(to_plain(item) if isinstance(item, dict) else _plain_value(item) for item in obj)
    return _plain_value(obj)


def to_table(rows: List[Dict[str, Any]]) -> str:
    """Whitespace-aligned table with a header line."""
    if not rows:
        return ""
    rows = [_normalize(row) for row in rows]
    columns = list(rows[0].keys())
    cells = [[str(c) for c in columns]] + [["" if row.get(c) is None else _plain_value(row.get(c)) for c in columns]
                                            for row in rows]
    widths = [max(len(line[i]) for line in cells) for i in range(len(columns))]
    return "\n".join("  ".join(cell.rjust(width) for cell, width in zip(line, widths)).rstrip() for line in cells)


def write_output(text: str, out: Optional[str] = None) -> None:
    """Write to a file, or to stdout when no path is given"""
    if not text.endswith("\n"):
        text += "\n"
    if out:
        with open(out, "w", encoding="utf-8") as f:
            f.write(text)
        logger.info(f"Wrote report to {out}")
    else:
        sys.stdout.write(text)

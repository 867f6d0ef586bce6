"""Comma-separated report tables with a fixed float format."""

from __future__ import annotations

import csv
import io
import math
from decimal import ROUND_HALF_EVEN, Decimal
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Iterable, List, Sequence

SIGNIFICANT_DIGITS = 6


def format_float(value: float, digits: int = SIGNIFICANT_DIGITS) -> str:
    """Round to ``digits`` significant digits, ties to even, no exponent for typical magnitudes."""
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    if value == 0:
        return "0"
    d = Decimal(value)
    exponent = d.adjusted()
    quantum = Decimal(1).scaleb(exponent - digits + 1)
    rounded = d.quantize(quantum, rounding=ROUND_HALF_EVEN)
    if rounded.adjusted() > exponent:
        # 9.999995 -> 10.0000: re-quantize at the new magnitude
        quantum = Decimal(1).scaleb(rounded.adjusted() - digits + 1)
        rounded = d.quantize(quantum, rounding=ROUND_HALF_EVEN)
    if -7 <= rounded.adjusted() < 16:
        text = format(rounded, "f")
        if "." in text:
            text = text.rstrip("0").rstrip(".")
    else:
        text = format(rounded.normalize(), "E")
    if text in {"-0", ""}:
        text = "0"
    return text


def format_cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format_float(value)
    if isinstance(value, Enum):
        return str(value.value)
    return str(value)


def render_csv(columns: Sequence[str], rows: Iterable[Dict[str, Any]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_cell(row.get(c)) for c in columns])
    return buf.getvalue()


def write_table(path: str | Path, columns: Sequence[str], rows: Iterable[Dict[str, Any]]) -> Path:
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    with p.open("w", encoding="utf-8", newline="") as f:
        f.write(render_csv(columns, rows))
    return p


def render_text(columns: Sequence[str], rows: Iterable[Dict[str, Any]], title: str | None = None) -> str:
    cells = [[format_cell(r.get(c)) for c in columns] for r in rows]
    widths = [max([len(c)] + [len(row[i]) for row in cells]) for i, c in enumerate(columns)]
    lines: List[str] = []
    if title:
        lines.append(title)
    lines.append("  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip())
    lines.append("  ".join("-" * w for w in widths))
    for row in cells:
        lines.append("  ".join(v.rjust(w) for v, w in zip(row, widths)).rstrip())
    return "\n".join(lines) + "\n"


def read_table(path: str | Path) -> List[Dict[str, str]]:
    with Path(path).open(newline="", encoding="utf-8-sig") as f:
        return [{k.strip(): (v or "").strip() for k, v in row.items() if k is not None} for row in csv.DictReader(f)]


def parse_optional_float(raw: str | None) -> float | None:
    if raw is None or raw == "":
        return None
    return float(raw)

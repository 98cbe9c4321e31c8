"""CSV emission: one ``#``-prefixed metadata line, a header, then rows.

Floats are written with ``repr`` so identical inputs give identical bytes.
"""

from __future__ import annotations

import csv
import io
from pathlib import Path


def _fmt(v):
    if isinstance(v, bool):
        return "1" if v else "0"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def meta_line(meta: dict) -> str:
    return "# " + " ".join(f"{k}={_fmt(v)}" for k, v in meta.items())


def render_csv(meta: dict, header, rows) -> str:
    buf = io.StringIO()
    buf.write(meta_line(meta) + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def write_csv(path, meta: dict, header, rows) -> Path:
    path = Path(path)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(render_csv(meta, header, rows))
    return path


def read_csv(path):
    """Return (meta dict, header list, rows as lists of strings)."""
    with open(path, encoding="utf-8", newline="") as fh:
        first = fh.readline().rstrip("\n")
        if not first.startswith("# "):
            raise ValueError(f"{path}: missing metadata line")
        meta = dict(item.split("=", 1) for item in first[2:].split(" ") if item)
        reader = csv.reader(fh)
        header = next(reader)
        rows = list(reader)
    return meta, header, rows

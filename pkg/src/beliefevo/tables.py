"""Small tabular container with CSV/JSON rendering and atomic file output."""
from __future__ import annotations

import csv
import io
import json
import os
import tempfile
from dataclasses import dataclass, field
from pathlib import Path

FORMATS = ("csv", "json")


@dataclass
class Table:
    name: str
    header: list
    rows: list = field(default_factory=list)

    def add(self, *cells):
        if len(cells) != len(self.header):
            raise ValueError(f"row has {len(cells)} cells, header has {len(self.header)}")
        self.rows.append(list(cells))

    def column(self, name):
        j = self.header.index(name)
        return [r[j] for r in self.rows]

    def render(self, fmt: str = "csv", precision: int | None = 4) -> str:
        if fmt == "csv":
            return to_csv(self, precision)
        if fmt == "json":
            return to_json(self, precision)
        raise ValueError(f"unknown format {fmt!r}; choose from {FORMATS}")


def _cell(v, precision):
    if isinstance(v, float):
        return repr(v) if precision is None else f"{v:.{precision}f}"
    return str(v)


def to_csv(table: Table, precision: int | None = 4) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(table.header)
    for row in table.rows:
        writer.writerow([_cell(v, precision) for v in row])
    return buf.getvalue()


def to_json(table: Table, precision: int | None = 4) -> str:
    def conv(v):
        if isinstance(v, float) and precision is not None:
            return round(v, precision)
        return v

    payload = {
        "table": table.name,
        "columns": list(table.header),
        "rows": [[conv(v) for v in row] for row in table.rows],
    }
    return json.dumps(payload, indent=2) + "\n"


def atomic_write(path, text: str):
    """Write ``text`` to ``path`` through a temporary file and a rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise

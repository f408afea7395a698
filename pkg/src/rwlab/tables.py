"""Delimited experiment tables: one table per file, metadata preamble, CSV or JSON.

CSV files carry `# key=value` comment lines before the header row; reals are
written with 17 significant digits and a dot decimal separator, so identical
configurations reproduce byte-identical files.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass
class Table:
    name: str
    columns: list[str]
    rows: list[list] = field(default_factory=list)
    meta: dict[str, str] = field(default_factory=dict)

    def add(self, *values) -> None:
        if len(values) != len(self.columns):
            raise ValueError(f"expected {len(self.columns)} values, got {len(values)}")
        self.rows.append(list(values))


def format_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return f"{v:.17g}"
    return str(v)


def _parse_value(s: str):
    if s == "true":
        return True
    if s == "false":
        return False
    try:
        return int(s)
    except ValueError:
        pass
    try:
        return float(s)
    except ValueError:
        return s


def write_csv(table: Table) -> str:
    lines = [f"# table={table.name}"]
    for k, v in table.meta.items():
        lines.append(f"# {k}={v}")
    lines.append(",".join(table.columns))
    for row in table.rows:
        lines.append(",".join(format_value(v) for v in row))
    return "\n".join(lines) + "\n"


def read_csv(text: str) -> Table:
    meta: dict[str, str] = {}
    name = ""
    columns: list[str] | None = None
    rows: list[list] = []
    for line in text.splitlines():
        if not line.strip():
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if "=" in body:
                k, v = body.split("=", 1)
                if k == "table":
                    name = v
                else:
                    meta[k] = v
            continue
        if columns is None:
            columns = line.split(",")
            continue
        rows.append([_parse_value(s) for s in line.split(",")])
    if columns is None:
        raise ValueError("no header row found")
    return Table(name, columns, rows, meta)


def write_json(table: Table) -> str:
    payload = {
        "table": table.name,
        "meta": table.meta,
        "columns": table.columns,
        "rows": [[_json_value(v) for v in row] for row in table.rows],
    }
    return json.dumps(payload, indent=1, sort_keys=True) + "\n"


def _json_value(v):
    if isinstance(v, float):
        return float(f"{v:.17g}")
    return v


def read_json(text: str) -> Table:
    payload = json.loads(text)
    return Table(payload["table"], payload["columns"], payload["rows"], payload.get("meta", {}))


def write_table(table: Table, fmt: str) -> str:
    if fmt == "csv":
        return write_csv(table)
    if fmt == "json":
        return write_json(table)
    raise ValueError(f"unknown format {fmt!r}")


def read_table(text: str) -> Table:
    if text.lstrip().startswith("{"):
        return read_json(text)
    return read_csv(text)

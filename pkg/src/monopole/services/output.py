"""CSV and JSON writers for result tables."""

import csv
import io
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Literal

from pydantic import BaseModel, Field

from monopole.errors import BadArgumentError

SCHEMA = "monopole/1"
STATUS_COLUMN = "status"

Cell = float | int | str | None


@dataclass
class ResultTable:
    """Rows of named cells with a fixed column order."""

    columns: list[str]
    rows: list[dict[str, Cell]] = field(default_factory=list)

    def append(self, row: dict[str, Cell]) -> None:
        unknown = set(row) - set(self.columns)
        if unknown:
            raise BadArgumentError(f"Row has columns outside the table: {sorted(unknown)}")
        self.rows.append(row)

    def column(self, name: str) -> list[Cell]:
        return [row.get(name) for row in self.rows]


class ResultDocument(BaseModel):
    """Versioned JSON artifact."""

    schema_: str = Field(default=SCHEMA, alias="schema")
    command: str
    metadata: dict[str, Any] = Field(default_factory=dict)
    columns: list[str]
    rows: list[dict[str, Cell]]

    model_config = {"populate_by_name": True}


def _format_cell(value: Cell) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def to_csv(table: ResultTable) -> str:
    """CSV text with the header in ``table.columns`` order."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(table.columns)
    for row in table.rows:
        writer.writerow([_format_cell(row.get(name)) for name in table.columns])
    return buffer.getvalue()


def to_json(table: ResultTable, command: str, metadata: dict[str, Any] | None = None) -> str:
    """JSON text with sorted keys and a ``schema`` field."""
    document = ResultDocument(
        command=command,
        metadata=metadata or {},
        columns=table.columns,
        rows=[{name: row.get(name) for name in table.columns} for row in table.rows],
    )
    payload = document.model_dump(mode="json", by_alias=True)
    return json.dumps(payload, sort_keys=True, indent=2, allow_nan=False) + "\n"


def render(
    table: ResultTable,
    fmt: Literal["csv", "json"],
    command: str,
    metadata: dict[str, Any] | None = None,
) -> str:
    if fmt == "csv":
        return to_csv(table)
    if fmt == "json":
        return to_json(table, command, metadata)
    raise BadArgumentError(f"Unknown output format {fmt!r}")


def write_table(
    table: ResultTable,
    path: Path,
    fmt: Literal["csv", "json"],
    command: str,
    metadata: dict[str, Any] | None = None,
) -> Path:
    """Write a rendered table to ``path``, creating parent directories.

    Returns:
        The resolved output path.
    """
    path = Path(path).expanduser()
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(render(table, fmt, command, metadata), encoding="utf-8")
    return path.resolve()

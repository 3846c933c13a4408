"""Dataset emission: CSV or JSON-lines with a reproducibility manifest.

Every file starts with a manifest recording the artifact version and all
parameters (including the seed) needed to regenerate each row. Writes go
through a temporary file in the target directory followed by an atomic
rename; reruns with identical parameters produce byte-identical files.
"""

from __future__ import annotations

import csv
import json
import os
from collections.abc import Mapping, Sequence
from pathlib import Path

SCHEMA_VERSION = 1


def format_value(value) -> str:
    """Canonical text form: floats at 17 significant digits."""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return f"{value:.17g}"
    if isinstance(value, (list, tuple)):
        return "[" + ",".join(format_value(v) for v in value) + "]"
    return str(value)


def _write_csv(handle, columns: Sequence[str], rows: Sequence[Mapping],
               manifest: Mapping) -> None:
    for key in sorted(manifest):
        handle.write(f"# {key}={format_value(manifest[key])}\n")
    writer = csv.writer(handle)
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_value(row[c]) for c in columns])


def _write_jsonl(handle, columns: Sequence[str], rows: Sequence[Mapping],
                 manifest: Mapping) -> None:
    handle.write(json.dumps({"manifest": dict(manifest)}, sort_keys=True) + "\n")
    for row in rows:
        handle.write(json.dumps({c: row[c] for c in columns}) + "\n")


def write_dataset(path: str | Path, columns: Sequence[str], rows: Sequence[Mapping],
                  manifest: Mapping, output_format: str = "csv") -> Path:
    """Write rows to ``path`` atomically; returns the final path."""
    if output_format not in ("csv", "jsonl"):
        raise ValueError(f"output format must be 'csv' or 'jsonl', got {output_format!r}")
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    with open(tmp, "w", encoding="utf-8", newline="") as handle:
        if output_format == "csv":
            _write_csv(handle, columns, rows, manifest)
        else:
            _write_jsonl(handle, columns, rows, manifest)
    os.replace(tmp, path)
    return path

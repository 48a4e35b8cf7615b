"""CSV writers/readers shared by the library and the command line.

Every file starts with '#'-prefixed metadata lines (one ``# key: value`` per
line), then a header row, then data rows printed with 17 significant digits
so that re-parsing reproduces the in-memory doubles exactly.
"""

from __future__ import annotations

import os
from typing import Iterable, Mapping

import numpy as np

__all__ = ["format_value", "write_csv", "read_csv", "resolve_output_path"]

OUTPUT_DIR_ENV = "IMEXDDE_OUTPUT_DIR"


def format_value(x) -> str:
    if isinstance(x, (float, np.floating)):
        return f"{x:.17g}"
    return str(x)


def write_csv(path, header: Iterable[str], rows: Iterable[Iterable],
              metadata: Mapping[str, object] | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for key, value in (metadata or {}).items():
            fh.write(f"# {key}: {value}\n")
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(format_value(x) for x in row) + "\n")


def read_csv(path):
    """Return (metadata, header, rows) with rows as float ndarray (nan for blanks)."""
    metadata: dict[str, str] = {}
    header: list[str] = []
    rows: list[list[float]] = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                body = line[1:].strip()
                if ":" in body:
                    key, value = body.split(":", 1)
                    metadata[key.strip()] = value.strip()
                continue
            if not header:
                header = [c.strip() for c in line.split(",")]
                continue
            rows.append([float(c) if c.strip() else np.nan for c in line.split(",")])
    return metadata, header, np.asarray(rows, dtype=float)


def resolve_output_path(path: str) -> str:
    """Prefix relative output paths with $IMEXDDE_OUTPUT_DIR when it is set."""
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not os.path.isabs(path):
        os.makedirs(base, exist_ok=True)
        return os.path.join(base, path)
    return path

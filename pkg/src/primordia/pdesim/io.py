"""Plain-text snapshot files and the diagnostics CSV."""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

from .grid import Grid2D

__all__ = ["fmt", "write_snapshot", "read_snapshot", "DiagnosticsWriter"]


def fmt(x) -> str:
    """Shortest round-trip-safe text for a float (17 significant digits)."""
    if isinstance(x, (bool, np.bool_)):
        return str(int(x))
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), ".17g")


def write_snapshot(path, grid: Grid2D, t: float, name: str, values) -> Path:
    """Header lines ``nx``, ``ny``, ``Lx``, ``Ly``, ``t``, ``field``, then one
    grid row (fixed ``y``) per line."""
    path = Path(path)
    arr = np.asarray(values, dtype=float)
    if arr.shape != grid.shape:
        raise ValueError(f"field {name} has shape {arr.shape}, grid expects {grid.shape}")
    lines = [f"nx {grid.nx}", f"ny {grid.ny}", f"Lx {fmt(grid.Lx)}", f"Ly {fmt(grid.Ly)}",
             f"t {fmt(t)}", f"field {name}"]
    lines += [" ".join(fmt(v) for v in row) for row in arr]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")
    return path


def read_snapshot(path):
    """Inverse of :func:`write_snapshot`; returns ``(grid, t, name, values)``."""
    text = Path(path).read_text(encoding="utf-8").splitlines()
    head = dict(line.split(" ", 1) for line in text[:6])
    grid = Grid2D(float(head["Lx"]), float(head["Ly"]), int(head["nx"]), int(head["ny"]))
    values = np.array([[float(v) for v in line.split()] for line in text[6:]])
    return grid, float(head["t"]), head["field"], values


class DiagnosticsWriter:
    """Append-only CSV; every row is flushed so aborted runs keep their history."""

    def __init__(self, path):
        self.path = Path(path)
        self._fh = self.path.open("w", encoding="utf-8", newline="")
        self._writer = None
        self._keys = None

    def write(self, row: dict):
        if self._writer is None:
            self._keys = list(row)
            self._writer = csv.writer(self._fh, lineterminator="\n")
            self._writer.writerow(self._keys)
        self._writer.writerow([fmt(row[k]) for k in self._keys])
        self._fh.flush()

    def close(self):
        self._fh.close()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()
        return False

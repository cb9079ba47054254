"""Two-parameter sweeps of the patterning conditions."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ..errors import ParameterError
from ..model import PARAMETER_NAMES, ParameterSet, steady_state
from .conditions import DEFAULT_K2_MAX, coupled_conditions, uncoupled_conditions

__all__ = ["AxisSpec", "PatternSpaceGrid", "pattern_space", "FLAG_NAMES", "worker_count"]

FLAG_NAMES = (
    "condUC1", "condUC2", "condUC3",
    "condC1", "condC2", "condC3", "condCDisc",
    "patterning_uncoupled", "patterning_coupled",
)
_UNCOUPLED = FLAG_NAMES[:3] + ("patterning_uncoupled",)


@dataclass(frozen=True)
class AxisSpec:
    name: str
    lo: float
    hi: float
    count: int

    def __post_init__(self):
        if self.name not in PARAMETER_NAMES:
            raise ParameterError(f"unknown axis parameter {self.name!r}")
        if self.count < 2:
            raise ParameterError(f"axis {self.name} needs at least 2 points, got {self.count}")
        if not np.isfinite(self.lo) or not np.isfinite(self.hi) or self.hi <= self.lo:
            raise ParameterError(f"axis {self.name}: need finite lo < hi, got [{self.lo}, {self.hi}]")

    @classmethod
    def parse(cls, text: str) -> "AxisSpec":
        """Parse ``name:lo:hi:count``."""
        parts = text.split(":")
        if len(parts) != 4:
            raise ParameterError(f"axis spec must be name:min:max:count, got {text!r}")
        try:
            return cls(parts[0], float(parts[1]), float(parts[2]), int(parts[3]))
        except ValueError as exc:
            raise ParameterError(f"malformed axis spec {text!r}: {exc}") from None

    @property
    def values(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.count)


@dataclass
class PatternSpaceGrid:
    """Per-cell condition flags; ``flags[name][i, j]`` refers to
    ``axis1.values[i]`` and ``axis2.values[j]``.

    Flags are stored as floats: 1.0 true, 0.0 false, NaN where the cell
    could not be evaluated (or the mode skipped it).
    """

    axis1: AxisSpec
    axis2: AxisSpec
    mode: str
    flags: dict = field(default_factory=dict)
    errors: dict = field(default_factory=dict)

    @property
    def shape(self):
        return (self.axis1.count, self.axis2.count)


def worker_count() -> int:
    env = os.environ.get("PRIMORDIA_THREADS")
    n = os.cpu_count() or 1
    if env:
        try:
            n = min(n, max(1, int(env)))
        except ValueError:
            raise ParameterError(f"PRIMORDIA_THREADS must be an integer, got {env!r}") from None
    return n


def _cell(p: ParameterSet, mode: str, k2_max: float):
    s = steady_state(p)
    row = dict.fromkeys(FLAG_NAMES, np.nan)
    uc = uncoupled_conditions(p, s, k2_max)
    f1, f2, f3 = uc.flags
    row.update(condUC1=f1, condUC2=f2, condUC3=f3, patterning_uncoupled=uc.patterning_uncoupled)
    if mode != "uncoupled":
        cc = coupled_conditions(p, s, k2_max)
        c1, c2, c3, cd = cc.flags
        row.update(condC1=c1, condC2=c2, condC3=c3, condCDisc=cd,
                   patterning_coupled=cc.patterning_coupled)
    return {k: float(v) for k, v in row.items()}


def _row(p, axis1, axis2, v1, mode, k2_max):
    cells, errors = [], {}
    for j, v2 in enumerate(axis2.values):
        try:
            cells.append(_cell(p.replace(**{axis1.name: v1, axis2.name: v2}), mode, k2_max))
        except (ArithmeticError, ValueError) as exc:
            cells.append(dict.fromkeys(FLAG_NAMES, np.nan))
            errors[j] = f"{type(exc).__name__}: {exc}"
    return cells, errors


def pattern_space(p: ParameterSet, axis1: AxisSpec, axis2: AxisSpec, mode: str = "both",
                  k2_max: float = DEFAULT_K2_MAX, workers: int | None = None) -> PatternSpaceGrid:
    """Evaluate every patterning flag on the ``axis1 x axis2`` grid.

    Rows (fixed ``axis1`` value) are farmed out to a thread pool and
    collected in order, so the result does not depend on ``workers``.
    """
    if mode not in ("both", "uncoupled", "coupled"):
        raise ParameterError(f"mode must be both, uncoupled or coupled, got {mode!r}")
    if axis1.name == axis2.name:
        raise ParameterError("the two axes must vary different parameters")
    n = workers if workers is not None else worker_count()
    args = [(p, axis1, axis2, v1, mode, k2_max) for v1 in axis1.values]
    if n <= 1:
        rows = [_row(*a) for a in args]
    else:
        with ThreadPoolExecutor(max_workers=n) as pool:
            rows = list(pool.map(lambda a: _row(*a), args))
    grid = PatternSpaceGrid(axis1, axis2, mode)
    for name in FLAG_NAMES:
        grid.flags[name] = np.array([[c[name] for c in cells] for cells, _ in rows])
    for i, (_, errs) in enumerate(rows):
        for j, msg in errs.items():
            grid.errors[(i, j)] = msg
    return grid

"""``[section]`` / ``key = value`` run configuration files.

Sections are ``[model]`` (any :class:`ParameterSet` field), ``[grid]``,
``[simulation]`` and ``[traction]``.  Keys before the first header belong
to ``[model]``.  ``#`` and ``;`` start comments.  Unknown sections or keys,
malformed values and repeated keys are errors that cite line numbers.
"""

from __future__ import annotations

import hashlib
from pathlib import Path

from .errors import ConfigError, ParameterError
from .model import PARAMETER_NAMES, ParameterSet
from .pdesim.config import SimConfig, TractionLoad
from .pdesim.grid import Grid2D

__all__ = ["parse_config", "parse_config_text", "config_sha256", "resolved_config"]


def _bool(text):
    low = text.lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def _edges(text):
    return tuple(e.strip() for e in text.split(",") if e.strip())


_SECTIONS = {
    "model": {name: float for name in PARAMETER_NAMES},
    "grid": {"Lx": float, "Ly": float, "nx": int, "ny": int},
    "simulation": {
        "dt": float, "t_final": float, "noise_amplitude": float, "seed": int,
        "output_interval": float, "tolerance": float, "max_iters": int,
        "clamped_edges": _edges, "pressure_bc": str, "saturated_wave": _bool,
        "active_stress_offset": _bool, "linear_solver": str, "clip_budget": float,
    },
    "traction": {"s0": float, "t_hat": float, "edge": str},
}


def parse_config_text(text: str, source: str = "<config>") -> SimConfig:
    values = {name: {} for name in _SECTIONS}
    seen = {}
    section = "model"
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].split(";", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise ConfigError(f"{source}:{lineno}: malformed section header {raw.strip()!r}")
            section = line[1:-1].strip()
            if section not in _SECTIONS:
                raise ConfigError(f"{source}:{lineno}: unknown section [{section}]")
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value', got {raw.strip()!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in _SECTIONS[section]:
            raise ConfigError(f"{source}:{lineno}: unknown key {key!r} in [{section}]")
        if (section, key) in seen:
            raise ConfigError(f"{source}:{lineno}: duplicate key {key!r} in [{section}] "
                              f"(first set on line {seen[section, key]})")
        seen[section, key] = lineno
        try:
            values[section][key] = _SECTIONS[section][key](value)
        except ValueError as exc:
            raise ConfigError(f"{source}:{lineno}: malformed value for {key!r}: {exc}") from None

    try:
        params = ParameterSet(**values["model"])
        grid = Grid2D(**values["grid"])
        traction = TractionLoad(**values["traction"])
        return SimConfig(params=params, grid=grid, traction=traction, **values["simulation"])
    except ParameterError as exc:
        line = _guess_line(str(exc), seen)
        where = f"{source}:{line}" if line else source
        raise ConfigError(f"{where}: {exc}") from None


def _guess_line(message, seen):
    for (_, key), lineno in seen.items():
        if key in message:
            return lineno
    return None


def parse_config(path) -> SimConfig:
    """Read a configuration file; defaults are the reference parameter values."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise ConfigError(f"{path}: no such configuration file") from None
    except OSError as exc:
        raise ConfigError(f"{path}: {exc.strerror}") from None
    return parse_config_text(text, str(path))


def config_sha256(path) -> str | None:
    if path is None:
        return None
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def resolved_config(cfg: SimConfig) -> dict:
    """Every effective setting, grouped like the file sections."""
    return {
        "model": cfg.params.as_dict(),
        "grid": {"Lx": cfg.grid.Lx, "Ly": cfg.grid.Ly, "nx": cfg.grid.nx, "ny": cfg.grid.ny},
        "simulation": {k: getattr(cfg, k) if k != "clamped_edges" else list(cfg.clamped_edges)
                       for k in _SECTIONS["simulation"]},
        "traction": {"s0": cfg.traction.s0, "t_hat": cfg.traction.t_hat, "edge": cfg.traction.edge},
    }

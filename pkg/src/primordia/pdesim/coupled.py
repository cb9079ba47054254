"""Fixed-point coupling of mechanics and chemistry, and the run driver."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .chemotaxis import explicit_sources, step_chemotaxis
from .config import SimConfig
from .io import DiagnosticsWriter, write_snapshot
from .poroelastic import mech_operators, nodal_divergence, step_poroelastic
from .state import FieldState, diagnostics, init_state

__all__ = ["coupled_step", "run_simulation", "SimulationResult", "SNAPSHOT_FIELDS"]

SNAPSHOT_FIELDS = ("m", "e", "f", "b", "p", "u1", "u2")


def _rel_change(new, old):
    scale = np.linalg.norm(new)
    diff = np.linalg.norm(new - old)
    return diff / scale if scale > 0 else diff


def _at_rest(state: FieldState) -> bool:
    return not (np.any(state.u) or np.any(state.v) or np.any(state.a) or np.any(state.p))


def coupled_step(state: FieldState, cfg: SimConfig) -> FieldState:
    """One time step: mechanics then chemistry, repeated to self-consistency.

    The active stress uses the latest density iterate; the chemistry uses
    the latest velocity and dilation.  With ``tau = 0`` the mechanics does
    not see the chemistry, so a single pass is exact.  Otherwise passes
    repeat until the relative change of ``(m, u)`` drops below
    ``cfg.tolerance``, or ``cfg.max_iters`` passes have been made (then a
    warning is issued and the last iterate is kept).
    """
    src = explicit_sources(state, cfg)
    dt = cfg.dt

    if cfg.mechanics_inert and _at_rest(state):
        m, e, f, b, clipped, cfl = step_chemotaxis(state, cfg, sources=src)
        new = FieldState(t=state.t + dt, u=state.u.copy(), v=state.v.copy(), a=state.a.copy(),
                         p=state.p.copy(), m=m, e=e, f=f, b=b, outer_iterations=1, clipped=clipped,
                         extras={"cfl": cfl})
        return new

    ops = mech_operators(cfg)
    m_iter = state.m
    prev = None
    iters = 0
    converged = False
    for iters in range(1, cfg.max_iters + 1):
        u, v, a, p = step_poroelastic(state, cfg, m=m_iter)
        div_u = nodal_divergence(u, ops, cfg.grid)
        m, e, f, b, clipped, cfl = step_chemotaxis(state, cfg, velocity=v, div_u=div_u, sources=src)
        if cfg.params.tau == 0:
            converged = True
            break
        if prev is not None:
            change = max(_rel_change(m, prev[0]), _rel_change(u, prev[1]))
            if change <= cfg.tolerance:
                converged = True
                break
        prev = (m, u)
        m_iter = m
    if not converged and cfg.max_iters > 1:
        warnings.warn(f"fixed-point coupling stopped after {iters} passes at t={state.t + dt:.6g}",
                      RuntimeWarning, stacklevel=2)
    return FieldState(t=state.t + dt, u=u, v=v, a=a, p=p, m=m, e=e, f=f, b=b,
                      outer_iterations=iters, clipped=clipped, extras={"cfl": cfl})


@dataclass
class SimulationResult:
    state: FieldState
    diagnostics: list = field(default_factory=list)
    snapshots: dict = field(default_factory=dict)


def _fields(state: FieldState):
    return {"m": state.m, "e": state.e, "f": state.f, "b": state.b, "p": state.p,
            "u1": state.u[0], "u2": state.u[1]}


def run_simulation(cfg: SimConfig, state: FieldState | None = None, out_dir=None,
                   keep_snapshots: bool = True, snapshot_fields=SNAPSHOT_FIELDS,
                   callback=None) -> SimulationResult:
    """Advance from ``state`` (default :func:`init_state`) to ``cfg.t_final``.

    Diagnostics are recorded after every step; snapshots of
    ``snapshot_fields`` every ``cfg.output_interval`` time units (and at the
    start and end).  With ``out_dir`` the snapshots and ``diagnostics.csv``
    are written as the run proceeds, so an aborted run keeps its partial
    output.  ``callback(state)`` is invoked after each step.
    """
    state = init_state(cfg) if state is None else state
    result = SimulationResult(state)
    every = max(1, int(round(cfg.output_interval / cfg.dt)))
    out = Path(out_dir) if out_dir is not None else None
    writer = None
    if out is not None:
        out.mkdir(parents=True, exist_ok=True)
        writer = DiagnosticsWriter(out / "diagnostics.csv")

    def record(st, step):
        row = {"step": step, **diagnostics(st, cfg.grid)}
        result.diagnostics.append(row)
        if writer is not None:
            writer.write(row)

    def snapshot(st, step):
        data = {k: v.copy() for k, v in _fields(st).items() if k in snapshot_fields}
        if keep_snapshots:
            result.snapshots[round(st.t, 12)] = data
        if out is not None:
            for name, arr in data.items():
                write_snapshot(out / f"{name}_{step:06d}.txt", cfg.grid, st.t, name, arr)

    try:
        record(state, 0)
        snapshot(state, 0)
        n = cfg.n_steps
        for step in range(1, n + 1):
            state = coupled_step(state, cfg)
            record(state, step)
            if step % every == 0 or step == n:
                snapshot(state, step)
            if callback is not None:
                callback(state)
    finally:
        result.state = state
        if writer is not None:
            writer.close()
    return result

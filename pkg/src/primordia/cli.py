"""Command-line front end: ``primordia <subcommand> ...``.

Exit status is 0 on success, 1 for invalid input and 2 for numerical
failures.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .config import config_sha256, parse_config, resolved_config
from .errors import ConfigError, NumericalError, ParameterError
from .model import steady_state
from .pdesim.config import SimConfig
from .pdesim.coupled import run_simulation
from .pdesim.io import fmt

__all__ = ["main", "dispatch", "build_parser"]

EXIT_OK, EXIT_INVALID, EXIT_NUMERICAL = 0, 1, 2


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(f"{self.prog}: error: {message}")


def _add_common(p):
    p.add_argument("--config", help="configuration file ([model], [grid], [simulation], [traction])")
    p.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                   help="override a model parameter (repeatable)")
    p.add_argument("--manifest", help="write the run manifest here (default: next to --out)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="primordia", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("steady", help="print the homogeneous steady state as CSV")
    _add_common(p)
    p.add_argument("--out", help="output CSV (default stdout)")

    p = sub.add_parser("dispersion", help="growth factors versus k^2 as CSV")
    _add_common(p)
    p.add_argument("--k2-max", type=float, default=50.0)
    p.add_argument("--k2-min", type=float, default=1e-3)
    p.add_argument("--points", type=int, default=500)
    p.add_argument("--include-inertial-factor", action="store_true")
    p.add_argument("--out")

    p = sub.add_parser("patternspace", help="patterning flags on a 2D parameter grid as CSV")
    _add_common(p)
    p.add_argument("--axis1", required=True, metavar="NAME:MIN:MAX:COUNT")
    p.add_argument("--axis2", required=True, metavar="NAME:MIN:MAX:COUNT")
    p.add_argument("--mode", choices=("both", "uncoupled", "coupled"), default="both")
    p.add_argument("--k2-max", type=float, default=50.0)
    p.add_argument("--out")

    p = sub.add_parser("simulate", help="run the 2D simulator")
    _add_common(p)
    p.add_argument("--out", required=True, help="output directory")

    p = sub.add_parser("growth-check", help="run the growth-kinematics identity suite")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    return parser


def _load(args) -> SimConfig:
    cfg = parse_config(args.config) if getattr(args, "config", None) else SimConfig()
    overrides = {}
    for item in getattr(args, "set", []):
        if "=" not in item:
            raise ConfigError(f"--set expects KEY=VALUE, got {item!r}")
        key, value = (s.strip() for s in item.split("=", 1))
        try:
            overrides[key] = float(value)
        except ValueError:
            raise ConfigError(f"--set {key}: malformed value {value!r}") from None
    if overrides:
        cfg = cfg.replace(params=cfg.params.replace(**overrides))
    return cfg


def _emit(text: str, out):
    if out:
        Path(out).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)


def _csv(header, rows):
    lines = [",".join(header)]
    lines += [",".join(fmt(v) for v in row) for row in rows]
    return "\n".join(lines) + "\n"


def _cmd_steady(args, cfg):
    s = steady_state(cfg.params)
    d = s.as_dict()
    return _csv(list(d), [list(d.values())])


def _cmd_dispersion(args, cfg):
    from .stability.dispersion import dispersion

    if args.points < 1:
        raise ParameterError("--points must be positive")
    if not 0 < args.k2_min < args.k2_max:
        raise ParameterError("need 0 < --k2-min < --k2-max")
    grid = np.geomspace(args.k2_min, args.k2_max, args.points)
    pts = dispersion(cfg.params, steady_state(cfg.params), grid,
                     include_inertial_factor=args.include_inertial_factor)
    n = pts[0].roots.size
    header = ["k2", "max_re"] + [f"re_{i}" for i in range(n)] + [f"im_{i}" for i in range(n)]
    rows = [[pt.k2, pt.max_re, *pt.roots.real, *pt.roots.imag] for pt in pts]
    return _csv(header, rows)


def _cmd_patternspace(args, cfg):
    from .stability.patternspace import FLAG_NAMES, AxisSpec, pattern_space

    a1, a2 = AxisSpec.parse(args.axis1), AxisSpec.parse(args.axis2)
    grid = pattern_space(cfg.params, a1, a2, mode=args.mode, k2_max=args.k2_max)
    rows = []
    for i, v1 in enumerate(a1.values):
        for j, v2 in enumerate(a2.values):
            rows.append([v1, v2] + [grid.flags[name][i, j] for name in FLAG_NAMES])
    return _csv([a1.name, a2.name, *FLAG_NAMES], rows)


def _cmd_simulate(args, cfg):
    run_simulation(cfg, out_dir=args.out, keep_snapshots=False)
    return None


def _cmd_growth_check(args):
    from .growth_checks import run_identity_suite

    results = run_identity_suite(args.samples, args.seed)
    width = max(len(r.name) for r in results)
    lines = [f"{'check':<{width}}  status  worst        tolerance"]
    for r in results:
        lines.append(f"{r.name:<{width}}  {'PASS' if r.passed else 'FAIL':<6}  {r.worst:<11.3e}  {r.tolerance:.1e}")
    sys.stdout.write("\n".join(lines) + "\n")
    return all(r.passed for r in results)


def _write_manifest(args, cfg, duration):
    target = args.manifest
    if target is None and getattr(args, "out", None):
        out = Path(args.out)
        target = out / "manifest.json" if args.command == "simulate" else out.with_name(out.name + ".manifest.json")
    if target is None:
        return
    manifest = {
        "subcommand": args.command,
        "argv": sys.argv[1:],
        "config": resolved_config(cfg),
        "config_sha256": config_sha256(args.config),
        "seed": cfg.seed,
        "version": __version__,
        "duration_s": duration,
    }
    Path(target).write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8")


_COMMANDS = {
    "steady": _cmd_steady,
    "dispersion": _cmd_dispersion,
    "patternspace": _cmd_patternspace,
    "simulate": _cmd_simulate,
}


def dispatch(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_INVALID
    except SystemExit as exc:  # --help / --version
        return EXIT_OK if not exc.code else EXIT_INVALID
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_INVALID
    try:
        if args.command == "growth-check":
            return EXIT_OK if _cmd_growth_check(args) else EXIT_NUMERICAL
        start = time.perf_counter()
        cfg = _load(args)
        text = _COMMANDS[args.command](args, cfg)
        if text is not None:
            _emit(text, args.out)
        _write_manifest(args, cfg, time.perf_counter() - start)
        return EXIT_OK
    except (ConfigError, ParameterError) as exc:
        print(f"primordia: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (NumericalError, ArithmeticError, np.linalg.LinAlgError) as exc:
        print(f"primordia: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except ValueError as exc:
        print(f"primordia: error: {exc}", file=sys.stderr)
        return EXIT_INVALID


def main(argv=None) -> int:
    return dispatch(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())

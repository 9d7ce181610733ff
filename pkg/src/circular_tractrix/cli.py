"""Command-line front end.

Exit status: 0 when every check passes, 1 when a check fails (the first
failing residual goes to stderr), 2 for an invalid configuration.

Usage examples::

    circular-tractrix verify --R 2 --selector 0.9273
    circular-tractrix area --regime supercritical --R 1.25 --tol 1e-4
    circular-tractrix volume --R 1 --tol 1e-3
    circular-tractrix petals --nu 3/4
    circular-tractrix eval-curve --R 0.6 --selector 1 --n 400 --output curve.csv
    circular-tractrix eval-surface --R 2 --output surface.obj
    circular-tractrix rear-track --R 1 --c1 2 --c2 2 --t0 0.5 --t1 5.5
    circular-tractrix --config run.json
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import export
from .adaptive import QuadratureError
from .pseudosphere import SurfacePatch
from .quadrature import enclosed_volume, surface_area
from .rear_track import compare_with_closed_form, integrate, load_directrix_csv
from .tractrix import (
    Regime, TractrixParams, make_params, params_from_nu, period_data,
)
from .verify import run_suite

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


class ConfigError(ValueError):
    pass


# -- argument handling ----------------------------------------------------------

def _add_radius(sp, required=True):
    sp.add_argument("--R", type=float, required=required, help="directrix radius")
    sp.add_argument("--regime", choices=[r.value for r in Regime],
                    help="optional; must agree with R")


def _add_curve(sp, radius_required=True):
    _add_radius(sp, radius_required)
    sp.add_argument("--selector", type=float, help="position on the constraint curve of (c1, c2)")
    sp.add_argument("--c1", type=float)
    sp.add_argument("--c2", type=float)
    sp.add_argument("--branch", type=int, choices=[1, -1], default=1, help="sign of c1 for R < 1")


def _add_output(sp):
    sp.add_argument("--output", type=Path, help="output file (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="circular-tractrix",
                                     description="Circular tractrices and pseudospheres in R^3.")
    parser.add_argument("--config", type=Path, help="JSON file mirroring the command-line flags")
    sub = parser.add_subparsers(dest="command")

    sp = sub.add_parser("eval-curve", help="polyline CSV with speed, curvature, torsion")
    _add_curve(sp)
    sp.add_argument("--t-range", type=float, nargs=2)
    sp.add_argument("--n", type=int, default=401)
    _add_output(sp)

    sp = sub.add_parser("eval-surface", help="OBJ mesh plus cuspidal-edge JSON sidecar")
    _add_radius(sp)
    sp.add_argument("--branch", choices=["1", "-1", "both"], default="both",
                    help="component(s) to export for R < 1")
    sp.add_argument("--t-range", type=float, nargs=2)
    sp.add_argument("--alpha-range", type=float, nargs=2)
    sp.add_argument("--nt", type=int, default=60)
    sp.add_argument("--na", type=int, default=60)
    sp.add_argument("--output", type=Path, required=True)

    sp = sub.add_parser("verify", help="run the invariant suite")
    _add_curve(sp)
    sp.add_argument("--n", type=int, default=1000)
    sp.add_argument("--seed", type=int, default=0)
    _add_output(sp)

    for name, default_tol in (("area", 1e-6), ("volume", 1e-4)):
        sp = sub.add_parser(name, help=f"complete surface {name} by adaptive quadrature")
        _add_radius(sp)
        sp.add_argument("--branch", type=int, choices=[1, -1], default=1)
        sp.add_argument("--tol", type=float, default=default_tol)
        _add_output(sp)

    sp = sub.add_parser("rear-track", help="integrate the bicycle rear track ODE")
    _add_curve(sp, radius_required=False)
    sp.add_argument("--t0", type=float, default=0.5)
    sp.add_argument("--t1", type=float, default=5.5)
    sp.add_argument("--h", type=float, default=1e-3)
    sp.add_argument("--tol", type=float, default=1e-6)
    sp.add_argument("--directrix-csv", type=Path, help="sampled directrix t,x,y,z")
    sp.add_argument("--x0", type=float, nargs=3, help="initial rear point for --directrix-csv")
    sp.add_argument("--trajectory", type=Path, help="write the integrated track as CSV")
    _add_output(sp)

    sp = sub.add_parser("petals", help="period, rotation angle and closedness for R < 1")
    _add_radius(sp, required=False)
    sp.add_argument("--nu", help="sqrt(1 - R^2) as an exact fraction p/q")
    _add_output(sp)
    return parser


def config_to_argv(config: dict) -> list[str]:
    if not isinstance(config, dict) or "command" not in config:
        raise ConfigError("config must be a JSON object with a 'command' key")
    argv = [str(config["command"])]
    for key, value in config.items():
        if key == "command":
            continue
        argv.append("--" + key.replace("_", "-"))
        if isinstance(value, (list, tuple)):
            argv.extend(str(v) for v in value)
        else:
            argv.append(str(value))
    return argv


def _params(args) -> TractrixParams:
    if args.R is None:
        raise ConfigError("--R is required")
    if args.regime and Regime.from_radius(args.R).value != args.regime:
        raise ConfigError(f"--regime {args.regime} disagrees with R={args.R!r}")
    if args.c1 is not None or args.c2 is not None:
        if args.c1 is None or args.c2 is None or args.selector is not None:
            raise ConfigError("give either --selector or both --c1 and --c2")
        return TractrixParams(args.R, args.c1, args.c2)
    return make_params(args.R, args.selector if args.selector is not None else 0.0, args.branch)


def _check_regime(args):
    if args.regime and Regime.from_radius(args.R).value != args.regime:
        raise ConfigError(f"--regime {args.regime} disagrees with R={args.R!r}")


def _emit(text: str, path) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _default_t_range(R: float):
    regime = Regime.from_radius(R)
    if regime is Regime.SUBCRITICAL:
        lam = math.sqrt(1.0 - R * R) / R
        return (0.0, 2.0 * math.pi / lam)
    return (-4.0, 4.0)


# -- commands ---------------------------------------------------------------------

def cmd_eval_curve(args) -> int:
    p = _params(args)
    lo, hi = args.t_range or _default_t_range(p.R)
    _emit(export.curve_table(p, np.linspace(lo, hi, args.n)), args.output)
    return EXIT_OK


def cmd_eval_surface(args) -> int:
    _check_regime(args)
    regime = Regime.from_radius(args.R)
    if regime is Regime.SUBCRITICAL:
        branches = (1, -1) if args.branch == "both" else (int(args.branch),)
    else:
        branches = (1,)
    t_range = tuple(args.t_range or _default_t_range(args.R))
    if args.alpha_range:
        a_range = tuple(args.alpha_range)
    else:
        a_range = (0.0, 2.0 * math.pi) if regime is Regime.SUPERCRITICAL else (-4.0, 4.0)
    objects = export.surface_objects(args.R, t_range, a_range, args.nt, args.na, branches)
    header = f"circular pseudosphere R={args.R!r} t={t_range!r} alpha={a_range!r}"
    args.output.write_text(export.obj_text(objects, header))
    sidecar = args.output.with_suffix(".cusps.json")
    sidecar.write_text(export.dumps(export.cusp_sidecar(args.R, t_range, a_range, args.na, branches)))
    return EXIT_OK


def _params_dict(p: TractrixParams) -> dict:
    return {"R": p.R, "c1": p.c1, "c2": p.c2, "regime": p.regime.value}


def cmd_verify(args) -> int:
    p = _params(args)
    checks = run_suite(p, args.n, args.seed)
    ok = all(c.passed for c in checks)
    report = {"schema": export.SCHEMA, "command": "verify", "params": _params_dict(p),
              "checks": [c.as_dict() for c in checks], "pass": ok}
    _emit(export.dumps(report), args.output)
    if not ok:
        bad = next(c for c in checks if not c.passed)
        print(f"check {bad.check} failed: residual {bad.max_residual!r} "
              f"(tolerance {bad.tolerance!r})", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def _quadrature_command(args, kind: str) -> int:
    _check_regime(args)
    s = SurfacePatch(args.R, args.branch)
    fn = surface_area if kind == "area" else enclosed_volume
    try:
        res = fn(s, args.tol)
        failure = None
    except QuadratureError as exc:
        res, failure = exc.result, str(exc)
    if res.target is None:
        ok = res.converged
    else:
        ok = res.converged and abs(res.value - res.target) <= args.tol
    report = {"schema": export.SCHEMA, "command": kind, "R": args.R,
              "regime": s.regime.value, "tol": args.tol, **res.as_dict(), "pass": ok}
    if res.target is None and kind == "volume":
        report["note"] = "no reference value for R < 1; flux over one unit component"
    _emit(export.dumps(report), args.output)
    if not ok:
        msg = failure or f"{kind} {res.value!r} differs from {res.target!r} " \
                         f"by {abs(res.value - res.target)!r} > {args.tol!r}"
        print(msg, file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_rear_track(args) -> int:
    if args.directrix_csv is not None:
        if args.x0 is None:
            raise ConfigError("--directrix-csv needs --x0")
        d = load_directrix_csv(args.directrix_csv)
        track = integrate(d, args.x0, args.t0, args.t1, args.h)
        report = {"schema": export.SCHEMA, "command": "rear-track", "directrix": str(args.directrix_csv),
                  "steps": len(track) - 1, "max_drift": track.max_drift,
                  "cusp_crossings": track.cusp_crossings, "pass": True}
        ok = True
    else:
        p = _params(args)
        track, gap = compare_with_closed_form(p, args.t0, args.t1, args.h)
        ok = gap <= args.tol
        report = {"schema": export.SCHEMA, "command": "rear-track", "params": _params_dict(p),
                  "t0": args.t0, "t1": args.t1, "h": args.h, "steps": len(track) - 1,
                  "max_gap": gap, "max_drift": track.max_drift,
                  "cusp_crossings": track.cusp_crossings, "tol": args.tol, "pass": ok}
    if args.trajectory is not None:
        rows = ["t,x,y,z"] + [",".join(export.fmt(v) for v in (t, *x)) for t, x in zip(track.t, track.x)]
        args.trajectory.write_text("\n".join(rows) + "\n")
    _emit(export.dumps(report), args.output)
    if not ok:
        print(f"rear track deviates from closed form by {report['max_gap']!r}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_petals(args) -> int:
    nu = None
    if args.nu is not None:
        try:
            frac = Fraction(args.nu)
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"bad --nu {args.nu!r}") from exc
        nu = (frac.numerator, frac.denominator)
    if args.R is None:
        if nu is None:
            raise ConfigError("give --R, --nu, or both")
        p = params_from_nu(*nu)
    else:
        _check_regime(args)
        p = make_params(args.R, 0.0)
    pd = period_data(p, nu)
    report = {"schema": export.SCHEMA, "command": "petals", "R": p.R, "nu": args.nu,
              "T": pd.T, "phi": pd.phi, "phi_over_pi": pd.phi / math.pi, "closed": pd.closed,
              "petals": pd.petals, "windings": pd.windings}
    _emit(export.dumps(report), args.output)
    return EXIT_OK


COMMANDS = {
    "eval-curve": cmd_eval_curve,
    "eval-surface": cmd_eval_surface,
    "verify": cmd_verify,
    "area": lambda a: _quadrature_command(a, "area"),
    "volume": lambda a: _quadrature_command(a, "volume"),
    "rear-track": cmd_rear_track,
    "petals": cmd_petals,
}


def main(argv=None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = parser.parse_args(argv)
        if args.config is not None:
            if args.command is not None:
                raise ConfigError("use either --config or a subcommand, not both")
            config = json.loads(args.config.read_text())
            args = parser.parse_args(config_to_argv(config))
        if args.command is None:
            parser.print_usage(sys.stderr)
            return EXIT_CONFIG
        return COMMANDS[args.command](args)
    except SystemExit as exc:   # argparse reports bad flags with status 2
        return int(exc.code or 0)
    except (ConfigError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"invalid configuration: {exc}", file=sys.stderr)
        return EXIT_CONFIG


def main_exit() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_exit()

"""Command-line front end.

Subcommands: calibrate, hover, sweep, optimize, simulate.  All outputs go
to --out (default '.') together with a run manifest; CSV is the figure
interface, no plotting here.

Exit codes: 0 success, 1 usage/config error, 2 infeasibility or solver
failure.
"""
from __future__ import annotations

import argparse
import dataclasses
import datetime
import hashlib
import json
import math
import os
import sys

import numpy as np

from . import __version__, dynamics, hover, optimize
from .config import (load_calibration, load_config, save_calibration)
from .errors import (ConfigError, DomainError, InfeasibleDesignError,
                     MonospinError, SolverError)
from .model import (Calibration, DesignVector, calibrate_from_published)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INFEASIBLE = 2


def _sha256(path: str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        h.update(fh.read())
    return h.hexdigest()


def _write_manifest(out_dir: str, command: str, args, calibration,
                    variant: str, outputs: list) -> str:
    manifest = {
        "command": command,
        "config": None,
        "config_sha256": None,
        "calibration": None,
        "variant": variant,
        "tool_version": __version__,
        "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(),
        "outputs": outputs,
    }
    cfg = getattr(args, "config", None)
    if cfg:
        manifest["config"] = cfg
        manifest["config_sha256"] = _sha256(cfg)
    if calibration is not None:
        manifest["calibration"] = {"weight": calibration.weight,
                                   "R_m": calibration.R_m}
    design = getattr(args, "_design_used", None)
    if design is not None:
        manifest["design"] = dataclasses.asdict(design)
        manifest["design"]["delta_deg"] = math.degrees(design.delta)
        manifest["design"]["alpha_p_rad"] = math.radians(design.alpha_p)
        manifest["design"]["alpha_B_rad"] = math.radians(design.alpha_B)
    path = os.path.join(out_dir, "manifest.json")
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2)
        fh.write("\n")
    return path


def _parse_design(text: str) -> DesignVector:
    parts = text.split(",")
    if len(parts) != 6:
        raise ConfigError("--design needs six comma-separated values "
                          "a_p,a_B,c_ratio,R_ratio,delta,offset")
    try:
        return DesignVector.from_tuple(float(p) for p in parts)
    except ValueError as exc:
        raise ConfigError(f"--design: {exc}") from None


def _resolve_inputs(args, need_design=True):
    """Load config, apply calibration (scaled masses, R_m override)."""
    cfg = load_config(args.config)
    base = cfg.base
    masses = cfg.masses
    cal = None
    if getattr(args, "calibration", None):
        cal = load_calibration(args.calibration)
        if cal.R_m is not None:
            base = dataclasses.replace(base, R_m=cal.R_m)
        if masses is not None:
            masses = masses.scaled_to_weight(cal.weight, base.g)
    if masses is None:
        raise ConfigError(f"{args.config}: missing [masses] section")
    design = cfg.design
    if getattr(args, "design", None):
        design = _parse_design(args.design)
    if need_design and design is None:
        raise ConfigError(f"{args.config}: missing [design] section "
                          "(or pass --design)")
    return base, masses, design, cal


def cmd_calibrate(args) -> int:
    cfg = load_config(args.config)
    if not cfg.published:
        raise ConfigError(f"{args.config}: missing [published] section")
    cal = calibrate_from_published(cfg.published, cfg.base)
    os.makedirs(args.out, exist_ok=True)
    path = os.path.join(args.out, "calibration.json")
    save_calibration(path, cal)
    _write_manifest(args.out, "calibrate", args, cal, args.variant,
                    ["calibration.json"])
    print(f"weight = {cal.weight:.6g} N")
    if cal.R_m is not None:
        print(f"R_m = {cal.R_m:.6g} Ohm")
    print(f"wrote {path}")
    return EXIT_OK


def cmd_hover(args) -> int:
    base, masses, design, cal = _resolve_inputs(args)
    args._design_used = design
    res = optimize.evaluate_design(base, masses, design,
                                   variant=args.variant)
    if not res.feasible:
        print(f"infeasible design: {res.reason}", file=sys.stderr)
        return EXIT_INFEASIBLE
    text = res.hover.to_json()
    os.makedirs(args.out, exist_ok=True)
    path = os.path.join(args.out, "hover.json")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text + "\n")
    _write_manifest(args.out, "hover", args, cal, args.variant,
                    ["hover.json"])
    print(text)
    return EXIT_OK


def cmd_sweep(args) -> int:
    base, masses, _, cal = _resolve_inputs(args, need_design=False)
    space = optimize.figure_space(args.figure)
    grid = optimize.sweep(space, base, masses, variant=args.variant)
    os.makedirs(args.out, exist_ok=True)
    csv_path = os.path.join(args.out, f"figure{args.figure}.csv")
    with open(csv_path, "w", encoding="utf-8") as fh:
        fh.write(grid.to_csv())
    meta = optimize.sweep_metadata(space, base, masses, args.variant)
    meta["axis_names"] = list(grid.axis_names)
    meta_path = os.path.join(args.out, f"figure{args.figure}.meta.json")
    with open(meta_path, "w", encoding="utf-8") as fh:
        json.dump(meta, fh, indent=2)
        fh.write("\n")
    _write_manifest(args.out, "sweep", args, cal, args.variant,
                    [os.path.basename(csv_path), os.path.basename(meta_path)])
    idx, best = grid.min_feasible()
    print(f"wrote {csv_path}; feasible minimum P_s = {best:.6g} W/N at "
          + ", ".join(f"{n}={grid.axis_values[j][idx[j]]:.6g}"
                      for j, n in enumerate(grid.axis_names)))
    return EXIT_OK


def cmd_optimize(args) -> int:
    base, masses, design, cal = _resolve_inputs(args, need_design=False)
    if args.from_:
        x0 = _parse_design(args.from_)
    elif design is not None:
        x0 = design
    else:
        raise ConfigError("optimize needs --from or a [design] section")
    args._design_used = x0
    space = optimize.DesignSpace.from_dict(
        {"alpha_p": (0.0, 10.0, 11), "alpha_B": (0.0, 10.0, 11),
         "chord_ratio": (0.5, 1.5, 11), "radius_ratio": (1.0, 6.0, 11),
         "delta": (0.0, 0.5, 11), "offset_ratio": (-1.0, 1.0, 11)},
        x0)
    result = optimize.local_search(x0, space, base, masses,
                                   variant=args.variant)
    os.makedirs(args.out, exist_ok=True)
    out = {
        "x0": list(x0.as_tuple()),
        "x_opt": list(result.x.as_tuple()),
        "P_s": result.P_s,
        "n_evals": result.n_evals,
        "delta_deg": math.degrees(result.x.delta),
    }
    path = os.path.join(args.out, "optimum.json")
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(out, fh, indent=2)
        fh.write("\n")
    _write_manifest(args.out, "optimize", args, cal, args.variant,
                    ["optimum.json"])
    print(json.dumps(out, indent=2))
    return EXIT_OK


def cmd_simulate(args) -> int:
    base, masses, design, cal = _resolve_inputs(args)
    args._design_used = design
    with open(args.from_, "r", encoding="utf-8") as fh:
        hov = hover.HoverState.from_json(fh.read())
    from .model import expand_design
    v = expand_design(base, masses, design, variant=args.variant)
    state0 = hover.to_full_state(v, hov)
    traj = dynamics.integrate(v, state0, hov.V_m_bar, dt=args.dt,
                              t_end=args.t)
    r_bar = float(hov.omega_B_bar[2])
    drift = float(np.max(np.abs(traj.r - r_bar)) / abs(r_bar)) \
        if r_bar != 0.0 else float("nan")
    os.makedirs(args.out, exist_ok=True)
    csv_path = os.path.join(args.out, "trajectory.csv")
    with open(csv_path, "w", encoding="utf-8") as fh:
        fh.write(traj.to_csv())
    report = {"t_end": args.t, "dt": args.dt,
              "max_relative_drift_r": drift}
    rep_path = os.path.join(args.out, "simulation_report.json")
    with open(rep_path, "w", encoding="utf-8") as fh:
        json.dump(report, fh, indent=2)
        fh.write("\n")
    _write_manifest(args.out, "simulate", args, cal, args.variant,
                    ["trajectory.csv", "simulation_report.json"])
    print(f"max relative drift of r over {args.t} s: {drift:.3e}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="monospin",
        description="Mono-spinner hover analysis and power-optimal design "
                    "search")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, calibration=True, design=False):
        sp.add_argument("--config", required=True, help="config file (INI)")
        sp.add_argument("--out", default=".", help="output directory")
        sp.add_argument("--variant", choices=("quadratic", "printed"),
                        default="quadratic", help="aero model variant")
        if calibration:
            sp.add_argument("--calibration",
                            help="calibration JSON from 'calibrate'")
        if design:
            sp.add_argument("--design",
                            help="override design: 'a_p,a_B,c,R,delta,offset'")

    sp = sub.add_parser("calibrate", help="recover weight and R_m from a "
                                          "published hover block")
    common(sp, calibration=False)
    sp.set_defaults(func=cmd_calibrate)

    sp = sub.add_parser("hover", help="solve the hover equilibrium")
    common(sp, design=True)
    sp.set_defaults(func=cmd_hover)

    sp = sub.add_parser("sweep", help="reproduce a design-sweep figure")
    common(sp)
    sp.add_argument("--figure", type=int, choices=(4, 5, 6, 7), required=True)
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("optimize", help="local power-optimal design search")
    common(sp, design=True)
    sp.add_argument("--from", dest="from_",
                    help="starting design 'a_p,a_B,c,R,delta,offset'")
    sp.set_defaults(func=cmd_optimize)

    sp = sub.add_parser("simulate", help="integrate the dynamics from a "
                                         "hover solution")
    common(sp, design=True)
    sp.add_argument("--from", dest="from_", required=True,
                    help="hover JSON produced by 'hover'")
    sp.add_argument("--t", type=float, default=10.0, help="horizon, s")
    sp.add_argument("--dt", type=float, default=2e-4, help="time step, s")
    sp.set_defaults(func=cmd_simulate)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except (ConfigError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SolverError, InfeasibleDesignError) as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except MonospinError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

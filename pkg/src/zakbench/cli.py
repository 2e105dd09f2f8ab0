"""Experiment orchestration and data export.

Subcommands reproduce the study's figure data as CSV/JSON files:

    trace          two-path evolution of one parameter set (trace.csv,
                   summary.json, qtraj.csv)
    sweep          grid of trace endpoints over one or two axes (sweep.csv)
    phase-diagram  winding map over (v/w, J/w) (phase_diagram.csv)
    labframe       carrier-frequency emulation vs rotating frame (labtrace.csv)
    selfcheck      run the embedded invariant suite

Exit codes: 0 ok, 2 invalid configuration, 3 band-touching point on the
requested path, 4 phase unwrap failure, 5 rotating-frame guard violation.
All numeric output is formatted to nine significant digits and written
atomically, so identical configurations give byte-identical files.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .config import GridAxis, RunConfig, load_config_file, parse_grid_spec
from .errors import (
    ConfigError,
    DegenerateComponent,
    GaplessPoint,
    RWAViolated,
    UnwrapJump,
)
from .evolve import evolve_pair
from .invariants import BOUNDARY, phase_diagram, q_trajectory, winding_number
from .labframe import demodulate, export_pressure_csv, lab_delta_phi, simulate_lab
from .model import ModelParams, brillouin_grid, build_schedule_pair
from .phase import adiabatic_prediction_profile, delta_phi

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_GAPLESS = 3
EXIT_UNWRAP = 4
EXIT_RWA = 5


def _fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, str):
        return x
    return f"{float(x):.9g}"


def _jsonable(x):
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, str):
        return x
    return float(f"{float(x):.9g}")


def _atomic_write(path: str, text: str) -> None:
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", text=True)
    try:
        with os.fdopen(fd, "w", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_table(path_base: str, columns: list[str], rows, fmt: str) -> str:
    """Write a table as CSV (or JSON) with fixed formatting; returns the path."""
    if fmt == "csv":
        path = path_base + ".csv"
        lines = [",".join(columns)]
        for row in rows:
            lines.append(",".join(_fmt(x) for x in row))
        _atomic_write(path, "\n".join(lines) + "\n")
    else:
        path = path_base + ".json"
        payload = {"columns": columns, "rows": [[_jsonable(x) for x in row] for row in rows]}
        _atomic_write(path, json.dumps(payload, indent=1) + "\n")
    return path


def threads_limit() -> int:
    cap = os.environ.get("ZAKBENCH_THREADS", "").strip()
    if cap:
        try:
            n = int(cap)
        except ValueError as exc:
            raise ConfigError(f"ZAKBENCH_THREADS must be an integer, got {cap!r}") from exc
        if n < 1:
            raise ConfigError(f"ZAKBENCH_THREADS must be >= 1, got {n}")
        return n
    return os.cpu_count() or 1


def _trace_records(cfg: RunConfig):
    params = cfg.model_params()
    pair = build_schedule_pair(params, cfg.T, cfg.steps, cfg.variant)
    trace_a, trace_b = evolve_pair(params, cfg.T, cfg.steps, variant=cfg.variant)
    ph = delta_phi(trace_a, trace_b)
    pred = adiabatic_prediction_profile(params, pair, ph.times)
    return params, trace_a, trace_b, ph, pred


def run_trace(cfg: RunConfig) -> list[str]:
    params, trace_a, trace_b, ph, pred = _trace_records(cfg)
    columns = [
        "t",
        "k_A",
        "k_B",
        "delta_phi",
        "phi_dyn_A",
        "phi_dyn_B",
        "fidelity_A",
        "fidelity_B",
        "adiabatic_prediction",
    ]
    rows = zip(
        ph.times,
        trace_a.k_values,
        trace_b.k_values,
        ph.delta_phi,
        ph.phi_dyn_A,
        ph.phi_dyn_B,
        ph.fidelity_A,
        ph.fidelity_B,
        pred,
    )
    os.makedirs(cfg.out_dir, exist_ok=True)
    paths = [write_table(os.path.join(cfg.out_dir, "trace"), columns, rows, cfg.out_format)]

    wres = winding_number(params, cfg.quad_n)
    summary = {
        "params": {"w": _jsonable(cfg.w), "v": _jsonable(cfg.v), "J": _jsonable(cfg.J)},
        "T": _jsonable(cfg.T),
        "steps": cfg.steps,
        "delta_phi_final": _jsonable(ph.delta_phi[-1]),
        "W": wres.W,
        "zak_mod_2pi": _jsonable(wres.zak_mod_2pi),
    }
    summary_path = os.path.join(cfg.out_dir, "summary.json")
    _atomic_write(summary_path, json.dumps(summary, indent=1) + "\n")
    paths.append(summary_path)

    traj = q_trajectory(params, cfg.quad_n)
    k_closed = np.append(brillouin_grid(cfg.quad_n), np.pi)
    paths.append(
        write_table(
            os.path.join(cfg.out_dir, "qtraj"),
            ["k", "re_q", "im_q"],
            zip(k_closed, traj.real, traj.imag),
            cfg.out_format,
        )
    )
    return paths


def _sweep_cell(cfg: RunConfig, assignment: dict[str, float]) -> dict:
    w = assignment.get("w", cfg.w)
    v = assignment.get("v", cfg.v)
    J = assignment.get("J", cfg.J)
    T = assignment.get("T", cfg.T)
    try:
        params = ModelParams(w, v, J)
        trace_a, trace_b = evolve_pair(params, T, cfg.steps, variant=cfg.variant)
        ph = delta_phi(trace_a, trace_b)
        min_fid = float(min(ph.fidelity_A.min(), ph.fidelity_B.min()))
        wres = winding_number(params, cfg.quad_n)
    except GaplessPoint:
        return {"status": "gapless"}
    except ValueError:
        return {"status": "invalid"}
    except UnwrapJump:
        return {"status": "unwrap-jump"}
    except DegenerateComponent:
        return {"status": "degenerate"}
    return {
        "status": "ok",
        "delta_phi_over_pi": float(ph.delta_phi[-1] / np.pi),
        "min_fidelity": min_fid,
        "W": wres.W,
    }


def run_sweep(cfg: RunConfig) -> list[str]:
    axes = cfg.axes
    grids = [ax.values() for ax in axes]
    assignments = []
    if len(axes) == 1:
        for x in grids[0]:
            assignments.append({axes[0].name: float(x)})
    else:
        for x in grids[0]:
            for y in grids[1]:
                assignments.append({axes[0].name: float(x), axes[1].name: float(y)})

    with ThreadPoolExecutor(max_workers=min(threads_limit(), len(assignments))) as pool:
        results = list(pool.map(lambda a: _sweep_cell(cfg, a), assignments))

    columns = [ax.name for ax in axes] + [
        "delta_phi_over_pi",
        "min_fidelity",
        "W",
        "status",
    ]
    rows = []
    any_ok = False
    for assignment, res in zip(assignments, results):
        row = [assignment[ax.name] for ax in axes]
        if res["status"] == "ok":
            any_ok = True
            row += [res["delta_phi_over_pi"], res["min_fidelity"], res["W"], "ok"]
        else:
            row += ["", "", "", res["status"]]
        rows.append(row)
    os.makedirs(cfg.out_dir, exist_ok=True)
    path = write_table(os.path.join(cfg.out_dir, "sweep"), columns, rows, cfg.out_format)
    if not any_ok:
        raise ConfigError("no sweep cell succeeded")
    return [path]


def run_phase_diagram(cfg: RunConfig) -> list[str]:
    axes = cfg.axes or [GridAxis("v", 0.0, 5.0, 101), GridAxis("J", 0.0, 5.0, 101)]
    grid = phase_diagram(axes[0].values(), axes[1].values(), cfg.quad_n)
    rows = []
    for i, v in enumerate(grid.v_values):
        for j, J in enumerate(grid.J_values):
            label = BOUNDARY if grid.boundary[i, j] else int(grid.W[i, j])
            rows.append([v, J, label])
    os.makedirs(cfg.out_dir, exist_ok=True)
    path = write_table(
        os.path.join(cfg.out_dir, "phase_diagram"),
        ["v_over_w", "J_over_w", "W_or_boundary"],
        rows,
        cfg.out_format,
    )
    return [path]


def run_labframe(cfg: RunConfig) -> list[str]:
    params = cfg.model_params()
    cav = cfg.cavity_config()
    press_a, press_b = simulate_lab(params, cav)
    env_a = demodulate(press_a, cav, cycles=cfg.demod_cycles)
    env_b = demodulate(press_b, cav, cycles=cfg.demod_cycles)
    lab = lab_delta_phi(env_a, env_b)

    # rotating-frame reference on the dimensionless clock, sampled at the
    # envelope times
    trace_a, trace_b = evolve_pair(params, cav.g0 * cav.T, cfg.steps)
    rot = delta_phi(trace_a, trace_b)
    rot_at_env = np.interp(lab.times * cav.g0, rot.times, rot.delta_phi)
    err = np.abs(lab.delta_phi - rot_at_env)

    os.makedirs(cfg.out_dir, exist_ok=True)
    paths = [
        write_table(
            os.path.join(cfg.out_dir, "labtrace"),
            ["t", "delta_phi_lab", "delta_phi_rot", "abs_error"],
            zip(lab.times, lab.delta_phi, rot_at_env, err),
            cfg.out_format,
        )
    ]
    if cfg.raw_export:
        for label, press in (("A", press_a), ("B", press_b)):
            p = os.path.join(cfg.out_dir, f"pressure_{label}.csv")
            export_pressure_csv(press, p)
            paths.append(p)
    return paths


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zakbench",
        description="Two-band chain geometric-phase experiments and data export.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("trace", "sweep", "phase-diagram", "labframe"):
        p = sub.add_parser(name)
        p.add_argument("--config", help="key = value config file")
        p.add_argument("--w", type=float)
        p.add_argument("--v", type=float)
        p.add_argument("--J", type=float)
        p.add_argument("--T", type=float, help="trace/sweep: units 1/g0; labframe: seconds")
        p.add_argument("--steps", type=int)
        p.add_argument("--schedule", choices=("half", "full"))
        p.add_argument("--g0-hz", type=float, dest="g0_hz")
        p.add_argument("--f0-hz", type=float, dest="f0_hz")
        p.add_argument("--gamma", type=float)
        p.add_argument("--sample-rate", type=float, dest="sample_rate")
        p.add_argument(
            "--grid",
            action="append",
            metavar="<axis:min:max:n>",
            help="swept axis; repeat for a second axis",
        )
        p.add_argument("--out", dest="out_dir")
        p.add_argument("--format", choices=("csv", "json"), dest="out_format")
    sub.add_parser("selfcheck", help="run the embedded invariant suite")
    return parser


def _merge_flags(cfg: RunConfig, args: argparse.Namespace) -> RunConfig:
    from dataclasses import replace

    updates = {}
    for flag, field_name in (
        ("w", "w"),
        ("v", "v"),
        ("J", "J"),
        ("steps", "steps"),
        ("g0_hz", "g0_hz"),
        ("f0_hz", "f0_hz"),
        ("gamma", "gamma"),
        ("sample_rate", "sample_rate"),
        ("out_dir", "out_dir"),
        ("out_format", "out_format"),
    ):
        val = getattr(args, flag, None)
        if val is not None:
            updates[field_name] = val
    if getattr(args, "schedule", None) is not None:
        updates["variant"] = args.schedule
    if getattr(args, "T", None) is not None:
        if args.command == "labframe":
            updates["lab_T"] = args.T
        else:
            updates["T"] = args.T
    if getattr(args, "grid", None):
        updates["axes"] = [parse_grid_spec(s) for s in args.grid]
    return replace(cfg, **updates)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "selfcheck":
        from .selfcheck import run_all

        failures = run_all()
        return EXIT_OK if failures == 0 else 1
    try:
        cfg = load_config_file(args.config) if args.config else RunConfig()
        cfg = _merge_flags(cfg, args)
        cfg.experiment = args.command
        cfg = cfg.validate()
        runner = {
            "trace": run_trace,
            "sweep": run_sweep,
            "phase-diagram": run_phase_diagram,
            "labframe": run_labframe,
        }[args.command]
        paths = runner(cfg)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except GaplessPoint as exc:
        print(f"error: band touching: {exc}", file=sys.stderr)
        return EXIT_GAPLESS
    except UnwrapJump as exc:
        print(f"error: unwrap failure: {exc}", file=sys.stderr)
        return EXIT_UNWRAP
    except RWAViolated as exc:
        print(f"error: rotating-frame guard: {exc}", file=sys.stderr)
        return EXIT_RWA
    for p in paths:
        print(p)
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())

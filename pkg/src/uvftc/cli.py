"""Scenario configuration files, result bundles, and the command line.

Config files are YAML mirroring the Scenario structure; unknown keys are
rejected with their line number.  A run directory holds ``series.csv`` (one
row per step, fixed column order, round-trip-safe precision),
``metrics.json`` and ``config.echo`` (the fully resolved configuration).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import replace

import numpy as np
import yaml

from . import control as ctl
from . import grasshopper as goa
from . import sim
from . import vehicle as veh

SEED_ENV_VAR = "UVFTC_SEED"

CSV_COLUMNS = (
    ["t", "x_d", "y_d", "z_d", "psi_d", "x", "y", "z", "psi",
     "e_x", "e_y", "e_z", "e_psi", "u_c", "v_c", "w_c", "r_c",
     "u", "v", "w", "r",
     "taubar_d_x", "taubar_d_y", "taubar_d_z", "taubar_d_n",
     "taubar_x", "taubar_y", "taubar_z", "taubar_n"]
    + [f"Tbar_{i}" for i in range(1, 9)]
    + ["err_mag", "err_dir", "gamma0", "v2", "goa_obj"]
)

_PANELS = {
    "trajectory": ["t", "x_d", "y_d", "z_d", "psi_d", "x", "y", "z", "psi"],
    "errors": ["t", "e_x", "e_y", "e_z", "e_psi"],
    "velocities": ["t", "u_c", "v_c", "w_c", "r_c", "u", "v", "w", "r"],
}


class ConfigError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


# ---------------------------------------------------------------------------
# Config schema

_SCHEMA = {
    "name": None,
    "preset": None,
    "trajectory": {"kind": None, "duration": None, "radius": None,
                   "turn_rate": None, "climb_rate": None, "heading_rate": None,
                   "x_rate": None, "heading": None, "times": None, "waypoints": None},
    "initial_pose": None,
    "initial_velocity": None,
    "vehicle": {"inertia_diagonal": None, "drag_constant": None,
                "drag_linear_coeff": None, "gravity_buoyancy": None,
                "max_body_velocity": None, "max_thruster_force": None,
                "drag_abs": None},
    "control": {"backstep": {"k": None, "k_z": None, "k_psi": None, "mu": None,
                             "v_max": None, "variant": None, "restricted": None},
                "smc": {"lam": None, "k_accel": None, "K1": None, "K2": None,
                        "r_exp": None, "eta": None, "gamma_adapt": None,
                        "f_bound": None},
                "model_error": None},
    "allocator": None,
    "goa": {"swarm_size": None, "max_iterations": None, "c_max": None,
            "c_min": None, "lower_bound": None, "upper_bound": None,
            "seed": None, "distance_remap": None},
    "faults": "fault-list",
    "perturb": {"currents": None, "noise": None, "seed": None,
                "amplitude_fraction": None, "noise_bound": None},
    "dt": None,
    "seed": None,
}

_FAULT_KEYS = {"thruster", "loss", "start_time"}


def _line_map(text: str) -> dict[tuple, int]:
    """Map config key paths to 1-based line numbers."""
    try:
        root = yaml.compose(text, Loader=yaml.SafeLoader)
    except yaml.YAMLError:
        return {}
    lines: dict[tuple, int] = {}

    def walk(node, path):
        if isinstance(node, yaml.MappingNode):
            for key_node, value_node in node.value:
                sub = path + (str(key_node.value),)
                lines[sub] = key_node.start_mark.line + 1
                walk(value_node, sub)
        elif isinstance(node, yaml.SequenceNode):
            for i, item in enumerate(node.value):
                walk(item, path + (str(i),))

    if root is not None:
        walk(root, ())
    return lines


def _check_keys(data, schema, lines, path=()):
    if not isinstance(data, dict):
        raise ConfigError(f"expected a mapping at {'.'.join(path) or 'top level'}",
                          lines.get(path))
    for key, value in data.items():
        sub = path + (key,)
        if key not in schema:
            raise ConfigError(f"unknown key {'.'.join(sub)!r}", lines.get(sub))
        entry = schema[key]
        if isinstance(entry, dict) and value is not None:
            _check_keys(value, entry, lines, sub)
        elif entry == "fault-list" and value is not None:
            if not isinstance(value, list):
                raise ConfigError("faults must be a list", lines.get(sub))
            for i, item in enumerate(value):
                item_path = sub + (str(i),)
                if not isinstance(item, dict):
                    raise ConfigError("each fault must be a mapping",
                                      lines.get(item_path))
                for fkey in item:
                    if fkey not in _FAULT_KEYS:
                        raise ConfigError(
                            f"unknown key {'.'.join(item_path + (fkey,))!r}",
                            lines.get(item_path + (fkey,)))


def _deep_merge(base: dict, override: dict) -> dict:
    out = dict(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(out.get(key), dict):
            out[key] = _deep_merge(out[key], value)
        else:
            out[key] = value
    return out


def scenario_to_dict(s: sim.Scenario) -> dict:
    traj = {"kind": s.trajectory.kind, "duration": float(s.trajectory.duration),
            "radius": float(s.trajectory.radius),
            "turn_rate": float(s.trajectory.turn_rate),
            "climb_rate": float(s.trajectory.climb_rate),
            "heading_rate": float(s.trajectory.heading_rate),
            "x_rate": float(s.trajectory.x_rate),
            "heading": float(s.trajectory.heading)}
    if s.trajectory.times is not None:
        traj["times"] = [float(x) for x in s.trajectory.times]
        traj["waypoints"] = [[float(x) for x in row] for row in s.trajectory.waypoints]
    return {
        "name": s.name,
        "trajectory": traj,
        "initial_pose": [float(x) for x in s.initial_pose],
        "initial_velocity": None if s.initial_velocity is None
        else [float(x) for x in s.initial_velocity],
        "vehicle": {
            "inertia_diagonal": [float(x) for x in s.vehicle.inertia_diagonal],
            "drag_constant": [float(x) for x in s.vehicle.drag_constant],
            "drag_linear_coeff": [float(x) for x in s.vehicle.drag_linear_coeff],
            "gravity_buoyancy": [float(x) for x in s.vehicle.gravity_buoyancy],
            "max_body_velocity": [float(x) for x in s.vehicle.max_body_velocity],
            "max_thruster_force": float(s.vehicle.max_thruster_force),
            "drag_abs": bool(s.vehicle.drag_abs),
        },
        "control": {
            "backstep": {"k": float(s.backstep.k), "k_z": float(s.backstep.k_z),
                         "k_psi": float(s.backstep.k_psi), "mu": float(s.backstep.mu),
                         "v_max": [float(x) for x in s.backstep.v_max],
                         "variant": s.backstep.variant,
                         "restricted": bool(s.backstep.restricted)},
            "smc": {"lam": float(s.smc.lam), "k_accel": float(s.smc.k_accel),
                    "K1": [float(x) for x in s.smc.K1],
                    "K2": [float(x) for x in s.smc.K2],
                    "r_exp": float(s.smc.r_exp), "eta": float(s.smc.eta),
                    "gamma_adapt": float(s.smc.gamma_adapt),
                    "f_bound": float(s.smc.f_bound)},
            "model_error": float(s.model_error),
        },
        "allocator": s.allocator,
        "goa": {"swarm_size": int(s.goa.swarm_size),
                "max_iterations": int(s.goa.max_iterations),
                "c_max": float(s.goa.c_max), "c_min": float(s.goa.c_min),
                "lower_bound": _bound_to_plain(s.goa.lower_bound),
                "upper_bound": _bound_to_plain(s.goa.upper_bound),
                "seed": int(s.goa.seed),
                "distance_remap": bool(s.goa.distance_remap)},
        "faults": [{"thruster": int(f.thruster), "loss": float(f.loss),
                    "start_time": float(f.start_time)} for f in s.faults],
        "perturb": {"currents": bool(s.perturb.currents),
                    "noise": bool(s.perturb.noise),
                    "seed": None if s.perturb.seed is None else int(s.perturb.seed),
                    "amplitude_fraction": float(s.perturb.amplitude_fraction),
                    "noise_bound": float(s.perturb.noise_bound)},
        "dt": float(s.dt),
        "seed": int(s.seed),
    }


def _bound_to_plain(bound):
    arr = np.asarray(bound, dtype=float)
    return float(arr) if arr.ndim == 0 else [float(x) for x in arr]


def _build_scenario(data: dict, lines: dict[tuple, int]) -> sim.Scenario:
    def oops(exc: Exception, *path: str) -> ConfigError:
        # Prefer the offending field's own line when the message names it.
        section = data
        for key in path:
            section = section.get(key, {}) if isinstance(section, dict) else {}
        line = None
        if isinstance(section, dict):
            for key in section:
                if key in str(exc):
                    line = lines.get(path + (key,))
                    break
        if line is None:
            line = lines.get(path)
        return ConfigError(str(exc), line)

    t = data["trajectory"]
    try:
        trajectory = sim.TrajectorySpec(
            kind=t["kind"], duration=float(t["duration"]), radius=float(t["radius"]),
            turn_rate=float(t["turn_rate"]), climb_rate=float(t["climb_rate"]),
            heading_rate=float(t["heading_rate"]), x_rate=float(t["x_rate"]),
            heading=float(t["heading"]), times=t.get("times"),
            waypoints=t.get("waypoints"))
    except (ValueError, TypeError) as exc:
        raise oops(exc, "trajectory") from exc

    v = data["vehicle"]
    try:
        vehicle = veh.VehicleParams(
            inertia_diagonal=v["inertia_diagonal"], drag_constant=v["drag_constant"],
            drag_linear_coeff=v["drag_linear_coeff"],
            gravity_buoyancy=v["gravity_buoyancy"],
            max_body_velocity=v["max_body_velocity"],
            max_thruster_force=float(v["max_thruster_force"]),
            drag_abs=bool(v["drag_abs"]))
    except (ValueError, TypeError) as exc:
        raise oops(exc, "vehicle") from exc

    b = data["control"]["backstep"]
    try:
        backstep = ctl.BackstepGains(k=float(b["k"]), k_z=float(b["k_z"]),
                                     k_psi=float(b["k_psi"]), mu=float(b["mu"]),
                                     v_max=b["v_max"], variant=b["variant"],
                                     restricted=bool(b["restricted"]))
    except (ValueError, TypeError) as exc:
        raise oops(exc, "control", "backstep") from exc

    m = data["control"]["smc"]
    try:
        smc = ctl.SmcGains(lam=float(m["lam"]), k_accel=float(m["k_accel"]),
                           K1=m["K1"], K2=m["K2"], r_exp=float(m["r_exp"]),
                           eta=float(m["eta"]), gamma_adapt=float(m["gamma_adapt"]),
                           f_bound=float(m["f_bound"]))
    except (ValueError, TypeError) as exc:
        raise oops(exc, "control", "smc") from exc

    g = data["goa"]
    try:
        goa_params = goa.GoaParams(
            swarm_size=int(g["swarm_size"]), max_iterations=int(g["max_iterations"]),
            c_max=float(g["c_max"]), c_min=float(g["c_min"]),
            lower_bound=g["lower_bound"], upper_bound=g["upper_bound"],
            seed=int(g["seed"]), distance_remap=bool(g["distance_remap"]))
    except (ValueError, TypeError) as exc:
        raise oops(exc, "goa") from exc

    try:
        faults = [sim.FaultEvent(thruster=int(f["thruster"]), loss=float(f["loss"]),
                                 start_time=float(f.get("start_time", 0.0)))
                  for f in data["faults"]]
    except (ValueError, TypeError, KeyError) as exc:
        raise oops(exc, "faults") from exc

    p = data["perturb"]
    try:
        perturb = sim.PerturbSpec(
            currents=bool(p["currents"]), noise=bool(p["noise"]),
            seed=None if p["seed"] is None else int(p["seed"]),
            amplitude_fraction=float(p["amplitude_fraction"]),
            noise_bound=float(p["noise_bound"]))
    except (ValueError, TypeError) as exc:
        raise oops(exc, "perturb") from exc

    try:
        return sim.Scenario(
            name=str(data["name"]), trajectory=trajectory,
            initial_pose=data["initial_pose"],
            initial_velocity=data["initial_velocity"],
            vehicle=vehicle, backstep=backstep, smc=smc,
            model_error=float(data["control"]["model_error"]),
            allocator=str(data["allocator"]), goa=goa_params, faults=faults,
            perturb=perturb, dt=float(data["dt"]), seed=int(data["seed"]))
    except (ValueError, TypeError) as exc:
        raise ConfigError(str(exc)) from exc


def load_config_data(text: str) -> tuple[dict, dict[tuple, int]]:
    try:
        raw = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        raise ConfigError(f"invalid YAML: {exc}",
                          None if mark is None else mark.line + 1) from exc
    if raw is None:
        raw = {}
    lines = _line_map(text)
    _check_keys(raw, _SCHEMA, lines)
    return raw, lines


def parse_config(text: str) -> sim.Scenario:
    """Parse a config file into a fully resolved Scenario (defaults filled,
    optional ``preset`` key as the base)."""
    raw, lines = load_config_data(text)
    if "preset" in raw:
        try:
            base = sim.preset_scenario(raw["preset"])
        except KeyError as exc:
            raise ConfigError(f"unknown preset {raw['preset']!r}",
                              lines.get(("preset",))) from exc
        overrides = {k: v for k, v in raw.items() if k != "preset"}
    else:
        base = sim.Scenario()
        overrides = raw
    merged = _deep_merge(scenario_to_dict(base), overrides)
    return _build_scenario(merged, lines)


def serialize_config(scenario: sim.Scenario) -> str:
    return yaml.safe_dump(scenario_to_dict(scenario), sort_keys=False,
                          default_flow_style=None)


def scenarios_equal(a: sim.Scenario, b: sim.Scenario) -> bool:
    return serialize_config(a) == serialize_config(b)


# ---------------------------------------------------------------------------
# Result bundles


def series_matrix(out: sim.SimOutput) -> np.ndarray:
    """Assemble the fixed-order series table (one row per step)."""
    return np.column_stack([
        out.t, out.desired, out.pose, out.err, out.v_c, out.vel,
        out.taubar_d, out.taubar, out.tbar,
        out.err_mag, out.err_dir, out.gamma0, out.v2, out.goa_obj,
    ])


def write_series_csv(path: str, matrix: np.ndarray) -> None:
    with open(path, "w", newline="") as handle:
        handle.write(",".join(CSV_COLUMNS) + "\n")
        for row in matrix:
            handle.write(",".join(f"{value:.17g}" for value in row) + "\n")


def read_series_csv(path: str) -> tuple[list[str], np.ndarray]:
    with open(path) as handle:
        header = handle.readline().strip().split(",")
        data = np.loadtxt(handle, delimiter=",", ndmin=2)
    if header != list(CSV_COLUMNS):
        raise ValueError(f"{path}: unexpected series.csv header")
    return header, data


def metrics_to_dict(metrics: sim.RunMetrics) -> dict:
    return {
        "max_abs_velocity_cmd": [float(x) for x in metrics.max_abs_velocity_cmd],
        "extremum_velocity_cmd": [float(x) for x in metrics.extremum_velocity_cmd],
        "rms_position_error_final_quarter": metrics.rms_position_error_final_quarter,
        "mean_position_error_final_quarter": metrics.mean_position_error_final_quarter,
        "final_position_error": metrics.final_position_error,
        "mean_allocation_error_magnitude": metrics.mean_allocation_error_magnitude,
        "mean_allocation_error_direction": metrics.mean_allocation_error_direction,
        "wall_clock_per_step": metrics.wall_clock_per_step,
    }


def metrics_from_series(data: np.ndarray,
                        wall_clock_per_step: float = float("nan")) -> sim.RunMetrics:
    """Recompute the series-derived metrics from a parsed series.csv table."""
    col = {name: i for i, name in enumerate(CSV_COLUMNS)}
    v_c = data[:, col["u_c"]:col["r_c"] + 1]
    err = data[:, col["e_x"]:col["e_psi"] + 1]
    idx = np.argmax(np.abs(v_c), axis=0)
    tail = slice(data.shape[0] - data.shape[0] // 4, None)
    pos_err = np.linalg.norm(err[:, :3], axis=1)
    return sim.RunMetrics(
        max_abs_velocity_cmd=np.max(np.abs(v_c), axis=0),
        extremum_velocity_cmd=v_c[idx, np.arange(4)],
        rms_position_error_final_quarter=float(np.sqrt(np.mean(pos_err[tail] ** 2))),
        mean_position_error_final_quarter=float(np.mean(pos_err[tail])),
        final_position_error=float(pos_err[-1]),
        mean_allocation_error_magnitude=float(np.mean(data[:, col["err_mag"]])),
        mean_allocation_error_direction=float(np.mean(data[:, col["err_dir"]])),
        wall_clock_per_step=wall_clock_per_step,
    )


def write_bundle(out_dir: str, output: sim.SimOutput) -> None:
    os.makedirs(out_dir, exist_ok=True)
    write_series_csv(os.path.join(out_dir, "series.csv"), series_matrix(output))
    metrics = sim.compute_metrics(output)
    with open(os.path.join(out_dir, "metrics.json"), "w") as handle:
        json.dump(metrics_to_dict(metrics), handle, indent=2, sort_keys=True)
        handle.write("\n")
    with open(os.path.join(out_dir, "config.echo"), "w") as handle:
        handle.write(serialize_config(output.scenario))


def read_bundle_name(run_dir: str) -> str:
    echo = os.path.join(run_dir, "config.echo")
    if os.path.exists(echo):
        with open(echo) as handle:
            scenario = parse_config(handle.read())
        return scenario.name
    return os.path.basename(os.path.normpath(run_dir))


# ---------------------------------------------------------------------------
# Commands


def _resolve_scenario(ref: str) -> tuple[sim.Scenario, bool]:
    """Preset name or config path -> (scenario, seed_was_explicit)."""
    if ref in sim.PRESET_NAMES:
        return sim.preset_scenario(ref), False
    if os.path.exists(ref):
        with open(ref) as handle:
            text = handle.read()
        raw, _ = load_config_data(text)
        return parse_config(text), "seed" in raw
    raise ConfigError(f"unknown preset or missing config file: {ref!r}")


def _apply_overrides(scenario: sim.Scenario, args, seed_explicit: bool) -> sim.Scenario:
    if args.allocator:
        scenario = replace(scenario, allocator=args.allocator)
    if getattr(args, "goa_seed", None) is not None:
        scenario = replace(scenario, goa=replace(scenario.goa, seed=args.goa_seed))
    if args.seed is not None:
        scenario = replace(scenario, seed=args.seed)
    elif not seed_explicit and os.environ.get(SEED_ENV_VAR):
        scenario = replace(scenario, seed=int(os.environ[SEED_ENV_VAR]))
    if args.fast:
        scenario = sim.apply_fast(scenario)
    return scenario


def _cmd_run(args) -> int:
    scenario, seed_explicit = _resolve_scenario(args.scenario)
    scenario = _apply_overrides(scenario, args, seed_explicit)
    output = sim.run_scenario(scenario)
    out_dir = args.out or os.path.join("runs", scenario.name)
    write_bundle(out_dir, output)
    metrics = sim.compute_metrics(output)
    print(f"{scenario.name}: {len(output.t)} steps, "
          f"{metrics.wall_clock_per_step * 1e3:.2f} ms/step -> {out_dir}")
    print(sim.format_metrics_table([scenario.name], [metrics]))
    return 0


def _cmd_compare(args) -> int:
    names, tables, grids = [], [], []
    for run_dir in args.dirs:
        _, data = read_series_csv(os.path.join(run_dir, "series.csv"))
        names.append(read_bundle_name(run_dir))
        tables.append(data)
        grids.append(data[:, 0])
    for grid in grids[1:]:
        if len(grid) != len(grids[0]) or not np.array_equal(grid, grids[0]):
            raise ValueError("time grids do not match across runs")
    metrics = [metrics_from_series(data) for data in tables]
    print(sim.format_metrics_table(names, metrics))
    if args.export:
        col = {name: i for i, name in enumerate(CSV_COLUMNS)}
        axes = ["u_c", "v_c", "w_c", "r_c"]
        header = ["t"] + [f"{name}_{axis}" for name in names for axis in axes]
        block = np.column_stack(
            [grids[0]] + [data[:, col[axis]] for data in tables for axis in axes])
        write_matrix_csv(args.export, header, block)
        print(f"velocity series -> {args.export}")
    return 0


def write_matrix_csv(path: str, header: list[str], matrix: np.ndarray) -> None:
    with open(path, "w", newline="") as handle:
        handle.write(",".join(header) + "\n")
        for row in matrix:
            handle.write(",".join(f"{value:.17g}" for value in row) + "\n")


def _set_path(data: dict, path: str, value) -> None:
    keys = path.split(".")
    node = data
    for key in keys[:-1]:
        if key not in node or not isinstance(node[key], dict):
            raise ConfigError(f"unknown parameter path {path!r}")
        node = node[key]
    if keys[-1] not in node:
        raise ConfigError(f"unknown parameter path {path!r}")
    node[keys[-1]] = value


def _cmd_sweep(args) -> int:
    scenario, seed_explicit = _resolve_scenario(args.scenario)
    scenario = _apply_overrides(scenario, args, seed_explicit)
    values = [yaml.safe_load(token) for token in args.values.split(",")]
    names, all_metrics = [], []
    for value in values:
        data = scenario_to_dict(scenario)
        _set_path(data, args.param, value)
        variant = _build_scenario(data, {})
        variant = replace(variant, name=f"{scenario.name}-{args.param}={value}")
        output = sim.run_scenario(variant)
        out_dir = os.path.join(args.out or "runs", variant.name)
        write_bundle(out_dir, output)
        names.append(variant.name)
        all_metrics.append(sim.compute_metrics(output))
    print(sim.format_metrics_table(names, all_metrics))
    return 0


def _cmd_plotdata(args) -> int:
    _, data = read_series_csv(os.path.join(args.dir, "series.csv"))
    col = {name: i for i, name in enumerate(CSV_COLUMNS)}
    fields = _PANELS[args.panel]
    block = np.column_stack([data[:, col[f]] for f in fields])
    if args.out:
        write_matrix_csv(args.out, fields, block)
        print(f"{args.panel} panel -> {args.out}")
    else:
        sys.stdout.write(",".join(fields) + "\n")
        for row in block:
            sys.stdout.write(",".join(f"{value:.17g}" for value in row) + "\n")
    return 0


def _cmd_presets(args) -> int:
    for name in sim.PRESET_NAMES:
        print(name)
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="uvftc",
        description="Fault-tolerant trajectory tracking scenarios for an "
                    "over-actuated underwater vehicle.")
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="execute a scenario and write a result bundle")
    run_p.add_argument("scenario", help="preset name or config file path")
    run_p.add_argument("--out", help="output directory (default runs/<name>)")
    run_p.add_argument("--seed", type=int)
    run_p.add_argument("--goa-seed", type=int, dest="goa_seed")
    run_p.add_argument("--fast", action="store_true",
                       help="fifth-duration variant at dt = 0.02")
    run_p.add_argument("--allocator", choices=sim.ALLOCATOR_NAMES)
    run_p.set_defaults(func=_cmd_run)

    cmp_p = sub.add_parser("compare", help="tabulate metrics across run directories")
    cmp_p.add_argument("dirs", nargs="+")
    cmp_p.add_argument("--export", help="write aligned commanded-velocity series")
    cmp_p.set_defaults(func=_cmd_compare)

    sweep_p = sub.add_parser("sweep", help="run a scenario across parameter values")
    sweep_p.add_argument("scenario")
    sweep_p.add_argument("--param", required=True,
                         help="dotted config path, e.g. goa.max_iterations")
    sweep_p.add_argument("--values", required=True, help="comma-separated values")
    sweep_p.add_argument("--out")
    sweep_p.add_argument("--seed", type=int)
    sweep_p.add_argument("--fast", action="store_true")
    sweep_p.add_argument("--allocator", choices=sim.ALLOCATOR_NAMES)
    sweep_p.set_defaults(func=_cmd_sweep)

    plot_p = sub.add_parser("plotdata", help="slice a run into plot panels")
    plot_p.add_argument("dir")
    plot_p.add_argument("--panel", choices=sorted(_PANELS), default="trajectory")
    plot_p.add_argument("--out")
    plot_p.set_defaults(func=_cmd_plotdata)

    presets_p = sub.add_parser("presets", help="list preset scenario names")
    presets_p.set_defaults(func=_cmd_presets)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, sim.ScenarioError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""Desired-trajectory generation, the closed tracking loop, and metrics.

A scenario bundles the trajectory, vehicle, controller gains, allocator
choice, fault schedule and perturbation switches; running it produces a
uniformly sampled record of every quantity needed to reproduce the study
plots (trajectories, tracking errors, commanded velocities, allocation
errors, energy diagnostics).  Runs are bit-reproducible for a fixed seed.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field, replace

import numpy as np

from . import allocation as alc
from . import control as ctl
from . import environment as env
from . import grasshopper as goa
from . import thrusters as thr
from . import vehicle as veh

ALLOCATOR_NAMES = ("goa", "pinv-t", "pinv-s")


class ScenarioError(RuntimeError):
    """A scenario could not be completed; carries the failure time."""

    def __init__(self, message: str, t: float):
        super().__init__(f"{message} (t = {t:.3f} s)")
        self.t = t


# ---------------------------------------------------------------------------
# Desired trajectories

# Ramp/plateau pattern shared by the polyline's y and z axes.
_POLY_BREAKS = np.array([0.0, 5.0, 10.0, 15.0, 20.0])
_POLY_VALUES = np.array([0.0, 5.0, 5.0, 10.0, 10.0])


@dataclass
class TrajectorySpec:
    """Reference trajectory.  ``kind`` selects which parameters apply:

    - "helix": radius, turn_rate, climb_rate, heading_rate
    - "polyline3d": x_rate and the fixed ramp/plateau pattern on y and z,
      constant heading
    - "custom-piecewise": times (strictly increasing, starting at 0) and
      waypoints (len(times) x 4), linearly interpolated
    """
    kind: str = "helix"
    duration: float = 50.0
    radius: float = 10.0
    turn_rate: float = 0.2
    climb_rate: float = 0.5
    heading_rate: float = 0.2
    x_rate: float = 1.0
    heading: float = 0.2
    times: np.ndarray | None = None
    waypoints: np.ndarray | None = None

    def __post_init__(self):
        if self.kind not in ("helix", "polyline3d", "custom-piecewise"):
            raise ValueError(f"unknown trajectory kind {self.kind!r}")
        if self.duration <= 0:
            raise ValueError("duration must be positive")
        if self.kind == "custom-piecewise":
            if self.times is None or self.waypoints is None:
                raise ValueError("custom-piecewise requires times and waypoints")
            self.times = np.asarray(self.times, dtype=float)
            self.waypoints = np.asarray(self.waypoints, dtype=float)
            if self.times.ndim != 1 or len(self.times) < 2 or np.any(np.diff(self.times) <= 0):
                raise ValueError("times must be strictly increasing with at least 2 entries")
            if self.times[0] != 0.0:
                raise ValueError("times must start at 0")
            if self.waypoints.shape != (len(self.times), 4):
                raise ValueError("waypoints must have shape (len(times), 4)")


def _piecewise(t: float, breaks: np.ndarray, values: np.ndarray) -> tuple[float, float]:
    """Value and right-hand slope of a piecewise-linear signal."""
    pos = float(np.interp(t, breaks, values))
    idx = int(np.searchsorted(breaks, t, side="right")) - 1
    idx = min(max(idx, 0), len(breaks) - 2)
    slope = (values[idx + 1] - values[idx]) / (breaks[idx + 1] - breaks[idx])
    return pos, float(slope)


def desired_state(t: float, spec: TrajectorySpec) -> tuple[np.ndarray, np.ndarray]:
    """Desired pose and its time derivative at time t (right-hand derivative
    at polyline corners)."""
    if not -1e-9 <= t <= spec.duration + 1e-9:
        raise ValueError(f"t = {t} outside [0, {spec.duration}]")
    t = min(max(t, 0.0), spec.duration)

    if spec.kind == "helix":
        a, w = spec.radius, spec.turn_rate
        pose = np.array([a * np.sin(w * t), a - a * np.cos(w * t),
                         spec.climb_rate * t, spec.heading_rate * t])
        rate = np.array([a * w * np.cos(w * t), a * w * np.sin(w * t),
                         spec.climb_rate, spec.heading_rate])
        return pose, rate

    if spec.kind == "polyline3d":
        y, ydot = _piecewise(t, _POLY_BREAKS, _POLY_VALUES)
        z, zdot = _piecewise(t, _POLY_BREAKS, _POLY_VALUES)
        pose = np.array([spec.x_rate * t, y, z, spec.heading])
        rate = np.array([spec.x_rate, ydot, zdot, 0.0])
        return pose, rate

    pose = np.empty(4)
    rate = np.empty(4)
    for axis in range(4):
        pose[axis], rate[axis] = _piecewise(t, spec.times, spec.waypoints[:, axis])
    return pose, rate


# ---------------------------------------------------------------------------
# Scenario description


@dataclass
class FaultEvent:
    """Step power loss: thruster healthy until start_time, then fixed loss."""
    thruster: int
    loss: float
    start_time: float = 0.0

    def __post_init__(self):
        if not 1 <= self.thruster <= thr.NUM_THRUSTERS:
            raise ValueError(f"thruster must be in 1..{thr.NUM_THRUSTERS}")
        if not 0.0 <= self.loss <= 1.0:
            raise ValueError("loss must be in [0, 1]")
        if self.start_time < 0:
            raise ValueError("start_time must be nonnegative")


@dataclass
class PerturbSpec:
    currents: bool = False
    noise: bool = False
    seed: int | None = None
    amplitude_fraction: float = 0.10
    noise_bound: float = 0.1
    # First-order smoothing (time constant, s) of the commanded velocity,
    # applied only while measurement noise is on; without it the
    # backward-difference acceleration feedforward amplifies white position
    # noise by 1/dt and saturates the torque demand.
    command_filter: float = 0.2


@dataclass
class Scenario:
    name: str = "custom"
    trajectory: TrajectorySpec = field(default_factory=TrajectorySpec)
    initial_pose: np.ndarray = field(default_factory=lambda: np.array([0.0, 10.0, 0.0, 0.0]))
    # None = start at the desired ground velocity (no artificial spin-up jump).
    initial_velocity: np.ndarray | None = None
    vehicle: veh.VehicleParams = field(default_factory=veh.VehicleParams)
    backstep: ctl.BackstepGains = field(default_factory=ctl.BackstepGains)
    smc: ctl.SmcGains = field(default_factory=ctl.SmcGains)
    model_error: float = 0.0
    allocator: str = "goa"
    goa: goa.GoaParams = field(default_factory=goa.GoaParams)
    faults: list[FaultEvent] = field(default_factory=list)
    perturb: PerturbSpec = field(default_factory=PerturbSpec)
    dt: float = 0.01
    seed: int = 0

    def __post_init__(self):
        self.initial_pose = np.asarray(self.initial_pose, dtype=float)
        if self.initial_velocity is not None:
            self.initial_velocity = np.asarray(self.initial_velocity, dtype=float)
        if self.allocator not in ALLOCATOR_NAMES:
            raise ValueError(f"allocator must be one of {ALLOCATOR_NAMES}")
        if self.dt <= 0:
            raise ValueError("dt must be positive")
        steps = self.trajectory.duration / self.dt
        if abs(steps - round(steps)) > 1e-6:
            raise ValueError("duration must be a multiple of dt")
        if self.seed < 0:
            raise ValueError("seed must be nonnegative")


@dataclass
class SimOutput:
    """Uniformly sampled run record; row k describes the state at t_k and the
    commands applied over [t_k, t_k + dt)."""
    scenario: Scenario
    t: np.ndarray
    desired: np.ndarray        # (n, 4)
    pose: np.ndarray           # (n, 4) true pose
    pose_meas: np.ndarray      # (n, 4) what the controller saw
    vel: np.ndarray            # (n, 4)
    err: np.ndarray            # (n, 4) desired - measured, heading wrapped
    v_c: np.ndarray            # (n, 4) commanded body velocity
    taubar_d: np.ndarray       # (n, 4) clamped normalized torque demand
    taubar: np.ndarray         # (n, 4) delivered normalized torque
    tbar: np.ndarray           # (n, 8) commanded normalized forces
    err_mag: np.ndarray
    err_dir: np.ndarray
    gamma0: np.ndarray
    v2: np.ndarray
    goa_obj: np.ndarray        # nan for pseudo-inverse allocators
    goa_iters: np.ndarray
    wall_per_step: float


@dataclass
class RunMetrics:
    max_abs_velocity_cmd: np.ndarray       # (4,) per-axis max |v_c|
    extremum_velocity_cmd: np.ndarray      # (4,) signed value of largest magnitude
    rms_position_error_final_quarter: float
    mean_position_error_final_quarter: float
    final_position_error: float
    mean_allocation_error_magnitude: float
    mean_allocation_error_direction: float
    wall_clock_per_step: float


# ---------------------------------------------------------------------------
# Allocators


class _PinvAllocator:
    def __init__(self, mode: str):
        self.approx = alc.t_approximation if mode == "t" else alc.s_approximation

    def allocate(self, tau_d, weights, step):
        raw = alc.weighted_pseudoinverse(tau_d, weights)
        return self.approx(raw), np.nan, 0


class _GoaAllocator:
    """Swarm reallocation, warm-started each step with the better of the
    previous solution and the clamped pseudo-inverse candidate.

    When the warm candidate already allocates the demand to numerical
    exactness the swarm search is skipped for that step; it cannot improve
    on an objective of ~1e-12 and the skip keeps long runs cheap.
    """

    _EXACT = 1e-12

    def __init__(self, params: goa.GoaParams, scenario_seed: int):
        self.params = replace(params, dimensions=thr.NUM_THRUSTERS)
        self.scenario_seed = scenario_seed
        self.prev_best = None

    def allocate(self, tau_d, weights, step):
        objective = goa.allocation_objective(tau_d, weights)
        try:
            baseline = alc.t_approximation(alc.weighted_pseudoinverse(tau_d, weights))
        except alc.AllocationSingularError:
            baseline = None

        warm = self.prev_best
        warm_obj = np.inf if warm is None else float(objective(warm))
        if baseline is not None:
            baseline_obj = float(objective(baseline))
            if baseline_obj < warm_obj:
                warm, warm_obj = baseline, baseline_obj
        if warm is not None and warm_obj < self._EXACT:
            self.prev_best = warm
            return warm, warm_obj, 0

        step_seed = int(np.random.SeedSequence(
            (self.scenario_seed, self.params.seed, 2, step)).generate_state(1, np.uint64)[0])
        params = replace(self.params, seed=step_seed)
        best, fit, _ = goa.optimize(objective, params, warm_start=warm)
        self.prev_best = best
        return best, fit, params.max_iterations


def _make_allocator(scenario: Scenario):
    if scenario.allocator == "goa":
        return _GoaAllocator(scenario.goa, scenario.seed)
    return _PinvAllocator(scenario.allocator.split("-")[1])


# ---------------------------------------------------------------------------
# Closed loop


def _weights_series(faults: list[FaultEvent], t: float, weights: np.ndarray) -> np.ndarray:
    for event in faults:
        if t >= event.start_time:
            weights = thr.apply_fault(weights, event.thruster, event.loss)
    return weights


def run_scenario(scenario: Scenario) -> SimOutput:
    """Execute the closed loop.  Raises ScenarioError when the allocation
    turns singular mid-run."""
    spec = scenario.trajectory
    dt = scenario.dt
    n = int(round(spec.duration / dt))
    params = scenario.vehicle
    tau_max = thr.torque_limits(params.max_thruster_force)
    est = ctl.ModelEstimate.from_params(params, scenario.model_error)

    # Perturbation streams: one master seed, split per consumer.
    perturb_seed = scenario.perturb.seed if scenario.perturb.seed is not None \
        else scenario.seed
    current_coeffs = None
    if scenario.perturb.currents:
        # Scale the disturbance by what the undisturbed run actually demands.
        rehearsal = run_scenario(replace(
            scenario, perturb=replace(scenario.perturb, currents=False, noise=False)))
        scale = np.percentile(np.abs(rehearsal.taubar * tau_max), 95, axis=0)
        rng_cur = np.random.Generator(np.random.PCG64(
            np.random.SeedSequence((perturb_seed, 10))))
        current_coeffs = env.sample_current_coefficients(
            scale, env.CurrentSpec(amplitude_fraction=scenario.perturb.amplitude_fraction),
            rng_cur)
    noise_spec = env.NoiseSpec(bound=scenario.perturb.noise_bound)
    rng_noise = np.random.Generator(np.random.PCG64(
        np.random.SeedSequence((perturb_seed, 11))))

    pose = scenario.initial_pose.copy()
    if scenario.initial_velocity is not None:
        vel = scenario.initial_velocity.copy()
    else:
        _, pdot0 = desired_state(0.0, spec)
        vel = ctl.desired_body_velocity(pdot0, pose[3])

    allocator = _make_allocator(scenario)
    smc_state = ctl.SmcState()
    prev_vc = np.zeros(4)
    weights = thr.healthy_weights()
    faults = sorted(scenario.faults, key=lambda ev: ev.start_time)

    smooth_commands = scenario.perturb.noise and scenario.perturb.command_filter > 0
    alpha = dt / (scenario.perturb.command_filter + dt) if smooth_commands else 1.0
    vc_filter = None

    out = {key: np.empty((n, 4)) for key in
           ("desired", "pose", "pose_meas", "vel", "err", "v_c", "taubar_d", "taubar")}
    out["tbar"] = np.empty((n, thr.NUM_THRUSTERS))
    scalars = {key: np.empty(n) for key in
               ("t", "err_mag", "err_dir", "gamma0", "v2", "goa_obj")}
    iters = np.zeros(n, dtype=int)

    started = time.perf_counter()
    for k in range(n):
        t = k * dt
        p_d, pdot_d = desired_state(t, spec)
        weights = _weights_series(faults, t, thr.healthy_weights())

        pose_meas = env.perturb_position(pose, noise_spec, rng_noise) \
            if scenario.perturb.noise else pose.copy()

        e = p_d - pose_meas
        e[3] = ctl.wrap_angle(e[3])
        v_e = ctl.restrict_error(e, scenario.backstep)
        v_des = ctl.desired_body_velocity(pdot_d, p_d[3])
        v_c = ctl.backstepping_velocity(v_e, pose_meas[3], v_des, scenario.backstep)
        if smooth_commands:
            vc_filter = v_c if vc_filter is None else vc_filter + alpha * (v_c - vc_filter)
            v_c = vc_filter
        v_c_dot = (v_c - prev_vc) / dt
        tau, smc_state = ctl.smc_torque(vel, v_c, v_c_dot, pose_meas[3],
                                        smc_state, est, scenario.smc, dt)

        taubar_d = np.clip(thr.normalize_torque(tau, params.max_thruster_force), -1.0, 1.0)
        try:
            tbar, obj, n_iter = allocator.allocate(taubar_d, weights, k)
        except alc.AllocationSingularError as exc:
            raise ScenarioError(str(exc), t) from exc
        tbar = np.clip(tbar, -1.0, 1.0)
        taubar = thr.forces_to_torque(tbar, weights)
        alloc_err = alc.allocation_error(taubar_d, taubar)

        tau_plant = taubar * tau_max
        if current_coeffs is not None:
            tau_plant = tau_plant + env.current_torque(t, current_coeffs)

        scalars["t"][k] = t
        out["desired"][k] = p_d
        out["pose"][k] = pose
        out["pose_meas"][k] = pose_meas
        out["vel"][k] = vel
        out["err"][k] = e
        out["v_c"][k] = v_c
        out["taubar_d"][k] = taubar_d
        out["taubar"][k] = taubar
        out["tbar"][k] = tbar
        scalars["err_mag"][k] = alloc_err.magnitude
        scalars["err_dir"][k] = alloc_err.direction
        scalars["gamma0"][k] = ctl.lyapunov_gamma0(e)
        scalars["v2"][k] = ctl.lyapunov_v2(smc_state.surface, params, scenario.smc.lam)
        scalars["goa_obj"][k] = obj
        iters[k] = n_iter

        pose, vel = veh.integrate_step(pose, vel, tau_plant, dt, params)
        # Keep the state inside the vehicle's physical velocity envelope; the
        # affine drag model is only meaningful there.
        vel = np.clip(vel, -params.max_body_velocity, params.max_body_velocity)
        prev_vc = v_c

    wall = (time.perf_counter() - started) / n
    return SimOutput(scenario=scenario, t=scalars["t"], desired=out["desired"],
                     pose=out["pose"], pose_meas=out["pose_meas"], vel=out["vel"],
                     err=out["err"], v_c=out["v_c"], taubar_d=out["taubar_d"],
                     taubar=out["taubar"], tbar=out["tbar"],
                     err_mag=scalars["err_mag"], err_dir=scalars["err_dir"],
                     gamma0=scalars["gamma0"], v2=scalars["v2"],
                     goa_obj=scalars["goa_obj"], goa_iters=iters, wall_per_step=wall)


# ---------------------------------------------------------------------------
# Metrics and comparisons


def compute_metrics(out: SimOutput) -> RunMetrics:
    if len(out.t) == 0:
        raise ValueError("empty simulation output")
    idx = np.argmax(np.abs(out.v_c), axis=0)
    extremum = out.v_c[idx, np.arange(4)]
    tail = slice(len(out.t) - len(out.t) // 4, None)
    pos_err = np.linalg.norm(out.err[:, :3], axis=1)
    return RunMetrics(
        max_abs_velocity_cmd=np.max(np.abs(out.v_c), axis=0),
        extremum_velocity_cmd=extremum,
        rms_position_error_final_quarter=float(np.sqrt(np.mean(pos_err[tail] ** 2))),
        mean_position_error_final_quarter=float(np.mean(pos_err[tail])),
        final_position_error=float(pos_err[-1]),
        mean_allocation_error_magnitude=float(np.mean(out.err_mag)),
        mean_allocation_error_direction=float(np.mean(out.err_dir)),
        wall_clock_per_step=out.wall_per_step,
    )


def format_metrics_table(names: list[str], metrics: list[RunMetrics]) -> str:
    """Per-axis commanded-velocity extrema, one row per run."""
    header = f"{'run':40s} {'u_c (m/s)':>10s} {'v_c (m/s)':>10s} " \
             f"{'w_c (m/s)':>10s} {'r_c (rad/s)':>11s} {'alloc err':>10s}"
    lines = [header]
    for name, m in zip(names, metrics):
        ext = m.extremum_velocity_cmd
        lines.append(f"{name:40s} {ext[0]:10.4f} {ext[1]:10.4f} "
                     f"{ext[2]:10.4f} {ext[3]:11.4f} "
                     f"{m.mean_allocation_error_magnitude:10.4f}")
    return "\n".join(lines)


@dataclass
class Comparison:
    names: list[str]
    metrics: list[RunMetrics]
    t: np.ndarray
    velocity_cmd: dict[str, np.ndarray]   # name -> (n, 4) series for plotting
    errors: dict[str, np.ndarray]         # name -> (n, 4)

    def table(self) -> str:
        return format_metrics_table(self.names, self.metrics)


def compare_runs(outputs: list[SimOutput]) -> Comparison:
    """Aligned metrics for runs on identical time grids."""
    if not outputs:
        raise ValueError("need at least one run to compare")
    t0 = outputs[0].t
    for out in outputs[1:]:
        if len(out.t) != len(t0) or not np.array_equal(out.t, t0):
            raise ValueError("time grids do not match")
    names = []
    for out in outputs:
        name = out.scenario.name
        while name in names:
            name += "'"
        names.append(name)
    return Comparison(
        names=names,
        metrics=[compute_metrics(out) for out in outputs],
        t=t0.copy(),
        velocity_cmd={name: out.v_c.copy() for name, out in zip(names, outputs)},
        errors={name: out.err.copy() for name, out in zip(names, outputs)},
    )


# ---------------------------------------------------------------------------
# Presets


_PRESET_BASES = {
    "helix-nofault": dict(
        trajectory=dict(kind="helix", duration=50.0),
        initial_pose=(0.0, 10.0, 0.0, 0.0),
        faults=[],
    ),
    "helix-single-T1": dict(
        trajectory=dict(kind="helix", duration=50.0),
        initial_pose=(0.0, 10.0, 0.0, 0.0),
        faults=[(1, 1.0, 0.0)],
    ),
    "poly-single-T8": dict(
        trajectory=dict(kind="polyline3d", duration=20.0),
        initial_pose=(0.0, 2.5, 0.0, 0.0),
        faults=[(8, 1.0, 0.0)],
    ),
    "poly-double-T1T8": dict(
        trajectory=dict(kind="polyline3d", duration=20.0),
        initial_pose=(0.0, 2.5, 0.0, 0.0),
        faults=[(1, 1.0, 0.0), (8, 1.0, 0.0)],
    ),
}

PRESET_NAMES = tuple(
    f"{base}-{alloc}{suffix}"
    for base in _PRESET_BASES
    for alloc in ("goa", "pinv")
    for suffix in ("", "-perturbed")
)


def preset_scenario(name: str) -> Scenario:
    """Build one of the named experiment presets.

    ``-goa`` presets run the restricted cascade with swarm reallocation;
    ``-pinv`` presets are the traditional baseline they are compared
    against: classic (unrestricted) backstepping with clamped weighted
    pseudo-inverse allocation.
    """
    if name not in PRESET_NAMES:
        raise KeyError(f"unknown preset {name!r}")
    rest = name
    perturbed = rest.endswith("-perturbed")
    if perturbed:
        rest = rest[: -len("-perturbed")]
    base, alloc = rest.rsplit("-", 1)
    recipe = _PRESET_BASES[base]
    return Scenario(
        name=name,
        trajectory=TrajectorySpec(**recipe["trajectory"]),
        initial_pose=np.asarray(recipe["initial_pose"], dtype=float),
        allocator="goa" if alloc == "goa" else "pinv-t",
        backstep=ctl.BackstepGains(restricted=(alloc == "goa")),
        faults=[FaultEvent(*f) for f in recipe["faults"]],
        perturb=PerturbSpec(currents=perturbed, noise=perturbed),
    )


def apply_fast(scenario: Scenario) -> Scenario:
    """CI-scale variant: a fifth of the duration at a coarser step."""
    dt = 0.02
    duration = scenario.trajectory.duration / 5.0
    duration = round(duration / dt) * dt
    return replace(scenario,
                   name=scenario.name + "-fast",
                   trajectory=replace(scenario.trajectory, duration=duration),
                   dt=dt)

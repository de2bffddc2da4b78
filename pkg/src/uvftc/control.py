"""Trajectory-tracking cascade: error-restricted backstepping (outer,
kinematic) and adaptive sliding-mode control (inner, dynamic).

The outer loop squashes the pose error through e/(|e|+1) so the commanded
body velocity never exceeds mu * v_max per axis; the inner loop drives the
velocity error onto an integral sliding surface with a continuous
power-law switching term and a slow adaptive bias estimator.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .vehicle import VehicleParams, coriolis_from_inertia, jacobian


@dataclass
class BackstepGains:
    k: float = 1.0
    k_z: float = 1.0
    k_psi: float = 1.0
    mu: float = 0.5
    v_max: np.ndarray = field(default_factory=lambda: np.array([4.0, 4.0, 2.0, 1.0]))
    # "corrected" uses +v_d cos(v_epsi) in the sway row (standard backstepping);
    # "printed" keeps the -v_d cos(v_epsi) variant for comparison.
    variant: str = "corrected"
    # With restricted=False the raw pose error feeds the control law (the
    # traditional cascade the refined design is compared against); the
    # velocity budget then no longer binds.
    restricted: bool = True

    def __post_init__(self):
        self.v_max = np.asarray(self.v_max, dtype=float)
        if self.k <= 0 or self.k_z <= 0 or self.k_psi <= 0:
            raise ValueError("backstepping gains must be positive")
        if not 0.0 < self.mu <= 1.0:
            raise ValueError("mu must be in (0, 1]")
        if self.v_max.shape != (4,) or np.any(self.v_max <= 0):
            raise ValueError("v_max must be a positive 4-vector")
        if self.variant not in ("corrected", "printed"):
            raise ValueError("variant must be 'corrected' or 'printed'")


@dataclass
class SmcGains:
    lam: float = 2.0
    k_accel: float = 1.0
    K1: np.ndarray = field(default_factory=lambda: np.full(4, 5.0))
    K2: np.ndarray = field(default_factory=lambda: np.full(4, 5.0))
    r_exp: float = 0.5
    eta: float = 0.1
    gamma_adapt: float = 1.0
    f_bound: float = 0.0

    def __post_init__(self):
        self.K1 = np.asarray(self.K1, dtype=float)
        self.K2 = np.asarray(self.K2, dtype=float)
        if self.lam <= 0 or self.k_accel <= 0:
            raise ValueError("lam and k_accel must be positive")
        if not 0.0 < self.r_exp < 1.0:
            raise ValueError("r_exp must be in (0, 1)")
        if self.eta <= 0 or self.gamma_adapt <= 0 or self.f_bound < 0:
            raise ValueError("eta, gamma_adapt must be positive; f_bound nonnegative")
        floor = self.eta + self.f_bound
        if np.any(self.K1 < floor) or np.any(self.K2 < floor):
            raise ValueError("switching gains must satisfy K >= eta + f_bound")


@dataclass
class SmcState:
    """Controller memory, zeroed at scenario start.  ``surface`` keeps the
    last sliding-surface value for diagnostics."""
    integral_ev: np.ndarray = field(default_factory=lambda: np.zeros(4))
    prev_ev: np.ndarray = field(default_factory=lambda: np.zeros(4))
    tau_est: np.ndarray = field(default_factory=lambda: np.zeros(4))
    surface: np.ndarray = field(default_factory=lambda: np.zeros(4))


@dataclass
class ModelEstimate:
    """Plant model used inside the controller; exact by default."""
    inertia: np.ndarray
    drag_constant: np.ndarray
    drag_linear: np.ndarray
    gravity: np.ndarray
    drag_abs: bool = False

    @classmethod
    def from_params(cls, params: VehicleParams, rel_error: float = 0.0) -> "ModelEstimate":
        scale = 1.0 + rel_error
        return cls(inertia=params.inertia_diagonal * scale,
                   drag_constant=params.drag_constant * scale,
                   drag_linear=params.drag_linear_coeff * scale,
                   gravity=params.gravity_buoyancy * scale,
                   drag_abs=params.drag_abs)


def wrap_angle(angle):
    """Reduce an angle to (-pi, pi]."""
    wrapped = (angle + np.pi) % (2.0 * np.pi) - np.pi
    return np.where(wrapped == -np.pi, np.pi, wrapped)[()]


def restrict_error(e: np.ndarray, gains: BackstepGains) -> np.ndarray:
    """Squash the pose error into the velocity budget: e/(|e|+1) * mu * v_max.

    With gains.restricted False the error passes through untouched (classic
    backstepping error variables).
    """
    e = np.asarray(e, dtype=float)
    if not gains.restricted:
        return e.copy()
    return e / (np.abs(e) + 1.0) * gains.mu * gains.v_max


def desired_body_velocity(pdot_d: np.ndarray, psi_d: float) -> np.ndarray:
    """Desired body-frame velocity from the world-frame trajectory rate."""
    return jacobian(psi_d).T @ np.asarray(pdot_d, dtype=float)


def backstepping_velocity(v_e: np.ndarray, psi: float, v_desired: np.ndarray,
                          gains: BackstepGains) -> np.ndarray:
    """Commanded body velocity from restricted errors and the feedforward."""
    u_d, v_d, w_d, r_d = v_desired
    cp, sp = np.cos(psi), np.sin(psi)
    ce, se = np.cos(v_e[3]), np.sin(v_e[3])
    sway_ff = -v_d * ce if gains.variant == "printed" else v_d * ce
    return np.array([
        gains.k * (v_e[0] * cp + v_e[1] * sp) + u_d * ce - v_d * se,
        gains.k * (-v_e[0] * sp + v_e[1] * cp) + u_d * se + sway_ff,
        w_d + gains.k_z * v_e[2],
        r_d + gains.k_psi * v_e[3],
    ])


def sliding_surface(e_v: np.ndarray, e_v_dot: np.ndarray, e_v_int: np.ndarray,
                    lam: float) -> np.ndarray:
    """Integral sliding surface s = de + 2 lam e + lam^2 int(e)."""
    return e_v_dot + 2.0 * lam * e_v + lam * lam * e_v_int


def smc_torque(vel: np.ndarray, v_c: np.ndarray, v_c_dot: np.ndarray, psi: float,
               state: SmcState, est: ModelEstimate, gains: SmcGains,
               dt: float) -> tuple[np.ndarray, SmcState]:
    """One control step of the adaptive sliding-mode law.

    Returns the torque command and the advanced controller state.  The
    velocity-error derivative is a backward difference against the stored
    previous error; the error acceleration is approximated by -k_accel de.
    """
    if dt <= 0:
        raise ValueError("dt must be positive")
    vel = np.asarray(vel, dtype=float)
    v_c = np.asarray(v_c, dtype=float)

    e_v = v_c - vel
    e_v_dot = (e_v - state.prev_ev) / dt
    e_v_int = state.integral_ev + e_v * dt
    s = sliding_surface(e_v, e_v_dot, e_v_int, gains.lam)

    coriolis = coriolis_from_inertia(psi, vel[3], est.inertia) @ vel
    v_for_drag = np.abs(vel) if est.drag_abs else vel
    drag = (est.drag_constant + est.drag_linear * v_for_drag) * vel
    tau_major = est.inertia * (
        np.asarray(v_c_dot, dtype=float)
        + (-gains.k_accel * e_v_dot) / (2.0 * gains.lam)
        + (gains.lam / 2.0) * e_v
    ) + coriolis + drag + est.gravity

    tau_est = state.tau_est + gains.gamma_adapt * s * dt
    # Restoring switching force: with e_v = v_c - v, positive s means the
    # vehicle lags its command, so the switching torque must act along s
    # (this is the sign the Lyapunov decrease V2' = s'(Q - K1 s - K2 |s|^r
    # sign s) presumes).
    tau_switch = gains.K1 * s + gains.K2 * np.abs(s) ** gains.r_exp * np.sign(s)

    tau = tau_major + tau_est + tau_switch
    new_state = SmcState(integral_ev=e_v_int, prev_ev=e_v,
                         tau_est=tau_est, surface=s)
    return tau, new_state


def lyapunov_gamma0(e: np.ndarray) -> float:
    """Outer-loop energy function: half the squared pose-error norm."""
    e = np.asarray(e, dtype=float)
    return 0.5 * float(np.dot(e, e))


def lyapunov_v2(s: np.ndarray, params: VehicleParams, lam: float) -> float:
    """Inner-loop energy function s' M s / (4 lam)."""
    if lam <= 0:
        raise ValueError("lam must be positive")
    s = np.asarray(s, dtype=float)
    return float(np.dot(s, params.inertia_diagonal * s)) / (4.0 * lam)

"""Rigid-body model of a 4-DOF work-class underwater vehicle.

The vehicle is modelled in surge, sway, heave and yaw; roll and pitch are
neglected.  State convention throughout the package:

    pose = [x, y, z, psi]   world frame, psi unwrapped (no modular reduction)
    vel  = [u, v, w, r]     body frame

Dynamics follow  M vdot + C(v) v + D(v) v + g = tau  with diagonal inertia,
drag that is affine in the signed body velocity, and gravity balanced by
buoyancy by default.  All functions are pure; the integrator holds no state.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


def _vec4(values, name: str) -> np.ndarray:
    arr = np.asarray(values, dtype=float)
    if arr.shape != (4,):
        raise ValueError(f"{name} must be a 4-vector, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} must be finite")
    return arr


@dataclass
class VehicleParams:
    """Physical parameters of the vehicle and its actuation limits.

    ``drag_abs`` switches the drag diagonal from the signed affine form
    c_i + d_i * v_i to the sign-symmetric c_i + d_i * |v_i|.
    """

    inertia_diagonal: np.ndarray = field(
        default_factory=lambda: np.array([42.0, 153.0, 141.0, 100.0]))
    drag_constant: np.ndarray = field(
        default_factory=lambda: np.array([42.0, 319.0, 272.0, 33.0]))
    drag_linear_coeff: np.ndarray = field(
        default_factory=lambda: np.array([69.0, 245.0, 86.0, 4.0]))
    gravity_buoyancy: np.ndarray = field(
        default_factory=lambda: np.zeros(4))
    max_body_velocity: np.ndarray = field(
        default_factory=lambda: np.array([4.0, 4.0, 2.0, 1.0]))
    max_thruster_force: float = 500.0
    drag_abs: bool = False

    def __post_init__(self):
        self.inertia_diagonal = _vec4(self.inertia_diagonal, "inertia_diagonal")
        self.drag_constant = _vec4(self.drag_constant, "drag_constant")
        self.drag_linear_coeff = _vec4(self.drag_linear_coeff, "drag_linear_coeff")
        self.gravity_buoyancy = _vec4(self.gravity_buoyancy, "gravity_buoyancy")
        self.max_body_velocity = _vec4(self.max_body_velocity, "max_body_velocity")
        if np.any(self.inertia_diagonal <= 0):
            raise ValueError("inertia_diagonal must be strictly positive")
        if np.any(self.drag_constant < 0) or np.any(self.drag_linear_coeff < 0):
            raise ValueError("drag coefficients must be nonnegative")
        if np.any(self.max_body_velocity <= 0):
            raise ValueError("max_body_velocity must be positive")
        if self.max_thruster_force <= 0:
            raise ValueError("max_thruster_force must be positive")


def jacobian(psi: float) -> np.ndarray:
    """Body-to-world transform: planar rotation by psi, identity in z and yaw."""
    c, s = np.cos(psi), np.sin(psi)
    return np.array([
        [c, -s, 0.0, 0.0],
        [s, c, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
    ])


def jacobian_derivative(psi: float) -> np.ndarray:
    """d/dpsi of the transform; only the rotation block varies."""
    c, s = np.cos(psi), np.sin(psi)
    out = np.zeros((4, 4))
    out[0, 0], out[0, 1] = -s, -c
    out[1, 0], out[1, 1] = c, -s
    return out


def kinematics(pose: np.ndarray, vel: np.ndarray) -> np.ndarray:
    """World-frame pose rate for a body-frame velocity."""
    return jacobian(pose[3]) @ vel


def coriolis_from_inertia(psi: float, r: float, inertia_diagonal: np.ndarray) -> np.ndarray:
    """Coriolis/centripetal matrix Jinv M Jdot Jinv evaluated in closed form.

    Only the surge/sway block is nonzero; it scales linearly with the yaw
    rate and rotates with heading because the inertia is anisotropic.
    """
    m1, m2 = inertia_diagonal[0], inertia_diagonal[1]
    c, s = np.cos(psi), np.sin(psi)
    out = np.zeros((4, 4))
    out[0, 0] = m2 * s
    out[0, 1] = -m1 * c
    out[1, 0] = m2 * c
    out[1, 1] = m1 * s
    return r * out


def coriolis_matrix(psi: float, r: float, params: VehicleParams) -> np.ndarray:
    return coriolis_from_inertia(psi, r, params.inertia_diagonal)


def drag_diagonal(vel: np.ndarray, params: VehicleParams) -> np.ndarray:
    v = np.abs(vel) if params.drag_abs else vel
    return params.drag_constant + params.drag_linear_coeff * v


def drag_matrix(vel: np.ndarray, params: VehicleParams) -> np.ndarray:
    return np.diag(drag_diagonal(vel, params))


def acceleration(pose: np.ndarray, vel: np.ndarray, tau: np.ndarray,
                 params: VehicleParams) -> np.ndarray:
    """Body-frame acceleration Minv (tau - C(v) v - D(v) v - g)."""
    coriolis = coriolis_from_inertia(pose[3], vel[3], params.inertia_diagonal) @ vel
    drag = drag_diagonal(vel, params) * vel
    return (tau - coriolis - drag - params.gravity_buoyancy) / params.inertia_diagonal


def integrate_step(pose: np.ndarray, vel: np.ndarray, tau: np.ndarray,
                   dt: float, params: VehicleParams) -> tuple[np.ndarray, np.ndarray]:
    """One classical RK4 step of the coupled kinematics/dynamics, tau held constant."""
    if dt <= 0:
        raise ValueError("dt must be positive")

    k1p = kinematics(pose, vel)
    k1v = acceleration(pose, vel, tau, params)
    p2, v2 = pose + 0.5 * dt * k1p, vel + 0.5 * dt * k1v
    k2p = kinematics(p2, v2)
    k2v = acceleration(p2, v2, tau, params)
    p3, v3 = pose + 0.5 * dt * k2p, vel + 0.5 * dt * k2v
    k3p = kinematics(p3, v3)
    k3v = acceleration(p3, v3, tau, params)
    p4, v4 = pose + dt * k3p, vel + dt * k3v
    k4p = kinematics(p4, v4)
    k4v = acceleration(p4, v4, tau, params)

    new_pose = pose + (dt / 6.0) * (k1p + 2.0 * k2p + 2.0 * k3p + k4p)
    new_vel = vel + (dt / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
    return new_pose, new_vel

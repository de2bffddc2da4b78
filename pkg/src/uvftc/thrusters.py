"""Eight-thruster propulsion model: mixing matrix, normalization, fault weights.

Thrusters 1-2 drive surge, 7-8 drive sway, 3-6 drive heave; yaw is produced
by the differential surge and sway pairs with moment arms in ratio 1:1.4.
All forces and torques are normalized to [-1, 1] by the per-axis maxima so
saturation is expressible independently of the thruster size.
"""

from __future__ import annotations

import numpy as np

# Normalized mixing matrix: tau_bar = CONFIG_MATRIX @ T_bar.  Rows are
# (surge, sway, heave, yaw); each row has unit absolute sum so any command
# in the box yields torque components in [-1, 1].
CONFIG_MATRIX = np.array([
    [0.5, 0.5, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.5, 0.5],
    [0.0, 0.0, 0.25, 0.25, 0.25, 0.25, 0.0, 0.0],
    [5.0 / 24.0, -5.0 / 24.0, 0.0, 0.0, 0.0, 0.0, -7.0 / 24.0, 7.0 / 24.0],
])

# Per-axis torque maxima in units of the single-thruster maximum force.
TORQUE_LIMIT_FACTORS = np.array([2.0, 2.0, 4.0, 4.8])

NUM_THRUSTERS = 8


def torque_limits(max_force: float) -> np.ndarray:
    """Per-axis torque maxima (2, 2, 4, 4.8) * T_m."""
    if max_force <= 0:
        raise ValueError("max_force must be positive")
    return TORQUE_LIMIT_FACTORS * max_force


def normalize_torque(tau: np.ndarray, max_force: float) -> np.ndarray:
    """Componentwise tau / tau_max."""
    return np.asarray(tau, dtype=float) / torque_limits(max_force)


def healthy_weights() -> np.ndarray:
    return np.ones(NUM_THRUSTERS)


def forces_to_torque(forces: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """Normalized torque actually delivered by damaged thrusters: B (w * T)."""
    return CONFIG_MATRIX @ (np.asarray(weights, dtype=float) * np.asarray(forces, dtype=float))


def apply_fault(weights: np.ndarray, thruster_index: int, loss_fraction: float) -> np.ndarray:
    """Return a copy of ``weights`` with thruster ``thruster_index`` (1-based)
    degraded to 1 - loss_fraction."""
    if not 1 <= thruster_index <= NUM_THRUSTERS:
        raise ValueError(f"thruster_index must be in 1..{NUM_THRUSTERS}, got {thruster_index}")
    if not 0.0 <= loss_fraction <= 1.0:
        raise ValueError(f"loss_fraction must be in [0, 1], got {loss_fraction}")
    out = np.array(weights, dtype=float, copy=True)
    out[thruster_index - 1] = 1.0 - loss_fraction
    return out

"""Baseline control allocation and the shared allocation-error metrics.

The weighted pseudo-inverse maps a 4-axis normalized torque demand onto the
eight thruster forces; T- and S-approximation push an out-of-range solution
back into the [-1, 1] box (clamping vs uniform rescaling).
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .thrusters import CONFIG_MATRIX

# Below this norm a torque vector has no meaningful direction.
_NORM_EPS = 1e-9

_COND_LIMIT = 1e12


class AllocationSingularError(RuntimeError):
    """Raised when the fault pattern makes the allocation problem singular."""


class AllocationError(NamedTuple):
    magnitude: float
    direction: float


def weighted_pseudoinverse(tau_d: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """Minimum-effort force solution W B' (B W B')^+ tau_d (unclamped).

    The output satisfies B @ result == tau_d whenever B W B' is invertible;
    components may exceed the [-1, 1] box.  Fault patterns that merely make
    the torque axes linearly dependent (e.g. one surge and one sway thruster
    both dead tie the yaw axis to surge and sway) fall back to the
    generalized inverse, which returns the least-squares projection onto the
    reachable torque set.  A fault pattern that kills a torque axis outright
    is unallocatable and raises.
    """
    w = np.asarray(weights, dtype=float)
    weighted_rows = CONFIG_MATRIX * w
    if np.any(np.all(weighted_rows == 0.0, axis=1)):
        raise AllocationSingularError(
            "fault pattern leaves a torque axis with no live thruster")
    gram = weighted_rows @ CONFIG_MATRIX.T
    tau_d = np.asarray(tau_d, dtype=float)
    if np.linalg.cond(gram) > _COND_LIMIT:
        y = np.linalg.pinv(gram, rcond=1e-12) @ tau_d
    else:
        y = np.linalg.solve(gram, tau_d)
    return w * (CONFIG_MATRIX.T @ y)


def t_approximation(raw: np.ndarray) -> np.ndarray:
    """Clamp each force into [-1, 1]."""
    return np.clip(np.asarray(raw, dtype=float), -1.0, 1.0)


def s_approximation(raw: np.ndarray) -> np.ndarray:
    """Uniformly rescale by the largest force magnitude when out of range.

    Dividing by max|T_i| rather than the signed maximum keeps force signs,
    so negative saturation is honored as well.
    """
    raw = np.asarray(raw, dtype=float)
    peak = np.max(np.abs(raw))
    if peak <= 1.0:
        return raw.copy()
    return raw / peak


def allocation_error(tau_d: np.ndarray, tau: np.ndarray) -> AllocationError:
    """Magnitude (Euclidean) and direction (arc-cosine) error between torques.

    Direction is defined as 0 when either vector is numerically zero.
    """
    tau_d = np.asarray(tau_d, dtype=float)
    tau = np.asarray(tau, dtype=float)
    magnitude = float(np.linalg.norm(tau_d - tau))
    n1 = np.linalg.norm(tau_d)
    n2 = np.linalg.norm(tau)
    if n1 < _NORM_EPS or n2 < _NORM_EPS:
        return AllocationError(magnitude, 0.0)
    cosang = np.clip(np.dot(tau_d, tau) / (n1 * n2), -1.0, 1.0)
    return AllocationError(magnitude, float(np.arccos(cosang)))

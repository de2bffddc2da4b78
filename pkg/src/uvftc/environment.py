"""Environmental perturbations: current-induced torque and position noise.

The current disturbance on each axis is a product-of-waves signal with
coefficients drawn once per scenario; position noise is uniform, applied to
what the controller measures while the plant keeps the true pose.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np


@dataclass
class CurrentSpec:
    """Current disturbance description.  ``amplitudes_*`` and ``omegas`` stay
    None until sampled; sampling keeps any value already pinned."""
    amplitude_fraction: float = 0.10
    amplitudes_1: np.ndarray | None = None   # (4,) per axis
    amplitudes_2: np.ndarray | None = None   # (4,)
    omegas: np.ndarray | None = None         # (4, 4): rows axes, cols omega 1..4
    seed: int | None = None

    def __post_init__(self):
        if not 0.0 <= self.amplitude_fraction <= 0.5:
            raise ValueError("amplitude_fraction must be in [0, 0.5]")
        if self.omegas is not None:
            self.omegas = np.asarray(self.omegas, dtype=float)
            if np.any(np.abs(self.omegas) > 1.0):
                raise ValueError("omegas must lie in [-1, 1]")


@dataclass
class NoiseSpec:
    bound: float = 0.1
    seed: int | None = None

    def __post_init__(self):
        if self.bound < 0:
            raise ValueError("noise bound must be nonnegative")


def sample_current_coefficients(nominal_torque_scale: np.ndarray, spec: CurrentSpec,
                                rng: np.random.Generator) -> CurrentSpec:
    """Draw the run constants: amplitudes within +-fraction of the per-axis
    torque scale, frequencies uniform in [-1, 1], independently per axis."""
    scale = np.asarray(nominal_torque_scale, dtype=float)
    if scale.shape != (4,) or not np.all(np.isfinite(scale)):
        raise ValueError("nominal_torque_scale must be a finite 4-vector")
    span = spec.amplitude_fraction * np.abs(scale)
    a1 = spec.amplitudes_1 if spec.amplitudes_1 is not None else rng.uniform(-span, span)
    a2 = spec.amplitudes_2 if spec.amplitudes_2 is not None else rng.uniform(-span, span)
    omegas = spec.omegas if spec.omegas is not None else rng.uniform(-1.0, 1.0, size=(4, 4))
    return replace(spec,
                   amplitudes_1=np.asarray(a1, dtype=float),
                   amplitudes_2=np.asarray(a2, dtype=float),
                   omegas=np.asarray(omegas, dtype=float))


def current_torque(t: float, coeffs: CurrentSpec) -> np.ndarray:
    """Disturbance torque A1 cos(w1 t) sin(w2 t) + A2 cos(w3 t) sin(w4 t)
    evaluated per axis; identically zero at t = 0."""
    if t < 0:
        raise ValueError("t must be nonnegative")
    if coeffs.amplitudes_1 is None or coeffs.amplitudes_2 is None or coeffs.omegas is None:
        raise ValueError("coefficients not sampled; call sample_current_coefficients")
    om = coeffs.omegas
    return (coeffs.amplitudes_1 * np.cos(om[:, 0] * t) * np.sin(om[:, 1] * t)
            + coeffs.amplitudes_2 * np.cos(om[:, 2] * t) * np.sin(om[:, 3] * t))


def perturb_position(pose: np.ndarray, spec: NoiseSpec,
                     rng: np.random.Generator) -> np.ndarray:
    """Measured pose: true pose plus independent uniform noise per component."""
    pose = np.asarray(pose, dtype=float)
    if spec.bound == 0.0:
        return pose.copy()
    return pose + rng.uniform(-spec.bound, spec.bound, size=4)

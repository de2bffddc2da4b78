"""Grasshopper Optimization Algorithm for bounded continuous minimization.

References:
    S. Saremi, S. Mirjalili, A. Lewis.
    Grasshopper Optimisation Algorithm: Theory and application.
    Advances in Engineering Software 105 (2017).

Each search agent is pulled toward the best solution found so far while a
pairwise attraction/repulsion kernel keeps the swarm spread; a linearly
shrinking comfort coefficient trades exploration for refinement.  The
update is synchronous (all agents move from the same snapshot) and fully
deterministic for a fixed seed: randomness enters only through the
initialization, drawn from one child stream per agent so that changing the
swarm size does not disturb the streams of existing agents.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .allocation import allocation_error
from .thrusters import CONFIG_MATRIX


@dataclass
class GoaParams:
    swarm_size: int = 10
    max_iterations: int = 100
    c_max: float = 1.0
    c_min: float = 0.00001
    lower_bound: float | np.ndarray = -1.0
    upper_bound: float | np.ndarray = 1.0
    dimensions: int = 8
    seed: int = 0
    distance_remap: bool = False

    def __post_init__(self):
        if self.swarm_size < 2:
            raise ValueError("swarm_size must be at least 2")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be at least 1")
        if not 0.0 < self.c_min < self.c_max:
            raise ValueError("require 0 < c_min < c_max")
        if self.dimensions < 1:
            raise ValueError("dimensions must be positive")
        lb, ub = self.bounds()
        if np.any(ub <= lb):
            raise ValueError("upper_bound must exceed lower_bound")

    def bounds(self) -> tuple[np.ndarray, np.ndarray]:
        lb = np.broadcast_to(np.asarray(self.lower_bound, dtype=float),
                             (self.dimensions,)).copy()
        ub = np.broadcast_to(np.asarray(self.upper_bound, dtype=float),
                             (self.dimensions,)).copy()
        return lb, ub


@dataclass
class SwarmState:
    positions: np.ndarray            # (n, d)
    fitness: np.ndarray | None       # (n,) or None right after a move
    best_position: np.ndarray        # (d,)
    best_fitness: float
    iteration: int = 0


def _kernel(r: np.ndarray) -> np.ndarray:
    return 0.5 * np.exp(r * (-1.0 / 1.5)) - np.exp(-r)


def social_interaction(r):
    """Attraction/repulsion kernel s(r) = 0.5 exp(-r/1.5) - exp(-r).

    Negative (repulsive) below r = 3 ln 2, positive (attractive) beyond,
    vanishing at large range.
    """
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise ValueError("distance must be nonnegative")
    return _kernel(r)


def comfort_coefficient(iteration: int, max_iterations: int,
                        c_max: float = 1.0, c_min: float = 0.00001) -> float:
    """Linear decay from c_max at iteration 0 to exactly c_min at the last."""
    if not 0 <= iteration <= max_iterations:
        raise ValueError("iteration must be in [0, max_iterations]")
    # Written so both endpoints are exact in floating point.
    return c_min + (c_max - c_min) * ((max_iterations - iteration) / max_iterations)


def _initial_positions(params: GoaParams) -> np.ndarray:
    lb, ub = params.bounds()
    children = np.random.SeedSequence(params.seed).spawn(params.swarm_size)
    positions = np.empty((params.swarm_size, params.dimensions))
    for i, child in enumerate(children):
        positions[i] = np.random.Generator(np.random.PCG64(child)).uniform(lb, ub)
    return positions


def _move(positions: np.ndarray, target: np.ndarray, c: float,
          lb: np.ndarray, ub: np.ndarray, half_span: np.ndarray,
          distance_remap: bool) -> np.ndarray:
    diff = positions[None, :, :] - positions[:, None, :]   # diff[i, j] = x_j - x_i
    dist = np.sqrt(np.einsum("ijd,ijd->ij", diff, diff))   # (n, n)
    inv_dist = np.divide(1.0, dist, out=np.zeros_like(dist),
                         where=dist > 0.0)                 # coincident pair -> no force

    if distance_remap:
        kernel = _kernel(1.0 + np.mod(dist, 3.0))[:, :, None]
    else:
        kernel = _kernel(np.abs(diff))

    terms = kernel * diff * inv_dist[:, :, None]
    new_positions = (c * c) * half_span * terms.sum(axis=1) + target
    return np.clip(new_positions, lb, ub)


def swarm_update(state: SwarmState, c: float, params: GoaParams) -> SwarmState:
    """Move every agent from the pre-update snapshot toward the current best."""
    lb, ub = params.bounds()
    moved = _move(state.positions, state.best_position, c, lb, ub,
                  (ub - lb) / 2.0, params.distance_remap)
    return SwarmState(positions=moved, fitness=None,
                      best_position=state.best_position,
                      best_fitness=state.best_fitness,
                      iteration=state.iteration + 1)


class _Evaluator:
    """Calls the objective on the whole swarm at once when it supports
    batched (n, d) input, otherwise row by row."""

    def __init__(self, objective):
        self.objective = objective
        self.batched = None

    def __call__(self, positions: np.ndarray) -> np.ndarray:
        n = positions.shape[0]
        if self.batched is None or self.batched:
            try:
                out = np.asarray(self.objective(positions), dtype=float)
                if out.shape == (n,):
                    self.batched = True
                    return out
            except Exception:
                pass
            self.batched = False
        return np.array([float(self.objective(p)) for p in positions])


def optimize(objective, params: GoaParams, warm_start: np.ndarray | None = None):
    """Minimize ``objective`` over the box.

    Parameters
    ----------
    objective : callable
        Maps a d-vector to a scalar.  May optionally accept an (n, d) array
        and return an (n,) array for faster batched evaluation.
    params : GoaParams
    warm_start : array, optional
        Replaces agent 0 of the random initial swarm (clamped to the box).

    Returns
    -------
    (best_position, best_fitness, history) where ``history`` has length
    max_iterations + 1 and is monotone non-increasing.
    """
    lb, ub = params.bounds()
    half_span = (ub - lb) / 2.0
    evaluate = _Evaluator(objective)

    positions = _initial_positions(params)
    if warm_start is not None:
        positions[0] = np.clip(np.asarray(warm_start, dtype=float), lb, ub)

    fitness = evaluate(positions)
    best_i = int(np.argmin(fitness))
    best_position = positions[best_i].copy()
    best_fitness = float(fitness[best_i])

    history = np.empty(params.max_iterations + 1)
    history[0] = best_fitness

    for l in range(1, params.max_iterations + 1):
        c = comfort_coefficient(l, params.max_iterations, params.c_max, params.c_min)
        positions = _move(positions, best_position, c, lb, ub, half_span,
                          params.distance_remap)
        fitness = evaluate(positions)
        best_i = int(np.argmin(fitness))
        if fitness[best_i] < best_fitness:
            best_fitness = float(fitness[best_i])
            best_position = positions[best_i].copy()
        history[l] = best_fitness

    return best_position, best_fitness, history


def allocation_objective(tau_d: np.ndarray, weights: np.ndarray,
                         magnitude_weight: float = 1.0,
                         direction_weight: float = 1.0):
    """Fitness for thruster reallocation: magnitude plus direction error of
    the delivered torque B W T against the demand.

    The returned callable accepts a single 8-vector or an (n, 8) batch.
    """
    tau_d = np.asarray(tau_d, dtype=float)
    bw = CONFIG_MATRIX * np.asarray(weights, dtype=float)   # (4, 8)
    demand_norm = np.linalg.norm(tau_d)

    def objective(forces: np.ndarray) -> np.ndarray | float:
        forces = np.asarray(forces, dtype=float)
        if forces.ndim == 1:
            err = allocation_error(tau_d, bw @ forces)
            return magnitude_weight * err.magnitude + direction_weight * err.direction
        achieved = forces @ bw.T                            # (n, 4)
        delta = tau_d - achieved
        magnitude = np.sqrt(np.einsum("nd,nd->n", delta, delta))
        if demand_norm < 1e-9:
            return magnitude_weight * magnitude
        norms = np.sqrt(np.einsum("nd,nd->n", achieved, achieved))
        cosang = np.divide(achieved @ tau_d, norms * demand_norm,
                           out=np.ones(forces.shape[0]), where=norms > 1e-9)
        direction = np.arccos(np.clip(cosang, -1.0, 1.0))
        return magnitude_weight * magnitude + direction_weight * direction

    return objective

"""Fault-tolerant trajectory tracking for an over-actuated 4-DOF underwater
vehicle: rigid-body dynamics, a backstepping/sliding-mode tracking cascade,
weighted pseudo-inverse and grasshopper-optimization thruster allocation,
environmental perturbations, and a deterministic scenario runner."""

from .allocation import (AllocationError, AllocationSingularError,
                         allocation_error, s_approximation, t_approximation,
                         weighted_pseudoinverse)
from .control import (BackstepGains, ModelEstimate, SmcGains, SmcState,
                      backstepping_velocity, desired_body_velocity,
                      lyapunov_gamma0, lyapunov_v2, restrict_error,
                      sliding_surface, smc_torque, wrap_angle)
from .environment import (CurrentSpec, NoiseSpec, current_torque,
                          perturb_position, sample_current_coefficients)
from .grasshopper import (GoaParams, SwarmState, allocation_objective,
                          comfort_coefficient, optimize, social_interaction,
                          swarm_update)
from .sim import (ALLOCATOR_NAMES, PRESET_NAMES, FaultEvent, PerturbSpec,
                  RunMetrics, Scenario, ScenarioError, SimOutput,
                  TrajectorySpec, apply_fast, compare_runs, compute_metrics,
                  desired_state, preset_scenario, run_scenario)
from .thrusters import (CONFIG_MATRIX, NUM_THRUSTERS, apply_fault,
                        forces_to_torque, healthy_weights, normalize_torque,
                        torque_limits)
from .vehicle import (VehicleParams, acceleration, coriolis_matrix,
                      drag_matrix, integrate_step, jacobian, kinematics)

__version__ = "0.1.0"

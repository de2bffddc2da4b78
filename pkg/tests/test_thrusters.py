import numpy as np
import pytest

from uvftc import thrusters as thr


class TestConfigMatrix:
    def test_exact_entries(self):
        expected = np.array([
            [0.5, 0.5, 0, 0, 0, 0, 0, 0],
            [0, 0, 0, 0, 0, 0, 0.5, 0.5],
            [0, 0, 0.25, 0.25, 0.25, 0.25, 0, 0],
            [5 / 24, -5 / 24, 0, 0, 0, 0, -7 / 24, 7 / 24],
        ])
        assert np.array_equal(thr.CONFIG_MATRIX, expected)

    def test_rank_four(self):
        assert np.linalg.matrix_rank(thr.CONFIG_MATRIX) == 4

    def test_yaw_row_against_differential_pattern(self):
        pattern = np.array([1.0, -1.0, 0, 0, 0, 0, -1.0, 1.0])
        assert thr.CONFIG_MATRIX[3] @ pattern == pytest.approx(1.0, abs=1e-15)


class TestTorqueLimits:
    def test_unit_force(self):
        assert np.allclose(thr.torque_limits(1.0), [2.0, 2.0, 4.0, 4.8])

    def test_scaled_force(self):
        assert np.allclose(thr.torque_limits(250.0), [500.0, 500.0, 1000.0, 1200.0])

    def test_ratio_independent_of_force(self):
        for t_m in (1.0, 17.3, 500.0):
            assert np.allclose(thr.torque_limits(t_m) / t_m, [2, 2, 4, 4.8])

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            thr.torque_limits(0.0)


class TestNormalizeTorque:
    def test_limits_normalize_to_one(self):
        limits = thr.torque_limits(250.0)
        assert np.allclose(thr.normalize_torque(limits, 250.0), 1.0)

    def test_zero(self):
        assert np.allclose(thr.normalize_torque(np.zeros(4), 250.0), 0.0)

    def test_surge_example(self):
        got = thr.normalize_torque(np.array([500.0, 0, 0, 0]), 250.0)
        assert np.allclose(got, [1.0, 0, 0, 0])


class TestForcesToTorque:
    def test_all_ones_row_sums(self):
        got = thr.forces_to_torque(np.ones(8), thr.healthy_weights())
        assert np.allclose(got, [1.0, 1.0, 1.0, 0.0], atol=1e-15)

    def test_pure_yaw_pattern(self):
        forces = np.array([1.0, -1.0, 0, 0, 0, 0, -1.0, 1.0])
        got = thr.forces_to_torque(forces, thr.healthy_weights())
        assert np.allclose(got, [0.0, 0.0, 0.0, 1.0], atol=1e-15)

    def test_total_failure_kills_output(self):
        rng = np.random.default_rng(1)
        forces = rng.uniform(-1, 1, 8)
        assert np.allclose(thr.forces_to_torque(forces, np.zeros(8)), 0.0)

    def test_linearity(self):
        rng = np.random.default_rng(2)
        w = rng.uniform(0, 1, 8)
        f1, f2 = rng.uniform(-1, 1, 8), rng.uniform(-1, 1, 8)
        a, b = 0.7, -1.3
        lhs = thr.forces_to_torque(a * f1 + b * f2, w)
        rhs = a * thr.forces_to_torque(f1, w) + b * thr.forces_to_torque(f2, w)
        assert np.allclose(lhs, rhs, atol=1e-12)

    def test_output_bounded_for_box_forces_and_valid_weights(self):
        rng = np.random.default_rng(3)
        for _ in range(500):
            forces = rng.uniform(-1, 1, 8)
            weights = rng.uniform(0, 1, 8)
            tau = thr.forces_to_torque(forces, weights)
            assert np.all(np.abs(tau) <= 1.0 + 1e-12)


class TestApplyFault:
    def test_partial_loss(self):
        w = thr.apply_fault(thr.healthy_weights(), 1, 0.2)
        assert w[0] == pytest.approx(0.8)
        assert np.allclose(w[1:], 1.0)

    def test_total_loss_thruster_eight(self):
        w = thr.apply_fault(thr.healthy_weights(), 8, 1.0)
        assert w[7] == 0.0
        assert np.allclose(w[:7], 1.0)

    def test_zero_loss_is_identity(self):
        w0 = thr.healthy_weights()
        assert np.array_equal(thr.apply_fault(w0, 5, 0.0), w0)

    def test_commutes_across_distinct_thrusters(self):
        w0 = thr.healthy_weights()
        a = thr.apply_fault(thr.apply_fault(w0, 2, 0.3), 7, 0.6)
        b = thr.apply_fault(thr.apply_fault(w0, 7, 0.6), 2, 0.3)
        assert np.array_equal(a, b)

    def test_does_not_mutate_input(self):
        w0 = thr.healthy_weights()
        thr.apply_fault(w0, 4, 0.5)
        assert np.allclose(w0, 1.0)

    @pytest.mark.parametrize("index,loss", [(0, 0.5), (9, 0.5), (3, -0.1), (3, 1.1)])
    def test_rejects_bad_arguments(self, index, loss):
        with pytest.raises(ValueError):
            thr.apply_fault(thr.healthy_weights(), index, loss)

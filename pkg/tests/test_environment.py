import numpy as np
import pytest

from uvftc import environment as env


def _rng(seed=0):
    return np.random.default_rng(seed)


class TestSampling:
    def test_amplitudes_within_fraction_of_scale(self):
        scale = np.full(4, 100.0)
        spec = env.CurrentSpec(amplitude_fraction=0.1)
        for seed in range(200):
            coeffs = env.sample_current_coefficients(scale, spec, _rng(seed))
            assert np.all(np.abs(coeffs.amplitudes_1) <= 10.0)
            assert np.all(np.abs(coeffs.amplitudes_2) <= 10.0)
            assert np.all(np.abs(coeffs.omegas) <= 1.0)

    def test_zero_fraction_means_zero_perturbation(self):
        spec = env.CurrentSpec(amplitude_fraction=0.0)
        coeffs = env.sample_current_coefficients(np.full(4, 500.0), spec, _rng(1))
        for t in np.linspace(0, 50, 41):
            assert np.allclose(env.current_torque(t, coeffs), 0.0)

    def test_fixed_seed_reproducible(self):
        spec = env.CurrentSpec()
        scale = np.array([400.0, 300.0, 200.0, 100.0])
        a = env.sample_current_coefficients(scale, spec, _rng(42))
        b = env.sample_current_coefficients(scale, spec, _rng(42))
        assert np.array_equal(a.amplitudes_1, b.amplitudes_1)
        assert np.array_equal(a.amplitudes_2, b.amplitudes_2)
        assert np.array_equal(a.omegas, b.omegas)

    def test_pinned_coefficients_kept(self):
        spec = env.CurrentSpec(amplitudes_1=np.ones(4), amplitudes_2=np.zeros(4),
                               omegas=np.zeros((4, 4)))
        coeffs = env.sample_current_coefficients(np.full(4, 100.0), spec, _rng(2))
        assert np.array_equal(coeffs.amplitudes_1, np.ones(4))

    def test_fraction_validation(self):
        with pytest.raises(ValueError):
            env.CurrentSpec(amplitude_fraction=0.6)


class TestCurrentTorque:
    def test_zero_at_time_zero(self):
        coeffs = env.sample_current_coefficients(
            np.full(4, 300.0), env.CurrentSpec(), _rng(3))
        assert np.array_equal(env.current_torque(0.0, coeffs), np.zeros(4))

    def test_hand_evaluated_single_term(self):
        coeffs = env.CurrentSpec(
            amplitude_fraction=0.5,
            amplitudes_1=np.array([1.0, 0, 0, 0]),
            amplitudes_2=np.zeros(4),
            omegas=np.array([[0.0, 1.0, 0.0, 0.0]] * 4))
        got = env.current_torque(np.pi / 2, coeffs)
        assert got[0] == pytest.approx(1.0)   # cos(0) * sin(pi/2)
        assert np.allclose(got[1:], 0.0)

    def test_bounded_by_amplitude_sum(self):
        coeffs = env.sample_current_coefficients(
            np.array([500.0, 400.0, 300.0, 200.0]), env.CurrentSpec(), _rng(4))
        bound = np.abs(coeffs.amplitudes_1) + np.abs(coeffs.amplitudes_2)
        for t in np.linspace(0.0, 200.0, 500):
            assert np.all(np.abs(env.current_torque(t, coeffs)) <= bound + 1e-12)

    def test_requires_sampled_coefficients(self):
        with pytest.raises(ValueError):
            env.current_torque(1.0, env.CurrentSpec())

    def test_rejects_negative_time(self):
        coeffs = env.sample_current_coefficients(
            np.full(4, 100.0), env.CurrentSpec(), _rng(5))
        with pytest.raises(ValueError):
            env.current_torque(-1.0, coeffs)


class TestPositionNoise:
    def test_zero_bound_identity(self):
        pose = np.array([1.0, 2.0, 3.0, 0.4])
        got = env.perturb_position(pose, env.NoiseSpec(bound=0.0), _rng(6))
        assert np.array_equal(got, pose)

    def test_offsets_within_bound_over_many_draws(self):
        pose = np.zeros(4)
        spec = env.NoiseSpec(bound=0.1)
        rng = _rng(7)
        draws = np.array([env.perturb_position(pose, spec, rng) for _ in range(100000)])
        assert np.all(np.abs(draws) <= 0.1)
        assert np.all(np.abs(draws.mean(axis=0)) < 0.002)

    def test_reproducible_sequence(self):
        pose = np.zeros(4)
        spec = env.NoiseSpec(bound=0.1)
        rng_a, rng_b = _rng(8), _rng(8)
        a = np.array([env.perturb_position(pose, spec, rng_a) for _ in range(5)])
        b = np.array([env.perturb_position(pose, spec, rng_b) for _ in range(5)])
        assert np.array_equal(a, b)
        assert not np.array_equal(a[0], a[1])

    def test_bound_validation(self):
        with pytest.raises(ValueError):
            env.NoiseSpec(bound=-0.1)

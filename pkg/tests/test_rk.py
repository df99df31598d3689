import numpy as np
import pytest
from scipy.integrate import solve_ivp

from lame_bands._rk import propagate
from lame_bands.elliptic import jacobi
from lame_bands.errors import IntegrationError


def lame_v(x, m=0.5):
    return 6.0 * m * jacobi(x, m).sn ** 2


class TestPropagate:
    def test_free_particle_closed_form(self):
        e = np.array([0.5, 2.0, 7.3])
        k = np.sqrt(e)
        state0 = np.array([np.ones(3), np.zeros(3)])
        state, _, steps = propagate(lambda x: np.zeros_like(x), e, 0.0, 3.0, state0, 1e-11)
        np.testing.assert_allclose(state[0], np.cos(3.0 * k), atol=1e-10)
        np.testing.assert_allclose(state[1], -k * np.sin(3.0 * k), atol=1e-10)
        assert steps > 0

    def test_matches_scipy_reference(self):
        e = 2.3

        def rhs(x, y):
            return [y[1], (lame_v(x) - e) * y[0]]

        ref = solve_ivp(rhs, (0.0, 4.0), [1.0, 0.0], rtol=1e-13, atol=1e-13, method="DOP853").y[:, -1]
        state, _, _ = propagate(lame_v, np.array([e]), 0.0, 4.0, np.array([[1.0], [0.0]]), 1e-11)
        np.testing.assert_allclose(state[:, 0], ref, atol=1e-9)

    def test_backward_integration(self):
        e = np.array([1.7])
        fwd, _, _ = propagate(lame_v, e, 0.0, 2.5, np.array([[1.0], [0.3]]), 1e-12)
        back, _, _ = propagate(lame_v, e, 2.5, 0.0, fwd, 1e-12)
        np.testing.assert_allclose(back[:, 0], [1.0, 0.3], atol=1e-9)

    def test_batch_equals_single(self):
        energies = np.array([0.4, 3.1])
        state0 = np.array([np.ones(2), np.zeros(2)])
        batch, _, _ = propagate(lame_v, energies, 0.0, 3.0, state0, 1e-11)
        for i, e in enumerate(energies):
            single, _, _ = propagate(lame_v, np.array([e]), 0.0, 3.0, np.array([[1.0], [0.0]]), 1e-11)
            np.testing.assert_allclose(batch[:, i], single[:, 0], atol=1e-9)

    def test_recorded_trajectory(self):
        _, traj, steps = propagate(lame_v, np.array([1.0]), 0.0, 2.0, np.array([[1.0], [0.0]]), 1e-10,
                                   max_step=0.1, record=True)
        assert traj.x[0] == 0.0 and traj.x[-1] == 2.0
        assert len(traj.x) == steps + 1
        assert np.max(np.diff(traj.x)) <= 0.1 + 1e-15

    def test_singular_potential_raises(self):
        with pytest.raises(IntegrationError) as info:
            propagate(lambda x: 1.0 / (x - 1.0) ** 4, np.array([0.0]), 0.0, 2.0,
                      np.array([[1.0], [0.0]]), 1e-10)
        assert 0.9 < info.value.x < 1.1

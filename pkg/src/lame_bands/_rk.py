"""Adaptive DOP853 integration of ``psi'' = (V(x) - E) psi`` for many energies at once.

All energies share one step sequence, so the potential is evaluated once per
step at the twelve stage abscissae and reused across the energy batch. Error
control uses the max-norm of the blended 5th/3rd-order estimate so that every
component meets ``atol + rtol * |y|`` on every step.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import _dop853_tableau as tab
from .errors import IntegrationError

_SAFETY = 0.9
_MIN_FACTOR = 0.2
_MAX_FACTOR = 10.0
_EXPONENT = -1.0 / 8.0
_MAX_STEPS = 200_000


@dataclass
class Trajectory:
    """Accepted step endpoints and states (only filled when recording)."""

    x: list = field(default_factory=list)
    state: list = field(default_factory=list)


def _rhs(state: np.ndarray, v_minus_e: np.ndarray) -> np.ndarray:
    # state[0] = psi, state[1] = psi'
    return np.stack((state[1], v_minus_e * state[0]))


def propagate(potential: Callable[[np.ndarray], np.ndarray], energies: np.ndarray,
              x0: float, x1: float, state0: np.ndarray, tol: float,
              max_step: float | None = None, record: bool = False):
    """Integrate from ``x0`` to ``x1``.

    Parameters
    ----------
    potential : callable
        Vectorized ``V(x)`` returning real or complex values.
    energies : ndarray
        Energies, broadcast against the trailing axis of ``state0``.
    state0 : ndarray
        Initial ``(psi, psi')`` stacked on the first axis, any trailing shape.
    tol : float
        Absolute and relative local error tolerance per step.
    max_step : float, optional
        Upper bound on the step size.
    record : bool
        Keep every accepted state in the returned trajectory.

    Returns
    -------
    state : ndarray
        Final ``(psi, psi')``.
    trajectory : Trajectory or None
    steps : int
        Number of accepted steps.
    """
    energies = np.asarray(energies)
    span = x1 - x0
    direction = np.sign(span)
    length = abs(span)
    h_max = length if max_step is None else min(max_step, length)
    h = min(h_max, length / 16.0)
    x = x0
    state = np.array(state0, dtype=np.result_type(state0, potential(np.array([x0])), energies))
    traj = Trajectory([x], [state.copy()]) if record else None
    nstages = len(tab.C)
    k = np.empty((nstages,) + state.shape, dtype=state.dtype)
    accepted = 0
    for _ in range(_MAX_STEPS):
        remaining = abs(x1 - x)
        if remaining <= 1e-14 * length:
            return state, traj, accepted
        last = h >= remaining
        step = direction * (remaining if last else h)
        vals = potential(x + tab.C * step)
        for i in range(nstages):
            if i == 0:
                stage = state
            else:
                stage = state + step * np.tensordot(tab.A[i, :i], k[:i], axes=1)
            k[i] = _rhs(stage, vals[i] - energies)
        new = state + step * np.tensordot(tab.B, k, axes=1)
        scale = tol + tol * np.maximum(np.abs(state), np.abs(new))
        e5 = np.abs(np.tensordot(tab.E5, k, axes=1)) / scale
        e3 = np.abs(np.tensordot(tab.E3, k, axes=1)) / scale
        with np.errstate(invalid="ignore", divide="ignore"):
            blend = np.where(e5 > 0, e5 * e5 / np.sqrt(e5 * e5 + 0.01 * e3 * e3), 0.0)
        err = abs(step) * float(np.max(blend)) if blend.size else 0.0
        if not np.isfinite(err) or not np.all(np.isfinite(new)):
            err = np.inf
        if err <= 1.0:
            x = x1 if last else x + step
            state = new
            accepted += 1
            if record:
                traj.x.append(x)
                traj.state.append(state.copy())
            if not last:
                factor = _MAX_FACTOR if err == 0.0 else min(_MAX_FACTOR, _SAFETY * err**_EXPONENT)
                h = min(h_max, abs(step) * factor)
        else:
            factor = _MIN_FACTOR if not np.isfinite(err) else max(_MIN_FACTOR, _SAFETY * err**_EXPONENT)
            h = abs(step) * factor
            if h < 1e-13 * max(1.0, abs(x)):
                raise IntegrationError("step size underflow", float(x))
    raise IntegrationError("step limit exceeded", float(x))

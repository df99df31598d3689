"""Supersymmetric partners built from a nodeless periodic ground state.

With ``W = -psi0'/psi0`` the shifted potential is ``V- = W^2 - W'`` and its
partner is ``V+ = W^2 + W'``. Both are periodic with the same band edges.
Everything is evaluated from exact wavefunction jets, never by numerical
differentiation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import CatalogMissError, UnsupportedError
from .potentials.catalog import ground_state
from .potentials.spec import SUSY_PARTNER, PotentialSpec
from .wavefunctions import PartnerWavefunction, Wavefunction

__all__ = [
    "Superpotential",
    "SusyPair",
    "superpotential",
    "partner_potential",
    "partner_wavefunction",
    "partner_values",
    "susy_pair",
    "self_isospectral_test",
    "SELF_ISOSPECTRAL_TOL",
]

SELF_ISOSPECTRAL_TOL = 1e-8


@dataclass(frozen=True)
class Superpotential:
    """``W = -psi0'/psi0`` with exact derivative ``W'``."""

    ground: Wavefunction

    def __call__(self, x):
        g = self.ground.jet(x)
        return -g.d1 / g.v

    def derivative(self, x):
        g = self.ground.jet(x)
        r = g.d1 / g.v
        return -g.d2 / g.v + r * r

    def v_minus(self, x):
        """``W^2 - W'``, equal to ``psi0''/psi0``."""
        g = self.ground.jet(x)
        return g.d2 / g.v

    def v_plus(self, x):
        """``W^2 + W'``."""
        g = self.ground.jet(x)
        r = g.d1 / g.v
        return 2.0 * r * r - g.d2 / g.v


@dataclass(frozen=True)
class SusyPair:
    """A potential shifted so its ground edge is at zero, with its partner.

    ``v_minus`` is a spec; ``w`` and ``v_plus`` are callables of ``x``.
    """

    v_minus: PotentialSpec
    w: Superpotential
    v_plus: Callable
    period: float


def superpotential(spec: PotentialSpec) -> Superpotential:
    """Superpotential from the cataloged ground state of ``spec``.

    Raises
    ------
    UnsupportedError
        If ``spec`` has no cataloged nodeless periodic ground state.
    """
    try:
        edge = ground_state(spec)
    except CatalogMissError as exc:
        raise UnsupportedError(f"no cataloged nodeless ground state: {exc}") from None
    if spec.family == SUSY_PARTNER:
        # Partner eigenfunctions carry jets that rely on the inner equation;
        # iterating the construction would need third derivatives.
        raise UnsupportedError("repeated SUSY partners are not supported")
    return Superpotential(edge.wavefunction)


def partner_potential(w: Superpotential) -> Callable:
    """``V+ = W^2 + W'`` as a callable."""
    return w.v_plus


def partner_wavefunction(n: int, psi_n: Wavefunction, w: Superpotential, energy: float) -> Wavefunction:
    """Partner eigenfunction: ``1/psi0`` for ``n = 0``, else ``psi_n' + W psi_n``.

    ``energy`` is the eigenvalue of ``psi_n`` measured from the ground state.
    """
    return PartnerWavefunction(psi_n, w.ground, energy, is_ground=(n == 0))


def partner_values(inner: PotentialSpec, x):
    """``V+`` of ``inner`` at real or complex ``x``."""
    return superpotential(inner).v_plus(x)


def susy_pair(spec: PotentialSpec) -> SusyPair:
    """Shift ``spec`` so its ground edge sits at zero and build the partner."""
    w = superpotential(spec)
    e0 = ground_state(spec).energy
    return SusyPair(spec.with_shift(spec.shift - e0), w, w.v_plus, spec.period())


def self_isospectral_test(v_minus: Callable, v_plus: Callable, period: float,
                          n_shift: int = 256, n_x: int = 512, tol: float = SELF_ISOSPECTRAL_TOL):
    """Test whether ``V+(x) = V-(x - s)`` or ``V+(x) = V-(-x - s)`` for some ``s``.

    A coarse scan over ``s`` in ``[0, L)`` is refined by bounded scalar
    minimization of the sup-norm deviation on an ``n_x`` point grid.

    Returns
    -------
    tuple
        ``(is_self_isospectral, best_shift, max_deviation)`` for whichever
        branch (plain or reflected) matches best; the shift lies in ``[0, L)``.
    """
    x = period * (np.arange(n_x) + 0.37) / n_x
    target = np.asarray(v_plus(x))

    def deviation(s: float, sign: float) -> float:
        return float(np.max(np.abs(target - np.asarray(v_minus(sign * x - s)))))

    best = (np.inf, 0.0, 1.0)
    grid = period * np.arange(n_shift) / n_shift
    step = period / n_shift
    for sign in (1.0, -1.0):
        coarse = np.array([deviation(s, sign) for s in grid])
        i = int(np.argmin(coarse))
        res = minimize_scalar(deviation, bounds=(grid[i] - step, grid[i] + step), args=(sign,),
                              method="bounded", options={"xatol": 1e-13})
        s_best, d_best = (res.x, res.fun) if res.fun < coarse[i] else (grid[i], coarse[i])
        if d_best < best[0]:
            best = (d_best, float(np.mod(s_best, period)), sign)
    dev, shift, _ = best
    return bool(dev < tol), shift, dev

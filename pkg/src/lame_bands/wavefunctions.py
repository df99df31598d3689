"""Band-edge eigenfunction handles with exact first and second derivatives."""

from __future__ import annotations

from typing import Callable

import numpy as np

from .jets import Jet, elliptic_jets

__all__ = [
    "Wavefunction",
    "EllipticWavefunction",
    "ComposedWavefunction",
    "PartnerWavefunction",
]


class Wavefunction:
    """Un-normalized eigenfunction ``psi(x)``.

    Subclasses implement :meth:`jet`, returning ``(psi, psi', psi'')`` at real
    or complex ``x``. Calling the handle returns ``psi`` only.
    """

    def jet(self, x) -> Jet:
        raise NotImplementedError

    def __call__(self, x):
        return self.jet(x).v

    def compose(self, scale: complex, offset: complex) -> "Wavefunction":
        """Return ``x -> psi(scale * x + offset)``."""
        return ComposedWavefunction(self, scale, offset)


class EllipticWavefunction(Wavefunction):
    """``psi(x) = expr(sn(x), cn(x), dn(x))`` for a jet-valued expression."""

    def __init__(self, expr: Callable[[Jet, Jet, Jet], Jet], m: float, label: str = ""):
        self.expr = expr
        self.m = m
        self.label = label

    def jet(self, x) -> Jet:
        return self.expr(*elliptic_jets(np.asarray(x), self.m))

    def __repr__(self):
        return f"EllipticWavefunction({self.label!r}, m={self.m})"


class ComposedWavefunction(Wavefunction):
    """``psi(scale * x + offset)`` with the chain rule applied to the jet."""

    def __init__(self, inner: Wavefunction, scale: complex, offset: complex):
        self.inner = inner
        self.scale = scale
        self.offset = offset

    def jet(self, x) -> Jet:
        j = self.inner.jet(self.scale * np.asarray(x) + self.offset)
        return Jet(j.v, self.scale * j.d1, self.scale**2 * j.d2)


class PartnerWavefunction(Wavefunction):
    """Eigenfunction of the SUSY partner ``V+ = W^2 + W'`` with ``W = -psi0'/psi0``.

    The ground state maps to ``1/psi0``; excited states map to
    ``psi_n' + W psi_n``. The second derivative is obtained from the
    Schroedinger equation satisfied by ``psi_n`` at ``energy`` (measured from
    the ground state), so only second-order jets of ``psi0`` and ``psi_n`` are
    needed.
    """

    def __init__(self, psi: Wavefunction, ground: Wavefunction, energy: float, is_ground: bool):
        self.psi = psi
        self.ground = ground
        self.energy = energy
        self.is_ground = is_ground

    def jet(self, x) -> Jet:
        g = self.ground.jet(x)
        if self.is_ground:
            return g.reciprocal()
        p = self.psi.jet(x)
        ratio = g.d1 / g.v
        w = -ratio
        wp = -g.d2 / g.v + ratio**2
        v_minus = g.d2 / g.v
        value = p.d1 + w * p.v
        d1 = p.d2 + wp * p.v + w * p.d1
        d2 = 2.0 * w * wp * p.v + (v_minus - self.energy + 2.0 * wp) * p.d1 + w * p.d2
        return Jet(value, d1, d2)

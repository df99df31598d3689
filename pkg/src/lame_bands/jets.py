"""Second-order forward-mode differentiation for elliptic-function expressions.

A :class:`Jet` carries a value and its first two derivatives with respect to
the real coordinate ``x``. Wavefunctions are written as ordinary arithmetic
on the jets returned by :func:`elliptic_jets`, which gives exact ``psi``,
``psi'`` and ``psi''`` without finite differences.
"""

from __future__ import annotations

import numpy as np

from .elliptic import DEFAULT_POLE_GUARD, jacobi, jacobi_complex

__all__ = ["Jet", "elliptic_jets", "constant_jet"]


class Jet:
    """Truncated Taylor jet ``(f, f', f'')``."""

    __slots__ = ("v", "d1", "d2")
    __array_priority__ = 1000

    def __init__(self, v, d1, d2):
        self.v = v
        self.d1 = d1
        self.d2 = d2

    @staticmethod
    def _lift(other) -> "Jet":
        if isinstance(other, Jet):
            return other
        zero = np.zeros_like(np.asarray(other))
        return Jet(other, zero, zero)

    def __add__(self, other):
        o = self._lift(other)
        return Jet(self.v + o.v, self.d1 + o.d1, self.d2 + o.d2)

    __radd__ = __add__

    def __neg__(self):
        return Jet(-self.v, -self.d1, -self.d2)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Jet):
            return Jet(self.v * other, self.d1 * other, self.d2 * other)
        return Jet(
            self.v * other.v,
            self.d1 * other.v + self.v * other.d1,
            self.d2 * other.v + 2.0 * self.d1 * other.d1 + self.v * other.d2,
        )

    __rmul__ = __mul__

    def reciprocal(self) -> "Jet":
        inv = 1.0 / self.v
        return Jet(inv, -self.d1 * inv**2, (2.0 * self.d1**2 * inv - self.d2) * inv**2)

    def __truediv__(self, other):
        if not isinstance(other, Jet):
            return self * (1.0 / other)
        return self * other.reciprocal()

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    def __pow__(self, exponent):
        e = float(exponent)
        if e == 0.0:
            return constant_jet(np.ones_like(self.v))
        if e.is_integer() and e > 0:
            n = int(e)
            vm1 = self.v ** (n - 1)
            vm2 = self.v ** (n - 2) if n >= 2 else 0.0
        else:
            vm1 = self.v ** (e - 1.0)
            vm2 = vm1 / self.v
        return Jet(
            vm1 * self.v,
            e * vm1 * self.d1,
            e * (e - 1.0) * vm2 * self.d1**2 + e * vm1 * self.d2,
        )


def constant_jet(value) -> Jet:
    """Jet of a constant."""
    zero = np.zeros_like(np.asarray(value))
    return Jet(value, zero, zero)


def elliptic_jets(u, m: float, du_dx: complex = 1.0,
                  pole_guard: float = DEFAULT_POLE_GUARD) -> tuple[Jet, Jet, Jet]:
    """Jets of ``sn``, ``cn``, ``dn`` at argument ``u(x)`` with ``u`` affine in ``x``.

    Parameters
    ----------
    u : array_like
        Argument values; complex arguments use :func:`jacobi_complex`.
    m : float
        Elliptic parameter.
    du_dx : complex
        Constant derivative of the argument with respect to ``x`` (``1`` for
        ``u = x``, ``1j`` for ``u = ix + beta``, ``1/alpha`` for ``u = x/alpha``).
    """
    if np.iscomplexobj(u) or np.iscomplexobj(du_dx):
        sn, cn, dn = jacobi_complex(np.asarray(u, dtype=complex), m, pole_guard)
    else:
        sn, cn, dn = jacobi(u, m)
    c, c2 = du_dx, du_dx * du_dx
    return (
        Jet(sn, c * cn * dn, c2 * (-sn * dn * dn - m * sn * cn * cn)),
        Jet(cn, -c * sn * dn, c2 * (-cn * dn * dn + m * sn * sn * cn)),
        Jet(dn, -c * m * sn * cn, c2 * (-m * cn * cn * dn + m * sn * sn * dn)),
    )

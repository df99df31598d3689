"""Ince-equation reduction, gap-count bounds and the parabolas of solvability.

Substituting ``psi = dn(x)^(-b) z(t)`` with ``sn(x) = sin t`` turns the
associated Lame equation into Ince's equation

    (1 + A cos 2t) z'' + B sin 2t z' + (C + D cos 2t) z = 0.

The gap theorem for Ince's equation bounds the number of gaps of period
``pi`` (``2 pi``) in ``t`` by the integral roots of ``Q`` (``Q*``). Since
``t = am(x)``, period ``pi`` in ``t`` is period ``2K`` in ``x``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import UnsupportedError
from .spec import ASSOC_LAME, DOUBLE_SINE_GORDON, LAME, PotentialSpec

__all__ = [
    "InceCoefficients",
    "ince_coefficients",
    "gap_bound",
    "critical_extrema_range",
    "parabola_map",
]

_INT_TOL = 1e-9


@dataclass(frozen=True)
class InceCoefficients:
    """Coefficients of Ince's equation and the gap-bound polynomials."""

    A: float
    B: float
    C: float
    D: float
    lam: float

    def q_poly(self, mu):
        """``Q(mu) = 2 A mu^2 - B mu - D/2``."""
        mu = np.asarray(mu)
        return 2.0 * self.A * mu**2 - self.B * mu - 0.5 * self.D

    def q_star_poly(self, mu):
        """``Q*(mu) = Q(mu - 1/2)``."""
        return self.q_poly(np.asarray(mu) - 0.5)

    def q_roots(self) -> np.ndarray:
        """Roots of ``Q``; empty when ``Q`` is constant."""
        coeffs = np.trim_zeros([2.0 * self.A, -self.B, -0.5 * self.D], "f")
        if len(coeffs) <= 1:
            return np.array([])
        return np.roots(coeffs)

    def q_star_roots(self) -> np.ndarray:
        return self.q_roots() + 0.5


def ince_coefficients(a: float, b: float, m: float, E: float = 0.0) -> InceCoefficients:
    """Ince coefficients of the associated Lame equation at energy ``E``.

    ``A = m/(2-m)``, ``B = (2b-1)m/(2-m)``, ``D = (a+b)(a+1-b)m/(2-m)`` and
    ``C = (2 lam - (a+b)(a+1-b)m)/(2-m)`` with ``lam = E - m b^2``. At
    ``m = 0`` this gives ``C = E``.
    """
    lam = E - m * b * b
    denom = 2.0 - m
    coupling = (a + b) * (a + 1.0 - b) * m
    return InceCoefficients(
        A=m / denom,
        B=(2.0 * b - 1.0) * m / denom,
        C=(2.0 * lam - coupling) / denom,
        D=coupling / denom,
        lam=lam,
    )


def _as_integer(x: complex) -> int | None:
    if abs(np.imag(x)) > _INT_TOL:
        return None
    r = float(np.real(x))
    n = round(r)
    return int(n) if abs(r - n) < _INT_TOL else None


def _bound_from_roots(roots) -> int | None:
    """Gap bound ``j + 1`` from the integral roots; ``None`` when there are none.

    Non-negative integral roots with maximum ``j`` and negative integral roots
    with minimum ``-j-1`` each yield a valid bound; the smaller one is kept.
    """
    ints = [n for n in (_as_integer(r) for r in roots) if n is not None]
    bounds = []
    nonneg = [n for n in ints if n >= 0]
    neg = [n for n in ints if n < 0]
    if nonneg:
        bounds.append(max(nonneg) + 1)
    if neg:
        bounds.append(-min(neg))
    return min(bounds) if bounds else None


def _min_bound(*bounds):
    known = [b for b in bounds if b is not None]
    return min(known) if known else None


def gap_bound(spec: PotentialSpec) -> tuple[int | None, int | None]:
    """Upper bounds on the number of gaps of period ``L`` and of period ``2L``.

    A gap "of period L" is bounded by two edges whose eigenfunctions have
    period ``L``; the semi-infinite interval below the ground state counts as
    one such gap. Gaps of period ``2L`` are always finite.

    For associated Lame potentials both gauges ``b`` and ``-b-1`` (which give
    the same potential) are analysed and the tighter bound is kept. ``None``
    means the roots give no bound for that class.

    Raises
    ------
    UnsupportedError
        For families other than Lame, associated Lame with ``a != b`` and
        double sine-Gordon. The ``a = b`` case has period ``K`` and its
        ``2K``-periodic Ince classes do not separate into period ``L`` and
        ``2L`` edges.
    """
    if spec.family == DOUBLE_SINE_GORDON:
        if spec.b == 0.0:
            return None, None
        c = InceCoefficients(A=0.0, B=2.0 * spec.b, C=0.0, D=-2.0 * spec.b * (spec.a - 1.0), lam=0.0)
        return _bound_from_roots(c.q_roots()), _bound_from_roots(c.q_star_roots())
    if spec.family not in (LAME, ASSOC_LAME):
        raise UnsupportedError(f"no Ince gap bound for family {spec.family!r}")
    if spec.family == ASSOC_LAME and spec.a == spec.b:
        raise UnsupportedError("a = b potentials have period K; use the Landen reduction instead")
    m = spec.m if spec.m > 0.0 else 0.5  # bounds are independent of m in (0, 1)
    a, b = spec.a, spec.b
    per_l, per_2l = [], []
    for gauge in (b, -b - 1.0):
        c = ince_coefficients(a, gauge, m)
        per_l.append(_bound_from_roots(c.q_roots()))
        per_2l.append(_bound_from_roots(c.q_star_roots()))
    return _min_bound(*per_l), _min_bound(*per_2l)


def critical_extrema_range(p_strength: float, q_strength: float, m: float) -> bool:
    """Whether ``q(1-m) <= p <= q/(1-m)``, the range with extra extrema of the potential."""
    if q_strength < 0.0:
        raise ValueError("q_strength must be non-negative")
    if q_strength == 0.0:
        return p_strength == 0.0
    return q_strength * (1.0 - m) <= p_strength <= q_strength / (1.0 - m)


def parabola_map(p_strength: float, q_strength: float) -> list[tuple[int, int]]:
    """Parabolas of solvability through ``(p, q)``.

    Parabola ``Pn`` is ``p = a(a+1)``, ``q = (a-n+1)(a-n)`` for real
    ``a >= 0``; a point on ``Pn`` has ``n`` closed-form eigenstates.

    Returns
    -------
    list of (n, known_state_count)
        Sorted by ``n``; the count equals ``n``.
    """
    if p_strength < 0 or q_strength < 0:
        raise ValueError("strengths must be non-negative")
    a = 0.5 * (-1.0 + np.sqrt(1.0 + 4.0 * p_strength))
    root = np.sqrt(1.0 + 4.0 * q_strength)
    found = set()
    for t in (0.5 * (-1.0 + root), 0.5 * (-1.0 - root)):
        n = _as_integer(a - t)
        if n is not None and n >= 1:
            found.add(n)
    return [(n, n) for n in sorted(found)]

"""Jacobi elliptic functions, theta functions and Landen descent parameters.

All functions accept scalars or numpy arrays for the argument and a scalar
modulus parameter ``m`` (the parameter, not the modulus ``k = sqrt(m)``).
Real arguments go through a descending arithmetic-geometric-mean (AGM)
recursion; complex arguments are assembled from two real evaluations with
the addition theorem, so no complex AGM is needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ConvergenceError, DomainError, SingularityError

__all__ = [
    "EllipticTriple",
    "LandenDescent",
    "complete_k",
    "complete_k_prime",
    "nome",
    "jacobi",
    "jacobi_complex",
    "jacobi_zeta",
    "theta_eta",
    "landen_descent",
    "DEFAULT_POLE_GUARD",
]

#: Default minimum distance to a pole, in units of the period rectangle.
DEFAULT_POLE_GUARD = 1e-6

_SMALL_M = 1e-10
# A few ulps: once a and b differ by one ulp, c stalls near eps/2 * a.
_AGM_TOL = 4.0 * np.finfo(float).eps
_AGM_MAX_ITER = 64
_SERIES_TOL = 1e-16
_SERIES_MAX_TERMS = 64


@dataclass(frozen=True)
class EllipticTriple:
    """Values of ``sn``, ``cn`` and ``dn`` at argument ``u`` for parameter ``m``.

    Iterating yields ``(sn, cn, dn)`` so a triple unpacks like a tuple.
    """

    sn: np.ndarray | complex
    cn: np.ndarray | complex
    dn: np.ndarray | complex
    u: np.ndarray | complex
    m: float

    def __iter__(self):
        yield self.sn
        yield self.cn
        yield self.dn


@dataclass(frozen=True)
class LandenDescent:
    """Parameters collapsing a ``p``-fold translated sum of ``dn`` into one ``dn``.

    With ``x_j = x + 2(j-1)K(m)/p`` the identity
    ``sum_j dn(x_j, m) = dn(x/alpha, m_tilde)/alpha`` holds, and ``a_d`` is the
    (constant) sum of pairwise products ``dn(x_j) dn(x_k)`` over ``j < k``.
    """

    alpha: float
    m_tilde: float
    a_d: float
    p: int
    m: float

    def translations(self) -> np.ndarray:
        """Offsets ``2(j-1)K(m)/p`` for ``j = 1..p``."""
        return 2.0 * np.arange(self.p) * complete_k(self.m) / self.p

    def shifted_arguments(self, x):
        """Return the translated arguments ``x_j``, stacked along a new first axis."""
        x = np.asarray(x, dtype=float)
        return x[None, ...] + self.translations().reshape((-1,) + (1,) * x.ndim)

    @property
    def dn_step(self) -> float:
        """``dn(2K(m)/p, m)``; for ``p = 3`` this is the parameter ``q`` of the closed forms."""
        return float(jacobi(2.0 * complete_k(self.m) / self.p, self.m).dn)

    def energy_offset(self, strength: float) -> float:
        """Constant ``strength * (p + 2 a_d - 1/alpha**2)`` added by the descent."""
        return strength * (self.p + 2.0 * self.a_d - 1.0 / self.alpha**2)


def _check_parameter(m: float, *, allow_one: bool) -> float:
    m = float(m)
    if not np.isfinite(m) or m < 0.0 or m > 1.0 or (m == 1.0 and not allow_one):
        upper = "1]" if allow_one else "1)"
        raise DomainError(f"elliptic parameter m={m!r} outside [0, {upper}")
    return m


@lru_cache(maxsize=256)
def _agm_chain(m: float) -> tuple[tuple[float, ...], tuple[float, ...]]:
    """Descending AGM sequences ``a_n`` and ``c_n`` starting from ``(1, sqrt(1-m))``."""
    a, b, c = 1.0, np.sqrt(1.0 - m), np.sqrt(m)
    a_seq, c_seq = [a], [c]
    for _ in range(_AGM_MAX_ITER):
        if abs(c) <= _AGM_TOL * a:
            return tuple(a_seq), tuple(c_seq)
        a, b, c = 0.5 * (a + b), np.sqrt(a * b), 0.5 * (a - b)
        a_seq.append(a)
        c_seq.append(c)
    raise ConvergenceError(f"AGM did not converge for m={m!r}")


def complete_k(m: float) -> float:
    """Complete elliptic integral of the first kind ``K(m)``.

    Parameters
    ----------
    m : float
        Parameter with ``0 <= m < 1``.

    Returns
    -------
    float
        ``K(m) = pi / (2 AGM(1, sqrt(1-m)))``.

    Raises
    ------
    DomainError
        If ``m < 0`` or ``m >= 1``.
    """
    m = _check_parameter(m, allow_one=False)
    if m == 0.0:
        return 0.5 * np.pi
    a_seq, _ = _agm_chain(m)
    return 0.5 * np.pi / a_seq[-1]


def complete_k_prime(m: float) -> float:
    """Complementary integral ``K'(m) = K(1-m)``, for ``0 < m <= 1``."""
    m = float(m)
    if m <= 0.0:
        raise DomainError(f"K'(m) diverges at m={m!r}")
    return complete_k(1.0 - m)


def nome(m: float) -> float:
    """Jacobi nome ``q = exp(-pi K'(m) / K(m))``."""
    m = _check_parameter(m, allow_one=True)
    if m == 0.0:
        return 0.0
    if m == 1.0:
        return 1.0
    return float(np.exp(-np.pi * complete_k(1.0 - m) / complete_k(m)))


def jacobi(u, m: float) -> EllipticTriple:
    """Jacobi ``sn``, ``cn``, ``dn`` for real argument.

    Parameters
    ----------
    u : float or array_like
        Real argument(s).
    m : float
        Parameter, ``0 <= m <= 1``. The limits ``m = 0`` (trigonometric) and
        ``m = 1`` (hyperbolic) use their closed forms.

    Returns
    -------
    EllipticTriple
        Float results with the shape of ``u``.
    """
    m = _check_parameter(m, allow_one=True)
    scalar = np.ndim(u) == 0
    u = np.asarray(u, dtype=float)
    if m == 0.0:
        sn, cn, dn = np.sin(u), np.cos(u), np.ones_like(u)
    elif m == 1.0:
        sech = 1.0 / np.cosh(u)
        sn, cn, dn = np.tanh(u), sech, sech.copy()
    else:
        sn, cn, dn = _jacobi_general(u, m)
    if scalar:
        sn, cn, dn, u = float(sn), float(cn), float(dn), float(u)
    return EllipticTriple(sn, cn, dn, u, m)


def _jacobi_general(u: np.ndarray, m: float):
    quarter = complete_k(m)
    r = np.mod(u, 4.0 * quarter)
    if m < _SMALL_M:
        # First-order expansion in m about the trigonometric limit.
        t = np.where(r > 2.0 * quarter, r - 4.0 * quarter, r)
        s, c = np.sin(t), np.cos(t)
        corr = 0.25 * m * (t - s * c)
        sn = s - corr * c
        cn = c + corr * s
        dn = 1.0 - 0.5 * m * s * s
    else:
        a_seq, c_seq = _agm_chain(m)
        n = len(a_seq) - 1
        phi = (2.0**n) * a_seq[-1] * r
        for k in range(n, 0, -1):
            phi = 0.5 * (phi + np.arcsin(c_seq[k] / a_seq[k] * np.sin(phi)))
        sn, cn = np.sin(phi), np.cos(phi)
        dn = np.sqrt(cn * cn + (1.0 - m) * sn * sn)
    sn, cn, dn = np.array(sn, dtype=float), np.array(cn, dtype=float), np.array(dn, dtype=float)
    kp = np.sqrt(1.0 - m)
    for multiple, values in ((0, (0.0, 1.0, 1.0)), (1, (1.0, 0.0, kp)),
                             (2, (0.0, -1.0, 1.0)), (3, (-1.0, 0.0, kp))):
        hit = r == multiple * quarter
        if np.any(hit):
            sn[hit], cn[hit], dn[hit] = values
    return sn, cn, dn


def _nearest_pole(z: np.ndarray, m: float):
    """Nearest lattice pole ``2jK + (2k+1)iK'`` and normalized distance to it."""
    kk, kp = complete_k(m), complete_k(1.0 - m)
    xs = z.real / (2.0 * kk)
    ys = (z.imag - kp) / (2.0 * kp)
    j, k = np.round(xs), np.round(ys)
    dist = np.hypot(xs - j, ys - k)
    pole = 2.0 * j * kk + 1j * (2.0 * k + 1.0) * kp
    return pole, dist


def jacobi_complex(z, m: float, pole_guard: float = DEFAULT_POLE_GUARD) -> EllipticTriple:
    """Jacobi ``sn``, ``cn``, ``dn`` for complex argument ``z = x + iy``.

    Uses the addition theorem on real evaluations at ``(x, m)`` and
    ``(y, 1-m)``.

    Parameters
    ----------
    z : complex or array_like
    m : float
        Parameter, ``0 <= m <= 1``.
    pole_guard : float
        Minimum allowed distance to a pole, measured in units of the period
        rectangle ``2K x 2K'``.

    Raises
    ------
    SingularityError
        If any ``z`` lies within ``pole_guard`` of a pole.
    """
    m = _check_parameter(m, allow_one=True)
    scalar = np.ndim(z) == 0
    z = np.asarray(z, dtype=complex)
    if m == 0.0:
        sn, cn, dn = np.sin(z), np.cos(z), np.ones_like(z)
    elif m == 1.0:
        sech = 1.0 / np.cosh(z)
        sn, cn, dn = np.tanh(z), sech, sech.copy()
    else:
        pole, dist = _nearest_pole(z, m)
        bad = dist < pole_guard
        if np.any(bad):
            idx = np.flatnonzero(bad.ravel())[0]
            raise SingularityError(complex(z.ravel()[idx]), complex(pole.ravel()[idx]),
                                   float(dist.ravel()[idx]))
        s1, c1, d1 = jacobi(z.real, m)
        s2, c2, d2 = jacobi(z.imag, 1.0 - m)
        den = c2 * c2 + m * (s1 * s2) ** 2
        sn = (s1 * d2 + 1j * c1 * d1 * s2 * c2) / den
        cn = (c1 * c2 - 1j * s1 * d1 * s2 * d2) / den
        dn = (d1 * c2 * d2 - 1j * m * s1 * c1 * s2) / den
    if scalar:
        sn, cn, dn, z = complex(sn), complex(cn), complex(dn), complex(z)
    return EllipticTriple(sn, cn, dn, z, m)


def _series_terms(m: float, z):
    """Shared setup for the theta series: nome and scaled argument ``v = pi z / 2K``."""
    m = _check_parameter(m, allow_one=True)
    if m == 1.0:
        raise ConvergenceError("theta series diverge as m -> 1 (nome -> 1)")
    q = nome(m)
    v = 0.5 * np.pi * np.asarray(z) / complete_k(m)
    return q, v


def _sum_series(term, bound, start: int, init):
    """Accumulate ``term(n)`` from ``n = start`` until ``bound(n)`` falls below tolerance.

    ``bound(n)`` majorizes ``|term(n)|``; testing it rather than the term
    itself avoids stopping early where a term vanishes by symmetry.
    """
    total = init
    for n in range(start, start + _SERIES_MAX_TERMS):
        total = total + term(n)
        if np.all(bound(n) < _SERIES_TOL * np.maximum(1.0, np.abs(total))):
            return total
    raise ConvergenceError(f"theta series not converged after {_SERIES_MAX_TERMS} terms")


def theta_eta(z, m: float):
    """Jacobi eta ``H(z)`` and theta ``Theta(z)`` functions.

    ``H(z) = 2 sum_{n>=0} (-1)^n q^{(n+1/2)^2} sin((2n+1) v)`` and
    ``Theta(z) = 1 + 2 sum_{n>=1} (-1)^n q^{n^2} cos(2 n v)`` with
    ``v = pi z / (2K)`` and nome ``q``.

    Returns
    -------
    tuple
        ``(H, Theta)``, complex, with the shape of ``z``.

    Raises
    ------
    ConvergenceError
        If ``m = 1`` or the series needs more than 64 terms.
    """
    scalar = np.ndim(z) == 0
    q, v = _series_terms(m, np.asarray(z, dtype=complex))
    if q == 0.0:
        h, th = np.zeros_like(v), np.ones_like(v)
    else:
        lq, y = np.log(q), np.abs(v.imag)
        h = _sum_series(lambda n: 2.0 * (-1) ** n * np.exp(lq * (n + 0.5) ** 2)
                        * np.sin((2 * n + 1) * v),
                        lambda n: 2.0 * np.exp(lq * (n + 0.5) ** 2 + (2 * n + 1) * y),
                        0, np.zeros_like(v))
        th = _sum_series(lambda n: 2.0 * (-1) ** n * np.exp(lq * n * n)
                         * np.cos(2 * n * v),
                         lambda n: 2.0 * np.exp(lq * n * n + 2 * n * y),
                         1, np.ones_like(v))
    if scalar:
        return complex(h), complex(th)
    return h, th


def jacobi_zeta(u, m: float):
    """Jacobi zeta function ``Z(u) = Theta'(u) / Theta(u)``.

    Evaluated from the theta q-series. Accepts real or complex ``u``; the
    result is real for real ``u``. ``Z`` is odd with period ``2K``, and the
    zeros at multiples of ``K`` are returned exactly.
    """
    m = _check_parameter(m, allow_one=True)
    scalar = np.ndim(u) == 0
    arr = np.asarray(u)
    real_input = not np.iscomplexobj(arr)
    if m == 0.0:
        out = np.zeros_like(arr, dtype=float if real_input else complex)
    elif m == 1.0:
        out = np.tanh(arr)
    else:
        q, v = _series_terms(m, arr.astype(complex))
        lq, y = np.log(q), np.abs(v.imag)
        num = _sum_series(lambda n: -4.0 * n * (-1) ** n * np.exp(lq * n * n)
                          * np.sin(2 * n * v),
                          lambda n: 4.0 * n * np.exp(lq * n * n + 2 * n * y),
                          1, np.zeros_like(v))
        den = _sum_series(lambda n: 2.0 * (-1) ** n * np.exp(lq * n * n)
                          * np.cos(2 * n * v),
                          lambda n: 2.0 * np.exp(lq * n * n + 2 * n * y),
                          1, np.ones_like(v))
        out = 0.5 * np.pi / complete_k(m) * num / den
        if real_input:
            out = np.array(out.real)
            quarter = complete_k(m)
            r = np.mod(arr, 2.0 * quarter)
            out[(r == 0.0) | (r == quarter)] = 0.0
    if scalar:
        return float(out) if real_input else complex(out)
    return out


def landen_descent(m: float, p: int) -> LandenDescent:
    """Parameters of the order-``p`` Landen transformation.

    Parameters
    ----------
    m : float
        Parameter, ``0 <= m < 1``.
    p : int
        Number of translated copies, ``p >= 2``.

    Returns
    -------
    LandenDescent
        ``alpha`` from the sum of ``dn`` at the translation nodes, ``m_tilde``
        from the sum of their cubes, and ``a_d`` from the cyclic identity
        involving ``cs`` and the zeta function.
    """
    p = int(p)
    if p < 2:
        raise DomainError(f"superposition order p={p} must be at least 2")
    m = _check_parameter(m, allow_one=False)
    kp = np.sqrt(1.0 - m)
    if m == 0.0:
        return LandenDescent(1.0 / p, 0.0, p * (p - 1) / 2.0, p, m)
    if p == 2:
        alpha = 1.0 / (1.0 + kp)
        m_tilde = ((1.0 - kp) / (1.0 + kp)) ** 2
        return LandenDescent(alpha, m_tilde, kp, p, m)
    quarter = complete_k(m)
    dn = jacobi(2.0 * np.arange(p) * quarter / p, m).dn
    alpha = 1.0 / dn.sum()
    m_tilde = max((m - 2.0) * alpha**2 + 2.0 * alpha**3 * np.sum(dn**3), 0.0)
    half = (p - 1) // 2 if p % 2 else (p - 2) // 2
    nodes = 2.0 * np.arange(1, half + 1) * quarter / p
    sn, cn, dnj = jacobi(nodes, m)
    a_d = p * float(np.sum(dnj - cn / sn * jacobi_zeta(nodes, m)))
    if p % 2 == 0:
        a_d += 0.5 * p * kp
    return LandenDescent(float(alpha), float(m_tilde), a_d, p, m)

"""Closed-form band-edge catalogs.

Integer associated Lame potentials ``(a(a+1), b(b+1))`` lie on two parabolas
of solvability, ``n = a - b`` and ``n = a + b + 1``; together those rows of
the quasi-exactly-solvable table supply all ``2a + 1`` band edges. Lame
potentials are the ``b = 0`` case. Superpositions, SUSY partners and PT
images are mapped from those catalogs.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ..elliptic import complete_k
from ..errors import CatalogMissError, ContractError
from ..jets import Jet, constant_jet
from ..wavefunctions import EllipticWavefunction, PartnerWavefunction, Wavefunction
from .spec import (
    ASSOC_LAME,
    DOUBLE_SINE_GORDON,
    LAME,
    PT,
    SUPERPOSED_ASSOC_LAME,
    SUPERPOSED_LAME,
    SUSY_PARTNER,
    PotentialSpec,
)

__all__ = [
    "PERIODIC",
    "ANTIPERIODIC",
    "BandEdge",
    "QesState",
    "parabola_states",
    "analytic_band_edges",
    "ground_state",
    "oscillation_pattern",
    "expected_unusual_pairs",
    "count_sign_changes",
]

#: Eigenfunction has the period ``L`` of the potential.
PERIODIC = "L"
#: Eigenfunction changes sign over one period (period ``2L``).
ANTIPERIODIC = "2L"

MAX_TABULATED_N = 5
NODE_GRID = 4096


@dataclass(frozen=True)
class BandEdge:
    """One band edge.

    Attributes
    ----------
    energy : float
        Energy including the spec's shift.
    periodicity : str
        :data:`PERIODIC` or :data:`ANTIPERIODIC`.
    nodes : int or None
        Zeros of the eigenfunction in one period; ``None`` for complex ones.
    provenance : str
        ``"analytic"`` or ``"numeric"``.
    wavefunction : Wavefunction or None
    raw_energy : float or None
        Energy before the shift is applied.
    degenerate : bool
        Member of a zero-width gap pair.
    """

    energy: float
    periodicity: str
    nodes: int | None
    provenance: str
    wavefunction: Wavefunction | None = None
    raw_energy: float | None = None
    degenerate: bool = False


@dataclass(frozen=True)
class QesState:
    """A closed-form eigenstate on a parabola of solvability.

    ``period`` is ``2K`` or ``4K``; ``nodes`` counts zeros in ``[0, 2K)``.
    """

    energy: float
    wavefunction: Wavefunction
    period: float
    nodes: int


def _qes_rows(a: float, n: int, m: float):
    """Yield ``(energy, expr, k, doubles_period, tabulated_nodes)`` for parabola ``n``.

    ``expr`` maps ``(sn, cn, dn)`` jets to ``dn^(k-a) psi``, a polynomial in the
    jets; ``tabulated_nodes`` is ``None`` for rows whose node count is not
    tabulated. Keeping the ``dn`` power separate lets integer ``a >= k`` avoid
    dividing by ``dn``, which vanishes off the real axis.
    """
    c1 = m * (2.0 * a - 1.0)
    if n == 1:
        yield m * a * a, lambda s, c, d: constant_jet(np.ones_like(s.v)), 0, False, 0
    elif n == 2:
        yield 1.0 + m * (a - 1.0) ** 2, lambda s, c, d: c, 1, True, 1
        yield 1.0 + m * a * a, lambda s, c, d: s, 1, True, 1
    elif n == 3:
        d4 = np.sqrt(1.0 - m + m * m * (a - 1.0) ** 2)
        for sign, nodes in ((1.0, 2), (-1.0, 0)):
            yield (2.0 + m * (a * a - 2.0 * a + 2.0) + 2.0 * sign * d4,
                   lambda s, c, d, g=sign * d4: (c1 * s * s - 1.0 + m - m * a + g), 2,
                   False, nodes)
        yield 4.0 + m * (a - 1.0) ** 2, lambda s, c, d: s * c, 2, False, 2
    elif n == 4:
        d5 = np.sqrt(4.0 - 7.0 * m + 2.0 * m * a + m * m * (a - 2.0) ** 2)
        d6 = np.sqrt(4.0 - m - 2.0 * m * a + m * m * (a - 1.0) ** 2)
        for sign, nodes in ((1.0, 3), (-1.0, 1)):
            yield (5.0 + m * (a * a - 4.0 * a + 5.0) + 2.0 * sign * d5,
                   lambda s, c, d, g=sign * d5: c * (c1 * s * s - 2.0 + 2.0 * m - m * a + g), 3,
                   True, nodes)
            yield (5.0 + m * (a * a - 2.0 * a + 2.0) + 2.0 * sign * d6,
                   lambda s, c, d, g=sign * d6: s * (c1 * s * s - 2.0 + m - m * a + g), 3,
                   True, nodes)
    elif n == 5:
        d7 = np.sqrt(9.0 - 9.0 * m + m * m * (a - 2.0) ** 2)
        for sign, nodes in ((1.0, 4), (-1.0, 2)):
            yield (10.0 + m * (a * a - 4.0 * a + 5.0) + 2.0 * sign * d7,
                   lambda s, c, d, g=sign * d7: s * c * (c1 * s * s - 3.0 + 2.0 * m - m * a + g), 4,
                   False, nodes)
        # The three even states dn^(a-4) P(sn^2) with P of degree 2 in sn^2:
        # the coefficient vector of P is an eigenvector of this matrix.
        mat = np.array([
            [m * (a - 4.0) ** 2, -2.0, 0.0],
            [(8.0 * a - 12.0) * m, m * (a - 2.0) ** 2 + 4.0, -12.0],
            [0.0, (4.0 * a - 2.0) * m, a * a * m + 16.0],
        ])
        vals, vecs = np.linalg.eig(mat)
        for val, vec in zip(vals.real, vecs.T.real):
            yield (float(val),
                   lambda s, c, d, k=vec: (k[0] + k[1] * s * s + k[2] * s**4), 4,
                   False, None)
    else:
        raise CatalogMissError(f"parabola P{n} is not tabulated (n must be 1..{MAX_TABULATED_N})")


def count_sign_changes(values: np.ndarray) -> int:
    """Number of sign changes along a sampled real function."""
    s = np.sign(np.real(values))
    s = s[s != 0]
    return int(np.count_nonzero(s[1:] != s[:-1]))


def _nodes_on_period(psi: Wavefunction, period: float, start: float = 0.0, n: int = NODE_GRID) -> int:
    x = start + 0.1234567 * period / n + period * np.arange(n + 1) / n
    return count_sign_changes(psi(x))


def parabola_states(a: float, n: int, m: float) -> list[QesState]:
    """Closed-form states of the ``(a(a+1), (a-n+1)(a-n))`` potential.

    Parameters
    ----------
    a : float
        Real ``a >= 0``.
    n : int
        Parabola index, ``1 <= n <= 5``.
    m : float
        Elliptic parameter.

    Returns
    -------
    list of QesState
        ``n`` states sorted by energy. For ``n = 5`` the three even states
        come from a 3x3 eigenproblem, with node counts from a sign-change
        scan.
    """
    if int(n) != n or not 1 <= n <= MAX_TABULATED_N:
        raise CatalogMissError(f"parabola P{n} is not tabulated (n must be 1..{MAX_TABULATED_N})")
    n = int(n)
    if a * (a + 1.0) < (a - n + 1.0) * (a - n):
        raise ContractError("requires a(a+1) >= (a-n+1)(a-n)")
    k = complete_k(m)
    states = []
    for energy, expr, power, doubled, nodes in _qes_rows(a, n, m):
        wf = EllipticWavefunction(lambda s, c, d, f=expr, e=a - power: f(s, c, d) * d**e, m,
                                  label=f"P{n} E={energy:.6g}")
        if nodes is None:
            nodes = _nodes_on_period(wf, 2.0 * k)
        states.append(QesState(float(energy), wf, 4.0 * k if doubled else 2.0 * k, nodes))
    return sorted(states, key=lambda st: st.energy)


def _is_integer(x: float) -> bool:
    return float(x).is_integer()


def _periodicity(psi: Wavefunction, period: float, start: float = 0.0) -> str:
    """Classify ``psi`` as periodic or antiperiodic over ``period``."""
    x = start + period * np.array([0.1234567, 0.3456789, 0.5678901, 0.7890123])
    vals = np.asarray(psi(x))
    i = int(np.argmax(np.abs(vals)))
    ratio = complex(np.asarray(psi(x[i] + period))) / complex(vals[i])
    if abs(ratio - 1.0) < 1e-6:
        return PERIODIC
    if abs(ratio + 1.0) < 1e-6:
        return ANTIPERIODIC
    raise ContractError(f"wavefunction is not (anti)periodic over L={period}: ratio {ratio}")


def _raw_states(spec: PotentialSpec) -> list[tuple[float, Wavefunction]]:
    """Catalog energies (before shift) and wavefunctions in the spec's own coordinate."""
    fam = spec.family
    if fam in (LAME, ASSOC_LAME):
        a, b = spec.a, spec.b
        if b < -0.5:
            b = -b - 1.0
        if not (_is_integer(a) and _is_integer(b)) or b < 0:
            raise CatalogMissError("closed-form catalogs need integer a >= b >= 0")
        if a == 0 and b == 0:
            wf = EllipticWavefunction(lambda s, c, d: constant_jet(np.ones_like(s.v)), spec.m, "free")
            out = [(0.0, wf)]
        else:
            rows = [n for n in (int(a - b), int(a + b + 1)) if n >= 1]
            if max(rows) > MAX_TABULATED_N:
                raise CatalogMissError(
                    f"needs parabola P{max(rows)}; only P1..P{MAX_TABULATED_N} are tabulated")
            out = [(st.energy, st.wavefunction) for n in rows for st in parabola_states(a, n, spec.m)]
        return [(e, wf.compose(1.0, -spec.translate)) for e, wf in out]
    if fam in (SUPERPOSED_LAME, SUPERPOSED_ASSOC_LAME):
        ld = spec.landen()
        reduced = spec.reduced_spec()
        offset = ld.energy_offset(spec.total_strength())
        return [(e / ld.alpha**2 + offset, wf.compose(1.0 / ld.alpha, -spec.translate / ld.alpha))
                for e, wf in _raw_states(reduced)]
    if fam == SUSY_PARTNER:
        inner = _edges_cached(spec.inner)
        ground = inner[0]
        out = []
        for i, edge in enumerate(inner):
            rel = edge.energy - ground.energy
            wf = PartnerWavefunction(edge.wavefunction, ground.wavefunction, rel, is_ground=(i == 0))
            out.append((rel, wf.compose(1.0, -spec.translate)))
        return out
    if fam == PT:
        inner = _edges_cached(spec.inner)
        return [(-edge.energy, edge.wavefunction.compose(1j, spec.beta - 1j * spec.translate))
                for edge in reversed(inner)]
    if fam == DOUBLE_SINE_GORDON:
        raise CatalogMissError("double sine-Gordon has no closed-form catalog; use a numeric solve")
    raise CatalogMissError(f"no catalog for family {fam!r}")


@lru_cache(maxsize=128)
def _edges_cached(spec: PotentialSpec) -> tuple[BandEdge, ...]:
    period = spec.period()
    start = spec.translate
    edges = []
    for raw, wf in sorted(_raw_states(spec), key=lambda t: t[0]):
        cls = _periodicity(wf, period, start)
        nodes = None if spec.is_complex else _nodes_on_period(wf, period, start)
        edges.append(BandEdge(raw + spec.shift, cls, nodes, "analytic", wf, raw))
    return tuple(edges)


def analytic_band_edges(spec: PotentialSpec) -> list[BandEdge]:
    """All closed-form band edges of ``spec``, sorted by energy.

    Periodicity classes are read off the wavefunctions over one period of
    the potential, and node counts come from a sign-change scan on a
    4096-point grid (complex eigenfunctions get ``nodes=None``).

    Raises
    ------
    CatalogMissError
        If the family or parameters have no closed-form catalog.
    """
    return list(_edges_cached(spec))


def ground_state(spec: PotentialSpec) -> BandEdge:
    """Lowest catalog edge, required to be periodic and (for real potentials) nodeless."""
    edge = _edges_cached(spec)[0]
    if edge.periodicity != PERIODIC or edge.nodes not in (0, None):
        raise CatalogMissError("lowest catalog edge is not a nodeless periodic ground state")
    return edge


def _expected(k: int) -> tuple[str, int]:
    if k == 0:
        return PERIODIC, 0
    level = (k + 1) // 2
    return (ANTIPERIODIC if level % 2 else PERIODIC), level


def oscillation_pattern(edges, allow_degenerate: bool = False):
    """Match sorted edges against the oscillation-theorem sequence.

    The expected classes are ``L, 2L, 2L, L, L, 2L, 2L, ...`` with node counts
    ``0, 1, 1, 2, 2, 3, 3, ...``. When ``allow_degenerate`` is set, a missing
    pair may be bridged by a zero-width gap (two coinciding edges).

    Returns
    -------
    list of (periodicity, nodes) or None
        The inserted degenerate pairs, or ``None`` if the edges do not fit.
    """
    k = 0
    inserted = []
    for edge in sorted(edges, key=lambda e: e.energy):
        while True:
            cls, nodes = _expected(k)
            if edge.periodicity == cls and (edge.nodes is None or edge.nodes == nodes):
                k += 1
                break
            if allow_degenerate and k % 2 == 1:
                inserted.append((cls, nodes))
                k += 2
                continue
            return None
    return inserted


def expected_unusual_pairs(spec: PotentialSpec) -> int:
    """Number of zero-width gaps predicted for an integer associated Lame potential.

    For unequal integers ``a > b > 0`` the top ``b`` bound bands have both edges
    in the same class; each such band hides one degenerate pair.
    """
    if spec.family == ASSOC_LAME and _is_integer(spec.a) and _is_integer(spec.b) and spec.a > spec.b > 0:
        return int(spec.b)
    return 0

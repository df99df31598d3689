"""Checkable spectral identities between Lame, associated Lame, superposed and PT potentials.

Each check returns a :class:`RelationReport` with the two sides of the
identity, the largest residual and a pass flag. Edge lists may be plain
floats or objects with an ``energy`` attribute; they are sorted before
pairing, and a degenerate pair counts as two edges.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Iterable

import numpy as np

from .elliptic import complete_k, complete_k_prime, landen_descent
from .errors import CatalogMissError, ContractError
from .floquet import (
    DEFAULT_ODE_TOL,
    find_band_edges,
    fold_bloch_phase,
    monodromy_batch,
    pt_lame_one_phase,
)
from .potentials.catalog import analytic_band_edges
from .potentials.spec import PotentialSpec
from .wavefunctions import Wavefunction

__all__ = [
    "RELATION_IDS",
    "RELATION_TOL",
    "RelationReport",
    "check_duality",
    "check_midpoint_sum_rule",
    "map_superposed_spectrum",
    "check_superposed_spectrum",
    "map_superposed_al_spectrum",
    "check_superposed_al_spectrum",
    "al_duality_moduli",
    "check_al_duality",
    "check_pt_relations",
    "check_discriminant_relation",
    "check_al_pt_relation",
    "check_al_discriminant_relation",
    "check_pt_dispersion",
    "schrodinger_residual",
    "dual_wavefunction",
    "numeric_lame_edges",
]

RELATION_TOL = 1e-6
EDGE_MARGIN = 1e-3

RELATION_IDS = (
    "lame_duality",
    "midpoint_sum_rule",
    "superposed_landen",
    "assoc_lame_duality",
    "pt_reflection",
    "pt_complementary_modulus",
    "pt_discriminant",
    "assoc_lame_pt",
    "assoc_lame_pt_discriminant",
    "superposed_assoc_landen",
    "pt_dispersion",
    "susy_isospectral",
)


@dataclass(frozen=True)
class RelationReport:
    """Outcome of one identity check; ``passed`` iff ``max_abs_error < tol``."""

    relation_id: str
    inputs: dict[str, Any]
    lhs: np.ndarray
    rhs: np.ndarray
    tol: float = RELATION_TOL
    details: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.relation_id not in RELATION_IDS:
            raise ContractError(f"unknown relation id {self.relation_id!r}")
        lhs = np.atleast_1d(np.asarray(self.lhs))
        rhs = np.atleast_1d(np.asarray(self.rhs))
        if lhs.shape != rhs.shape:
            raise ContractError(f"lhs shape {lhs.shape} differs from rhs shape {rhs.shape}")
        object.__setattr__(self, "lhs", lhs)
        object.__setattr__(self, "rhs", rhs)

    @property
    def max_abs_error(self) -> float:
        return float(np.max(np.abs(self.lhs - self.rhs))) if self.lhs.size else 0.0

    @property
    def passed(self) -> bool:
        return self.max_abs_error < self.tol

    def to_dict(self) -> dict[str, Any]:
        def plain(v):
            v = np.asarray(v)
            if np.iscomplexobj(v):
                return [[float(z.real), float(z.imag)] for z in v]
            return [float(z) for z in v]

        return {
            "relation_id": self.relation_id,
            "inputs": {k: (float(v) if isinstance(v, (float, np.floating)) else v)
                       for k, v in self.inputs.items()},
            "lhs": plain(self.lhs),
            "rhs": plain(self.rhs),
            "max_abs_error": self.max_abs_error,
            "tol": self.tol,
            "passed": self.passed,
            "details": self.details,
        }


def _energies(edges: Iterable) -> np.ndarray:
    vals = [float(getattr(e, "energy", e)) for e in edges]
    return np.sort(np.array(vals, dtype=float))


def _require_length(name: str, values: np.ndarray, n: int):
    if values.size != n:
        raise ContractError(f"{name} must hold {n} edges, got {values.size}")


def _strength(a: float) -> float:
    return a * (a + 1.0)


# -- Lame duality -------------------------------------------------------------------


def check_duality(a: int, m: float, edges_m, edges_1m, tol: float = RELATION_TOL) -> RelationReport:
    """``E_j(m) + E_{2a-j}(1-m) = a(a+1)`` for the raw Lame edges.

    At ``m = 1/2`` the middle-edge value ``a(a+1)/2`` is appended as an
    extra row.
    """
    em, e1m = _energies(edges_m), _energies(edges_1m)
    n = 2 * int(a) + 1
    _require_length("edges_m", em, n)
    _require_length("edges_1m", e1m, n)
    lhs = list(em + e1m[::-1])
    rhs = [_strength(a)] * n
    if abs(m - 0.5) < 1e-15:
        lhs.append(em[int(a)])
        rhs.append(0.5 * _strength(a))
    return RelationReport("lame_duality", {"a": a, "m": m}, np.array(lhs), np.array(rhs), tol)


def check_midpoint_sum_rule(a: int, edges_half, tol: float = RELATION_TOL) -> RelationReport:
    """At ``m = 1/2``: ``E_j + E_{2a-j} = a(a+1)`` and ``E_a = a(a+1)/2``."""
    e = _energies(edges_half)
    n = 2 * int(a) + 1
    _require_length("edges_half", e, n)
    lhs = np.append(e + e[::-1], e[int(a)])
    rhs = np.append(np.full(n, _strength(a)), 0.5 * _strength(a))
    return RelationReport("midpoint_sum_rule", {"a": a, "m": 0.5}, lhs, rhs, tol)


def dual_wavefunction(psi_dual: Wavefunction, m: float) -> Wavefunction:
    """``x -> psi(ix + K'(m) + iK(m))`` for a Lame state ``psi`` at modulus ``1 - m``.

    The result solves the Lame equation at modulus ``m`` with energy
    ``a(a+1) - E``, where ``E`` is the energy of ``psi``.
    """
    return psi_dual.compose(1j, complete_k_prime(m) + 1j * complete_k(m))


def schrodinger_residual(psi: Wavefunction, potential: Callable, energy: complex, x) -> float:
    """``max|-psi'' + V psi - E psi| / max|psi|`` on the sample points ``x``."""
    x = np.asarray(x, dtype=float)
    jet = psi.jet(x)
    v = np.asarray(potential(x))
    res = -jet.d2 + (v - energy) * jet.v
    return float(np.max(np.abs(res)) / np.max(np.abs(jet.v)))


# -- Landen superpositions ------------------------------------------------------------


def map_superposed_spectrum(a: float, p: int, m: float, lame_edges_at_m_tilde) -> np.ndarray:
    """Edges of the ``p``-fold superposed Lame potential from Lame edges at ``m_tilde``.

    ``E = E_L / alpha^2 + a(a+1) (p + 2 A_d - 1/alpha^2)``.
    """
    ld = landen_descent(m, p)
    return _energies(lame_edges_at_m_tilde) / ld.alpha**2 + ld.energy_offset(_strength(a))


def map_superposed_al_spectrum(a: float, b: float, p: int, m: float, al_edges_at_m_tilde) -> np.ndarray:
    """Edges of the superposed associated Lame potential from AL edges at ``m_tilde``.

    As :func:`map_superposed_spectrum` with strength ``a(a+1) + b(b+1)``.
    """
    ld = landen_descent(m, p)
    return _energies(al_edges_at_m_tilde) / ld.alpha**2 + ld.energy_offset(_strength(a) + _strength(b))


def check_superposed_spectrum(a: float, p: int, m: float, lame_edges_at_m_tilde, direct_edges,
                              tol: float = RELATION_TOL) -> RelationReport:
    """Landen image of Lame edges against edges of the superposed potential."""
    mapped = map_superposed_spectrum(a, p, m, lame_edges_at_m_tilde)
    direct = _energies(direct_edges)
    _require_length("direct_edges", direct, mapped.size)
    ld = landen_descent(m, p)
    return RelationReport("superposed_landen", {"a": a, "p": p, "m": m, "m_tilde": ld.m_tilde},
                          direct, mapped, tol)


def check_superposed_al_spectrum(a: float, b: float, p: int, m: float, al_edges_at_m_tilde, direct_edges,
                                 tol: float = RELATION_TOL) -> RelationReport:
    """Landen image of AL edges against edges of the superposed AL potential."""
    mapped = map_superposed_al_spectrum(a, b, p, m, al_edges_at_m_tilde)
    direct = _energies(direct_edges)
    _require_length("direct_edges", direct, mapped.size)
    ld = landen_descent(m, p)
    return RelationReport("superposed_assoc_landen",
                          {"a": a, "b": b, "p": p, "m": m, "m_tilde": ld.m_tilde}, direct, mapped, tol)


# -- associated Lame with a = b -------------------------------------------------------------


def al_duality_moduli(m: float) -> tuple[float, float]:
    """``m1 = 4 sqrt(m)/(1 + sqrt(m))^2`` and ``m2`` with ``m -> 1 - m``."""
    s, c = np.sqrt(m), np.sqrt(1.0 - m)
    return 4.0 * s / (1.0 + s) ** 2, 4.0 * c / (1.0 + c) ** 2


def check_al_duality(a: int, m: float, edges_m1, edges_m2, tol: float = RELATION_TOL) -> RelationReport:
    """Duality between ``a = b`` AL spectra at ``m1`` and ``m2``.

    ``(1+sqrt m)^2/4 E_j(m1) + (1+sqrt(1-m))^2/4 E_{2a-j}(m2) = a(a+1)(1 + sqrt m + sqrt(1-m))``.
    """
    e1, e2 = _energies(edges_m1), _energies(edges_m2)
    n = 2 * int(a) + 1
    _require_length("edges_m1", e1, n)
    _require_length("edges_m2", e2, n)
    s, c = np.sqrt(m), np.sqrt(1.0 - m)
    lhs = 0.25 * (1.0 + s) ** 2 * e1 + 0.25 * (1.0 + c) ** 2 * e2[::-1]
    rhs = np.full(n, _strength(a) * (1.0 + s + c))
    m1, m2 = al_duality_moduli(m)
    return RelationReport("assoc_lame_duality", {"a": a, "m": m, "m1": m1, "m2": m2}, lhs, rhs, tol)


def _al_pt_map(a: float, m: float):
    """Scale and offset with ``E_PT(m1) = scale * E_AL(m2) - offset``."""
    s, c = np.sqrt(m), np.sqrt(1.0 - m)
    return ((1.0 + c) / (1.0 + s)) ** 2, 4.0 * _strength(a) * (1.0 + s + c) / (1.0 + s) ** 2


def check_al_pt_relation(a: int, m: float, pt_edges_m1, al_edges_m2, tol: float = RELATION_TOL) -> RelationReport:
    """PT image of the ``a = b`` AL potential at ``m1`` against the AL potential at ``m2``."""
    ept, eal = _energies(pt_edges_m1), _energies(al_edges_m2)
    n = 2 * int(a) + 1
    _require_length("pt_edges_m1", ept, n)
    _require_length("al_edges_m2", eal, n)
    scale, offset = _al_pt_map(a, m)
    m1, m2 = al_duality_moduli(m)
    return RelationReport("assoc_lame_pt", {"a": a, "m": m, "m1": m1, "m2": m2}, ept, scale * eal - offset, tol)


# -- PT images -----------------------------------------------------------------------


def _intervals(edges: np.ndarray, start: int) -> list[tuple[float, float]]:
    return [(float(edges[i]), float(edges[i + 1])) for i in range(start, edges.size - 1, 2)]


def check_pt_relations(a: int, m: float, lame_edges, pt_edges, lame_edges_1m=None,
                       tol: float = RELATION_TOL) -> list[RelationReport]:
    """``E_j^PT(m) = -E_{2a-j}(m)`` and, if given, ``E_j^PT(m) = E_j(1-m) - a(a+1)``.

    The first report also records whether the finite bands of the Lame
    potential, reflected through zero, are exactly the finite gaps of its
    PT image and vice versa.
    """
    e, ept = _energies(lame_edges), _energies(pt_edges)
    n = 2 * int(a) + 1
    _require_length("lame_edges", e, n)
    _require_length("pt_edges", ept, n)
    reflected = -e[::-1]
    bands = sorted((-hi, -lo) for lo, hi in _intervals(e, 0))
    gaps = sorted((-hi, -lo) for lo, hi in _intervals(e, 1))
    exchange = (np.allclose(bands, _intervals(ept, 1), atol=tol, rtol=0.0)
                and np.allclose(gaps, _intervals(ept, 0), atol=tol, rtol=0.0))
    reports = [RelationReport("pt_reflection", {"a": a, "m": m}, ept, reflected, tol,
                              {"bands_exchange_gaps": bool(exchange)})]
    if lame_edges_1m is not None:
        e1m = _energies(lame_edges_1m)
        _require_length("lame_edges_1m", e1m, n)
        reports.append(RelationReport("pt_complementary_modulus", {"a": a, "m": m},
                                      ept, e1m - _strength(a), tol))
    return reports


def _check_margin(samples: np.ndarray, edges: np.ndarray | None, margin: float):
    if edges is None or edges.size == 0:
        return
    gap = np.min(np.abs(samples[:, None] - edges[None, :]))
    if gap < margin:
        raise ContractError(f"sample energies must stay {margin} away from band edges (closest {gap:.3g})")


def _catalog_energies(spec: PotentialSpec) -> np.ndarray | None:
    try:
        return _energies(analytic_band_edges(spec))
    except CatalogMissError:
        return None


def _discriminant_values(spec, energies, ode_tol: float) -> np.ndarray:
    mats, _, _ = monodromy_batch(spec, energies, ode_tol)
    return mats[:, 0, 0] + mats[:, 1, 1]


def check_discriminant_relation(a: float, m: float, E_samples, beta: float = 0.4,
                                ode_tol: float = DEFAULT_ODE_TOL, tol: float = RELATION_TOL,
                                margin: float = EDGE_MARGIN) -> RelationReport:
    """``Delta_PT(E, m) = Delta(E + a(a+1), 1 - m)`` from two independent Floquet solves.

    The left side integrates the complex PT potential over ``2K'(m)``; the
    right side integrates the real Lame potential over ``2K(1-m)``.
    """
    samples = np.asarray(E_samples, dtype=float)
    pt = PotentialSpec.pt(PotentialSpec.lame(a, m), beta)
    _check_margin(samples, _catalog_energies(pt), margin)
    lhs = _discriminant_values(pt, samples, ode_tol)
    rhs = _discriminant_values(PotentialSpec.lame(a, 1.0 - m), samples + _strength(a), ode_tol)
    return RelationReport("pt_discriminant", {"a": a, "m": m, "beta": beta, "samples": samples.size},
                          lhs, rhs.astype(complex), tol, {"max_imag_pt": float(np.max(np.abs(lhs.imag)))})


def check_al_discriminant_relation(a: float, m: float, E_samples, beta: float = 0.4,
                                   ode_tol: float = DEFAULT_ODE_TOL, tol: float = RELATION_TOL,
                                   margin: float = EDGE_MARGIN) -> RelationReport:
    """Discriminant of the PT image of the ``a = b`` AL potential at ``m1`` against AL at ``m2``.

    ``Delta_PT(E, m1) = Delta(scale^-1 (E + offset), m2)`` with the energy map of
    :func:`check_al_pt_relation`; the AL discriminant is taken over its
    fundamental period ``K(m2)``.
    """
    samples = np.asarray(E_samples, dtype=float)
    m1, m2 = al_duality_moduli(m)
    pt = PotentialSpec.pt(PotentialSpec.assoc_lame(a, a, m1), beta)
    _check_margin(samples, _catalog_energies(pt), margin)
    scale, offset = _al_pt_map(a, m)
    lhs = _discriminant_values(pt, samples, ode_tol)
    rhs = _discriminant_values(PotentialSpec.assoc_lame(a, a, m2), (samples + offset) / scale, ode_tol)
    return RelationReport("assoc_lame_pt_discriminant",
                          {"a": a, "m": m, "m1": m1, "m2": m2, "beta": beta, "samples": samples.size},
                          lhs, rhs.astype(complex), tol, {"max_imag_pt": float(np.max(np.abs(lhs.imag)))})


def check_pt_dispersion(m: float, E_samples, beta: float = 0.4, ode_tol: float = DEFAULT_ODE_TOL,
                        tol: float = RELATION_TOL) -> RelationReport:
    """Numeric Bloch phase of the PT image of ``a = 1`` Lame against the theta-function phase.

    Both sides are folded to ``[0, pi]`` modulo reciprocal-lattice
    translations. Energies are measured from the ground edge.
    """
    samples = np.asarray(E_samples, dtype=float)
    pt = PotentialSpec.pt(PotentialSpec.lame(1.0, m), beta, shift=1.0 + m)
    delta = _discriminant_values(pt, samples, ode_tol)
    numeric = np.real(np.arccos(delta.real / 2.0 + 0j))
    analytic = fold_bloch_phase(pt_lame_one_phase(pt, samples))
    return RelationReport("pt_dispersion", {"m": m, "beta": beta, "samples": samples.size},
                          numeric, analytic, tol, {"max_imag_delta": float(np.max(np.abs(delta.imag)))})


# -- numeric edge helper ----------------------------------------------------------------


def numeric_lame_edges(spec: PotentialSpec, count: int, window: tuple[float, float],
                       ode_tol: float = DEFAULT_ODE_TOL) -> np.ndarray:
    """Lowest ``count`` open-gap edges from the Floquet solver.

    Degenerate pairs (closed gaps, which a finite-gap potential has above its
    last open gap) are dropped.

    Raises
    ------
    ContractError
        If fewer than ``count`` open-gap edges lie in ``window``.
    """
    edges = [e.energy for e in find_band_edges(spec, *window, ode_tol=ode_tol, with_nodes=False)
             if not e.degenerate]
    if len(edges) < count:
        raise ContractError(f"found {len(edges)} edges in {window}, expected {count}")
    return np.array(sorted(edges)[:count])

"""Numerical Floquet analysis: monodromy, Hill discriminant, band edges and dispersion.

Everything here is independent of the closed-form catalogs and serves as
their oracle. The Schroedinger equation ``-psi'' + V psi = E psi`` is
integrated over one period with an adaptive DOP853 pair; energies are
batched so that a scan costs little more than a single solve.
"""

from __future__ import annotations

import os
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.special import ellipkinc

from ._rk import propagate
from .elliptic import complete_k, complete_k_prime, jacobi_zeta
from .errors import ContractError, DomainError, IntegrationError, SingularityError, UnsupportedError
from .potentials.catalog import count_sign_changes
from .potentials.spec import LAME, PT, PotentialSpec

__all__ = [
    "PERIODIC",
    "ANTIPERIODIC",
    "DEFAULT_ODE_TOL",
    "DEFAULT_EDGE_TOL",
    "DEFAULT_SCAN_POINTS",
    "DEGENERACY_TOL",
    "TANGENCY_WARN_TOL",
    "PeriodicPotential",
    "MonodromyResult",
    "NumericBandEdge",
    "ScanPoint",
    "DispersionResult",
    "TangencyWarning",
    "monodromy",
    "monodromy_batch",
    "discriminant_scan",
    "find_band_edges",
    "count_nodes",
    "dispersion",
    "fold_bloch_phase",
    "pt_lame_one_phase",
    "energy_window",
    "Gap",
    "open_gaps",
]

PERIODIC = "periodic"
ANTIPERIODIC = "antiperiodic"
DEFAULT_ODE_TOL = 1e-10
DEFAULT_EDGE_TOL = 1e-10
DEFAULT_SCAN_POINTS = 400
DEGENERACY_TOL = 1e-6
TANGENCY_WARN_TOL = 1e-4
EDGE_CHECK_TOL = 1e-6
IMAG_TOL = 1e-6
GAP_DELTA_TOL = 1e-8
EVEN_TOL = 1e-6
COINCIDENCE_TOL = 1e-7
COEXIST_TOL = 1e-6
COEXIST_FALLBACK_TOL = 1e-3
_CHUNK = 128
_REFINE_MAX_ITER = 100
_GOLDEN = 0.5 * (np.sqrt(5.0) - 1.0)
_NODE_START = 0.1234


class TangencyWarning(UserWarning):
    """``|Delta|`` comes within ``TANGENCY_WARN_TOL`` of 2 without touching it.

    Attributes
    ----------
    energy : float
    edge_type : str
    excess : float
        ``2 - max|Delta|`` near ``energy``.
    """

    def __init__(self, energy: float, edge_type: str, excess: float):
        self.energy = energy
        self.edge_type = edge_type
        self.excess = excess
        super().__init__(f"near-tangency of {edge_type} type at E={energy:.12g}: "
                         f"|Delta| misses 2 by {excess:.3g}")


@dataclass(frozen=True)
class PeriodicPotential:
    """Any periodic potential given as a vectorized callable.

    Duck-types the parts of :class:`PotentialSpec` used here, so partner
    potentials and other handles can be analysed directly.
    """

    func: Callable
    length: float
    label: str = "handle"

    def values(self, x):
        return self.func(np.asarray(x, dtype=float))

    def period(self) -> float:
        return self.length

    @property
    def is_complex(self) -> bool:
        return np.iscomplexobj(self.values(np.array([0.1234 * self.length])))


@dataclass(frozen=True)
class MonodromyResult:
    """One-period transfer matrix of ``(psi, psi')``.

    Column ``j`` holds the solution started from the ``j``-th unit vector at
    ``x0``.
    """

    matrix: np.ndarray
    energy: float
    period: float
    x0: float
    steps: int

    @property
    def discriminant(self) -> complex:
        return complex(self.matrix[0, 0] + self.matrix[1, 1])

    @property
    def det(self) -> complex:
        return complex(np.linalg.det(self.matrix))


@dataclass(frozen=True)
class ScanPoint:
    energy: float
    discriminant: complex
    error: str | None = None


@dataclass(frozen=True)
class NumericBandEdge:
    """Energy where ``Delta = +2`` (periodic) or ``Delta = -2`` (antiperiodic).

    A degenerate edge marks a zero-width gap; such edges are reported twice
    (once per coinciding edge).
    """

    energy: float
    edge_type: str
    degenerate: bool
    nodes: int | None
    discriminant: complex

    @property
    def periodicity(self) -> str:
        """Catalog label: ``"L"`` for periodic, ``"2L"`` for antiperiodic."""
        return "L" if self.edge_type == PERIODIC else "2L"


@dataclass(frozen=True)
class Gap:
    """Open spectral gap; ``upper`` is ``None`` for the gap below the ground edge."""

    lower: float | None
    upper: float
    edge_type: str

    @property
    def width(self) -> float:
        return np.inf if self.lower is None else self.upper - self.lower


@dataclass(frozen=True)
class DispersionResult:
    """Bloch momentum ``k = arccos(Delta/2)/L`` on the principal branch."""

    energies: np.ndarray
    discriminant: np.ndarray
    k: np.ndarray
    period: float

    @property
    def in_gap(self) -> np.ndarray:
        # Testing Delta rather than Im k: near an edge Im k ~ sqrt(|Delta| - 2)
        # magnifies integration noise.
        return np.abs(np.real(self.discriminant)) > 2.0 + GAP_DELTA_TOL


def _is_complex(spec) -> bool:
    return bool(spec.is_complex)


def _thread_cap() -> int:
    env = os.environ.get("LAME_BANDS_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ContractError(f"LAME_BANDS_THREADS must be an integer, got {env!r}") from None
    return min(4, os.cpu_count() or 1)


def _transfer(spec, energies: np.ndarray, x0: float, tol: float):
    n = energies.size
    state = np.zeros((2, 2, n))
    state[0, 0] = 1.0
    state[1, 1] = 1.0
    period = spec.period()
    out, _, steps = propagate(spec.values, energies, x0, x0 + period, state, tol)
    # out[i, j, e]: component i of solution j -> matrix[e, i, j]
    return np.moveaxis(out, -1, 0), steps


def _start_points(spec, x0: float | None):
    # Families are even (or PT-symmetric) about their translation point.
    base = float(getattr(spec, "translate", 0.0)) if x0 is None else float(x0)
    return base, base + spec.period() / 7.0


def monodromy_batch(spec, energies, ode_tol: float = DEFAULT_ODE_TOL,
                    x0: float | None = None) -> tuple[np.ndarray, float, int]:
    """Monodromy matrices for many energies sharing one adaptive step sequence.

    Returns
    -------
    matrices : ndarray, shape (n, 2, 2)
    x0 : float
        Start point actually used (shifted by ``L/7`` after a pole hit).
    steps : int
    """
    energies = np.atleast_1d(np.asarray(energies, dtype=float))
    first, retry = _start_points(spec, x0)
    try:
        mats, steps = _transfer(spec, energies, first, ode_tol)
        return mats, first, steps
    except (SingularityError, IntegrationError):
        mats, steps = _transfer(spec, energies, retry, ode_tol)
        return mats, retry, steps


def monodromy(spec, E: float, ode_tol: float = DEFAULT_ODE_TOL, x0: float | None = None) -> MonodromyResult:
    """Transfer matrix of ``(psi, psi')`` over one period at energy ``E``.

    Raises
    ------
    IntegrationError
        If the step size underflows (near a singularity) from both start points.
    """
    if not np.isfinite(E):
        raise DomainError(f"energy must be finite, got {E!r}")
    mats, start, steps = monodromy_batch(spec, [E], ode_tol, x0)
    mat = mats[0] if _is_complex(spec) else mats[0].real
    return MonodromyResult(mat, float(E), spec.period(), start, steps)


def _matrices(spec, energies: np.ndarray, ode_tol: float) -> np.ndarray:
    """Monodromy matrices in fixed-size chunks so results do not depend on thread count."""
    energies = np.atleast_1d(np.asarray(energies, dtype=float))
    chunks = [energies[i:i + _CHUNK] for i in range(0, energies.size, _CHUNK)]

    def run(chunk):
        return monodromy_batch(spec, chunk, ode_tol)[0]

    workers = min(_thread_cap(), len(chunks))
    if workers <= 1:
        parts = [run(c) for c in chunks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run, chunks))
    return np.concatenate(parts) if parts else np.zeros((0, 2, 2))


def _discriminants(spec, energies: np.ndarray, ode_tol: float) -> np.ndarray:
    mats = _matrices(spec, energies, ode_tol)
    return mats[:, 0, 0] + mats[:, 1, 1]


def discriminant_scan(spec, E_min: float, E_max: float, n_points: int = DEFAULT_SCAN_POINTS,
                      ode_tol: float = DEFAULT_ODE_TOL) -> list[ScanPoint]:
    """``Delta(E)`` on a uniform grid including both endpoints.

    A chunk whose integration fails is retried point by point, and points
    that still fail carry the error message and a NaN discriminant.
    """
    if not E_min < E_max:
        raise ContractError("E_min must be below E_max")
    if n_points < 2:
        raise ContractError("n_points must be at least 2")
    energies = np.linspace(E_min, E_max, int(n_points))
    try:
        deltas = _discriminants(spec, energies, ode_tol)
        return [ScanPoint(float(e), complex(d)) for e, d in zip(energies, deltas)]
    except (SingularityError, IntegrationError):
        pass
    out = []
    for e in energies:
        try:
            out.append(ScanPoint(float(e), monodromy(spec, e, ode_tol).discriminant))
        except (SingularityError, IntegrationError) as exc:
            out.append(ScanPoint(float(e), complex(np.nan, np.nan), str(exc)))
    return out


def _golden_max(func, lo: np.ndarray, hi: np.ndarray, xtol: float):
    """Vectorized golden-section maximization on independent intervals."""
    a, b = np.array(lo, dtype=float), np.array(hi, dtype=float)
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = func(c), func(d)
    while np.max(b - a) > xtol:
        left = fc > fd  # the maximum lies in [a, d]
        a, b = np.where(left, a, c), np.where(left, d, b)
        new = np.where(left, b - _GOLDEN * (b - a), a + _GOLDEN * (b - a))
        fnew = func(new)
        c, d = np.where(left, new, d), np.where(left, c, new)
        fc, fd = np.where(left, fnew, fd), np.where(left, fc, fnew)
    best_c = fc >= fd
    return np.where(best_c, c, d), np.where(best_c, fc, fd)


def _illinois(func, lo, hi, flo, fhi, xtol: float) -> np.ndarray:
    """Vectorized Illinois false-position refinement of sign-change brackets.

    ``func(e, idx)`` evaluates the target at energies ``e`` for the brackets
    ``idx``; only unconverged brackets are evaluated.
    """
    lo, hi, flo, fhi = (np.array(v, dtype=float) for v in (lo, hi, flo, fhi))
    root = 0.5 * (lo + hi)
    active = np.ones(lo.size, dtype=bool)
    side = np.zeros(lo.size, dtype=int)
    for _ in range(_REFINE_MAX_ITER):
        idx = np.flatnonzero(active)
        if idx.size == 0:
            break
        width = hi[idx] - lo[idx]
        denom = fhi[idx] - flo[idx]
        with np.errstate(divide="ignore", invalid="ignore"):
            guess = lo[idx] - flo[idx] * width / denom
        bad = ~((guess > lo[idx]) & (guess < hi[idx]))
        guess[bad] = 0.5 * (lo[idx] + hi[idx])[bad]
        fg = func(guess, idx)
        step = np.abs(guess - root[idx])
        root[idx] = guess
        same = np.sign(fg) == np.sign(flo[idx])
        # Illinois: halve the stale endpoint value when the same side moves twice.
        lo_i, hi_i = idx[same], idx[~same]
        fhi[lo_i] = np.where(side[lo_i] == -1, 0.5 * fhi[lo_i], fhi[lo_i])
        flo[hi_i] = np.where(side[hi_i] == 1, 0.5 * flo[hi_i], flo[hi_i])
        lo[lo_i], flo[lo_i] = guess[same], fg[same]
        hi[hi_i], fhi[hi_i] = guess[~same], fg[~same]
        side[lo_i], side[hi_i] = -1, 1
        done = (fg == 0.0) | (hi[idx] - lo[idx] < xtol) | (step < 0.25 * xtol)
        active[idx[done]] = False
    return root


def _sign_brackets(pts: np.ndarray, f: np.ndarray):
    """``(lo, hi, f_lo, f_hi)`` for sign changes, and grid points where ``f`` is exactly zero."""
    change = np.flatnonzero(np.sign(f[:-1]) * np.sign(f[1:]) < 0)
    brackets = [(pts[j], pts[j + 1], f[j], f[j + 1]) for j in change]
    return brackets, list(pts[f == 0.0])


def _edge_type(sign: float) -> str:
    return PERIODIC if sign > 0 else ANTIPERIODIC


def _is_even(mats: np.ndarray) -> bool:
    """``M11 = M22`` on the whole scan, true for potentials even about the start point."""
    scale = np.abs(mats[:, 0, 0]) + np.abs(mats[:, 1, 1]) + 1.0
    return bool(np.all(np.abs(mats[:, 0, 0] - mats[:, 1, 1]) < EVEN_TOL * scale))


def _edges_even(spec, energies, mats, ode_tol: float, edge_tol: float):
    """Edges of an even potential as simple roots of ``M12`` and ``M21``.

    With ``M11 = M22`` and ``det M = 1``, ``Delta = +-2`` holds exactly when
    ``M12 M21 = 0``. Odd edge states are roots of ``M12`` and even ones of
    ``M21``; both are simple roots even where the gap is narrow and
    ``Delta -+ 2`` is flat. A coinciding pair of roots is a zero-width gap.
    """
    brackets, exact = [], []
    for comp in ((0, 1), (1, 0)):
        b, z = _sign_brackets(energies, np.real(mats[:, comp[0], comp[1]]))
        brackets += [(comp,) + t for t in b]
        exact += [(comp, e) for e in z]
    roots = [(c, e) for c, e in exact]
    if brackets:
        rows = np.array([c[0] for c, *_ in brackets])
        cols = np.array([c[1] for c, *_ in brackets])

        def offdiag(e, idx):
            return np.real(_matrices(spec, e, ode_tol)[np.arange(idx.size), rows[idx], cols[idx]])

        lo, hi, flo, fhi = (np.array([b[k] for b in brackets]) for k in (1, 2, 3, 4))
        refined = _illinois(offdiag, lo, hi, flo, fhi, edge_tol)
        roots += [(b[0], float(r)) for b, r in zip(brackets, refined)]
    if not roots:
        return []
    roots.sort(key=lambda t: t[1])
    energies_out = np.array([r[1] for r in roots])
    signs = np.sign(np.real(_discriminants(spec, energies_out, ode_tol)))
    found, i = [], 0
    while i < len(roots):
        if (i + 1 < len(roots) and roots[i][0] != roots[i + 1][0]
                and roots[i + 1][1] - roots[i][1] < COINCIDENCE_TOL and signs[i] == signs[i + 1]):
            e = 0.5 * (roots[i][1] + roots[i + 1][1])
            found += [(signs[i], e, True), (signs[i], e, True)]
            i += 2
        else:
            found.append((signs[i], roots[i][1], False))
            i += 1
    return found


def _coexistence(spec, sign: float, e_star: float, lo: float, hi: float, ode_tol: float, edge_tol: float):
    """Energy of a zero-width gap near ``e_star``, or ``None`` if the gap is open.

    At coexistence ``M = sign I``. The root of ``Re M12`` near the extremum
    is located and the whole matrix is checked there.
    """
    def m12(e, idx=None):
        return np.real(_matrices(spec, e, ode_tol)[:, 0, 1])

    probe = np.array([lo, e_star, hi])
    vals = m12(probe)
    energy = e_star
    for a_, b_, fa, fb in ((lo, e_star, vals[0], vals[1]), (e_star, hi, vals[1], vals[2])):
        if fa * fb < 0:
            energy = float(_illinois(m12, [a_], [b_], [fa], [fb], edge_tol)[0])
            break
    mat = _matrices(spec, [energy], ode_tol)[0]
    tol = COEXIST_TOL if energy != e_star else COEXIST_FALLBACK_TOL
    return energy if np.max(np.abs(mat - sign * np.eye(2))) < tol else None


def _edges_general(spec, energies, delta, ode_tol: float, edge_tol: float):
    """Edges as roots of ``Delta -+ 2`` with extremum analysis for hidden and touching roots."""

    def disc(e):
        return np.real(_discriminants(spec, e, ode_tol))

    grid_step = energies[1] - energies[0]
    interior = np.arange(1, delta.size - 1)
    is_max = (delta[interior] >= delta[interior - 1]) & (delta[interior] >= delta[interior + 1])
    is_min = (delta[interior] <= delta[interior - 1]) & (delta[interior] <= delta[interior + 1])
    candidates = [(sign, i) for sign, mask in ((1.0, is_max), (-1.0, is_min))
                  for i in interior[mask] if sign * delta[i] > 1.0]

    extra_points = {1.0: [], -1.0: []}
    found, excluded = [], {1.0: [], -1.0: []}
    if candidates:
        signs = np.array([c[0] for c in candidates])
        centres = energies[[c[1] for c in candidates]]
        lo = np.maximum(centres - grid_step, energies[0])
        hi = np.minimum(centres + grid_step, energies[-1])
        loc, peak = _golden_max(lambda e: signs * disc(e), lo, hi, xtol=max(edge_tol, 1e-9))
        for sign, e_star, val, a_, b_ in zip(signs, loc, peak, lo, hi):
            excess = val - 2.0
            if abs(excess) < DEGENERACY_TOL:
                energy = _coexistence(spec, sign, e_star, a_, b_, ode_tol, edge_tol)
                if energy is not None:
                    found += [(sign, energy, True), (sign, energy, True)]
                    excluded[sign].append((a_, b_))
                    continue
            if excess > 0.0:
                extra_points[sign].append((e_star, sign * val))
            elif excess > -TANGENCY_WARN_TOL:
                warnings.warn(TangencyWarning(float(e_star), _edge_type(sign), float(-excess)),
                              stacklevel=3)

    brackets, exact = [], []
    for sign in (1.0, -1.0):
        pts = np.concatenate([energies, [p[0] for p in extra_points[sign]]])
        vals = np.concatenate([delta, [p[1] for p in extra_points[sign]]])
        order = np.argsort(pts, kind="stable")
        pts, f = pts[order], vals[order] - 2.0 * sign
        # Grid points inside a zero-width gap carry only noise in their sign.
        for a_, b_ in excluded[sign]:
            keep = (pts <= a_) | (pts >= b_)
            pts, f = pts[keep], f[keep]
        b, z = _sign_brackets(pts, f)
        brackets += [(sign,) + t for t in b]
        exact += [(sign, e, False) for e in z]
    found += exact
    if brackets:
        signs = np.array([b[0] for b in brackets])
        lo, hi, flo, fhi = (np.array([b[k] for b in brackets]) for k in (1, 2, 3, 4))
        roots = _illinois(lambda e, idx: disc(e) - 2.0 * signs[idx], lo, hi, flo, fhi, edge_tol)
        found += [(s, float(r), False) for s, r in zip(signs, roots)]
    return found


def find_band_edges(spec, E_min: float, E_max: float, edge_tol: float = DEFAULT_EDGE_TOL,
                    n_points: int = DEFAULT_SCAN_POINTS, ode_tol: float = DEFAULT_ODE_TOL,
                    with_nodes: bool = True) -> list[NumericBandEdge]:
    """All solutions of ``Delta(E) = +-2`` in ``[E_min, E_max]``, sorted.

    For potentials even about the start point every edge is a simple root
    of an off-diagonal monodromy entry, and those roots are refined
    directly. Otherwise sign changes of ``Delta -+ 2`` are refined and
    every local extremum of ``Delta`` near ``+-2`` is located by
    golden-section search: one within ``DEGENERACY_TOL`` of ``+-2`` where
    the monodromy equals ``+-I`` is a zero-width gap, one overshooting
    between grid points adds the two hidden roots, and one falling short by
    less than ``TANGENCY_WARN_TOL`` emits a :class:`TangencyWarning`.

    Degenerate (zero-width) gaps are reported as two coinciding edges with
    ``degenerate=True``. Note that above its last gap a finite-gap
    potential has such a pair at every extremum of ``Delta``.

    Raises
    ------
    UnsupportedError
        If ``Delta`` is not real on the scan (broken PT symmetry); edges are
        not classified in that regime.
    """
    if not E_min < E_max or n_points < 3:
        raise ContractError("need E_min < E_max and at least 3 scan points")
    energies = np.linspace(E_min, E_max, int(n_points))
    mats = _matrices(spec, energies, ode_tol)
    raw = mats[:, 0, 0] + mats[:, 1, 1]
    if not np.all(np.isfinite(raw)):
        raise IntegrationError("discriminant scan produced non-finite values", float("nan"))
    imag = float(np.max(np.abs(np.imag(raw))))
    if imag > IMAG_TOL:
        raise UnsupportedError(f"discriminant is not real (max |Im| = {imag:.3g}); "
                               "edges are not classified for broken PT symmetry")
    if _is_even(mats):
        found = _edges_even(spec, energies, mats, ode_tol, edge_tol)
    else:
        found = _edges_general(spec, energies, np.real(raw), ode_tol, edge_tol)

    found.sort(key=lambda t: t[1])
    energies_out = np.array([t[1] for t in found])
    final = _discriminants(spec, energies_out, ode_tol) if found else np.array([], dtype=complex)
    nodes = [None] * len(found)
    if with_nodes and found and not _is_complex(spec):
        nodes = _batch_nodes(spec, energies_out, [t[0] for t in found], ode_tol)
    return [NumericBandEdge(float(e), _edge_type(s), bool(deg), n, complex(d))
            for (s, e, deg), n, d in zip(found, nodes, final)]


def _eigenvectors(mats: np.ndarray, signs) -> np.ndarray:
    """Initial data of the (anti)periodic solution: a null vector of ``M - sign I``."""
    vecs = []
    for mat, s in zip(mats, signs):
        a = mat - s * np.eye(2)
        v1 = np.array([a[0, 1], -a[0, 0]])
        v2 = np.array([a[1, 1], -a[1, 0]])
        v = v1 if np.linalg.norm(v1) >= np.linalg.norm(v2) else v2
        if np.linalg.norm(v) < 1e-12:
            v = np.array([1.0, 0.0])
        vecs.append(v / np.linalg.norm(v))
    return np.array(vecs).T


def _batch_nodes(spec, energies: np.ndarray, signs, ode_tol: float) -> list[int]:
    period = spec.period()
    xs = _NODE_START * period
    mats, start, _ = monodromy_batch(spec, energies, ode_tol, x0=xs)
    init = _eigenvectors(mats.real, signs)
    _, traj, _ = propagate(spec.values, energies, start, start + period, init, ode_tol,
                           max_step=period / 512.0, record=True)
    psi = np.array([s[0] for s in traj.state])
    # The endpoint repeats the start up to sign; drop it so zeros are counted on [x_s, x_s + L).
    return [count_sign_changes(psi[:-1, j]) for j in range(energies.size)]


def count_nodes(spec, E: float, edge_type: str, ode_tol: float = DEFAULT_ODE_TOL,
                check_tol: float = EDGE_CHECK_TOL) -> int:
    """Zeros of the (anti)periodic eigensolution in one period.

    Counting starts at an off-symmetry point so a zero is never placed on the
    window boundary; for antiperiodic solutions the sign flip across the
    window is not a node.

    Raises
    ------
    ContractError
        If ``E`` is not an edge of the requested type or the potential is complex.
    """
    if edge_type not in (PERIODIC, ANTIPERIODIC):
        raise ContractError(f"edge_type must be {PERIODIC!r} or {ANTIPERIODIC!r}")
    if _is_complex(spec):
        raise ContractError("nodes are undefined for complex potentials")
    sign = 1.0 if edge_type == PERIODIC else -1.0
    delta = monodromy(spec, E, ode_tol).discriminant
    if abs(delta - 2.0 * sign) > check_tol:
        raise ContractError(f"E={E} is not a {edge_type} edge: Delta={delta.real:.10g}")
    return _batch_nodes(spec, np.array([float(E)]), [sign], ode_tol)[0]


def dispersion(spec, energies, ode_tol: float = DEFAULT_ODE_TOL) -> DispersionResult:
    """Bloch momentum from ``cos(kL) = Delta/2``, principal branch ``Re(kL)`` in ``[0, pi]``.

    In gaps ``k`` acquires an imaginary part; :attr:`DispersionResult.in_gap`
    flags those energies.
    """
    energies = np.atleast_1d(np.asarray(energies, dtype=float))
    delta = _discriminants(spec, energies, ode_tol)
    if not _is_complex(spec):
        delta = np.real(delta).astype(complex)
    period = spec.period()
    k = np.arccos(delta / 2.0) / period
    # numpy's complex arccos has Re in [0, pi]; pick Im >= 0 for a single convention.
    k = np.where(np.imag(k) < 0, np.conj(k), k)
    return DispersionResult(energies, delta, k, period)


def fold_bloch_phase(theta):
    """Map a Bloch phase ``kL`` to ``[0, pi]`` modulo ``2 pi`` and sign."""
    t = np.mod(np.real(theta), 2.0 * np.pi)
    return np.where(t > np.pi, 2.0 * np.pi - t, t)


def pt_lame_one_phase(spec: PotentialSpec, E):
    """Analytic Bloch phase ``kL`` of the PT image of the ``a = 1`` Lame potential.

    With the ground edge moved to zero, an energy ``e`` in a band fixes
    ``alpha`` through ``e = m sn^2(alpha)``. Shifting ``x`` by the period
    ``2K'`` moves the argument of the theta-function solution by ``2iK'``,
    which multiplies it by ``exp(-i(pi alpha/K + 2K' Z(alpha)))``. The phase
    ``pi alpha/K + 2K' Z(alpha)`` is real in both bands ``[0, m]`` and
    ``[1, inf)``.

    Raises
    ------
    UnsupportedError
        If ``spec`` is not a PT image of the ``a = 1`` Lame potential.
    DomainError
        If an energy lies in the gap or below the ground edge.
    """
    inner = spec.inner
    if spec.family != PT or inner is None or inner.family != LAME or inner.a != 1.0:
        raise UnsupportedError("analytic dispersion is only known for the PT image of a = 1 Lame")
    m = spec.m
    # Spec energies are measured against -2m sn^2 + shift; the ground edge sits at shift - 1 - m.
    e = np.atleast_1d(np.asarray(E, dtype=float)) - (spec.shift - inner.shift - 1.0 - m)
    if np.any((e < 0.0) | ((e > m) & (e < 1.0))):
        raise DomainError("analytic phase is defined on the bands [0, m] and [1, inf) only")
    k, kp = complete_k(m), complete_k_prime(m)
    lower = e <= m
    alpha = np.where(lower,
                     ellipkinc(np.arcsin(np.sqrt(np.clip(e / m, 0.0, 1.0))), m) + 0j,
                     ellipkinc(np.arcsin(1.0 / np.sqrt(np.maximum(e, 1.0))), m) + 1j * kp)
    phase = np.pi * alpha / k + 2.0 * kp * jacobi_zeta(alpha, m)
    return phase if np.ndim(E) else phase[0]


def energy_window(spec, pad: float = 1.0) -> tuple[float, float]:
    """Energy range that contains every band edge of a finite-gap potential.

    Uses the closed-form catalog when one exists, else the range of
    ``Re V`` widened by the largest strength so the top gap is covered.
    """
    from .errors import CatalogMissError
    from .potentials.catalog import analytic_band_edges

    try:
        edges = [e.energy for e in analytic_band_edges(spec)]
        return min(edges) - pad, max(edges) + pad
    except (CatalogMissError, UnsupportedError, ContractError):
        pass
    x = spec.period() * (np.arange(2048) + 0.5) / 2048
    v = np.real(spec.values(x))
    lo, hi = float(np.min(v)), float(np.max(v))
    return lo - pad, hi + max(hi - lo, 1.0) + pad


def open_gaps(edges: list[NumericBandEdge], include_semi_infinite: bool = True) -> list[Gap]:
    """Open gaps between sorted edges found from below the ground edge.

    Degenerate pairs are closed gaps and are skipped. A gap whose upper edge
    lies beyond the scanned range is not reported. Each gap of a real even
    potential has two edges of the same type; a mixed gap reports
    ``"mixed"``.
    """
    open_edges = sorted((e for e in edges if not e.degenerate), key=lambda e: e.energy)
    gaps = []
    if include_semi_infinite and open_edges:
        gaps.append(Gap(None, open_edges[0].energy, open_edges[0].edge_type))
    for i in range(1, len(open_edges) - 1, 2):
        lo, hi = open_edges[i], open_edges[i + 1]
        kind = lo.edge_type if lo.edge_type == hi.edge_type else "mixed"
        gaps.append(Gap(lo.energy, hi.energy, kind))
    return gaps

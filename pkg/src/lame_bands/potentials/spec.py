"""Algebraic description, JSON form and point evaluation of the potential families."""

from __future__ import annotations

import json
from dataclasses import dataclass, fields
from typing import Any

import numpy as np

from ..elliptic import (
    DEFAULT_POLE_GUARD,
    complete_k,
    jacobi,
    jacobi_complex,
    landen_descent,
)
from ..errors import ContractError, UnsupportedError

__all__ = [
    "FAMILIES",
    "LAME",
    "ASSOC_LAME",
    "SUPERPOSED_LAME",
    "SUPERPOSED_ASSOC_LAME",
    "SUSY_PARTNER",
    "PT",
    "DOUBLE_SINE_GORDON",
    "PotentialSpec",
    "SpecError",
    "evaluate",
]

LAME = "lame"
ASSOC_LAME = "assoc_lame"
SUPERPOSED_LAME = "superposed_lame"
SUPERPOSED_ASSOC_LAME = "superposed_assoc_lame"
SUSY_PARTNER = "susy_partner"
PT = "pt"
DOUBLE_SINE_GORDON = "double_sine_gordon"

FAMILIES = (
    LAME,
    ASSOC_LAME,
    SUPERPOSED_LAME,
    SUPERPOSED_ASSOC_LAME,
    SUSY_PARTNER,
    PT,
    DOUBLE_SINE_GORDON,
)

_WRAPPERS = (SUSY_PARTNER, PT)
_SUPERPOSED = (SUPERPOSED_LAME, SUPERPOSED_ASSOC_LAME)
_TWO_STRENGTH = (ASSOC_LAME, SUPERPOSED_ASSOC_LAME)


class SpecError(ContractError):
    """Invalid potential description; ``field`` names the offending key."""

    def __init__(self, message: str, field: str | None = None):
        self.field = field
        super().__init__(f"{field}: {message}" if field else message)


@dataclass(frozen=True)
class PotentialSpec:
    """One member of a potential family.

    The potential is ``V(x) = base(x - translate) + shift`` where ``base`` is
    the family's defining formula:

    ``lame``
        ``a(a+1) m sn^2(x)``
    ``assoc_lame``
        ``a(a+1) m sn^2(x) + b(b+1) m cn^2(x)/dn^2(x)``
    ``superposed_lame``
        ``a(a+1) m sum_j sn^2(x_j)`` with ``x_j = x + 2(j-1)K/p``
    ``superposed_assoc_lame``
        the above plus ``b(b+1) m sum_j sn^2(x_j + K)``
    ``susy_partner``
        ``W^2 + W'`` with ``W = -psi0'/psi0`` from the ground state of ``inner``
    ``pt``
        ``-inner(ix + beta)``, the anti-isospectral image of ``inner``
    ``double_sine_gordon``
        ``b^2 sin^2(2x) + 2ab cos(2x)``; ``b`` is the field strength

    Wrapper families (``susy_partner``, ``pt``) take their modulus from
    ``inner``.
    """

    family: str
    m: float = 0.0
    a: float = 0.0
    b: float = 0.0
    p: int | None = None
    beta: float | None = None
    shift: float = 0.0
    translate: float = 0.0
    inner: "PotentialSpec | None" = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise SpecError(f"unknown family {self.family!r}; expected one of {FAMILIES}", "family")
        for name in ("m", "a", "b", "shift", "translate"):
            value = getattr(self, name)
            if not isinstance(value, (int, float, np.floating, np.integer)) or not np.isfinite(value):
                raise SpecError(f"must be a finite number, got {value!r}", name)
            object.__setattr__(self, name, float(value))
        if self.family in _WRAPPERS:
            if not isinstance(self.inner, PotentialSpec):
                raise SpecError("required for wrapper families", "inner")
            object.__setattr__(self, "m", self.inner.m)
        elif self.inner is not None:
            raise SpecError(f"not allowed for family {self.family!r}", "inner")
        if self.family == PT:
            if self.beta is None or float(self.beta) == 0.0:
                raise SpecError("PT offset must be a nonzero real number", "beta")
            object.__setattr__(self, "beta", float(self.beta))
        elif self.beta is not None:
            raise SpecError(f"not allowed for family {self.family!r}", "beta")
        if self.family in _SUPERPOSED:
            if self.p is None or int(self.p) != self.p or self.p < 2:
                raise SpecError("superposition order must be an integer >= 2", "p")
            object.__setattr__(self, "p", int(self.p))
        elif self.p is not None:
            raise SpecError(f"not allowed for family {self.family!r}", "p")
        if self.family != DOUBLE_SINE_GORDON and self.family not in _WRAPPERS:
            if not 0.0 <= self.m < 1.0:
                raise SpecError("elliptic parameter must satisfy 0 <= m < 1", "m")
        if self.family in _TWO_STRENGTH and self.a < self.b:
            raise SpecError("convention a >= b violated", "b")
        if self.family == PT and not 0.0 < self.m < 1.0:
            raise SpecError("PT families need 0 < m < 1", "m")

    # -- constructors -----------------------------------------------------------------
    @classmethod
    def lame(cls, a: float, m: float, **kw) -> "PotentialSpec":
        return cls(LAME, m=m, a=a, **kw)

    @classmethod
    def assoc_lame(cls, a: float, b: float, m: float, **kw) -> "PotentialSpec":
        return cls(ASSOC_LAME, m=m, a=a, b=b, **kw)

    @classmethod
    def superposed_lame(cls, a: float, p: int, m: float, **kw) -> "PotentialSpec":
        return cls(SUPERPOSED_LAME, m=m, a=a, p=p, **kw)

    @classmethod
    def superposed_assoc_lame(cls, a: float, b: float, p: int, m: float, **kw) -> "PotentialSpec":
        return cls(SUPERPOSED_ASSOC_LAME, m=m, a=a, b=b, p=p, **kw)

    @classmethod
    def susy_partner(cls, inner: "PotentialSpec", **kw) -> "PotentialSpec":
        return cls(SUSY_PARTNER, inner=inner, **kw)

    @classmethod
    def pt(cls, inner: "PotentialSpec", beta: float, **kw) -> "PotentialSpec":
        return cls(PT, inner=inner, beta=beta, **kw)

    @classmethod
    def double_sine_gordon(cls, a: float, b: float, **kw) -> "PotentialSpec":
        return cls(DOUBLE_SINE_GORDON, a=a, b=b, **kw)

    # -- derived quantities -----------------------------------------------------------
    @property
    def p_strength(self) -> float:
        """``a(a+1)``."""
        return self.a * (self.a + 1.0)

    @property
    def q_strength(self) -> float:
        """``b(b+1)``."""
        return self.b * (self.b + 1.0)

    @property
    def is_complex(self) -> bool:
        """True when the potential takes complex values on the real line."""
        if self.family == PT:
            return True
        return self.inner is not None and self.inner.is_complex

    def with_shift(self, shift: float) -> "PotentialSpec":
        """Copy with a different energy shift."""
        return PotentialSpec(**{**self._field_values(), "shift": float(shift)})

    def _field_values(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    def period(self) -> float:
        """Fundamental period ``L`` of the potential on the real line."""
        fam = self.family
        if fam == DOUBLE_SINE_GORDON:
            return float(np.pi)
        if fam == SUSY_PARTNER:
            return self.inner.period()
        if fam == PT:
            return self.inner.imaginary_period()
        k = complete_k(self.m)
        if fam == LAME:
            return 2.0 * k
        if fam == ASSOC_LAME:
            return k if self.a == self.b else 2.0 * k
        # Superpositions: even p collapses the b-term onto the a-term.
        halve = fam == SUPERPOSED_ASSOC_LAME and self.a == self.b and self.p % 2 == 1
        return (k if halve else 2.0 * k) / self.p

    def imaginary_period(self) -> float:
        """Period of ``x -> V(ix + beta)``, the period of the PT image."""
        if self.family in (LAME, ASSOC_LAME):
            if not 0.0 < self.m < 1.0:
                raise UnsupportedError("imaginary period needs 0 < m < 1")
            return 2.0 * complete_k(1.0 - self.m)
        if self.family == SUSY_PARTNER:
            return self.inner.imaginary_period()
        raise UnsupportedError(f"PT image of family {self.family!r} is not supported")

    def landen(self):
        """Landen descent for superposed families."""
        if self.family not in _SUPERPOSED:
            raise UnsupportedError("Landen descent applies to superposed families only")
        return landen_descent(self.m, self.p)

    def reduced_spec(self) -> "PotentialSpec":
        """Single potential at the transformed modulus equivalent to a superposition.

        The superposed potential equals ``reduced(x/alpha)/alpha**2`` plus the
        constant :meth:`LandenDescent.energy_offset`. For even ``p`` the
        translated b-term is a permutation of the a-term, so the reduced
        potential is Lame with combined strength ``a(a+1) + b(b+1)``.
        """
        ld = self.landen()
        if self.family == SUPERPOSED_LAME:
            return PotentialSpec.lame(self.a, ld.m_tilde)
        if self.p % 2 == 0:
            strength = self.p_strength + self.q_strength
            return PotentialSpec.lame(0.5 * (-1.0 + np.sqrt(1.0 + 4.0 * strength)), ld.m_tilde)
        return PotentialSpec.assoc_lame(self.a, self.b, ld.m_tilde)

    def total_strength(self) -> float:
        """Strength multiplying the Landen energy offset."""
        return self.p_strength + (self.q_strength if self.family == SUPERPOSED_ASSOC_LAME else 0.0)

    # -- evaluation -------------------------------------------------------------------
    def values(self, x, pole_guard: float = DEFAULT_POLE_GUARD):
        """Potential at real ``x`` in its native dtype (float, or complex for PT)."""
        u = np.asarray(x, dtype=float) - self.translate
        if self.family == PT:
            z = 1j * u + self.beta
            return -self.inner.continuation(z, pole_guard) + self.shift
        return _base(self, u, pole_guard) + self.shift

    def continuation(self, z, pole_guard: float = DEFAULT_POLE_GUARD):
        """Analytic continuation of ``V`` to complex ``z`` (shift and translation included)."""
        u = np.asarray(z, dtype=complex) - self.translate
        if self.family == PT:
            return -self.inner.continuation(1j * u + self.beta, pole_guard) + self.shift
        return _base(self, u, pole_guard) + self.shift

    def __call__(self, x):
        return evaluate(self, x)

    # -- serialization ----------------------------------------------------------------
    def to_dict(self) -> dict[str, Any]:
        """JSON-ready dictionary; omits keys that do not apply to the family."""
        out: dict[str, Any] = {"family": self.family}
        if self.family not in _WRAPPERS:
            if self.family != DOUBLE_SINE_GORDON:
                out["m"] = self.m
            out["a"] = self.a
            if self.family in _TWO_STRENGTH or self.family == DOUBLE_SINE_GORDON:
                out["b"] = self.b
        if self.p is not None:
            out["p"] = self.p
        if self.beta is not None:
            out["beta"] = self.beta
        out["shift"] = self.shift
        out["translate"] = self.translate
        if self.inner is not None:
            out["inner"] = self.inner.to_dict()
        return out

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, data: dict[str, Any], *, parent_m: float | None = None) -> "PotentialSpec":
        """Strictly parse a dictionary; unknown keys raise :class:`SpecError`.

        A nested ``inner`` may omit ``m``, in which case it inherits the
        enclosing document's ``m``.
        """
        if not isinstance(data, dict):
            raise SpecError(f"expected a JSON object, got {type(data).__name__}")
        allowed = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - allowed)
        if unknown:
            raise SpecError(f"unknown field(s) {unknown}; allowed: {sorted(allowed)}", unknown[0])
        if "family" not in data:
            raise SpecError("missing required key", "family")
        kw = dict(data)
        inner = kw.pop("inner", None)
        if "m" not in kw and parent_m is not None and kw["family"] not in _WRAPPERS:
            kw["m"] = parent_m
        if inner is not None:
            try:
                kw["inner"] = cls.from_dict(inner, parent_m=kw.get("m", parent_m))
            except SpecError as exc:
                raise SpecError(str(exc), f"inner.{exc.field}" if exc.field else "inner") from None
        if kw["family"] in _WRAPPERS:
            kw.pop("m", None)
        for key in ("m", "a", "b", "shift", "translate", "beta"):
            if key in kw and kw[key] is not None and (
                    isinstance(kw[key], bool) or not isinstance(kw[key], (int, float))):
                raise SpecError(f"must be a number, got {kw[key]!r}", key)
        if "p" in kw and kw["p"] is not None and (isinstance(kw["p"], bool) or not isinstance(kw["p"], int)):
            raise SpecError(f"must be an integer, got {kw['p']!r}", "p")
        return cls(**kw)

    @classmethod
    def from_json(cls, text: str) -> "PotentialSpec":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SpecError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
        return cls.from_dict(data)


def _sncndn(u, m: float, pole_guard: float):
    if np.iscomplexobj(u):
        return jacobi_complex(u, m, pole_guard)
    return jacobi(u, m)


def _base(spec: PotentialSpec, u, pole_guard: float):
    fam, m = spec.family, spec.m
    if fam == LAME:
        sn, _, _ = _sncndn(u, m, pole_guard)
        return spec.p_strength * m * sn**2
    if fam == ASSOC_LAME:
        sn, cn, dn = _sncndn(u, m, pole_guard)
        return spec.p_strength * m * sn**2 + spec.q_strength * m * (cn / dn) ** 2
    if fam in _SUPERPOSED:
        k = complete_k(m)
        total = 0.0
        for j in range(spec.p):
            uj = u + 2.0 * j * k / spec.p
            total = total + spec.p_strength * m * _sncndn(uj, m, pole_guard).sn ** 2
            if fam == SUPERPOSED_ASSOC_LAME:
                total = total + spec.q_strength * m * _sncndn(uj + k, m, pole_guard).sn ** 2
        return total
    if fam == SUSY_PARTNER:
        from ..susy import partner_values

        return partner_values(spec.inner, u)
    if fam == DOUBLE_SINE_GORDON:
        return spec.b**2 * np.sin(2.0 * u) ** 2 + 2.0 * spec.a * spec.b * np.cos(2.0 * u)
    raise UnsupportedError(f"no base formula for family {fam!r}")


def evaluate(spec: PotentialSpec, x, pole_guard: float = DEFAULT_POLE_GUARD):
    """Potential at real ``x`` as complex values.

    Real families return zero imaginary parts. The value includes the spec's
    ``shift`` and ``translate``.
    """
    return np.asarray(spec.values(x, pole_guard), dtype=complex)[()]

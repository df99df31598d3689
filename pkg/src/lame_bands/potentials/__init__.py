"""Potential families, closed-form band-edge catalogs and Ince-equation analysis."""

from .catalog import (
    ANTIPERIODIC,
    PERIODIC,
    BandEdge,
    QesState,
    analytic_band_edges,
    expected_unusual_pairs,
    ground_state,
    oscillation_pattern,
    parabola_states,
)
from .ince import (
    InceCoefficients,
    critical_extrema_range,
    gap_bound,
    ince_coefficients,
    parabola_map,
)
from .spec import FAMILIES, PotentialSpec, SpecError, evaluate

__all__ = [
    "ANTIPERIODIC",
    "PERIODIC",
    "BandEdge",
    "QesState",
    "FAMILIES",
    "PotentialSpec",
    "SpecError",
    "InceCoefficients",
    "analytic_band_edges",
    "critical_extrema_range",
    "evaluate",
    "expected_unusual_pairs",
    "gap_bound",
    "ground_state",
    "ince_coefficients",
    "oscillation_pattern",
    "parabola_map",
    "parabola_states",
]

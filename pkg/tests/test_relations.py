import json

import numpy as np
import pytest

from lame_bands import floquet
from lame_bands.errors import ContractError
from lame_bands.potentials import PotentialSpec, analytic_band_edges
from lame_bands.relations import (
    RELATION_IDS,
    RelationReport,
    al_duality_moduli,
    check_al_discriminant_relation,
    check_al_duality,
    check_al_pt_relation,
    check_discriminant_relation,
    check_duality,
    check_midpoint_sum_rule,
    check_pt_dispersion,
    check_pt_relations,
    check_superposed_al_spectrum,
    check_superposed_spectrum,
    dual_wavefunction,
    map_superposed_spectrum,
    numeric_lame_edges,
    schrodinger_residual,
)


def delta(m):
    return np.sqrt(1.0 - m + m * m)


def lame_edges(a, m):
    window = (-0.5, a * (a + 1.0) + 0.5)
    return numeric_lame_edges(PotentialSpec.lame(a, m), 2 * a + 1, window)


def al_edges(a, m):
    return numeric_lame_edges(PotentialSpec.assoc_lame(a, a, m), 2 * a + 1, (-0.5, 8.0 * a * (a + 1) + 1.0))


def lame_two_raw(m):
    d = delta(m)
    return np.array([2 + 2 * m - 2 * d, 1 + m, 1 + 4 * m, 4 + m, 2 + 2 * m + 2 * d])


def pt_lame_two_raw(m):
    d = delta(m)
    shift = 2 + 2 * m + 2 * d
    return np.array([0.0, m - 2 + 2 * d, 1 - 2 * m + 2 * d, 1 + m + 2 * d, 4 * d]) - shift


class TestReport:
    def test_unknown_id(self):
        with pytest.raises(ContractError):
            RelationReport("made_up", {}, [1.0], [1.0])

    def test_shape_mismatch(self):
        with pytest.raises(ContractError):
            RelationReport("lame_duality", {}, [1.0, 2.0], [1.0])

    def test_serializes_complex_values(self):
        rep = RelationReport("pt_discriminant", {"a": 2}, np.array([1 + 1e-12j]), np.array([1.0 + 0j]), 1e-6)
        data = json.loads(json.dumps(rep.to_dict()))
        assert data["lhs"] == [[1.0, 1e-12]] and data["passed"] is True

    def test_pass_is_strict_inequality(self):
        assert not RelationReport("lame_duality", {}, [0.0], [0.5], 0.5).passed

    def test_ids_are_unique(self):
        assert len(set(RELATION_IDS)) == len(RELATION_IDS)


class TestLameDuality:
    @pytest.mark.parametrize("m", [0.1, 0.37, 0.8])
    def test_a1_closed_form(self, m):
        rep = check_duality(1, m, [m, 1.0, 1.0 + m], [1.0 - m, 1.0, 2.0 - m])
        assert rep.max_abs_error < 1e-15

    def test_a2_closed_form(self):
        rep = check_duality(2, 0.3, lame_two_raw(0.3), lame_two_raw(0.7))
        assert rep.max_abs_error < 1e-14

    @pytest.mark.parametrize("a", [2, 3])
    def test_numeric(self, a):
        rep = check_duality(a, 0.3, lame_edges(a, 0.3), lame_edges(a, 0.7))
        assert rep.passed and rep.max_abs_error < 1e-8

    @pytest.mark.parametrize("a", [1, 2, 3])
    def test_midpoint(self, a):
        rep = check_midpoint_sum_rule(a, lame_edges(a, 0.5))
        assert rep.passed
        assert rep.lhs[-1] == pytest.approx(a * (a + 1) / 2, abs=1e-8)

    def test_length_mismatch(self):
        with pytest.raises(ContractError):
            check_duality(2, 0.3, lame_two_raw(0.3)[:4], lame_two_raw(0.7))

    @pytest.mark.parametrize("m", [0.3, 0.6])
    def test_eigenfunction_map(self, m):
        a = 2
        spec = PotentialSpec.lame(a, m)
        x = np.linspace(0.05, 2 * spec.period(), 61)
        for edge in analytic_band_edges(PotentialSpec.lame(a, 1.0 - m)):
            psi = dual_wavefunction(edge.wavefunction, m)
            assert schrodinger_residual(psi, spec.values, a * (a + 1) - edge.energy, x) < 1e-7


class TestLanden:
    @pytest.mark.parametrize("p", [2, 3])
    @pytest.mark.parametrize("m", [0.4, 0.8])
    def test_superposed_lame(self, p, m):
        spec = PotentialSpec.superposed_lame(1, p, m)
        reduced = spec.reduced_spec()
        inner = numeric_lame_edges(reduced, 3, (-0.5, 2.5))
        mapped = map_superposed_spectrum(1, p, m, inner)
        direct = numeric_lame_edges(spec, 3, (mapped[0] - 1.0, mapped[-1] + 1.0))
        rep = check_superposed_spectrum(1, p, m, inner, direct)
        assert rep.passed and rep.max_abs_error < 1e-8

    def test_zero_modulus_limit(self):
        # Both sides reduce to free-particle values: a constant potential.
        spec = PotentialSpec.superposed_lame(1, 2, 0.0)
        assert np.ptp(spec(np.linspace(0.0, 3.0, 11))) == 0.0
        assert map_superposed_spectrum(1, 2, 0.0, [0.0]) == pytest.approx([0.0])

    def test_superposed_assoc_lame(self):
        # Near m = 1 so the descended modulus keeps the top gap resolvable.
        a, b, p, m = 2, 1, 3, 0.99
        spec = PotentialSpec.superposed_assoc_lame(a, b, p, m)
        reduced = spec.reduced_spec()
        inner = [e.energy for e in analytic_band_edges(reduced)]
        direct = numeric_lame_edges(spec, len(inner), floquet.energy_window(spec))
        rep = check_superposed_al_spectrum(a, b, p, m, inner, direct)
        assert rep.passed


class TestAssocLameDuality:
    def test_symmetric_point(self):
        m1, m2 = al_duality_moduli(0.5)
        assert m1 == pytest.approx(m2)

    @pytest.mark.parametrize("a, m", [(1, 0.36), (2, 0.5), (2, 0.36)])
    def test_numeric(self, a, m):
        m1, m2 = al_duality_moduli(m)
        rep = check_al_duality(a, m, al_edges(a, m1), al_edges(a, m2))
        assert rep.passed and rep.max_abs_error < 1e-8


class TestPtRelations:
    @pytest.mark.parametrize("m", [0.5, 0.8])
    def test_tables_in_closed_form(self, m):
        reflection, complementary = check_pt_relations(2, m, lame_two_raw(m), pt_lame_two_raw(m), lame_two_raw(1 - m) - 0.0)
        assert reflection.max_abs_error < 1e-14
        assert reflection.details["bands_exchange_gaps"]
        # E_j(1-m) - a(a+1) against the PT edges.
        assert complementary.max_abs_error < 1e-14

    @pytest.mark.parametrize("m", [0.2, 0.7])
    def test_a1_closed_form(self, m):
        pt = [-1.0 - m, -1.0, -m]
        (reflection, complementary) = check_pt_relations(1, m, [m, 1.0, 1.0 + m], pt, [1 - m, 1.0, 2 - m])
        assert reflection.passed and complementary.passed

    def test_numeric_pt_edges(self):
        m = 0.6
        pt = PotentialSpec.pt(PotentialSpec.lame(2, m), 0.4)
        pt_edges = numeric_lame_edges(pt, 5, (-6.5, 0.5))
        reports = check_pt_relations(2, m, lame_edges(2, m), pt_edges, lame_edges(2, 1 - m))
        assert all(r.passed for r in reports)

    def test_discriminant_relation(self):
        samples = np.linspace(-8.0, 2.0, 20) + 0.013
        rep = check_discriminant_relation(2, 0.6, samples)
        assert rep.passed and rep.details["max_imag_pt"] < 1e-8

    def test_discriminant_self_duality(self):
        rep = check_discriminant_relation(1, 0.5, np.linspace(-3.0, 1.0, 6) + 0.011)
        assert rep.passed

    def test_margin_enforced(self):
        with pytest.raises(ContractError):
            check_discriminant_relation(2, 0.6, [pt_lame_two_raw(0.6)[1] + 1e-4])

    def test_assoc_lame_pt(self):
        a, m = 1, 0.36
        m1, m2 = al_duality_moduli(m)
        pt = PotentialSpec.pt(PotentialSpec.assoc_lame(a, a, m1), 0.4)
        al = al_edges(a, m2)
        pt_edges = numeric_lame_edges(pt, 3, (-12.0, 2.0))
        assert check_al_pt_relation(a, m, pt_edges, al).passed
        rep = check_al_discriminant_relation(a, m, np.linspace(-8.0, 0.0, 9) + 0.017)
        assert rep.passed

    def test_pt_dispersion(self):
        m = 0.5
        samples = np.r_[np.linspace(0.05, 0.95, 5) * m, 1.0 + np.linspace(0.2, 5.0, 5)]
        rep = check_pt_dispersion(m, samples)
        assert rep.passed and rep.details["max_imag_delta"] < 1e-8

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad, solve_ivp

from lame_bands.elliptic import (
    complete_k,
    complete_k_prime,
    jacobi,
    jacobi_complex,
    jacobi_zeta,
    landen_descent,
    nome,
    theta_eta,
)
from lame_bands.errors import ConvergenceError, DomainError, SingularityError

# Frozen oracle values (mpmath at 30 digits).
K_HALF = 1.8540746773013719184
TWO_K_POINT_TWO = 3.3192471972210560129
SNCNDN_1_HALF = (0.80300182489564388764, 0.59597656767214067402, 0.82316100163159626945)
ZETA_08_06 = 0.18227172727852964373

moduli = st.floats(min_value=0.01, max_value=0.99)


class TestCompleteK:
    def test_zero_modulus(self):
        assert complete_k(0.0) == pytest.approx(np.pi / 2, abs=1e-15)

    def test_frozen_value(self):
        assert complete_k(0.5) == pytest.approx(K_HALF, abs=1e-14)

    @pytest.mark.parametrize("m", [0.1, 0.5, 0.9, 0.999])
    def test_matches_quadrature(self, m):
        ref, _ = quad(lambda t: 1.0 / np.sqrt(1.0 - m * np.sin(t) ** 2), 0.0, np.pi / 2, epsabs=1e-14)
        assert complete_k(m) == pytest.approx(ref, abs=1e-12)

    def test_imaginary_period_of_pt_potential(self):
        # Period 2K'(0.8) of the PT image plotted at m = 0.8.
        assert 2.0 * complete_k_prime(0.8) == pytest.approx(TWO_K_POINT_TWO, abs=1e-13)
        assert round(2.0 * complete_k_prime(0.8), 4) == 3.3192

    def test_converges_across_the_interval(self):
        # m = 0.96875 once stalled with a and b one ulp apart.
        from scipy.special import ellipk

        ms = np.r_[np.linspace(1e-6, 1.0 - 1e-6, 4001), 0.96875]
        np.testing.assert_allclose([complete_k(m) for m in ms], ellipk(ms), rtol=1e-14)

    @pytest.mark.parametrize("m", [1.0, 1.5, -0.1])
    def test_domain(self, m):
        with pytest.raises(DomainError):
            complete_k(m)


class TestJacobi:
    def test_origin(self):
        assert tuple(jacobi(0.0, 0.37)) == (0.0, 1.0, 1.0)

    @pytest.mark.parametrize("m", [0.2, 0.5, 0.8])
    def test_quarter_period(self, m):
        sn, cn, dn = jacobi(complete_k(m), m)
        assert sn == pytest.approx(1.0, abs=1e-14)
        assert cn == pytest.approx(0.0, abs=1e-14)
        assert dn == pytest.approx(np.sqrt(1.0 - m), abs=1e-14)

    def test_frozen_value(self):
        assert tuple(jacobi(1.0, 0.5)) == pytest.approx(SNCNDN_1_HALF, abs=1e-14)

    @pytest.mark.parametrize("m", [0.3, 0.5, 0.9])
    def test_matches_ode(self, m):
        def rhs(u, y):
            s, c, d = y
            return [c * d, -s * d, -m * s * c]

        u = np.linspace(0.0, 6.0, 13)
        sol = solve_ivp(rhs, (0.0, 6.0), [0.0, 1.0, 1.0], t_eval=u, rtol=1e-13, atol=1e-14, method="DOP853")
        sn, cn, dn = jacobi(u, m)
        np.testing.assert_allclose(np.vstack([sn, cn, dn]), sol.y, atol=1e-10)

    def test_limits(self):
        u = np.linspace(-2.0, 2.0, 9)
        np.testing.assert_allclose(jacobi(u, 0.0).sn, np.sin(u), atol=1e-15)
        np.testing.assert_allclose(jacobi(u, 1.0).sn, np.tanh(u), atol=1e-15)

    @settings(max_examples=60, deadline=None)
    @given(m=moduli, u=st.floats(min_value=-20.0, max_value=20.0))
    def test_pythagorean_identities(self, m, u):
        sn, cn, dn = jacobi(u, m)
        assert sn**2 + cn**2 == pytest.approx(1.0, abs=1e-13)
        assert dn**2 + m * sn**2 == pytest.approx(1.0, abs=1e-13)


class TestComplexJacobi:
    def test_real_axis_has_zero_imaginary_part(self):
        trip = jacobi_complex(np.linspace(0.0, 3.0, 7) + 0j, 0.6)
        for v in trip:
            assert np.all(np.imag(v) == 0.0)

    @pytest.mark.parametrize("z", [0.3 + 0.4j, 1.1 - 0.7j, -2.0 + 1.5j])
    def test_against_mpmath(self, z):
        mpmath = pytest.importorskip("mpmath")
        m = 0.45
        got = jacobi_complex(z, m)
        for name, value in zip(("sn", "cn", "dn"), got):
            ref = complex(mpmath.ellipfun(name, z, m=m))
            assert value == pytest.approx(ref, abs=1e-12)

    @settings(max_examples=40, deadline=None)
    @given(m=moduli, x=st.floats(-3.0, 3.0), y=st.floats(-0.9, 0.9))
    def test_complex_pythagorean(self, m, x, y):
        z = x + 1j * y * complete_k_prime(m)
        sn, cn, dn = jacobi_complex(z, m)
        assert abs(sn**2 + cn**2 - 1.0) < 1e-11
        assert abs(dn**2 + m * sn**2 - 1.0) < 1e-11

    def test_pole_guard(self):
        m = 0.5
        with pytest.raises(SingularityError):
            jacobi_complex(1j * complete_k_prime(m) + 1e-9, m)

    @pytest.mark.parametrize("m", [0.2, 0.5, 0.8])
    def test_modulus_duality(self, m):
        # sqrt(m) sn(x, m) = -dn(ix + K'(m) + iK(m), 1 - m)
        x = np.linspace(-2.0, 2.0, 17)
        lhs = np.sqrt(m) * jacobi(x, m).sn
        rhs = -jacobi_complex(1j * x + complete_k_prime(m) + 1j * complete_k(m), 1.0 - m).dn
        np.testing.assert_allclose(rhs.real, lhs, atol=1e-12)
        np.testing.assert_allclose(rhs.imag, 0.0, atol=1e-12)


class TestThetaZeta:
    def test_eta_vanishes_at_origin(self):
        h, _ = theta_eta(0.0, 0.4)
        assert h == 0.0

    @pytest.mark.parametrize("m", [0.3, 0.7])
    def test_sn_as_theta_ratio(self, m):
        u = np.linspace(0.1, 3.0, 8)
        h, th = theta_eta(u, m)
        sn = h / th / m**0.25
        np.testing.assert_allclose(sn.real, jacobi(u, m).sn, atol=1e-12)

    def test_zeta_special_points(self):
        assert jacobi_zeta(0.0, 0.4) == pytest.approx(0.0, abs=1e-15)
        assert abs(jacobi_zeta(complete_k(0.4), 0.4)) < 1e-13

    def test_zeta_frozen_value(self):
        assert float(np.real(jacobi_zeta(0.8, 0.6))) == pytest.approx(ZETA_08_06, abs=1e-12)

    def test_zeta_matches_quadrature(self):
        from scipy.special import ellipe, ellipeinc

        m, u = 0.35, 1.3
        phi = np.arcsin(jacobi(u, m).sn)
        ref = ellipeinc(phi, m) - u * ellipe(m) / complete_k(m)
        assert float(np.real(jacobi_zeta(u, m))) == pytest.approx(ref, abs=1e-12)

    def test_nome_limit_raises(self):
        with pytest.raises((ConvergenceError, DomainError)):
            theta_eta(0.3, 1.0)

    def test_nome_values(self):
        assert nome(0.0) == 0.0
        assert nome(0.5) == pytest.approx(np.exp(-np.pi), abs=1e-15)


class TestLanden:
    def test_p2_closed_form(self):
        ld = landen_descent(0.5, 2)
        r = np.sqrt(0.5)
        assert ld.alpha == pytest.approx(1.0 / (1.0 + r), abs=1e-14)
        assert ld.a_d == pytest.approx(r, abs=1e-14)
        assert ld.m_tilde == pytest.approx((1.0 - r) ** 2 / (1.0 + r) ** 2, abs=1e-14)

    def test_p3_closed_form(self):
        m = 0.5
        ld = landen_descent(m, 3)
        q = jacobi(2.0 * complete_k(m) / 3.0, m).dn
        assert ld.dn_step == pytest.approx(q, abs=1e-15)
        assert ld.alpha == pytest.approx(1.0 / (1.0 + 2.0 * q), abs=1e-13)
        assert ld.a_d == pytest.approx(q * (q + 2.0), abs=1e-12)
        assert ld.m_tilde == pytest.approx(m * (1 - q) ** 2 / ((1 + q) ** 2 * (1 + 2 * q) ** 2), abs=1e-13)

    def test_small_modulus_limit(self):
        ld = landen_descent(0.0, 2)
        assert (ld.alpha, ld.a_d, ld.m_tilde) == (0.5, 1.0, 0.0)

    @pytest.mark.parametrize("p", [2, 3, 4, 5])
    @pytest.mark.parametrize("m", [0.2, 0.6, 0.9])
    def test_dn_sum_identity(self, p, m):
        ld = landen_descent(m, p)
        x = np.linspace(-3.0, 3.0, 41)
        lhs = jacobi(ld.shifted_arguments(x), m).dn.sum(axis=0)
        rhs = jacobi(x / ld.alpha, ld.m_tilde).dn / ld.alpha
        np.testing.assert_allclose(lhs, rhs, atol=1e-12)

    @pytest.mark.parametrize("p", [2, 3, 4, 5])
    def test_pairwise_product_sum_is_constant(self, p):
        m = 0.7
        ld = landen_descent(m, p)
        dn = jacobi(ld.shifted_arguments(np.linspace(0.0, 2.0, 11)), m).dn
        pairs = 0.5 * (dn.sum(axis=0) ** 2 - (dn**2).sum(axis=0))
        np.testing.assert_allclose(pairs, ld.a_d, atol=1e-11)

    def test_order_domain(self):
        with pytest.raises(DomainError):
            landen_descent(0.5, 1)


class TestThetaQuasiPeriodicity:
    @pytest.mark.parametrize("m", [0.3, 0.8])
    def test_imaginary_period_shift(self, m):
        # H(u + 2iK') = -q^{-1} exp(-i pi u / K) H(u), and likewise for Theta.
        u = np.array([0.2 + 0.1j, 0.9 - 0.3j, 1.7 + 0.05j])
        k, kp, q = complete_k(m), complete_k_prime(m), nome(m)
        h0, t0 = theta_eta(u, m)
        h1, t1 = theta_eta(u + 2j * kp, m)
        factor = -np.exp(-1j * np.pi * u / k) / q
        np.testing.assert_allclose(h1, factor * h0, rtol=1e-10)
        np.testing.assert_allclose(t1, factor * t0, rtol=1e-10)
        assert not np.allclose(h1 / h0, np.exp(-np.pi * kp / k))

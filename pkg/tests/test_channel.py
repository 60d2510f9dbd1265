"""Channel construction: variants, invariants, and frozen comparisons."""

import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

import dephlab.bath as bath
from dephlab.bath import BathParams, QuadratureSpec
from dephlab.channel import (
    ChannelVariant,
    VariantKind,
    channel_rho,
    channel_state,
    markov_rate_default,
)

P = BathParams()
Q = QuadratureSpec()
CORR = ChannelVariant(VariantKind.CORRELATED)
UNC = ChannelVariant(VariantKind.UNCORRELATED)
MARKOV = ChannelVariant(VariantKind.MARKOVIAN)

# from the frozen quadrature references at t = 2 (see test_bath)
GAMMA_S_T2 = 1.1132991869176090
ZETA_T2 = 0.3122089812415745


class TestInitialState:
    @pytest.mark.parametrize("variant", [CORR, UNC, MARKOV])
    def test_pure_initial_state(self, variant):
        alpha = 0.3
        p = BathParams(alpha=alpha)
        st = channel_state(p, Q, variant, 0.0)
        psi = np.array([math.sqrt(alpha), 0.0, 0.0, math.sqrt(1 - alpha)])
        assert_allclose(st.rho.matrix, np.outer(psi, psi), atol=1e-15)
        assert st.kappa_eff == 1.0 + 0.0j

    @pytest.mark.parametrize("alpha", [0.0, 1.0])
    def test_extreme_alpha_stationary(self, alpha):
        p = BathParams(alpha=alpha)
        first = channel_state(p, Q, CORR, 0.0).rho.matrix
        for t in (1.0, 10.0):
            assert_allclose(channel_state(p, Q, CORR, t).rho.matrix, first, atol=1e-15)


class TestStateStructure:
    @pytest.mark.parametrize("beta", [0.05, 1.0, 10.0])
    @pytest.mark.parametrize("s", [0.0, 1.0, 5.0])
    def test_invariants_on_dense_grid(self, beta, s):
        p = BathParams(beta=beta, s=s, alpha=0.5)
        for variant in (CORR, UNC, MARKOV):
            for t in np.linspace(0.0, 50.0, 200):
                st = channel_state(p, Q, variant, t)
                m = st.rho.matrix  # DensityMatrix construction validates the rest
                assert_allclose(np.diag(m).real, [0.5, 0.0, 0.0, 0.5], atol=1e-12)
                assert_allclose(m[0, 3], 0.5 * st.kappa_eff, atol=1e-14)
                assert m[3, 0] == np.conj(m[0, 3])

    def test_corner_relation_general_alpha(self):
        alpha = 0.2
        p = BathParams(alpha=alpha)
        st = channel_state(p, Q, CORR, 1.5)
        assert_allclose(st.rho.matrix[0, 3],
                        math.sqrt(alpha * (1 - alpha)) * st.kappa_eff, atol=1e-15)

    def test_negative_time_rejected(self):
        with pytest.raises(ValueError):
            channel_state(P, Q, CORR, -1.0)


class TestVariants:
    def test_kappa_eff_definitions(self):
        t = 2.0
        corr = channel_state(P, Q, CORR, t).kappa_eff
        unc = channel_state(P, Q, UNC, t).kappa_eff
        assert_allclose(corr, bath.kappa(P, Q, t), atol=0)
        assert_allclose(unc, math.exp(-bath.gamma_s(P, Q, t)), atol=0)
        mark = channel_state(P, Q, MARKOV, t).kappa_eff
        assert_allclose(mark, math.exp(-markov_rate_default(P) * t), atol=0)

    def test_frozen_t2_comparison(self):
        # correlated and uncorrelated coherence at t = 2 from the frozen
        # refined-grid values
        t = 2.0
        unc_expected = math.exp(-GAMMA_S_T2)
        th = math.tanh(1.0)
        bracket = math.cos(2 * ZETA_T2) - 1j * th * math.sin(2 * ZETA_T2)
        corr_expected = bracket * unc_expected
        assert_allclose(channel_state(P, Q, UNC, t).kappa_eff, unc_expected, atol=1e-10)
        assert_allclose(channel_state(P, Q, CORR, t).kappa_eff, corr_expected, atol=1e-10)
        # the correlation bracket shrinks the modulus at finite temperature
        assert abs(corr_expected) < unc_expected

    def test_markov_rate_default(self):
        assert markov_rate_default(BathParams(coupling_a=0.0)) == 0.0
        assert markov_rate_default(BathParams(coupling_a=1.0, beta=1.0)) == 4.0
        assert_allclose(markov_rate_default(BathParams(coupling_a=3.0, beta=2.0)), 6.0)

    def test_markov_rate_override(self):
        v = ChannelVariant(VariantKind.MARKOVIAN, markov_rate=0.25)
        st = channel_state(P, Q, v, 2.0)
        assert_allclose(st.kappa_eff, math.exp(-0.5), atol=0)

    def test_markov_rate_validation(self):
        with pytest.raises(ValueError):
            ChannelVariant(VariantKind.MARKOVIAN, markov_rate=-1.0)

    def test_markovian_strictly_decreasing(self):
        ts = np.linspace(0.0, 10.0, 20)
        mods = [abs(channel_state(P, Q, MARKOV, t).kappa_eff) for t in ts]
        assert all(a > b for a, b in zip(mods, mods[1:]))

    def test_correlated_saturates(self):
        for beta in (0.05, 1.0):
            p = BathParams(beta=beta)
            assert abs(channel_state(p, Q, CORR, 100.0).kappa_eff) > 0.0

    def test_zero_temperature_variants_coincide(self):
        # tanh(beta*omega0) -> 1 makes the correlation bracket a pure phase
        p = BathParams(beta=1e8)
        for t in (0.5, 2.0, 10.0):
            corr = abs(channel_state(p, Q, CORR, t).kappa_eff)
            unc = abs(channel_state(p, Q, UNC, t).kappa_eff)
            assert_allclose(corr, unc, rtol=1e-12)


def test_channel_rho_rejects_oversized_kappa():
    with pytest.raises(ValueError):
        channel_rho(0.5, 1.1)  # positivity fails

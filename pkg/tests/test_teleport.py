"""Teleportation protocol, sphere oracles, and the closed-form averages."""

import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

import dephlab.bath as bath
import dephlab.teleport as tp
from dephlab.bath import BathParams, QuadratureSpec
from dephlab.channel import ChannelVariant, VariantKind, channel_rho, channel_state
from dephlab.teleport import (
    InputQubit,
    NoisePlacement,
    average_fidelity_oracle,
    bell_projectors,
    correction_unitaries,
    fav_closed,
    input_dephasing_oracle,
    kappa1,
    run_protocol,
)

P = BathParams()
Q = QuadratureSpec()
CORR = ChannelVariant(VariantKind.CORRELATED)


def x_channel(kappa):
    """Symmetric channel state with a hand-set coherence factor."""
    from dephlab.channel import ChannelState
    return ChannelState(t=0.0, rho=channel_rho(0.5, kappa), kappa_eff=kappa)


def assembled_weighted_fidelity(theta, kappa):
    """Per-input weighted fidelity assembled symbolically from the four
    conditional outputs of the symmetric channel:
    c^4 + s^4 + 2 c^2 s^2 Re(kappa)."""
    c2 = math.cos(theta / 2.0) ** 2
    s2 = math.sin(theta / 2.0) ** 2
    return c2 ** 2 + s2 ** 2 + 2.0 * c2 * s2 * kappa.real


class TestBellProjectors:
    def test_completeness(self):
        assert_allclose(sum(bell_projectors()), np.eye(4), atol=1e-15)

    def test_orthogonality(self):
        projs = bell_projectors()
        for i, a in enumerate(projs):
            for j, b in enumerate(projs):
                expected = a if i == j else np.zeros((4, 4))
                assert_allclose(a @ b, expected, atol=1e-15)

    def test_rank_one(self):
        for proj in bell_projectors():
            assert_allclose(np.trace(proj), 1.0, atol=1e-15)

    def test_corrections_unitary(self):
        for u in correction_unitaries():
            assert_allclose(u @ u.conj().T, np.eye(2), atol=1e-15)


class TestRunProtocol:
    def test_perfect_channel(self):
        ch = channel_state(P, Q, CORR, 0.0)
        for theta, phi in ((0.0, 0.0), (1.1, 0.7), (math.pi, 3.0), (math.pi / 2, 5.5)):
            res = run_protocol(InputQubit(theta, phi), ch)
            assert_allclose(res.probabilities, [0.25] * 4, atol=1e-12)
            assert_allclose(res.conditional_fidelities, [1.0] * 4, atol=1e-12)
            assert_allclose(res.weighted_fidelity, 1.0, atol=1e-12)

    def test_dephased_channel_pole_input(self):
        res = run_protocol(InputQubit(0.0), x_channel(0.0))
        assert_allclose(res.weighted_fidelity, 1.0, atol=1e-12)

    @pytest.mark.parametrize("kappa", [0.3 + 0.4j, -0.2 + 0.0j, 0.9 + 0.0j, 0.0j])
    def test_matches_assembled_fidelity(self, kappa, rng):
        ch = x_channel(kappa)
        for _ in range(8):
            theta = rng.uniform(0.0, math.pi)
            phi = rng.uniform(0.0, 2 * math.pi)
            res = run_protocol(InputQubit(theta, phi), ch)
            assert_allclose(res.weighted_fidelity, assembled_weighted_fidelity(theta, kappa),
                            rtol=0, atol=1e-12)

    def test_result_invariants(self, rng):
        ch = channel_state(P, Q, CORR, 1.7)
        for _ in range(5):
            res = run_protocol(InputQubit(rng.uniform(0, math.pi), rng.uniform(0, 2 * math.pi)), ch)
            assert_allclose(sum(res.probabilities), 1.0, atol=1e-12)
            for prob, fid, state in zip(res.probabilities, res.conditional_fidelities,
                                        res.outcome_states):
                assert prob >= 0.0
                assert -1e-12 <= fid <= 1.0 + 1e-12
                assert state.dim == 2  # DensityMatrix construction validates

    def test_zero_probability_outcome(self):
        # alpha = 1 channel and a pole input starve the Psi outcomes
        from dephlab.channel import ChannelState
        ch = ChannelState(t=0.0, rho=channel_rho(1.0, 0.0), kappa_eff=0.0)
        res = run_protocol(InputQubit(0.0), ch)
        assert res.probabilities[2] < 1e-14 and res.probabilities[3] < 1e-14
        assert res.conditional_fidelities[2] == 0.0
        assert_allclose(sum(res.probabilities), 1.0, atol=1e-12)

    def test_input_qubit_validation(self):
        with pytest.raises(ValueError):
            InputQubit(-0.1)
        with pytest.raises(ValueError):
            InputQubit(1.0, -1.0)


class TestBatchConsistency:
    def test_batch_equals_per_node_protocol(self, rng):
        ch = channel_state(P, Q, CORR, 2.3)
        thetas = rng.uniform(0.0, math.pi, size=12)
        phis = rng.uniform(0.0, 2 * math.pi, size=12)
        psi = np.stack([np.array([math.cos(th / 2), math.sin(th / 2) * np.exp(1j * ph)])
                        for th, ph in zip(thetas, phis)])
        rho_in = psi[:, :, None] * psi.conj()[:, None, :]
        fid, qsum = tp._weighted_fidelity_batch(rho_in, psi, ch.rho.matrix)
        for i, (th, ph) in enumerate(zip(thetas, phis)):
            res = run_protocol(InputQubit(th, ph), ch)
            assert_allclose(fid[i], res.weighted_fidelity, atol=1e-13)
            assert_allclose(qsum[i], sum(res.probabilities), atol=1e-13)


class TestAverageFidelityOracle:
    def test_perfect_channel(self):
        assert_allclose(average_fidelity_oracle(channel_state(P, Q, CORR, 0.0)),
                        1.0, atol=1e-12)

    @pytest.mark.parametrize("c", [0.7, 0.0, -0.5, 1.0])
    def test_real_coherence_closed_value(self, c):
        assert_allclose(average_fidelity_oracle(x_channel(complex(c))),
                        2.0 / 3.0 + c / 3.0, rtol=0, atol=1e-10)

    def test_complex_coherence_uses_real_part(self):
        k = 0.3 + 0.5j
        assert_allclose(average_fidelity_oracle(x_channel(k)),
                        2.0 / 3.0 + k.real / 3.0, atol=1e-10)

    def test_order_validation(self):
        with pytest.raises(ValueError):
            average_fidelity_oracle(x_channel(0.5 + 0j), order=8)

    def test_details(self):
        value, defect, order = average_fidelity_oracle(
            channel_state(P, Q, CORR, 1.0), return_details=True)
        assert defect <= 1e-12
        assert order >= 32

    def test_matches_closed_form_across_temperatures(self):
        for beta in (0.05, 1.0, 10.0):
            for s in (0.0, 5.0):
                p = BathParams(beta=beta, s=s)
                for t in (0.7, 6.0):
                    d = bath.decoherence_state(p, Q, t)
                    st = channel_state(p, Q, CORR, t)
                    assert_allclose(average_fidelity_oracle(st),
                                    fav_closed(NoisePlacement.CHANNEL, p, d),
                                    rtol=0, atol=1e-8)


class TestFavClosed:
    def test_initial_value(self):
        d = bath.decoherence_state(P, Q, 0.0)
        assert fav_closed(NoisePlacement.CHANNEL, P, d) == 1.0

    def test_equals_re_kappa_form(self):
        for t in (0.5, 1.0, 4.0):
            d = bath.decoherence_state(P, Q, t)
            assert_allclose(fav_closed(NoisePlacement.CHANNEL, P, d),
                            2.0 / 3.0 + d.kappa.real / 3.0, rtol=0, atol=1e-14)

    def test_alice_placement_identical(self):
        for t in (0.0, 1.0, 7.0):
            d = bath.decoherence_state(P, Q, t)
            assert fav_closed(NoisePlacement.ALICE_QUBITS, P, d) == \
                fav_closed(NoisePlacement.CHANNEL, P, d)

    def test_critical_temperature_exact(self):
        p = BathParams(beta=2.0)  # beta * omega0 = 2
        for t in np.linspace(0.0, 50.0, 12):
            d = bath.decoherence_state(p, Q, t)
            assert fav_closed(NoisePlacement.INPUT_QUBIT, p, d) == 2.0 / 3.0

    def test_high_temperature_below_classical(self):
        p = BathParams(beta=0.01)
        d = bath.decoherence_state(p, Q, 0.2)
        assert math.cos(d.zeta0) * math.exp(-d.gamma1) > 0.01
        assert fav_closed(NoisePlacement.INPUT_QUBIT, p, d) < 2.0 / 3.0

    def test_small_argument_branch_continuity(self):
        d = bath.decoherence_state(P, Q, 1.0)
        below = fav_closed(NoisePlacement.INPUT_QUBIT, BathParams(beta=9e-9), d)
        above = fav_closed(NoisePlacement.INPUT_QUBIT, BathParams(beta=1.1e-8), d)
        # both are huge negative numbers; the branch seam is relatively tiny
        assert_allclose(below * 9e-9, above * 1.1e-8, rtol=1e-6)


class TestKappa1:
    def test_pole_inputs_are_pure_phases(self):
        z0, g1 = 0.37, 0.21
        k_north = kappa1(P, 0.0, z0, g1)
        k_south = kappa1(P, math.pi, z0, g1)
        assert_allclose(k_north, np.exp(1j * z0) * math.exp(-g1), atol=1e-15)
        assert_allclose(k_south, np.exp(-1j * z0) * math.exp(-g1), atol=1e-15)

    def test_equator_matches_thermal_average(self):
        z0, g1 = 0.5, 0.0
        m = 0.5 * P.beta * P.omega0
        expected = (math.cos(z0) - 1j * math.tanh(m) * math.sin(z0))
        assert_allclose(kappa1(P, math.pi / 2, z0, g1), expected, atol=1e-15)

    def test_real_part_is_angle_independent(self, rng):
        z0, g1 = 0.8, 0.3
        vals = [kappa1(P, th, z0, g1).real for th in rng.uniform(0, math.pi, 16)]
        assert_allclose(vals, math.cos(z0) * math.exp(-g1), atol=1e-15)


class TestInputDephasingOracle:
    def test_initial_time(self):
        assert_allclose(input_dephasing_oracle(P, Q, 0.0), 1.0, atol=1e-12)

    def test_zero_coupling(self):
        p = BathParams(coupling_a=0.0)
        for t in (1.0, 10.0):
            assert_allclose(input_dephasing_oracle(p, Q, t), 1.0, atol=1e-12)

    def test_self_consistency(self):
        for beta in (0.5, 2.0, 6.0):
            p = BathParams(beta=beta)
            e16 = tp.input_dephasing_estimate(p, Q, 1.0, 16)
            e32 = tp.input_dephasing_estimate(p, Q, 1.0, 32)
            assert abs(e32 - e16) < 1e-10

    def test_matches_its_own_analytic_form(self):
        # Re kappa1 is angle independent, so the sphere average collapses to
        # 2/3 + cos(zeta0) e^{-gamma1} / 3; the closed-form result differs
        # and the gap is reported by the verification suite, not hidden here.
        for beta in (0.5, 2.0):
            p = BathParams(beta=beta)
            for t in (0.5, 2.0):
                d = bath.decoherence_state(p, Q, t)
                expected = 2.0 / 3.0 + math.cos(d.zeta0) * math.exp(-d.gamma1) / 3.0
                assert_allclose(input_dephasing_oracle(p, Q, t), expected, atol=1e-9)

    def test_order_validation(self):
        with pytest.raises(ValueError):
            input_dephasing_oracle(P, Q, 1.0, order=4)

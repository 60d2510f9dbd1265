"""Standard single-qubit teleportation protocol in density-matrix form.

Per-outcome Bell projection, Bob's fixed corrections, conditional and
sphere-averaged fidelities, the closed-form averages for the three noise
placements, and brute-force sphere-quadrature oracles for each.
"""

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import bath
from .bath import BathParams, DecoherenceState, QuadratureSpec, QuadratureError
from .channel import ChannelState, channel_rho
from .qmatrix import DensityMatrix, I2, SIGMA_X, SIGMA_Z, kron, partial_trace

_MIN_SPHERE_ORDER = 16
_MAX_SPHERE_ORDER = 512
_SPHERE_TOL = 1e-10
_PROB_FLOOR = 1e-14


class NoisePlacement(enum.Enum):
    CHANNEL = "channel"
    ALICE_QUBITS = "alice"
    INPUT_QUBIT = "input"


@dataclass(frozen=True)
class InputQubit:
    """Pure input state cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>."""

    theta: float
    phi: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.theta <= math.pi:
            raise ValueError(f"theta must be in [0, pi], got {self.theta}")
        if not 0.0 <= self.phi < 2.0 * math.pi:
            raise ValueError(f"phi must be in [0, 2 pi), got {self.phi}")

    def ket(self) -> np.ndarray:
        return np.array(
            [math.cos(self.theta / 2.0), math.sin(self.theta / 2.0) * np.exp(1j * self.phi)],
            dtype=complex,
        )


@dataclass(frozen=True)
class TeleportResult:
    """Per-outcome teleportation data plus the probability-weighted fidelity."""

    outcome_states: tuple
    probabilities: tuple
    conditional_fidelities: tuple
    weighted_fidelity: float


def bell_states() -> tuple:
    """Kets of Phi+, Phi-, Psi+, Psi- in that order."""
    r = 1.0 / math.sqrt(2.0)
    return (
        np.array([r, 0, 0, r], dtype=complex),
        np.array([r, 0, 0, -r], dtype=complex),
        np.array([0, r, r, 0], dtype=complex),
        np.array([0, r, -r, 0], dtype=complex),
    )


def bell_projectors() -> tuple:
    """Rank-1 projectors onto the Bell basis; orthogonal, summing to I4."""
    return tuple(np.outer(v, v.conj()) for v in bell_states())


def correction_unitaries() -> tuple:
    """Bob's corrections for outcomes Phi+, Phi-, Psi+, Psi-."""
    return (I2, SIGMA_Z, SIGMA_X, SIGMA_X @ SIGMA_Z)


def run_protocol(input: InputQubit, channel: ChannelState) -> TeleportResult:
    """Teleport one pure input through the channel, outcome by outcome.

    Order of factors is (input, Alice channel qubit, Bob channel qubit);
    the Bell measurement projects the first two.  Outcomes with probability
    below 1e-14 keep the maximally mixed placeholder and zero fidelity,
    contributing nothing to the weighted average.
    """
    psi = input.ket()
    rho_in = np.outer(psi, psi.conj())
    total = kron(rho_in, channel.rho.matrix)

    states, probs, fids = [], [], []
    for proj, u in zip(bell_projectors(), correction_unitaries()):
        p8 = kron(proj, I2)
        projected = p8 @ total @ p8
        prob = float(np.trace(projected).real)
        bob_unnorm = partial_trace(projected, [2, 2, 2], {0, 1})
        if prob < _PROB_FLOOR:
            states.append(DensityMatrix(I2 / 2.0))
            probs.append(prob)
            fids.append(0.0)
            continue
        out = u @ (bob_unnorm / prob) @ u.conj().T
        states.append(DensityMatrix(out))
        probs.append(prob)
        fids.append(float(np.real(psi.conj() @ out @ psi)))
    weighted = float(sum(p * f for p, f in zip(probs, fids)))
    return TeleportResult(
        outcome_states=tuple(states),
        probabilities=tuple(probs),
        conditional_fidelities=tuple(fids),
        weighted_fidelity=weighted,
    )


def _weighted_fidelity_batch(rho_in: np.ndarray, psi: np.ndarray, channel4: np.ndarray):
    """Protocol-algebra weighted fidelity for a batch of input states.

    rho_in: (n, 2, 2) input density matrices; psi: (n, 2) pure target kets;
    channel4: (4, 4) channel state.  Returns (weighted fidelities (n,),
    probability sums (n,)).  Same projection/trace/correction algebra as
    run_protocol, vectorised over the batch.
    """
    n = rho_in.shape[0]
    total = np.einsum("nij,kl->nikjl", rho_in, channel4).reshape(n, 8, 8)
    fid = np.zeros(n)
    qsum = np.zeros(n)
    for proj, u in zip(bell_projectors(), correction_unitaries()):
        p8 = np.kron(proj, I2)
        projected = p8 @ total @ p8
        qsum += np.real(np.einsum("naa->n", projected))
        bob = np.einsum("nxaxb->nab", projected.reshape(n, 4, 2, 4, 2))
        out = u @ bob @ u.conj().T
        # unnormalised conditional state already carries the outcome weight
        fid += np.real(np.einsum("na,nab,nb->n", psi.conj(), out, psi))
    return fid, qsum


def _sphere_grid(order: int):
    u, wu = np.polynomial.legendre.leggauss(order)
    phi = 2.0 * math.pi * np.arange(order) / order
    uu, pp = np.meshgrid(u, phi, indexing="ij")
    return uu.ravel(), pp.ravel(), np.repeat(wu, order)


def _pure_inputs(u: np.ndarray, phi: np.ndarray) -> np.ndarray:
    c = np.sqrt((1.0 + u) / 2.0)
    s = np.sqrt((1.0 - u) / 2.0)
    return np.stack([c + 0j, s * np.exp(1j * phi)], axis=-1)


def _sphere_average(fid: np.ndarray, wu: np.ndarray, order: int) -> float:
    # (1/4pi) * [GL in cos(theta)] x [uniform trapezoid in phi]
    return float(np.sum(wu * fid) / (2.0 * order))


def average_fidelity_estimate(channel: ChannelState, order: int):
    """Sphere average of the weighted fidelity at one fixed quadrature order.

    Returns (estimate, worst |sum_i Q_i - 1| over the sphere nodes).
    """
    u, phi, wu = _sphere_grid(order)
    psi = _pure_inputs(u, phi)
    rho_in = psi[:, :, None] * psi.conj()[:, None, :]
    fid, qsum = _weighted_fidelity_batch(rho_in, psi, channel.rho.matrix)
    return _sphere_average(fid, wu, order), float(np.max(np.abs(qsum - 1.0)))


def average_fidelity_oracle(channel: ChannelState, order: int = _MIN_SPHERE_ORDER,
                            return_details: bool = False):
    """Sphere-averaged weighted fidelity by product quadrature.

    Gauss-Legendre in cos(theta) times uniform trapezoid in phi, doubling
    the order until successive estimates differ by less than 1e-10.
    With ``return_details`` also returns the worst probability-sum defect
    over all sphere nodes and the final order.
    """
    if order < _MIN_SPHERE_ORDER:
        raise ValueError(f"grid order must be >= {_MIN_SPHERE_ORDER}")
    prev, defect = average_fidelity_estimate(channel, order)
    while order <= _MAX_SPHERE_ORDER:
        order *= 2
        cur, defect = average_fidelity_estimate(channel, order)
        if abs(cur - prev) < _SPHERE_TOL:
            return (cur, defect, order) if return_details else cur
        prev = cur
    raise QuadratureError("sphere quadrature did not converge")


def fav_closed(placement: NoisePlacement, p: BathParams, d: DecoherenceState) -> float:
    """Closed-form sphere-averaged fidelity for one noise placement.

    Channel or Alice dephasing: 2/3 + cos(2 zeta) e^{-gamma_s} / 3 (equal by
    construction).  Input dephasing: 2/3 + (b w0/2 - 1) cos(zeta0)
    / (6 sinh(b w0/2)) e^{-gamma1}, with a series branch below b w0 = 1e-8.
    """
    if placement in (NoisePlacement.CHANNEL, NoisePlacement.ALICE_QUBITS):
        return 2.0 / 3.0 + math.cos(2.0 * d.zeta) * math.exp(-d.gamma_s) / 3.0
    bw0 = p.beta * p.omega0
    damped = math.cos(d.zeta0) * math.exp(-d.gamma1)
    if bw0 < 1e-8:
        return 2.0 / 3.0 - damped / (3.0 * bw0)
    return 2.0 / 3.0 + (bw0 / 2.0 - 1.0) * damped / (6.0 * math.sinh(bw0 / 2.0))


def kappa1(p: BathParams, theta: float, zeta0_t: float, gamma1_t: float) -> complex:
    """Single-qubit coherence factor of a dephased input qubit.

    The bracket weights follow the input amplitudes cos^2(theta/2) and
    sin^2(theta/2) with level phases e^{+/- i zeta0}, mirroring the channel
    recipe; damping is exp(-gamma1).
    """
    w0 = math.cos(theta / 2.0) ** 2
    bracket = bath.correlation_bracket(w0, 0.5 * p.beta * p.omega0, zeta0_t)
    return bracket * math.exp(-gamma1_t)


def input_dephasing_estimate(p: BathParams, q: QuadratureSpec, t: float, order: int) -> float:
    """Input-dephasing sphere average at one fixed quadrature order.

    Each input is dephased by its own correlated factor kappa1(t; theta),
    teleported through the perfect channel, and compared against the
    intended pure state.
    """
    z0 = bath.zeta0(p, q, t)
    g1 = bath.gamma1(p, q, t)
    perfect = channel_rho(0.5, 1.0).matrix
    u, phi, wu = _sphere_grid(order)
    psi = _pure_inputs(u, phi)
    rho_in = psi[:, :, None] * psi.conj()[:, None, :]
    theta = np.arccos(np.clip(u, -1.0, 1.0))
    k1 = np.array([kappa1(p, th, z0, g1) for th in theta])
    rho_in[:, 0, 1] *= k1
    rho_in[:, 1, 0] *= k1.conj()
    fid, _ = _weighted_fidelity_batch(rho_in, psi, perfect)
    return _sphere_average(fid, wu, order)


def input_dephasing_oracle(p: BathParams, q: QuadratureSpec, t: float,
                           order: int = _MIN_SPHERE_ORDER) -> float:
    """Sphere-averaged fidelity with the input qubit dephasing instead.

    Averaging and order-doubling convergence as in
    ``average_fidelity_oracle``.
    """
    if order < _MIN_SPHERE_ORDER:
        raise ValueError(f"grid order must be >= {_MIN_SPHERE_ORDER}")
    prev = input_dephasing_estimate(p, q, t, order)
    while order <= _MAX_SPHERE_ORDER:
        order *= 2
        cur = input_dephasing_estimate(p, q, t, order)
        if abs(cur - prev) < _SPHERE_TOL:
            return cur
        prev = cur
    raise QuadratureError("sphere quadrature did not converge")

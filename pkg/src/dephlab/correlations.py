"""Negativity and quantum discord, each with an independent brute-force route.

Negativity comes both from the partial-transpose spectrum (definition) and
from the closed form in terms of the coherence factor; discord comes both
from the closed binary-entropy form and from an explicit optimisation over
projective measurements.  Mutual information and classical correlations are
exposed alongside.
"""

import math
from dataclasses import dataclass

import numpy as np

from ._core import kernels
from .bath import BathParams, DecoherenceState
from .channel import ChannelState
from .qmatrix import DensityMatrix, partial_trace, partial_transpose, trace_norm, von_neumann_entropy

_GRID = 64
_DESCENT_STEP_MIN = 1e-5


@dataclass(frozen=True)
class MeasurementAngles:
    """Bloch angles of the projective measurement direction on subsystem B."""

    theta_m: float
    phi_m: float

    def __post_init__(self):
        if not 0.0 <= self.theta_m <= math.pi:
            raise ValueError(f"theta_m must be in [0, pi], got {self.theta_m}")
        if not 0.0 <= self.phi_m < 2.0 * math.pi:
            raise ValueError(f"phi_m must be in [0, 2 pi), got {self.phi_m}")


@dataclass(frozen=True)
class CorrelationPoint:
    """Every correlation measure of one channel state at one time."""

    t: float
    negativity_ppt: float
    negativity_paper: float
    discord_closed: float
    discord_oracle: float
    mutual_info: float
    classical_corr: float


def negativity_ppt(rho: DensityMatrix) -> float:
    """(||rho^T_A||_1 - 1) / 2 from the partial-transpose spectrum."""
    if rho.dim != 4:
        raise ValueError("negativity is defined for two-qubit states")
    n = 0.5 * (trace_norm(partial_transpose(rho.matrix, 0)) - 1.0)
    if n < 0.0:
        if n < -1e-10:
            raise ArithmeticError(f"trace norm below 1 beyond tolerance: {n}")
        return 0.0
    return n


def negativity_closed(p: BathParams, d: DecoherenceState) -> float:
    """Closed-form negativity of the correlated channel.

    2 sqrt(a(1-a)) sqrt(cos^2(2 zeta) + sin^2(2 zeta) tanh^2(b w0)) e^{-gamma_s};
    the doubled phase keeps the bracket modulus consistent with |kappa|, so
    this equals 2 sqrt(a(1-a)) |kappa(t)| for the symmetric channel.
    """
    z2 = 2.0 * d.zeta
    th = math.tanh(p.beta * p.omega0)
    mod = math.sqrt(math.cos(z2) ** 2 + math.sin(z2) ** 2 * th * th)
    return 2.0 * math.sqrt(p.alpha * (1.0 - p.alpha)) * mod * math.exp(-d.gamma_s)


def negativity_paper(alpha: float, kappa_eff: complex) -> float:
    """Paper-convention negativity 2 sqrt(a(1-a)) |kappa_eff| (twice the PPT value)."""
    return 2.0 * math.sqrt(alpha * (1.0 - alpha)) * abs(kappa_eff)


def _xlog2x(x: float) -> float:
    return x * math.log2(x) if x > 0.0 else 0.0


def discord_closed(state) -> float:
    """Closed-form discord of the symmetric channel, min(Q1, Q2) with Q1 = 1.

    Q2 = ((1+k)/2) log2((1+k)/2) + ((1-k)/2) log2((1-k)/2) + 1 with
    k = |kappa|; accepts a DecoherenceState, a ChannelState, or k itself.
    """
    if isinstance(state, DecoherenceState):
        k = abs(state.kappa)
    elif isinstance(state, ChannelState):
        k = abs(state.kappa_eff)
    else:
        k = abs(state)
    if k > 1.0 + 1e-12:
        raise ValueError(f"|kappa| must be <= 1, got {k}")
    k = min(k, 1.0)
    q2 = _xlog2x((1.0 + k) / 2.0) + _xlog2x((1.0 - k) / 2.0) + 1.0
    return min(1.0, q2)


def mutual_information(rho: DensityMatrix) -> float:
    """S(rho_A) + S(rho_B) - S(rho_AB) in bits, clamped at 0."""
    if rho.dim != 4:
        raise ValueError("mutual information is defined here for two-qubit states")
    sa = von_neumann_entropy(partial_trace(rho.matrix, [2, 2], {1}))
    sb = von_neumann_entropy(partial_trace(rho.matrix, [2, 2], {0}))
    sab = von_neumann_entropy(rho)
    return max(0.0, sa + sb - sab)


def _min_conditional_entropy(rho: np.ndarray, grid: int) -> tuple[float, float, float]:
    """Grid scan plus coordinate descent over measurement directions on B.

    Returns (min sum_k p_k S(rho_k), theta_m, phi_m).
    """
    thetas = np.linspace(0.0, math.pi, grid)
    phis = np.linspace(0.0, 2.0 * math.pi, grid, endpoint=False)
    surface = kernels.conditional_entropy_grid(rho, thetas, phis)
    it, ip = np.unravel_index(np.argmin(surface), surface.shape)
    best = float(surface[it, ip])
    th, ph = float(thetas[it]), float(phis[ip])

    def value(a, b):
        a = min(max(a, 0.0), math.pi)
        b = b % (2.0 * math.pi)
        return float(kernels.conditional_entropy_grid(rho, [a], [b])[0, 0]), a, b

    step = float(thetas[1] - thetas[0])
    while step >= _DESCENT_STEP_MIN:
        moved = False
        for da, db in ((step, 0.0), (-step, 0.0), (0.0, step), (0.0, -step)):
            cand, ca, cb = value(th + da, ph + db)
            if cand < best:
                best, th, ph, moved = cand, ca, cb, True
        if not moved:
            step /= 2.0
    return best, th, ph


def _correlation_parts(rho: DensityMatrix, grid: int = _GRID) -> tuple[float, float, float]:
    """(mutual information, classical correlation, discord) by optimisation."""
    info = mutual_information(rho)
    sa = von_neumann_entropy(partial_trace(rho.matrix, [2, 2], {1}))
    cond, _, _ = _min_conditional_entropy(rho.matrix, grid)
    classical = sa - cond
    if classical < 0.0:
        classical = 0.0
    q = info - classical
    if q < 0.0:
        if q < -1e-9:
            raise ArithmeticError(f"negative discord beyond tolerance: {q}")
        q = 0.0
    return info, classical, q


def discord_oracle(rho: DensityMatrix, grid: int = _GRID) -> float:
    """Discord by explicit optimisation over projective measurements on B.

    I(rho) minus the supremum of the measured mutual information over rank-1
    projective measurements, scanned on a grid x grid Bloch-angle mesh and
    polished by coordinate descent.  Independent of the closed form.
    """
    return _correlation_parts(rho, grid)[2]


def optimal_measurement(rho: DensityMatrix, grid: int = _GRID) -> MeasurementAngles:
    """Measurement direction on B attaining the classical-correlation sup."""
    _, th, ph = _min_conditional_entropy(rho.matrix, grid)
    return MeasurementAngles(theta_m=th, phi_m=ph)


def classical_correlation(rho: DensityMatrix, grid: int = _GRID) -> float:
    """sup over measurements on B of S(rho_A) - sum_k p_k S(rho_k), in bits."""
    return _correlation_parts(rho, grid)[1]


def correlation_point(p: BathParams, state: ChannelState, d: DecoherenceState | None = None) -> CorrelationPoint:
    """Assemble every correlation measure for one channel state.

    The closed discord form is evaluated from the variant's own coherence
    factor, so baselines (uncorrelated, Markovian) are handled uniformly.
    """
    info, classical, q = _correlation_parts(state.rho)
    return CorrelationPoint(
        t=state.t,
        negativity_ppt=negativity_ppt(state.rho),
        negativity_paper=negativity_paper(p.alpha, state.kappa_eff),
        discord_closed=discord_closed(state),
        discord_oracle=q,
        mutual_info=info,
        classical_corr=classical,
    )

"""Time-evolved two-qubit channel state and its baseline variants.

The channel starts in sqrt(alpha)|00> + sqrt(1-alpha)|11> and dephases: the
populations are frozen and the single coherence picks up a variant-dependent
factor kappa_eff(t).
"""

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import bath
from .bath import BathParams, QuadratureSpec
from .qmatrix import DensityMatrix


class VariantKind(enum.Enum):
    CORRELATED = "correlated"
    UNCORRELATED = "uncorrelated"
    MARKOVIAN = "markovian"


@dataclass(frozen=True)
class ChannelVariant:
    """Which coherence decay the channel follows.

    markov_rate is used only by the Markovian variant; None selects the
    default golden-rule rate 4A/beta.
    """

    kind: VariantKind = VariantKind.CORRELATED
    markov_rate: float | None = None

    def __post_init__(self):
        if self.markov_rate is not None and self.markov_rate < 0:
            raise ValueError(f"markov_rate must be >= 0, got {self.markov_rate}")


@dataclass(frozen=True)
class ChannelState:
    """Channel density matrix at time t with the coherence factor used."""

    t: float
    rho: DensityMatrix
    kappa_eff: complex


def markov_rate_default(p: BathParams) -> float:
    """White-noise dephasing rate 4A/beta.

    This is the omega -> 0 density of the thermal dephasing integrand:
    w e^{-w^2} (1 + sinc(ws)) coth(bw/2) -> (2/beta) * 2.
    """
    return 4.0 * p.coupling_a / p.beta


def channel_rho(alpha: float, kappa_eff: complex) -> DensityMatrix:
    """X-structured channel state with populations (alpha, 1-alpha)."""
    c = math.sqrt(alpha * (1.0 - alpha)) * kappa_eff
    m = np.zeros((4, 4), dtype=complex)
    m[0, 0] = alpha
    m[3, 3] = 1.0 - alpha
    m[0, 3] = c
    m[3, 0] = np.conj(c)
    return DensityMatrix(m)


def channel_state(p: BathParams, q: QuadratureSpec, v: ChannelVariant, t: float) -> ChannelState:
    """Evolve the channel to time t under the chosen variant."""
    t = float(t)
    if t < 0:
        raise ValueError(f"t must be >= 0, got {t}")
    if v.kind is VariantKind.CORRELATED:
        k = bath.kappa(p, q, t)
    elif v.kind is VariantKind.UNCORRELATED:
        k = complex(math.exp(-bath.gamma_s(p, q, t)))
    else:
        rate = markov_rate_default(p) if v.markov_rate is None else v.markov_rate
        k = complex(math.exp(-rate * t))
    return ChannelState(t=t, rho=channel_rho(p.alpha, k), kappa_eff=k)

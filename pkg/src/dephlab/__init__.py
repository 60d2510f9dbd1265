"""dephlab: dephasing of a two-qubit channel in a common bosonic bath.

Closed-form dynamics of negativity, quantum discord and single-qubit
teleportation fidelity under state-dependent initial system-bath
correlations, with brute-force density-matrix oracles cross-checking every
closed form.
"""

from ._core import BACKEND
from .bath import BathParams, DecoherenceState, QuadratureError, QuadratureSpec, decoherence_state
from .channel import ChannelState, ChannelVariant, VariantKind, channel_state, markov_rate_default
from .correlations import (
    CorrelationPoint,
    MeasurementAngles,
    classical_correlation,
    correlation_point,
    discord_closed,
    discord_oracle,
    mutual_information,
    negativity_closed,
    negativity_paper,
    negativity_ppt,
    optimal_measurement,
)
from .teleport import (
    InputQubit,
    NoisePlacement,
    TeleportResult,
    average_fidelity_oracle,
    bell_projectors,
    fav_closed,
    input_dephasing_oracle,
    run_protocol,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BathParams",
    "ChannelState",
    "ChannelVariant",
    "CorrelationPoint",
    "DecoherenceState",
    "InputQubit",
    "MeasurementAngles",
    "NoisePlacement",
    "QuadratureError",
    "QuadratureSpec",
    "TeleportResult",
    "VariantKind",
    "average_fidelity_oracle",
    "bell_projectors",
    "channel_state",
    "classical_correlation",
    "correlation_point",
    "decoherence_state",
    "discord_closed",
    "discord_oracle",
    "fav_closed",
    "input_dephasing_oracle",
    "markov_rate_default",
    "mutual_information",
    "negativity_closed",
    "negativity_paper",
    "negativity_ppt",
    "optimal_measurement",
    "run_protocol",
    "__version__",
]

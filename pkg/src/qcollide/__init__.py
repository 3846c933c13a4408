"""Collision-model simulator for qubit chains with tunable non-Markovianity."""

__version__ = "0.1.0"

from .backend import ACTIVE_BACKEND
from .errors import (
    ConfigurationError,
    DimensionLimitError,
    IntegrityError,
    PreconditionError,
)
from .model import (
    DEFAULT_SEED,
    KrausChannel,
    ModelConfig,
    apply_channel,
    depolarising_channel,
    embedded_pauli,
    heisenberg_hamiltonian,
    partial_swap,
    swap_operator,
)
from .nonmarkov import (
    BlochState,
    NonMarkovResult,
    antipodal_pair,
    blp_measure,
    measure_1x1,
    measure_3x3,
    paired_trajectory_distances,
    sweep_omega,
)
from .numerics import DEFAULT_TOL, Tolerances
from .protocol import ProtocolEngine, TrajectoryRecord, initial_joint_state
from .states import DensityMatrix
from .transport import (
    TransportPoint,
    coherence_element,
    evolve_series,
    excitation_state,
    sweep_eta_omega,
)

__all__ = [
    "ACTIVE_BACKEND",
    "BlochState",
    "ConfigurationError",
    "DEFAULT_SEED",
    "DEFAULT_TOL",
    "DensityMatrix",
    "DimensionLimitError",
    "IntegrityError",
    "KrausChannel",
    "ModelConfig",
    "NonMarkovResult",
    "PreconditionError",
    "ProtocolEngine",
    "Tolerances",
    "TrajectoryRecord",
    "TransportPoint",
    "antipodal_pair",
    "apply_channel",
    "blp_measure",
    "coherence_element",
    "depolarising_channel",
    "embedded_pauli",
    "evolve_series",
    "excitation_state",
    "heisenberg_hamiltonian",
    "initial_joint_state",
    "measure_1x1",
    "measure_3x3",
    "paired_trajectory_distances",
    "partial_swap",
    "swap_operator",
    "sweep_eta_omega",
    "sweep_omega",
]

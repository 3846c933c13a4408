"""Physical operators of the collision model.

Builds embedded Pauli operators, open-chain Heisenberg Hamiltonians for
the qubit chain and its reservoir, the partial-swap collision unitary,
and the single-qubit depolarising channel with its CPTP certificate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .errors import ConfigurationError, PreconditionError
from .numerics import DEFAULT_TOL
from .states import DensityMatrix

DEFAULT_SEED = 12345

PAULI_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
IDENTITY_2 = np.eye(2, dtype=np.complex128)

_PAULIS = {"x": PAULI_X, "y": PAULI_Y, "z": PAULI_Z}


def _as_couplings(value, n_sites: int, name: str) -> tuple[float, ...]:
    # scalars broadcast to a uniform open chain with n_sites - 1 bonds
    if np.isscalar(value):
        return (float(value),) * (n_sites - 1)
    couplings = tuple(float(j) for j in value)
    if len(couplings) != n_sites - 1:
        raise ConfigurationError(
            f"{name} must have length n_sites - 1 = {n_sites - 1}, got {len(couplings)}"
        )
    return couplings


@dataclass(frozen=True)
class ModelConfig:
    """All physical parameters of one run.

    ``eta`` is the collision strength in [0, pi/2]; ``omega`` the
    depolarisation strength ("effective temperature") in [0, 1]. Coupling
    vectors carry one value per bond of the open chain (empty for a single
    site).
    """

    n_sites: int
    eta: float
    omega: float
    j_chain: tuple[float, ...] = ()
    j_res: tuple[float, ...] = ()
    dt: float = 0.01
    steps: int = 20
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        if self.n_sites < 1:
            raise ConfigurationError(f"n_sites must be >= 1, got {self.n_sites}")
        if not 0.0 <= self.eta <= math.pi / 2:
            raise ConfigurationError(f"eta={self.eta} outside [0, pi/2]")
        if not 0.0 <= self.omega <= 1.0:
            raise ConfigurationError(f"omega={self.omega} outside [0, 1]")
        if self.dt <= 0.0:
            raise ConfigurationError(f"dt must be positive, got {self.dt}")
        if self.steps < 0:
            raise ConfigurationError(f"steps must be >= 0, got {self.steps}")
        object.__setattr__(self, "j_chain", _as_couplings(self.j_chain, self.n_sites, "j_chain"))
        object.__setattr__(self, "j_res", _as_couplings(self.j_res, self.n_sites, "j_res"))

    @classmethod
    def uniform(cls, n_sites: int, eta: float, omega: float, j_chain: float = 10.0,
                j_res: float = 1.0, dt: float = 0.01, steps: int = 20,
                seed: int = DEFAULT_SEED) -> "ModelConfig":
        """Uniform couplings on every bond (the standard parameter choice)."""
        return cls(n_sites=n_sites, eta=eta, omega=omega, j_chain=j_chain,
                   j_res=j_res, dt=dt, steps=steps, seed=seed)


def embedded_operator(op2: np.ndarray, qubit: int, total_qubits: int) -> np.ndarray:
    """Single-qubit operator on ``qubit``, identity elsewhere."""
    if not 0 <= qubit < total_qubits:
        raise PreconditionError(f"qubit {qubit} out of range for {total_qubits} qubits")
    return linalg.kron_all(
        [IDENTITY_2] * qubit + [op2] + [IDENTITY_2] * (total_qubits - qubit - 1)
    )


def embedded_pauli(axis: str, qubit: int, total_qubits: int) -> np.ndarray:
    """Pauli x/y/z acting on one qubit of a register."""
    key = axis.lower()
    if key not in _PAULIS:
        raise PreconditionError(f"axis must be one of x, y, z; got {axis!r}")
    return embedded_operator(_PAULIS[key], qubit, total_qubits)


def heisenberg_hamiltonian(couplings, qubit_offset: int, total_qubits: int) -> np.ndarray:
    """Isotropic nearest-neighbour Heisenberg Hamiltonian on an open chain.

    H = (1/2) * sum_b J_b (X_b X_{b+1} + Y_b Y_{b+1} + Z_b Z_{b+1}) acting
    on qubits ``qubit_offset .. qubit_offset + len(couplings)``, identity on
    the rest. An empty coupling vector (single site) gives the zero matrix.
    """
    couplings = tuple(float(j) for j in couplings)
    n_sites = len(couplings) + 1
    if qubit_offset < 0 or qubit_offset + n_sites > total_qubits:
        raise ConfigurationError(
            f"{n_sites} sites at offset {qubit_offset} do not fit in {total_qubits} qubits"
        )
    dim = 2 ** total_qubits
    h = np.zeros((dim, dim), dtype=np.complex128)
    for bond, j in enumerate(couplings):
        q1 = qubit_offset + bond
        q2 = q1 + 1
        for axis in ("x", "y", "z"):
            h += 0.5 * j * (embedded_pauli(axis, q1, total_qubits)
                            @ embedded_pauli(axis, q2, total_qubits))
    return h


def swap_operator(q1: int, q2: int, total_qubits: int) -> np.ndarray:
    """Permutation matrix exchanging the basis roles of two qubits."""
    if q1 == q2:
        raise PreconditionError("swap requires two distinct qubits")
    for q in (q1, q2):
        if not 0 <= q < total_qubits:
            raise PreconditionError(f"qubit {q} out of range for {total_qubits} qubits")
    dim = 2 ** total_qubits
    s = np.zeros((dim, dim), dtype=np.complex128)
    sh1 = total_qubits - 1 - q1
    sh2 = total_qubits - 1 - q2
    for idx in range(dim):
        b1 = (idx >> sh1) & 1
        b2 = (idx >> sh2) & 1
        jdx = idx & ~(1 << sh1) & ~(1 << sh2) | (b2 << sh1) | (b1 << sh2)
        s[jdx, idx] = 1.0
    return s


def partial_swap(eta: float, q_sys: int, q_res: int, total_qubits: int) -> np.ndarray:
    """Collision unitary cos(eta)*I + i*sin(eta)*SWAP between two qubits.

    ``eta`` in [0, pi/2] interpolates between no interaction and a full
    state exchange (up to a global phase i).
    """
    if not 0.0 <= eta <= math.pi / 2:
        raise ConfigurationError(f"eta={eta} outside [0, pi/2]")
    dim = 2 ** total_qubits
    return (math.cos(eta) * np.eye(dim, dtype=np.complex128)
            + 1j * math.sin(eta) * swap_operator(q_sys, q_res, total_qubits))


@dataclass(frozen=True)
class KrausChannel:
    """A CPTP map given by a finite list of Kraus operators.

    Completeness (sum_k K_k^dagger K_k = I) is certified once at
    construction, not on every application.
    """

    ops: tuple[np.ndarray, ...]
    stack: np.ndarray = field(init=False, repr=False, compare=False)
    stack_dag: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not self.ops:
            raise PreconditionError("a channel needs at least one Kraus operator")
        mats = tuple(linalg.as_operator(k) for k in self.ops)
        dim = mats[0].shape[0]
        if any(k.shape[0] != dim for k in mats):
            raise PreconditionError("Kraus operators must share one dimension")
        completeness = sum(k.conj().T @ k for k in mats)
        defect = float(np.abs(completeness - np.eye(dim)).max())
        if defect > DEFAULT_TOL.cptp:
            raise PreconditionError(
                f"Kraus completeness defect {defect:.3e} exceeds {DEFAULT_TOL.cptp:.1e}"
            )
        object.__setattr__(self, "ops", mats)
        object.__setattr__(self, "stack", np.ascontiguousarray(np.stack(mats)))
        object.__setattr__(self, "stack_dag",
                           np.ascontiguousarray(np.stack([k.conj().T for k in mats])))

    @property
    def dim(self) -> int:
        return self.ops[0].shape[0]


def depolarising_channel(omega: float, qubit: int, total_qubits: int) -> KrausChannel:
    """Depolarising channel of strength ``omega`` on one qubit of a register.

    Kraus operators sqrt(1 - 3*omega/4)*I and sqrt(omega/4) times each
    embedded Pauli. At omega = 0 the channel is the identity; at omega = 1
    it re-initialises the qubit to the maximally mixed state.
    """
    if not 0.0 <= omega <= 1.0:
        raise ConfigurationError(f"omega={omega} outside [0, 1]")
    dim = 2 ** total_qubits
    ops = [math.sqrt(1.0 - 0.75 * omega) * np.eye(dim, dtype=np.complex128)]
    weight = math.sqrt(0.25 * omega)
    for axis in ("x", "y", "z"):
        ops.append(weight * embedded_pauli(axis, qubit, total_qubits))
    return KrausChannel(tuple(ops))


def apply_channel(channel: KrausChannel, rho: DensityMatrix) -> DensityMatrix:
    """sum_k K_k rho K_k^dagger, revalidated as a density matrix."""
    if channel.dim != rho.dim:
        raise PreconditionError(f"channel dim {channel.dim} != state dim {rho.dim}")
    out = np.matmul(np.matmul(channel.stack, rho.mat), channel.stack_dag).sum(axis=0)
    return DensityMatrix(out, rho.num_qubits, tol=rho.tol)

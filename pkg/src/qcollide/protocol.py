"""The four-phase collision protocol on the joint chain+reservoir state.

One iteration applies, in order: (1) the exchange phase, a partial swap
between each chain qubit and its reservoir partner; (2) the depolarisation
phase on every reservoir qubit; (3) unitary transfer through the reservoir
Hamiltonian for one time step; (4) unitary transfer through the chain
Hamiltonian. Chain qubits occupy register positions 0..N-1, reservoir
qubits N..2N-1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import IntegrityError, PreconditionError
from .kernels import Kernels, get_kernels
from .model import ModelConfig, depolarising_channel, heisenberg_hamiltonian, partial_swap
from .numerics import DEFAULT_TOL, Tolerances
from .states import DensityMatrix

PHASE_EXCHANGE = "exchange"
PHASE_DEPOLARISE = "depolarise"
PHASE_TRANSFER_RESERVOIR = "transfer-reservoir"
PHASE_TRANSFER_CHAIN = "transfer-chain"
PHASES = (PHASE_EXCHANGE, PHASE_DEPOLARISE, PHASE_TRANSFER_RESERVOIR, PHASE_TRANSFER_CHAIN)


@dataclass(frozen=True)
class TrajectoryRecord:
    """Observables extracted after one full protocol iteration."""

    step: int
    chain_state: DensityMatrix
    end_to_end_coherence: complex | None
    aux: dict | None = None

    def __post_init__(self):
        if self.end_to_end_coherence is not None:
            # off-diagonal of a unit-trace PSD matrix is bounded by 1/2
            if abs(self.end_to_end_coherence) > 0.5 + 1e-9:
                raise PreconditionError(
                    f"coherence modulus {abs(self.end_to_end_coherence)} exceeds 1/2"
                )


def initial_joint_state(chain_init: DensityMatrix,
                        reservoir_state: DensityMatrix | None = None) -> DensityMatrix:
    """Joint state chain (x) reservoir; reservoir defaults to maximally mixed.

    A pure ``reservoir_state`` turns the run into a global-unitarity
    diagnostic (at omega = 0 the joint purity must then stay constant).
    """
    n = chain_init.num_qubits
    if reservoir_state is None:
        reservoir_state = DensityMatrix.maximally_mixed(n)
    if reservoir_state.num_qubits != n:
        raise PreconditionError(
            f"reservoir has {reservoir_state.num_qubits} qubits, chain has {n}"
        )
    joint = linalg.kron(chain_init.mat, reservoir_state.mat)
    return DensityMatrix(joint, 2 * n, tol=chain_init.tol)


class ProtocolEngine:
    """Immutable bundle of precomputed operators driving the iteration.

    Construction verifies that every precomputed unitary is unitary and
    that the two transfer propagators commute (they act on disjoint
    registers). ``integrity_checks`` re-validates trace, Hermiticity and
    positivity of the state after every phase; disable it for speed on
    long sweeps that are verified elsewhere.
    """

    def __init__(self, config: ModelConfig, integrity_checks: bool = True,
                 backend: str | None = None, tol: Tolerances = DEFAULT_TOL):
        self.config = config
        self.tol = tol
        self.integrity_checks = integrity_checks
        self.kernels: Kernels = get_kernels(backend)

        n = config.n_sites
        total = 2 * n
        self.num_chain_qubits = n
        self.total_qubits = total
        self.chain_dim = 2 ** n
        self.joint_dim = 2 ** total

        self.exchange_unitaries = tuple(
            partial_swap(config.eta, m, n + m, total) for m in range(n)
        )
        u_ex = np.eye(self.joint_dim, dtype=np.complex128)
        for u in self.exchange_unitaries:
            u_ex = u @ u_ex
        self.exchange_unitary = u_ex

        self.depolarising_channels = tuple(
            depolarising_channel(config.omega, n + m, total) for m in range(n)
        )

        self.chain_hamiltonian = heisenberg_hamiltonian(config.j_chain, 0, total)
        self.reservoir_hamiltonian = heisenberg_hamiltonian(config.j_res, n, total)
        self.chain_propagator = linalg.expm_hermitian(self.chain_hamiltonian, config.dt)
        self.reservoir_propagator = linalg.expm_hermitian(self.reservoir_hamiltonian, config.dt)

        self._verify_construction()

        self._u_ex = np.ascontiguousarray(self.exchange_unitary)
        self._u_ex_dag = linalg.dagger(self.exchange_unitary)
        self._u_res = np.ascontiguousarray(self.reservoir_propagator)
        self._u_res_dag = linalg.dagger(self.reservoir_propagator)
        self._u_chain = np.ascontiguousarray(self.chain_propagator)
        self._u_chain_dag = linalg.dagger(self.chain_propagator)
        self._channel_stacks = tuple(
            (ch.stack, ch.stack_dag) for ch in self.depolarising_channels
        )

    def _verify_construction(self):
        eye = np.eye(self.joint_dim)
        named = [("exchange unitary", self.exchange_unitary),
                 ("reservoir propagator", self.reservoir_propagator),
                 ("chain propagator", self.chain_propagator)]
        named += [(f"partial swap {m}", u) for m, u in enumerate(self.exchange_unitaries)]
        for name, u in named:
            defect = float(np.abs(u.conj().T @ u - eye).max())
            if defect > self.tol.unitarity:
                raise IntegrityError("construction", f"{name} unitarity defect {defect:.3e}")
        comm = self.reservoir_propagator @ self.chain_propagator \
            - self.chain_propagator @ self.reservoir_propagator
        defect = float(np.abs(comm).max())
        if defect > self.tol.unitarity:
            raise IntegrityError("construction", f"transfer propagators do not commute: {defect:.3e}")

    # --- evolution ------------------------------------------------------

    def _check(self, phase: str, rho: np.ndarray):
        k = self.kernels
        d = k.trace_defect(rho)
        if d > self.tol.trace:
            raise IntegrityError(phase, f"trace defect {d:.3e}")
        d = k.hermiticity_defect(rho)
        if d > self.tol.hermiticity:
            raise IntegrityError(phase, f"hermiticity defect {d:.3e}")
        lo = k.min_eigenvalue(rho)
        if lo < -self.tol.positivity:
            raise IntegrityError(phase, f"negative eigenvalue {lo:.3e}")

    def step_matrix(self, rho: np.ndarray) -> np.ndarray:
        """One full iteration on a raw joint-state matrix (the hot path)."""
        k = self.kernels
        check = self.integrity_checks
        rho = k.apply_unitary(self._u_ex, self._u_ex_dag, rho)
        if check:
            self._check(PHASE_EXCHANGE, rho)
        for stack, stack_dag in self._channel_stacks:
            rho = k.apply_kraus(stack, stack_dag, rho)
        if check:
            self._check(PHASE_DEPOLARISE, rho)
        rho = k.apply_unitary(self._u_res, self._u_res_dag, rho)
        if check:
            self._check(PHASE_TRANSFER_RESERVOIR, rho)
        rho = k.apply_unitary(self._u_chain, self._u_chain_dag, rho)
        if check:
            self._check(PHASE_TRANSFER_CHAIN, rho)
        return rho

    def step(self, rho: DensityMatrix) -> DensityMatrix:
        """One full iteration on a validated joint state."""
        if rho.num_qubits != self.total_qubits:
            raise PreconditionError(
                f"state has {rho.num_qubits} qubits, engine expects {self.total_qubits}"
            )
        out = self.step_matrix(np.array(rho.mat))
        return DensityMatrix(out, self.total_qubits, tol=self.tol)

    def chain_marginal(self, joint: np.ndarray) -> np.ndarray:
        """Reduced chain state of a raw joint matrix (environment traced out)."""
        return self.kernels.reduce_to_leading(joint, self.chain_dim, self.chain_dim)

    def end_to_end_coherence(self, chain_mat: np.ndarray) -> complex | None:
        """Matrix element between excitation-on-first-site and excitation-on-last-site."""
        if self.num_chain_qubits < 2:
            return None
        return complex(chain_mat[self.chain_dim // 2, 1])

    def _record(self, step: int, chain_mat: np.ndarray) -> TrajectoryRecord:
        chain_state = DensityMatrix(chain_mat, self.num_chain_qubits, tol=self.tol)
        return TrajectoryRecord(step, chain_state, self.end_to_end_coherence(chain_mat))

    def run(self, chain_init: DensityMatrix, steps: int) -> list[TrajectoryRecord]:
        """Iterate the protocol; record ``n`` holds observables after n steps.

        Record 0 holds the initial chain state, so ``steps=0`` returns a
        single record.
        """
        if chain_init.num_qubits != self.num_chain_qubits:
            raise PreconditionError(
                f"initial state has {chain_init.num_qubits} qubits, "
                f"chain has {self.num_chain_qubits}"
            )
        if steps < 0:
            raise PreconditionError(f"steps must be >= 0, got {steps}")
        records = [self._record(0, np.array(chain_init.mat))]
        joint = np.array(initial_joint_state(chain_init).mat)
        for k in range(1, steps + 1):
            joint = self.step_matrix(joint)
            records.append(self._record(k, self.chain_marginal(joint)))
        return records

    def run_fresh_reservoir(self, chain_init: DensityMatrix, steps: int) -> list[TrajectoryRecord]:
        """Reference evolution that discards and re-prepares the reservoir
        in the maximally mixed state before every iteration.

        This is the operational definition of a memoryless environment; at
        omega = 1 the ordinary run must reproduce it exactly.
        """
        if chain_init.num_qubits != self.num_chain_qubits:
            raise PreconditionError(
                f"initial state has {chain_init.num_qubits} qubits, "
                f"chain has {self.num_chain_qubits}"
            )
        xi = DensityMatrix.maximally_mixed(self.num_chain_qubits).mat
        records = [self._record(0, np.array(chain_init.mat))]
        chain = np.array(chain_init.mat)
        for k in range(1, steps + 1):
            joint = self.step_matrix(np.ascontiguousarray(np.kron(chain, xi)))
            chain = self.chain_marginal(joint)
            records.append(self._record(k, chain))
        return records

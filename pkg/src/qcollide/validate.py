"""Self-test battery of closed-form oracles.

Each check pits the library against an independently derived result: the
exponential form of the partial swap, Kraus completeness of the
depolarising channel, the exact alternation/geometric-decay laws of the
single-site model under a full swap, and the decoupled-chain propagator.
Operator builders are injectable so a deliberately broken builder must
make the corresponding check fail.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import linalg, model
from .model import ModelConfig
from .nonmarkov import antipodal_pair, blp_measure, paired_trajectory_distances
from .protocol import ProtocolEngine
from .transport import evolve_series


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def check_partial_swap_exponential_form(
        swap_builder: Callable = model.partial_swap) -> CheckResult:
    """cos(eta)*I + i*sin(eta)*SWAP must equal the Heisenberg-exchange exponential
    exp(i*eta/2) * exp(i*(eta/2)*(XX + YY + ZZ))."""
    name = "partial-swap-exponential-form"
    xx = linalg.kron(model.PAULI_X, model.PAULI_X)
    yy = linalg.kron(model.PAULI_Y, model.PAULI_Y)
    zz = linalg.kron(model.PAULI_Z, model.PAULI_Z)
    generator = -0.5 * (xx + yy + zz)
    worst = 0.0
    try:
        for eta in np.linspace(0.0, math.pi / 2, 9):
            direct = swap_builder(eta, 0, 1, 2)
            exponential = np.exp(1j * eta / 2) * linalg.expm_hermitian(generator, eta)
            worst = max(worst, float(np.abs(direct - exponential).max()))
    except Exception as exc:  # a broken builder counts as a failed check
        return CheckResult(name, False, f"builder raised {exc!r}")
    return CheckResult(name, worst <= 1e-10, f"max entrywise deviation {worst:.3e}")


def check_depolarising_completeness(
        channel_builder: Callable = model.depolarising_channel) -> CheckResult:
    """sum_k K_k^dagger K_k = I for every strength and embedding."""
    name = "depolarising-cptp"
    worst = 0.0
    try:
        for omega in np.linspace(0.0, 1.0, 11):
            for qubit, total in ((0, 1), (0, 2), (1, 2), (4, 6)):
                channel = channel_builder(float(omega), qubit, total)
                dim = channel.ops[0].shape[0]
                completeness = sum(k.conj().T @ k for k in channel.ops)
                worst = max(worst, float(np.abs(completeness - np.eye(dim)).max()))
    except Exception as exc:
        return CheckResult(name, False, f"builder raised {exc!r}")
    return CheckResult(name, worst <= 1e-12, f"max completeness defect {worst:.3e}")


def check_full_swap_alternation() -> CheckResult:
    """At full swap strength and zero depolarisation the antipodal distance
    series alternates exactly 1, 0, 1, 0, ..."""
    name = "full-swap-alternation"
    engine = ProtocolEngine(ModelConfig(n_sites=1, eta=math.pi / 2, omega=0.0))
    a, b = antipodal_pair()
    series = paired_trajectory_distances(
        engine, a.to_density_matrix(), b.to_density_matrix(), 20)
    expected = np.array([1.0 if n % 2 == 0 else 0.0 for n in range(21)])
    worst = float(np.abs(series - expected).max())
    return CheckResult(name, worst <= 1e-10, f"max deviation from alternation {worst:.3e}")


def check_geometric_revival_law() -> CheckResult:
    """Single-site revivals decay geometrically: the measure over 20 steps
    equals sum_{k=1..10} (1 - omega)^k."""
    name = "geometric-revival-law"
    worst = 0.0
    a, b = antipodal_pair()
    for omega in (0.0, 0.25, 0.5, 0.75, 1.0):
        engine = ProtocolEngine(ModelConfig(n_sites=1, eta=math.pi / 2, omega=omega))
        series = paired_trajectory_distances(
            engine, a.to_density_matrix(), b.to_density_matrix(), 20)
        expected = sum((1.0 - omega) ** k for k in range(1, 11))
        worst = max(worst, abs(blp_measure(series) - expected))
    return CheckResult(name, worst <= 1e-9, f"max deviation from geometric law {worst:.3e}")


def check_decoupled_chain_oracle() -> CheckResult:
    """With the collision switched off the chain must follow the bare
    three-qubit propagator, independent of the depolarisation strength."""
    name = "decoupled-chain-oracle"
    steps = 40
    points = evolve_series(0.0, omega_grid=(0.0, 0.5, 1.0), max_iterations=steps)

    # independently constructed 8x8 chain Hamiltonian, pure-state evolution
    def kron3(a, b, c):
        return np.kron(np.kron(a, b), c)

    eye = np.eye(2, dtype=complex)
    h = np.zeros((8, 8), dtype=complex)
    for pauli in (model.PAULI_X, model.PAULI_Y, model.PAULI_Z):
        h += 0.5 * 10.0 * (kron3(pauli, pauli, eye) + kron3(eye, pauli, pauli))
    w, v = np.linalg.eigh(h)
    psi0 = np.zeros(8, dtype=complex)
    psi0[4] = 1.0
    worst = 0.0
    for point in points:
        u = (v * np.exp(-1j * w * 0.01 * point.iteration)) @ v.conj().T
        psi = u @ psi0
        oracle = abs(psi[4] * psi[1].conjugate())
        worst = max(worst, abs(point.coherence_abs - oracle))
    return CheckResult(name, worst <= 1e-10, f"max deviation from bare propagator {worst:.3e}")


def run_all_checks(swap_builder: Callable = model.partial_swap,
                   channel_builder: Callable = model.depolarising_channel) -> list[CheckResult]:
    return [
        check_partial_swap_exponential_form(swap_builder),
        check_depolarising_completeness(channel_builder),
        check_full_swap_alternation(),
        check_geometric_revival_law(),
        check_decoupled_chain_oracle(),
    ]

"""Density matrices with qubit-register metadata.

Construction validates the three state invariants (Hermiticity, unit
trace, positive semidefiniteness) against the central tolerance policy,
so a ``DensityMatrix`` in hand is always a physical state.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from collections.abc import Sequence

import numpy as np

from . import linalg
from .errors import PreconditionError
from .numerics import DEFAULT_TOL, Tolerances


@dataclass(frozen=True)
class DensityMatrix:
    mat: np.ndarray
    num_qubits: int
    tol: Tolerances = field(default=DEFAULT_TOL, repr=False, compare=False)

    def __post_init__(self):
        mat = linalg.as_operator(self.mat)
        if self.num_qubits < 1 or mat.shape[0] != 2 ** self.num_qubits:
            raise PreconditionError(
                f"dim {mat.shape[0]} does not match {self.num_qubits} qubits"
            )
        herm = float(np.abs(mat - mat.conj().T).max())
        if herm > self.tol.hermiticity:
            raise PreconditionError(f"not Hermitian: defect {herm:.3e}")
        tr = complex(np.trace(mat))
        if abs(tr - 1.0) > self.tol.trace:
            raise PreconditionError(f"trace {tr} is not 1 within {self.tol.trace:.1e}")
        lo = float(np.linalg.eigvalsh(mat)[0])
        if lo < -self.tol.positivity:
            raise PreconditionError(f"not positive semidefinite: min eigenvalue {lo:.3e}")
        mat.setflags(write=False)
        object.__setattr__(self, "mat", mat)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    @classmethod
    def from_vector(cls, psi, num_qubits: int | None = None) -> "DensityMatrix":
        """Projector |psi><psi| of a (normalised) state vector."""
        v = np.asarray(psi, dtype=np.complex128).ravel()
        norm = np.linalg.norm(v)
        if norm == 0:
            raise PreconditionError("zero vector has no associated state")
        v = v / norm
        n = num_qubits if num_qubits is not None else int(round(np.log2(v.size)))
        return cls(np.outer(v, v.conj()), n)

    @classmethod
    def computational_basis(cls, num_qubits: int, bits: str | int) -> "DensityMatrix":
        """Basis projector |b><b|; ``bits`` is a bitstring (qubit 0 leftmost) or an index."""
        index = int(bits, 2) if isinstance(bits, str) else int(bits)
        dim = 2 ** num_qubits
        if not 0 <= index < dim:
            raise PreconditionError(f"basis index {index} out of range for {num_qubits} qubits")
        mat = np.zeros((dim, dim), dtype=np.complex128)
        mat[index, index] = 1.0
        return cls(mat, num_qubits)

    @classmethod
    def maximally_mixed(cls, num_qubits: int) -> "DensityMatrix":
        dim = 2 ** num_qubits
        return cls(np.eye(dim, dtype=np.complex128) / dim, num_qubits)

    def partial_trace(self, keep: Sequence[int]) -> "DensityMatrix":
        """Reduced state on the kept qubits, in the order given."""
        reduced = linalg.partial_trace(self.mat, keep, self.num_qubits)
        return DensityMatrix(reduced, len(list(keep)), tol=self.tol)

    def purity(self) -> float:
        return float(np.trace(self.mat @ self.mat).real)

    def isclose(self, other: "DensityMatrix", tol: float | None = None) -> bool:
        return linalg.mats_close(self.mat, other.mat, tol or self.tol.entry_eq)

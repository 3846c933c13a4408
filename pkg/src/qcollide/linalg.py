"""Dense complex operator algebra.

Reference (pure numpy) implementations of the matrix operations everything
else is built from: tensor products, Hermitian spectral decomposition,
propagators of Hermitian generators, partial trace over arbitrary qubit
subsets, and the trace distance. These stay independent of the accelerated
kernels so the two routes can be checked against each other.

Convention used throughout the package: qubit 0 is the most significant
bit of the computational-basis index, so ``kron(a, b)`` places ``a`` on
the lower-numbered qubits.
"""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np

from .errors import DimensionLimitError, PreconditionError
from .numerics import DEFAULT_TOL, MAX_KRON_DIM


def as_operator(m) -> np.ndarray:
    """Coerce to a square, C-contiguous complex128 matrix."""
    a = np.ascontiguousarray(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise PreconditionError(f"expected a square matrix, got shape {a.shape}")
    return a


def mats_close(a, b, tol: float = DEFAULT_TOL.entry_eq) -> bool:
    """Entrywise equality within an absolute tolerance."""
    return bool(np.abs(np.asarray(a) - np.asarray(b)).max() <= tol)


def dagger(m: np.ndarray) -> np.ndarray:
    return np.ascontiguousarray(m.conj().T)


def kron(a, b, max_dim: int = MAX_KRON_DIM) -> np.ndarray:
    """Kronecker product with a guard against runaway dimensions."""
    a = as_operator(a)
    b = as_operator(b)
    if a.shape[0] * b.shape[0] > max_dim:
        raise DimensionLimitError(
            f"kron would produce dim {a.shape[0] * b.shape[0]} > limit {max_dim}"
        )
    return np.kron(a, b)


def kron_all(ops: Sequence[np.ndarray], max_dim: int = MAX_KRON_DIM) -> np.ndarray:
    """Left-to-right Kronecker product of a sequence of operators."""
    out = np.eye(1, dtype=np.complex128)
    for op in ops:
        out = kron(out, op, max_dim=max_dim)
    return out


def is_hermitian(m: np.ndarray, tol: float = DEFAULT_TOL.hermiticity) -> bool:
    return bool(np.abs(m - m.conj().T).max() <= tol)


def hermitian_eig(m, tol: float = DEFAULT_TOL.hermiticity):
    """Spectral decomposition of a Hermitian matrix.

    Returns ``(w, v)`` with eigenvalues ``w`` ascending and columns of ``v``
    the orthonormal eigenvectors, so that ``m = v @ diag(w) @ v_dagger``.
    """
    m = as_operator(m)
    if not is_hermitian(m, tol):
        defect = float(np.abs(m - m.conj().T).max())
        raise PreconditionError(f"matrix is not Hermitian (defect {defect:.3e} > {tol:.1e})")
    w, v = np.linalg.eigh(m)
    return w, v


def expm_hermitian(h, t: float, tol: float = DEFAULT_TOL.hermiticity) -> np.ndarray:
    """Unitary propagator exp(-i*h*t) of a Hermitian generator h.

    Computed exactly through the eigendecomposition; generators here are
    constant per run, so each propagator is built once and reused.
    """
    w, v = hermitian_eig(h, tol)
    return (v * np.exp(-1j * w * t)) @ v.conj().T


def partial_trace(rho, keep: Sequence[int], num_qubits: int) -> np.ndarray:
    """Reduce a multi-qubit operator to the qubits in ``keep`` (in that order).

    ``rho`` is a 2^n x 2^n matrix over ``num_qubits`` qubits with qubit 0
    the most significant bit. The reduction preserves the trace.
    """
    rho = as_operator(rho)
    n = num_qubits
    if rho.shape[0] != 2 ** n:
        raise PreconditionError(f"dim {rho.shape[0]} does not match {n} qubits")
    keep = list(keep)
    if not keep:
        raise PreconditionError("keep must name at least one qubit")
    if len(set(keep)) != len(keep):
        raise PreconditionError(f"keep contains duplicates: {keep}")
    if any(q < 0 or q >= n for q in keep):
        raise PreconditionError(f"keep {keep} out of range for {n} qubits")

    drop = [q for q in range(n) if q not in keep]
    row = list(range(n))
    col = [q if q in drop else n + q for q in range(n)]
    out = keep + [n + q for q in keep]
    reduced = np.einsum(rho.reshape((2,) * (2 * n)), row + col, out)
    k = len(keep)
    return np.ascontiguousarray(reduced.reshape(2 ** k, 2 ** k))


def trace_distance(r1, r2) -> float:
    """Half the trace norm of (r1 - r2); in [0, 1] for density matrices."""
    r1 = as_operator(r1)
    r2 = as_operator(r2)
    if r1.shape != r2.shape:
        raise PreconditionError(f"dimension mismatch: {r1.shape} vs {r2.shape}")
    return 0.5 * float(np.abs(np.linalg.eigvalsh(r1 - r2)).sum())

"""Hot kernels of the protocol loop, in two interchangeable flavours.

The numpy flavour is vectorised reference code; the numba flavour compiles
explicit loops (``nogil`` so trajectories parallelise across threads).
Both operate on contiguous complex128 arrays and must agree entrywise;
``tests/test_kernels.py`` enforces that. Daggered operators are passed in
precomputed because the callers apply the same unitary thousands of times.
"""

from __future__ import annotations

from typing import Callable, NamedTuple

import numpy as np

from .backend import ACTIVE_BACKEND


class Kernels(NamedTuple):
    name: str
    apply_unitary: Callable      # (u, u_dag, rho) -> u rho u_dag
    apply_kraus: Callable        # (ops, ops_dag, rho) -> sum_k ops[k] rho ops_dag[k]
    reduce_to_leading: Callable  # (rho, keep_dim, drop_dim) -> trace over trailing factor
    trace_distance: Callable     # (a, b) -> half the sum of |eigvalsh(a - b)|
    trace_defect: Callable       # (rho) -> |tr(rho) - 1|
    hermiticity_defect: Callable  # (rho) -> max|rho - rho_dagger|
    min_eigenvalue: Callable     # (rho) -> smallest eigenvalue


# --- pure numpy ---------------------------------------------------------

def _np_apply_unitary(u, u_dag, rho):
    return u @ rho @ u_dag


def _np_apply_kraus(ops, ops_dag, rho):
    return np.matmul(np.matmul(ops, rho), ops_dag).sum(axis=0)


def _np_reduce_to_leading(rho, keep_dim, drop_dim):
    r = rho.reshape(keep_dim, drop_dim, keep_dim, drop_dim)
    return np.trace(r, axis1=1, axis2=3)


def _np_trace_distance(a, b):
    return 0.5 * float(np.abs(np.linalg.eigvalsh(a - b)).sum())


def _np_trace_defect(rho):
    return abs(np.trace(rho) - 1.0)


def _np_hermiticity_defect(rho):
    return float(np.abs(rho - rho.conj().T).max())


def _np_min_eigenvalue(rho):
    return float(np.linalg.eigvalsh(rho)[0])


NUMPY_KERNELS = Kernels(
    "numpy",
    _np_apply_unitary,
    _np_apply_kraus,
    _np_reduce_to_leading,
    _np_trace_distance,
    _np_trace_defect,
    _np_hermiticity_defect,
    _np_min_eigenvalue,
)


# --- numba --------------------------------------------------------------

_numba_cache: Kernels | None = None


def _build_numba_kernels() -> Kernels:
    from numba import njit

    jit = njit(cache=True, nogil=True)

    @jit
    def apply_unitary(u, u_dag, rho):
        return np.dot(np.dot(u, rho), u_dag)

    @jit
    def apply_kraus(ops, ops_dag, rho):
        out = np.zeros_like(rho)
        for k in range(ops.shape[0]):
            out += np.dot(np.dot(ops[k], rho), ops_dag[k])
        return out

    @jit
    def reduce_to_leading(rho, keep_dim, drop_dim):
        out = np.zeros((keep_dim, keep_dim), dtype=rho.dtype)
        for i in range(keep_dim):
            for j in range(keep_dim):
                acc = 0.0 + 0.0j
                for k in range(drop_dim):
                    acc += rho[i * drop_dim + k, j * drop_dim + k]
                out[i, j] = acc
        return out

    @jit
    def trace_distance(a, b):
        w = np.linalg.eigvalsh(a - b)
        s = 0.0
        for x in w:
            s += abs(x)
        return 0.5 * s

    @jit
    def trace_defect(rho):
        acc = 0.0 + 0.0j
        for i in range(rho.shape[0]):
            acc += rho[i, i]
        return abs(acc - 1.0)

    @jit
    def hermiticity_defect(rho):
        worst = 0.0
        for i in range(rho.shape[0]):
            for j in range(rho.shape[1]):
                d = abs(rho[i, j] - np.conj(rho[j, i]))
                if d > worst:
                    worst = d
        return worst

    @jit
    def min_eigenvalue(rho):
        return np.linalg.eigvalsh(rho)[0]

    return Kernels(
        "numba",
        apply_unitary,
        apply_kraus,
        reduce_to_leading,
        trace_distance,
        trace_defect,
        hermiticity_defect,
        min_eigenvalue,
    )


def get_kernels(backend: str | None = None) -> Kernels:
    """Return the kernel set for ``backend`` ('numba', 'numpy', or None = active)."""
    global _numba_cache
    name = backend or ACTIVE_BACKEND
    if name == "numpy":
        return NUMPY_KERNELS
    if name == "numba":
        if _numba_cache is None:
            _numba_cache = _build_numba_kernels()
        return _numba_cache
    raise ValueError(f"unknown backend {name!r}")


ACTIVE_KERNELS = get_kernels()

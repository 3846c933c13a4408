"""Central numeric policy.

Every tolerance used by the library and its tests lives in one record so
that the two cannot drift apart.
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    entry_eq: float = 1e-12       # per-entry matrix equality
    hermiticity: float = 1e-10    # max|m - m_dagger|
    trace: float = 1e-10          # |tr(rho) - 1|
    positivity: float = 1e-10     # eigenvalues may undershoot zero by this much
    unitarity: float = 1e-10      # max|U_dagger U - I|
    cptp: float = 1e-12           # Kraus completeness defect
    partial_trace: float = 1e-12  # trace preservation under reduction


DEFAULT_TOL = Tolerances()

# Hard cap on the dimension a tensor product may reach (2^16 = 16 qubits).
MAX_KRON_DIM = 2 ** 16

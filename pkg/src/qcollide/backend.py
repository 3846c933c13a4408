"""Kernel backend selection.

The hot kernels in :mod:`qcollide.kernels` exist twice: a numba-compiled
version and a pure-numpy fallback. The environment variable
``QCOLLIDE_BACKEND`` picks which one the library binds at import time:

* unset or ``auto`` -- numba when importable, numpy otherwise;
* ``numba``         -- insist on numba, raise if it cannot be imported;
* ``numpy``         -- force the pure-numpy path.
"""

import os

ENV_VAR = "QCOLLIDE_BACKEND"


def numba_available() -> bool:
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


def select_backend() -> str:
    choice = os.environ.get(ENV_VAR, "auto").lower()
    if choice in ("", "auto"):
        return "numba" if numba_available() else "numpy"
    if choice == "numba":
        if not numba_available():
            raise ImportError(f"{ENV_VAR}=numba but numba is not importable")
        return "numba"
    if choice == "numpy":
        return "numpy"
    raise ValueError(f"unrecognised {ENV_VAR}={choice!r}; use 'numba' or 'numpy'")


ACTIVE_BACKEND = select_backend()

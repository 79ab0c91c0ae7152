"""Kernel backend selection.

DSPKIT_BACKEND=numpy forces the pure-numpy path, DSPKIT_BACKEND=numba forces
the JIT path (error when numba is missing); unset or `auto` prefers numba
when importable.  Read at call time so tests and benchmarks can switch.
"""

from __future__ import annotations

import os

from ..errors import InvalidInputError
from . import gn_numba, gn_numpy

__all__ = ["backend_name", "kernel"]


def backend_name() -> str:
    choice = os.environ.get("DSPKIT_BACKEND", "auto").lower()
    if choice in ("", "auto"):
        return "numba" if gn_numba.AVAILABLE else "numpy"
    if choice == "numba":
        if not gn_numba.AVAILABLE:
            raise InvalidInputError("DSPKIT_BACKEND=numba but numba is not importable")
        return "numba"
    if choice == "numpy":
        return "numpy"
    raise InvalidInputError(f"unknown DSPKIT_BACKEND {choice!r}")


def kernel():
    """The active run(G, Q0, multiplicative, iters, stop_tol) kernel."""
    return gn_numba.run if backend_name() == "numba" else gn_numpy.run

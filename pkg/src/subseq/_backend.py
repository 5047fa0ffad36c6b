"""Kernel backend selection.

The hot loops in :mod:`subseq._kernels` are compiled with numba when it is
importable.  Set ``SUBSEQ_BACKEND=numpy`` to force the pure-numpy path
(useful for debugging, or on platforms without an LLVM toolchain).
"""
import os

BACKEND_ENV = "SUBSEQ_BACKEND"

_requested = os.environ.get(BACKEND_ENV, "auto").strip().lower()
if _requested not in ("auto", "numba", "numpy"):
    raise ImportError(
        f"{BACKEND_ENV} must be one of auto, numba, numpy; got {_requested!r}"
    )

try:
    if _requested == "numpy":
        raise ImportError
    import numba

    HAVE_NUMBA = True
except ImportError:
    numba = None
    HAVE_NUMBA = False
    if _requested == "numba":
        raise ImportError(f"{BACKEND_ENV}=numba but numba is not installed")

BACKEND = "numba" if HAVE_NUMBA else "numpy"


def njit(func):
    """``numba.njit(cache=True)`` when available, identity otherwise."""
    if numba is None:
        return func
    return numba.njit(cache=True)(func)

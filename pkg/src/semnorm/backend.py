"""Compute-backend selection.

The hot kernels (per-type accumulation, prefix-norm scans) exist twice: a
numba ``@njit`` version and a pure-numpy fallback.  Which one runs is decided
once, at import time, from the ``SEMNORM_BACKEND`` environment variable:

``SEMNORM_BACKEND=numba``
    require numba; raise if it cannot be imported.
``SEMNORM_BACKEND=numpy``
    force the pure-numpy path (useful for debugging and benchmarking).
unset
    use numba when importable, numpy otherwise.

``SEMNORM_THREADS`` caps numba's thread pool for parallel kernels.  Both
backends produce results within the documented 1e-10 aggregation tolerance of
a serial reference; they are not guaranteed bit-identical to each other.
"""

from __future__ import annotations

import os

_VALID = ("numba", "numpy")


def _numba_importable() -> bool:
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


def _resolve() -> str:
    choice = os.environ.get("SEMNORM_BACKEND", "").strip().lower()
    if choice and choice not in _VALID:
        raise ValueError(
            f"SEMNORM_BACKEND must be one of {_VALID}, got {choice!r}"
        )
    if choice == "numba" and not _numba_importable():
        raise ImportError("SEMNORM_BACKEND=numba but numba is not installed")
    if not choice:
        choice = "numba" if _numba_importable() else "numpy"
    return choice


BACKEND: str = _resolve()


def thread_cap() -> int | None:
    """Parse SEMNORM_THREADS; None means leave numba's default alone."""
    raw = os.environ.get("SEMNORM_THREADS", "").strip()
    if not raw:
        return None
    n = int(raw)
    if n < 1:
        raise ValueError(f"SEMNORM_THREADS must be >= 1, got {n}")
    return n


def apply_thread_cap() -> None:
    """Apply SEMNORM_THREADS to numba's thread pool, if both are in play."""
    cap = thread_cap()
    if cap is None or BACKEND != "numba":
        return
    import numba

    numba.set_num_threads(min(cap, numba.config.NUMBA_NUM_THREADS))

"""Numba/numpy backend selection for the hot numeric kernels.

Every performance-critical kernel in this package exists twice: a scalar-loop
implementation compiled with ``numba.njit`` and a vectorized pure-numpy
fallback.  The active backend is chosen once at import time from the
``THETASRG_BACKEND`` environment variable (``numba`` or ``numpy``); ``numba``
is the default whenever numba imports cleanly.  Tests and the benchmark
harness can override the choice per call via ``set_backend`` /
``using_backend``.
"""

from __future__ import annotations

import contextlib
import os

_ENV_VAR = "THETASRG_BACKEND"
_VALID = ("numba", "numpy")


def _numba_available() -> bool:
    try:
        import numba  # noqa: F401
    except Exception:
        return False
    return True


def _initial_backend() -> str:
    choice = os.environ.get(_ENV_VAR, "").strip().lower()
    if choice:
        if choice not in _VALID:
            raise ValueError(
                f"{_ENV_VAR} must be one of {_VALID}, got {choice!r}"
            )
        if choice == "numba" and not _numba_available():
            raise ImportError(f"{_ENV_VAR}=numba but numba is not importable")
        return choice
    return "numba" if _numba_available() else "numpy"


_ACTIVE = _initial_backend()


def active_backend() -> str:
    """Name of the backend currently used by kernel dispatch."""
    return _ACTIVE


def set_backend(name: str) -> None:
    global _ACTIVE
    if name not in _VALID:
        raise ValueError(f"backend must be one of {_VALID}, got {name!r}")
    if name == "numba" and not _numba_available():
        raise ImportError("numba backend requested but numba is not importable")
    _ACTIVE = name


@contextlib.contextmanager
def using_backend(name: str):
    """Temporarily switch the kernel backend (test/benchmark helper)."""
    previous = _ACTIVE
    set_backend(name)
    try:
        yield
    finally:
        set_backend(previous)


def njit(*args, **kwargs):
    """``numba.njit`` when numba is importable, identity decorator otherwise.

    Kernels decorated with this are still only *called* when the numba
    backend is active, so the identity fallback exists purely to keep module
    import working on numba-free installs.
    """
    if _numba_available():
        import numba

        kwargs.setdefault("cache", True)
        return numba.njit(*args, **kwargs)
    if args and callable(args[0]):
        return args[0]

    def deco(fn):
        return fn

    return deco

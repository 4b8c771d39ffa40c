"""Backend selection for the numeric kernels.

Kernels in :mod:`affinecs.kernels` exist twice: a numba ``@njit`` loop and a
vectorised numpy expression. The numba path is used when numba imports and
``AFFINECS_DISABLE_NUMBA`` is unset (or ``0``/``false``).
"""
import os

_FALSEY = {"", "0", "false", "no", "off"}


def _env_disabled():
    return os.environ.get("AFFINECS_DISABLE_NUMBA", "").strip().lower() not in _FALSEY


try:
    import numba
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAVE_NUMBA = False


USE_NUMBA = HAVE_NUMBA and not _env_disabled()


def njit(*args, **kwargs):
    """``numba.njit`` when available, otherwise an identity decorator."""
    if HAVE_NUMBA:
        return numba.njit(*args, **kwargs)
    if len(args) == 1 and callable(args[0]) and not kwargs:
        return args[0]
    return lambda fn: fn


def backend_name():
    return "numba" if USE_NUMBA else "numpy"

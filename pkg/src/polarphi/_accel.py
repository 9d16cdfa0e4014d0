"""Numba acceleration plumbing.

Hot kernels ship in two builds: a numba ``@njit`` version and a pure-numpy
twin.  ``POLARPHI_NUMBA=0`` (or a missing numba install) switches every
dual-path routine to the numpy twin.  The flag is read once at import time;
``python -m polarphi.bench`` times both paths explicitly regardless of it.
"""

import os


def _flag_on(name: str, default: bool = True) -> bool:
    raw = os.environ.get(name)
    if raw is None:
        return default
    return raw.strip().lower() not in ("0", "false", "no", "off", "")


try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        # identity decorator, tolerant of both @njit and @njit(...) forms
        if args and callable(args[0]) and not kwargs:
            return args[0]

        def wrap(fn):
            return fn

        return wrap


USE_NUMBA = HAVE_NUMBA and _flag_on("POLARPHI_NUMBA")

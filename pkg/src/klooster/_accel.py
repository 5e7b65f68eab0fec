"""Acceleration lane selection.

Hot kernels ship in two lanes: compiled scalar loops (numba) and
vectorized numpy.  The environment variable ``KLOOSTER_NUMBA`` picks the
lane: ``0``/``false``/``off`` forces pure numpy, anything else (or the
default) uses numba whenever it imports.  Both lanes compute identical
results; see ``benchmarks/bench_kernels.py`` for the speed comparison.
"""

import os


def _decide() -> bool:
    flag = os.environ.get("KLOOSTER_NUMBA", "").strip().lower()
    if flag in {"0", "false", "off", "no"}:
        return False
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


NUMBA_ENABLED = _decide()

if NUMBA_ENABLED:
    from numba import njit
else:
    def njit(*args, **kwargs):  # noqa: ARG001 - mirror numba's signature
        """No-op decorator so kernels stay importable without numba."""
        if args and callable(args[0]):
            return args[0]

        def wrap(fn):
            return fn

        return wrap

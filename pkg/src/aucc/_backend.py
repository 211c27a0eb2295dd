"""Kernel selection.

The compiled extension is preferred. Set ``AUCC_PURE_PYTHON=1`` before import
to force the numpy kernels; :func:`use` switches at runtime (tests and the
benchmark exercise both).
"""
import os

from . import _kernels_py

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

HAVE_COMPILED = _compiled is not None

_active = _kernels_py if (_compiled is None or os.environ.get("AUCC_PURE_PYTHON")) else _compiled


def name():
    return "cython" if _active is _compiled else "python"


def available():
    return ["cython", "python"] if HAVE_COMPILED else ["python"]


def use(backend):
    """Select ``"cython"`` or ``"python"`` kernels; returns the previous name."""
    global _active
    previous = name()
    if backend == "cython":
        if not HAVE_COMPILED:
            raise RuntimeError("compiled kernels are not built; reinstall with Cython available")
        _active = _compiled
    elif backend == "python":
        _active = _kernels_py
    else:
        raise ValueError(f"unknown backend {backend!r}")
    return previous


def sweep_pairs(pair_i, pair_j, labels, block_ends):
    return _active.sweep_pairs(pair_i, pair_j, labels, block_ends)


def sweep_flags(flags, block_ends):
    return _active.sweep_flags(flags, block_ends)


def lance_williams(dist, method):
    return _active.lance_williams(dist, method)


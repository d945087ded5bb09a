"""Radio kernel dispatch: the compiled extension when built, else pure Python.

Set ``KGAP_PURE_PYTHON=1`` to force the fallback.
"""
import os
from array import array

from . import _radio_py

if os.environ.get("KGAP_PURE_PYTHON"):
    _kernel = _radio_py
else:
    try:
        from . import _radio as _kernel
    except ImportError:  # extension not built
        _kernel = _radio_py

BACKEND = "compiled" if _kernel is not _radio_py else "python"
NEG_INF = float("-inf")


def kernels(backend=None):
    """Return the kernel module for ``backend`` ('compiled', 'python' or None for default)."""
    if backend is None:
        return _kernel
    if backend == "python":
        return _radio_py
    if backend == "compiled":
        from . import _radio

        return _radio
    raise ValueError(f"unknown backend {backend!r}")


def set_backend(name: str) -> str:
    """Switch the default kernel module; returns the previous backend name."""
    global _kernel, BACKEND
    previous = BACKEND
    _kernel = kernels(name)
    BACKEND = name
    return previous


def doubles(values) -> array:
    return array("d", values)


def path_rssi(eirp: float, ref_loss: float, exponent: float, d: float) -> float:
    return _kernel.path_rssi(eirp, ref_loss, exponent, d)


def rssi_matrix(sx, sy, ax, ay, arange, aeirp, ref_loss, exponent, backend=None) -> array:
    out = array("d", bytes(8 * len(sx) * len(ax)))
    kernels(backend).rssi_matrix(
        doubles(sx), doubles(sy), doubles(ax), doubles(ay), doubles(arange), doubles(aeirp),
        ref_loss, exponent, out,
    )
    return out


def strongest(sx, sy, ax, ay, arange, aeirp, allowed, ref_loss, exponent, backend=None) -> array:
    out = array("l", bytes(array("l").itemsize * len(sx)))
    kernels(backend).strongest(
        doubles(sx), doubles(sy), doubles(ax), doubles(ay), doubles(arange), doubles(aeirp),
        array("B", [1 if a else 0 for a in allowed]), ref_loss, exponent, out,
    )
    return out

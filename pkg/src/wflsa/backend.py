"""Selects the kernel backend at import time.

The compiled extension is preferred when present; the numpy fallback keeps the
package fully functional without it. Set ``WFLSA_BACKEND=python`` to force the
fallback (useful for benchmarking the two against each other), or
``WFLSA_BACKEND=cython`` to fail loudly when the extension is missing.
"""
import os

from . import _pykernels

_requested = os.environ.get("WFLSA_BACKEND", "").strip().lower()

if _requested == "python":
    _impl = _pykernels
elif _requested == "cython":
    from . import _cykernels as _impl
elif _requested in ("", "auto"):
    try:
        from . import _cykernels as _impl
    except ImportError:
        _impl = _pykernels
else:
    raise ValueError(f"unknown WFLSA_BACKEND value: {_requested!r}")

BACKEND = _impl.BACKEND_NAME
apply_d = _impl.apply_d
apply_dt = _impl.apply_dt
admm_run = _impl.admm_run


def get_kernels(name):
    """Return the kernel module for ``name`` ('python' or 'cython').

    Raises ImportError when the compiled backend is requested but absent.
    """
    if name == "python":
        return _pykernels
    if name == "cython":
        from . import _cykernels

        return _cykernels
    raise ValueError(f"unknown backend: {name!r}")


def available_backends():
    """Names of the kernel backends importable in this build, fallback first."""
    names = ["python"]
    try:
        from . import _cykernels  # noqa: F401
    except ImportError:
        pass
    else:
        names.append("cython")
    return names

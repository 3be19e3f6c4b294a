"""Backend selection for the hot evaluation loops.

The compiled extension is used when it was built and ``YBSYS_PURE_PYTHON``
is unset; otherwise the NumPy fallback.  Object-dtype (big integer) inputs
always go to the fallback.
"""
import os

import numpy as np

from . import _pykernels

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

if _compiled is not None and not os.environ.get("YBSYS_PURE_PYTHON"):
    BACKEND = "cython"
    _default = _compiled
else:
    BACKEND = "python"
    _default = _pykernels

__all__ = ["BACKEND", "available_backends", "survivors", "evaluate", "get_backend"]


def available_backends():
    return ["python"] + (["cython"] if _compiled is not None else [])


def get_backend(name=None):
    if name is None:
        return _default
    if name == "python":
        return _pykernels
    if name == "cython":
        if _compiled is None:
            raise RuntimeError("compiled kernels are not built")
        return _compiled
    raise ValueError(f"unknown backend {name!r}")


def _prepare(vals, coef, idx, eq_start):
    return (np.asarray(coef, dtype=np.int64), np.ascontiguousarray(idx, dtype=np.int32),
            np.ascontiguousarray(eq_start, dtype=np.int32))


def survivors(vals, coef, idx, eq_start, modulus=0, backend=None):
    """Mask of candidates whose equations vanish at all points; ``vals[c, point, var]``."""
    impl = get_backend(backend)
    if vals.dtype == object:
        return _pykernels.survivors(vals, np.asarray(coef, dtype=object), idx, eq_start, modulus)
    coef, idx, eq_start = _prepare(vals, coef, idx, eq_start)
    return impl.survivors(np.ascontiguousarray(vals, dtype=np.int64), coef, idx, eq_start,
                          int(modulus))


def evaluate(vals, coef, idx, eq_start, modulus=0, backend=None):
    impl = get_backend(backend)
    if vals.dtype == object:
        return _pykernels.evaluate(vals, np.asarray(coef, dtype=object), idx, eq_start, modulus)
    coef, idx, eq_start = _prepare(vals, coef, idx, eq_start)
    return impl.evaluate(np.ascontiguousarray(vals, dtype=np.int64), coef, idx, eq_start,
                         int(modulus))

"""Batch group kernels: the compiled extension when available, numpy otherwise.

Set ``VILENKIN_HARDY_PURE=1`` to force the numpy implementation.
"""

import os

from . import _kernels_py

PURE_ENV = "VILENKIN_HARDY_PURE"
KIND_CODES = {"qp": 0, "heisenberg": 1, "engel": 2, "unitriangular": 3}

_impl = _kernels_py
BACKEND = "numpy"
if os.environ.get(PURE_ENV, "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _compiled
    except ImportError:
        pass
    else:
        _impl = _compiled
        BACKEND = "cython"


def backend_module(name=None):
    if name is None:
        return _impl
    if name == "numpy":
        return _kernels_py
    if name == "cython":
        from . import _kernels as mod

        return mod
    raise ValueError(f"unknown backend {name!r}")


def _inv2(mod):
    return pow(2, -1, mod) if mod % 2 else 0


def mul(model, A, B, mod, impl=None):
    impl = impl or _impl
    return impl.mul_batch(KIND_CODES[model.kind], model.dim_param, A, B, mod, _inv2(mod))


def inv(model, A, mod, impl=None):
    impl = impl or _impl
    return impl.inv_batch(KIND_CODES[model.kind], model.dim_param, A, mod, _inv2(mod))


def shells(model, A, L, impl=None):
    impl = impl or _impl
    return impl.shell_batch(A, tuple(model.weights), model.p, L)

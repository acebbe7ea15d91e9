"""Backend selection for the integer kernels.

Prefers the compiled `tropcyl._speedups` module when it was built, falling
back to `tropcyl._kernels_py` otherwise, or when the compiled kernel
signals a potential int64 overflow, or when TROPCYL_FORCE_PURE is set.
"""

import os

from . import _kernels_py as _py

try:
    from . import _speedups as _c
except ImportError:
    _c = None

if os.environ.get("TROPCYL_FORCE_PURE"):
    _c = None

HAVE_COMPILED = _c is not None
BACKEND = "compiled" if HAVE_COMPILED else "pure"


def monodromy_product(ds):
    ds = tuple(ds)
    if _c is not None:
        try:
            return _c.monodromy_product(ds)
        except OverflowError:
            pass
    return _py.monodromy_product(ds)


def fan_closure_vectors(ds):
    ds = tuple(ds)
    if _c is not None:
        try:
            return _c.fan_closure_vectors(ds)
        except OverflowError:
            pass
    return _py.fan_closure_vectors(ds)


def verify_toric_grid(l, lo, hi):
    if _c is not None:
        try:
            return _c.verify_toric_grid(l, lo, hi)
        except OverflowError:
            pass
    return _py.verify_toric_grid(l, lo, hi)

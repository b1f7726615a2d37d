"""Kernel backend selection.

The compiled extension is used when importable; otherwise the numpy fallback
takes over.  Set ``ADJMECH_BACKEND=python`` or ``ADJMECH_BACKEND=cython`` to
force one side (forcing the extension raises if it was never built).  Both
backends produce bitwise-identical results; the choice only affects speed.
"""

import os

from . import pykernels

_requested = os.environ.get("ADJMECH_BACKEND", "auto").strip().lower() or "auto"

if _requested == "python":
    _impl = pykernels
    BACKEND = "python"
elif _requested == "cython":
    from . import _ckernels as _impl  # noqa: F401  (ImportError is the contract)

    BACKEND = "cython"
elif _requested == "auto":
    try:
        from . import _ckernels as _impl
        BACKEND = "cython"
    except ImportError:
        _impl = pykernels
        BACKEND = "python"
else:
    raise ValueError(
        f"ADJMECH_BACKEND must be 'cython', 'python' or 'auto', got {_requested!r}"
    )

deviation_partials = _impl.deviation_partials
row_max = _impl.row_max
reserve_auction = _impl.reserve_auction
best_response_bids = _impl.best_response_bids


def backend_name() -> str:
    """Active kernel backend: 'cython' or 'python'."""
    return BACKEND

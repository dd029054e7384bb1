"""Kernel dispatch: numba fast path with a pure-numpy fallback.

The backend is chosen once at import time from the HEADCHECK_KERNELS
environment variable: ``numpy`` forces the fallback, ``numba`` (the
default) uses the jitted kernels and falls back automatically when numba
is not importable.  Both backends produce identical results on the
integer kernels and agree to float rounding on ``best_cosine``;
``benchmarks/bench_kernels.py`` compares their speed.
"""

from __future__ import annotations

import os

from . import numpy_impl

_requested = os.environ.get("HEADCHECK_KERNELS", "numba").strip().lower()

if _requested == "numpy":
    _impl = numpy_impl
    backend = "numpy"
elif _requested == "numba":
    try:
        from . import numba_impl as _impl  # type: ignore[no-redef]

        backend = "numba"
    except ImportError:
        _impl = numpy_impl
        backend = "numpy"
else:
    raise ValueError(
        f"HEADCHECK_KERNELS must be 'numba' or 'numpy', got {_requested!r}"
    )

subseq_contains = _impl.subseq_contains
advance_projection = _impl.advance_projection
pattern_match_matrix = _impl.pattern_match_matrix
best_cosine = _impl.best_cosine


def warmup() -> None:
    """Trigger JIT compilation up front (no-op on the numpy backend)."""
    if backend == "numba":
        _impl.warmup()

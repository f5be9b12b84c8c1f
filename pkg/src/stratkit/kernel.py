"""Backend selection for the exact reduction kernel.

The compiled ``_ckernel`` is used when it imports; otherwise, or when
``STRATKIT_KERNEL=python`` is set, the pure-Python ``_pykernel`` runs.
Both return identical results; the compiled one falls back to Python on
64-bit overflow.
"""

from __future__ import annotations

import logging
import os

from . import _pykernel
from .errors import StratError

log = logging.getLogger(__name__)

try:
    from . import _ckernel
except ImportError:  # extension not built
    _ckernel = None


class MatrixTooLarge(StratError, RuntimeError):
    pass


def backend() -> str:
    if _ckernel is not None and os.environ.get("STRATKIT_KERNEL", "").lower() != "python":
        return "cython"
    return "python"


def _cap() -> int | None:
    raw = os.environ.get("STRATKIT_MAX_MATRIX")
    return int(raw) if raw else None


def _check_cap(columns, nrows):
    cap = _cap()
    if cap is not None and max(len(columns), nrows) > cap:
        raise MatrixTooLarge(
            f"matrix {nrows}x{len(columns)} exceeds STRATKIT_MAX_MATRIX={cap}")


def reduce_columns(columns, nrows: int, track: bool = False, clear=(), impl: str | None = None):
    """Exact column reduction; see ``_pykernel.reduce_columns``."""
    _check_cap(columns, nrows)
    which = impl or backend()
    if which == "cython":
        if _ckernel is None:
            raise RuntimeError("compiled kernel is not available")
        try:
            return _ckernel.reduce_columns(columns, nrows, track, clear)
        except OverflowError:
            log.debug("compiled kernel overflowed; rerunning in Python")
    return _pykernel.reduce_columns(columns, nrows, track, clear)


def rank(columns, nrows: int, impl: str | None = None) -> int:
    if not columns or nrows == 0:
        return 0
    pivots, _, _ = reduce_columns(columns, nrows, impl=impl)
    return len(pivots)


def kernel_basis(columns, nrows: int, impl: str | None = None) -> list[dict[int, int]]:
    """Integer basis of the null space of the matrix with the given columns."""
    _, _, cycles = reduce_columns(columns, nrows, track=True, impl=impl)
    return [dict(zip(r, v)) for r, v in cycles.values()]

"""Backend selection for the numerical hot kernels.

Imports the compiled extension ``chivdw._ckern`` when it is available and
falls back to the pure-numpy twin ``chivdw._pykern`` otherwise.  Setting the
environment variable ``CHIVDW_FORCE_PYTHON=1`` forces the fallback (useful
for benchmarking and debugging).  Both backends implement identical
signatures and are cross-checked at machine precision (rtol 1e-14) in the
test suite; they may differ by operation-order noise.
"""

from __future__ import annotations

import os

from chivdw import _pykern

_FORCE_PY = os.environ.get("CHIVDW_FORCE_PYTHON", "") not in ("", "0")

if not _FORCE_PY:
    try:
        from chivdw import _ckern as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _pykern
else:
    _impl = _pykern

response_tensors = _impl.response_tensors
free_blocks = _impl.free_blocks
trace4 = _impl.trace4


def backend_name() -> str:
    """Name of the active backend: ``"compiled"`` or ``"python"``."""
    return _impl.BACKEND


def python_backend():
    """The pure-python backend module (always available)."""
    return _pykern


def compiled_backend():
    """The compiled backend module, or None when not built."""
    try:
        from chivdw import _ckern  # type: ignore[attr-defined]
        return _ckern
    except ImportError:
        return None

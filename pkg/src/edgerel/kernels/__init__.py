"""Hot-kernel backend selection.

The compiled extension (``_speedups``, Cython) is preferred when it was
built; otherwise the pure-Python implementations are used.  Set
``EDGEREL_BACKEND=pure`` or ``EDGEREL_BACKEND=compiled`` to force a lane
(``compiled`` raises if the extension is unavailable).  Both lanes produce
bit-identical results; see ``benchmarks/compare_backends.py`` for the
performance difference.
"""

from __future__ import annotations

import os

from . import _pure


def _select():
    forced = os.environ.get("EDGEREL_BACKEND")
    if forced == "pure":
        return _pure
    try:
        from . import _speedups
    except ImportError:
        if forced == "compiled":
            raise ImportError(
                "EDGEREL_BACKEND=compiled but the compiled kernels are not built; "
                "reinstall with a C compiler available") from None
        return _pure
    return _speedups


_impl = _select()

enumerate_feasible = _impl.enumerate_feasible
mc_chunk = _impl.mc_chunk
BACKEND = _impl.BACKEND


def available_backends() -> dict[str, object]:
    """Importable kernel modules keyed by backend name."""
    lanes = {"pure": _pure}
    try:
        from . import _speedups
        lanes["compiled"] = _speedups
    except ImportError:
        pass
    return lanes

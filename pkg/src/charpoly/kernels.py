"""Kernel dispatch: compiled extension when available, pure Python otherwise.

Set ``CHARPOLY_PURE=1`` to force the pure-Python implementation.
"""

from __future__ import annotations

import os

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py

if os.environ.get("CHARPOLY_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _compiled  # type: ignore[attr-defined]

        _impl = _compiled
        BACKEND = "compiled"
    except ImportError:
        pass

perm_statistics = _impl.perm_statistics
chain_cycle_counts = _impl.chain_cycle_counts
count_compatible_chains = _impl.count_compatible_chains

_BACKENDS = {"python": _kernels_py}
if BACKEND == "compiled":
    _BACKENDS["compiled"] = _impl
else:
    try:
        from . import _kernels as _maybe  # type: ignore[attr-defined]

        _BACKENDS["compiled"] = _maybe
    except ImportError:
        pass


def available_backends() -> dict:
    """Backends importable in this environment, keyed by name."""
    return dict(_BACKENDS)

"""Backend selection for the hot checking kernels.

The compiled ``_ccore`` extension is used when it imports; otherwise the
pure-Python ``_pycore`` module.  Set ``FAULTDOM_PURE=1`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _pycore

_backend = _pycore
if os.environ.get("FAULTDOM_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _ccore as _backend  # type: ignore[no-redef]
    except ImportError:
        _backend = _pycore

BACKEND: str = _backend.BACKEND


def backend_module():
    return _backend


def prepare(G, backend=None):
    mod = backend or _backend
    return mod.prepare(G.n, G.masks, G.closed_masks, G.close_pairs)


def handle(G):
    return G._kernel_handle


def find_violation(G, s: int, variant: int):
    return _backend.find_violation(G._kernel_handle, s, variant)


def deficit_score(G, s: int, variant: int) -> int:
    return _backend.deficit_score(G._kernel_handle, s, variant)


def code_distance(G, s: int) -> int:
    return _backend.code_distance(G._kernel_handle, s)

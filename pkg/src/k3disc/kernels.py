"""Kernel dispatch: compiled ``_kernels`` when importable, else ``_pykernels``.

Set ``K3DISC_PURE_PYTHON=1`` to force the fallback.  Compiled calls are only
made when every intermediate value provably fits in a signed 64-bit integer.
"""
from __future__ import annotations

import os

from . import _pykernels

_compiled = None
if not os.environ.get("K3DISC_PURE_PYTHON"):
    try:
        from . import _kernels as _compiled  # type: ignore[attr-defined]
    except ImportError:  # pragma: no cover - depends on the build
        _compiled = None

BACKEND = "cython" if _compiled is not None else "python"
_LIMIT = 1 << 62


def _max_abs(rows) -> int:
    return max((abs(x) for row in rows for x in row), default=0)


def box_hits(gram, bound, target, offset=None, step=1, limit=1, skip_zero=True):
    n = len(gram)
    if _compiled is not None and n:
        ymax = (max((abs(x) for x in offset), default=0) if offset is not None else 0) + abs(step) * bound * 2
        g = _max_abs(gram)
        if n * n * (g + 1) * (ymax + 1) ** 2 * 4 < _LIMIT and abs(target) < _LIMIT:
            return _compiled.box_hits(gram, bound, target, offset, step, limit, skip_zero)
    return _pykernels.box_hits(gram, bound, target, offset, step, limit, skip_zero)


def affine_values_mod(gram, m, offset, step, span):
    if _compiled is not None and m < (1 << 30):
        g = [[x % m for x in row] for row in gram]
        return _compiled.affine_values_mod(g, m, [x % m for x in offset], step % m, span)
    return _pykernels.affine_values_mod(gram, m, offset, step, span)


def sumset_mod(a, b, m):
    if _compiled is not None:
        return _compiled.sumset_mod(a, b, m)
    return _pykernels.sumset_mod(a, b, m)

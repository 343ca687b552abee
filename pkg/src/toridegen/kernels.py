"""Backend selection for the enumeration kernels.

The compiled extension is used when it imports; otherwise the pure-Python
twins take over.  Set ``TORIDEGEN_PURE=1`` to force the fallback.
"""
from __future__ import annotations

import os

from . import _kernels_py

_py = _kernels_py
_c = None
if os.environ.get("TORIDEGEN_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _c
    except ImportError:
        _c = None

BACKEND = "cython" if _c is not None else "python"

# C kernels use 64-bit accumulators; stay well clear of overflow
_C_LIMIT = 1 << 50


def backends() -> dict:
    out = {"python": _py}
    if _c is not None:
        out["cython"] = _c
    return out


def _small(*values) -> bool:
    return all(abs(v) < _C_LIMIT for v in values)


def contingency_tables(d: int, m: int, backend=None):
    mod = _pick(backend)
    if mod is _c and not _small(m):
        mod = _py
    return mod.contingency_tables(d, m)


def box_points(lo, hi, normals, offsets, backend=None):
    mod = _pick(backend)
    if mod is _c:
        mags = [abs(v) for v in lo] + [abs(v) for v in hi]
        span = max(mags, default=0)
        nmax = max((abs(a) for row in normals for a in row), default=0)
        if not _small(span * nmax * max(len(lo), 1), *offsets):
            mod = _py
    return mod.box_points(lo, hi, normals, offsets)


def nonneg_relations(free_vecs, free_w, adj, det, basis_w, bound, backend=None):
    if any(w <= 0 for w in free_w) or any(w <= 0 for w in basis_w):
        raise ValueError("relation weights must be positive")
    mod = _pick(backend)
    if mod is _c:
        vmax = max((abs(a) for v in free_vecs for a in v), default=0)
        amax = max((abs(a) for row in adj for a in row), default=0)
        n = max(len(adj), 1)
        xmax = vmax * bound * n
        if not _small(xmax * amax * n, det, bound * max(list(free_w) + list(basis_w) + [1])):
            mod = _py
    return mod.nonneg_relations(free_vecs, free_w, adj, det, basis_w, bound)


def _pick(backend):
    if backend is None:
        return _c if _c is not None else _py
    return backends()[backend]

"""Backend selection for the hot loops.

The compiled extension is used when it imports and the integer inputs fit
the int64-safe range; otherwise the pure-Python twin runs.  Set
``GEOLABEL_PURE=1`` to force the pure-Python backend.
"""

from __future__ import annotations

import os

import numpy as np

from . import _pykernels

try:  # pragma: no cover - depends on the build
    if os.environ.get("GEOLABEL_PURE"):
        raise ImportError("pure backend forced")
    from . import _ckernels
except ImportError:  # pragma: no cover
    _ckernels = None

BACKEND = "compiled" if _ckernels is not None else "python"

# products of two coordinate differences must fit comfortably in int64
INT64_SAFE = 1 << 28


def _fits(*arrays, bound=INT64_SAFE) -> bool:
    for a in arrays:
        if isinstance(a, np.ndarray) and a.dtype.kind in "iu":
            if a.size and int(np.abs(a).max()) >= bound:
                return False
            continue
        for v in a:
            if not -bound < v < bound:
                return False
    return True


def _arr(a):
    return np.ascontiguousarray(np.asarray(a, dtype=np.int64))


def _pick(*arrays, force=None):
    if force == "python" or _ckernels is None:
        return _pykernels, False
    if force == "compiled":
        return _ckernels, True
    if _fits(*arrays):
        return _ckernels, True
    return _pykernels, False


def disk_adjacency(x, y, rad, force=None):
    mod, comp = _pick(x, y, rad, force=force)
    args = [_arr(a) for a in (x, y, rad)] if comp else (x, y, rad)
    return mod.disk_adjacency(*args)


def segment_adjacency(ax, ay, bx, by, force=None):
    mod, comp = _pick(ax, ay, bx, by, force=force)
    args = [_arr(a) for a in (ax, ay, bx, by)] if comp else (ax, ay, bx, by)
    return mod.segment_adjacency(*args)


def polygon_visibility(x, y, force=None):
    x = [2 * v for v in x]
    y = [2 * v for v in y]
    mod, comp = _pick(x, y, force=force)
    return mod.polygon_visibility(_arr(x), _arr(y)) if comp else mod.polygon_visibility(x, y)


def terrain_visibility(x, y, force=None):
    mod, comp = _pick(x, y, force=force)
    return mod.terrain_visibility(_arr(x), _arr(y)) if comp else mod.terrain_visibility(x, y)


def find_crossing(x, y, force=None):
    mod, comp = _pick(x, y, force=force)
    return mod.find_crossing(_arr(x), _arr(y)) if comp else mod.find_crossing(x, y)


def classify_disks_box(cx, cy, r2, box, force=None):
    x0, y0, x1, y1 = box
    mod, comp = _pick(cx, cy, box, force=force)
    if comp and _fits(r2, bound=1 << 60):
        return mod.classify_disks_box(_arr(cx), _arr(cy), _arr(r2), x0, y0, x1, y1)
    return _pykernels.classify_disks_box(cx, cy, r2, x0, y0, x1, y1)


def classify_halfplanes_box(a, b, c, box, force=None):
    x0, y0, x1, y1 = box
    mod, comp = _pick(box, force=force)
    # |a*x| < 2**59 and |c| < 2**60 keep the corner sums inside int64
    if comp and _fits(a, b, bound=1 << 31) and _fits(c, bound=1 << 60):
        return mod.classify_halfplanes_box(_arr(a), _arr(b), _arr(c), x0, y0, x1, y1)
    return _pykernels.classify_halfplanes_box(a, b, c, x0, y0, x1, y1)


def decode_biclique_pairs(offsets, bids, sides, us, vs, force=None):
    if force == "python" or _ckernels is None:
        return _pykernels.decode_biclique_pairs(offsets, bids, sides, us, vs)
    return _ckernels.decode_biclique_pairs(
        _arr(offsets), _arr(bids), np.ascontiguousarray(np.asarray(sides, dtype=np.int8)),
        _arr(us), _arr(vs))

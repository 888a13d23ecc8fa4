# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops over int64 grid coordinates.

Callers guarantee |coordinate| < 2**28 so every product below stays
inside int64; see geolabel.kernels for the dispatch and range check.
"""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, uint8_t, int8_t

ctypedef int64_t i64


cdef inline int sgn(i64 v) nogil:
    return (v > 0) - (v < 0)


cdef inline int orient(i64 ax, i64 ay, i64 bx, i64 by, i64 cx, i64 cy) nogil:
    return sgn((bx - ax) * (cy - ay) - (by - ay) * (cx - ax))


cdef inline bint on_seg(i64 ax, i64 ay, i64 bx, i64 by, i64 px, i64 py) nogil:
    # p collinear with ab assumed
    return (min(ax, bx) <= px <= max(ax, bx)) and (min(ay, by) <= py <= max(ay, by))


cdef inline bint seg_meet(i64 ax, i64 ay, i64 bx, i64 by,
                          i64 cx, i64 cy, i64 dx, i64 dy) nogil:
    cdef int o1 = orient(ax, ay, bx, by, cx, cy)
    cdef int o2 = orient(ax, ay, bx, by, dx, dy)
    cdef int o3 = orient(cx, cy, dx, dy, ax, ay)
    cdef int o4 = orient(cx, cy, dx, dy, bx, by)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    if o1 == 0 and on_seg(ax, ay, bx, by, cx, cy):
        return True
    if o2 == 0 and on_seg(ax, ay, bx, by, dx, dy):
        return True
    if o3 == 0 and on_seg(cx, cy, dx, dy, ax, ay):
        return True
    if o4 == 0 and on_seg(cx, cy, dx, dy, bx, by):
        return True
    return False


def disk_adjacency(i64[::1] x, i64[::1] y, i64[::1] rad):
    cdef Py_ssize_t n = x.shape[0], i, j
    cdef i64 dx, dy, s
    out = np.zeros((n, n), dtype=np.uint8)
    cdef uint8_t[:, ::1] m = out
    with nogil:
        for i in range(n):
            for j in range(i + 1, n):
                dx = x[i] - x[j]
                dy = y[i] - y[j]
                s = rad[i] + rad[j]
                if dx * dx + dy * dy <= s * s:
                    m[i, j] = 1
                    m[j, i] = 1
    return out


def segment_adjacency(i64[::1] ax, i64[::1] ay, i64[::1] bx, i64[::1] by):
    cdef Py_ssize_t n = ax.shape[0], i, j
    out = np.zeros((n, n), dtype=np.uint8)
    cdef uint8_t[:, ::1] m = out
    with nogil:
        for i in range(n):
            for j in range(i + 1, n):
                if seg_meet(ax[i], ay[i], bx[i], by[i], ax[j], ay[j], bx[j], by[j]):
                    m[i, j] = 1
                    m[j, i] = 1
    return out


cdef bint point_in_polygon(i64[::1] x, i64[::1] y, i64 px, i64 py) nogil:
    # closed polygon; coordinates already doubled by the caller
    cdef Py_ssize_t n = x.shape[0], k, k1
    cdef bint inside = False
    cdef i64 xi, yi, xj, yj
    for k in range(n):
        k1 = (k + 1) % n
        xi = x[k]; yi = y[k]; xj = x[k1]; yj = y[k1]
        if orient(xi, yi, xj, yj, px, py) == 0 and on_seg(xi, yi, xj, yj, px, py):
            return True
        if (yi > py) != (yj > py):
            # sign of (px - x_cross) with x_cross on edge at height py
            if (yj - yi) > 0:
                if (px - xi) * (yj - yi) < (xj - xi) * (py - yi):
                    inside = not inside
            else:
                if (px - xi) * (yj - yi) > (xj - xi) * (py - yi):
                    inside = not inside
    return inside


def polygon_visibility(i64[::1] x, i64[::1] y):
    """Closed-polygon visibility; input coordinates must be even."""
    cdef Py_ssize_t n = x.shape[0], u, v, k, k1
    cdef bint ok
    cdef int o1, o2, o3, o4
    out = np.zeros((n, n), dtype=np.uint8)
    cdef uint8_t[:, ::1] m = out
    with nogil:
        for u in range(n):
            for v in range(u + 1, n):
                ok = True
                for k in range(n):
                    k1 = (k + 1) % n
                    o1 = orient(x[u], y[u], x[v], y[v], x[k], y[k])
                    o2 = orient(x[u], y[u], x[v], y[v], x[k1], y[k1])
                    o3 = orient(x[k], y[k], x[k1], y[k1], x[u], y[u])
                    o4 = orient(x[k], y[k], x[k1], y[k1], x[v], y[v])
                    if o1 * o2 < 0 and o3 * o4 < 0:
                        ok = False
                        break
                if ok:
                    ok = point_in_polygon(x, y, (x[u] + x[v]) // 2, (y[u] + y[v]) // 2)
                if ok:
                    m[u, v] = 1
                    m[v, u] = 1
    return out


def terrain_visibility(i64[::1] x, i64[::1] y):
    cdef Py_ssize_t n = x.shape[0], u, v, k
    cdef bint ok
    out = np.zeros((n, n), dtype=np.uint8)
    cdef uint8_t[:, ::1] m = out
    with nogil:
        for u in range(n):
            for v in range(u + 1, n):
                ok = True
                for k in range(u + 1, v):
                    if orient(x[u], y[u], x[v], y[v], x[k], y[k]) > 0:
                        ok = False
                        break
                if ok:
                    m[u, v] = 1
                    m[v, u] = 1
    return out


def classify_disks_box(i64[::1] cx, i64[::1] cy, i64[::1] r2,
                       i64 x0, i64 y0, i64 x1, i64 y1):
    """0 disjoint, 1 crosses, 2 contains (closed disk vs closed box)."""
    cdef Py_ssize_t n = cx.shape[0], i
    cdef i64 dx, dy, fx, fy, qx, qy
    out = np.empty(n, dtype=np.int8)
    cdef int8_t[::1] c = out
    with nogil:
        for i in range(n):
            dx = 0
            if cx[i] < x0:
                dx = x0 - cx[i]
            elif cx[i] > x1:
                dx = cx[i] - x1
            dy = 0
            if cy[i] < y0:
                dy = y0 - cy[i]
            elif cy[i] > y1:
                dy = cy[i] - y1
            if dx * dx + dy * dy > r2[i]:
                c[i] = 0
                continue
            qx = max(cx[i] - x0, x1 - cx[i])
            qy = max(cy[i] - y0, y1 - cy[i])
            c[i] = 2 if qx * qx + qy * qy <= r2[i] else 1
    return out


def classify_halfplanes_box(i64[::1] a, i64[::1] b, i64[::1] c,
                            i64 x0, i64 y0, i64 x1, i64 y1):
    """Halfplane a*x + b*y + c >= 0 against a closed box."""
    cdef Py_ssize_t n = a.shape[0], i
    cdef i64 lo, hi, s
    out = np.empty(n, dtype=np.int8)
    cdef int8_t[::1] r = out
    with nogil:
        for i in range(n):
            lo = c[i] + (a[i] * x0 if a[i] >= 0 else a[i] * x1) \
                + (b[i] * y0 if b[i] >= 0 else b[i] * y1)
            hi = c[i] + (a[i] * x1 if a[i] >= 0 else a[i] * x0) \
                + (b[i] * y1 if b[i] >= 0 else b[i] * y0)
            if lo >= 0:
                r[i] = 2
            elif hi < 0:
                r[i] = 0
            else:
                r[i] = 1
    return out


def find_crossing(i64[::1] x, i64[::1] y):
    """First pair of non-adjacent polygon edges that meet, or (-1, -1)."""
    cdef Py_ssize_t n = x.shape[0], i, j, i1, j1
    for i in range(n):
        i1 = (i + 1) % n
        for j in range(i + 2, n):
            j1 = (j + 1) % n
            if j1 == i:
                continue
            if seg_meet(x[i], y[i], x[i1], y[i1], x[j], y[j], x[j1], y[j1]):
                return i, j
    return -1, -1


def decode_biclique_pairs(i64[::1] offsets, i64[::1] bids, int8_t[::1] sides,
                          i64[::1] us, i64[::1] vs):
    """Sorted-list merge decode for many (u, v) pairs of parsed labels."""
    cdef Py_ssize_t p, npairs = us.shape[0], a, ae, b, be
    out = np.zeros(npairs, dtype=np.uint8)
    cdef uint8_t[::1] res = out
    with nogil:
        for p in range(npairs):
            a = offsets[us[p]]; ae = offsets[us[p] + 1]
            b = offsets[vs[p]]; be = offsets[vs[p] + 1]
            while a < ae and b < be:
                if bids[a] < bids[b]:
                    a += 1
                elif bids[a] > bids[b]:
                    b += 1
                else:
                    if sides[a] != sides[b]:
                        if res[p]:
                            res[p] = 2
                            break
                        res[p] = 1
                    a += 1
                    b += 1
    return out

"""Pure-Python twins of the compiled kernels.

Same signatures and results as ``_ckernels``; arithmetic is on Python ints
so these stay exact for coordinates of any magnitude.
"""

import numpy as np


def _sgn(v):
    return (v > 0) - (v < 0)


def orient(ax, ay, bx, by, cx, cy):
    return _sgn((bx - ax) * (cy - ay) - (by - ay) * (cx - ax))


def _on_seg(ax, ay, bx, by, px, py):
    return min(ax, bx) <= px <= max(ax, bx) and min(ay, by) <= py <= max(ay, by)


def seg_meet(ax, ay, bx, by, cx, cy, dx, dy):
    o1 = orient(ax, ay, bx, by, cx, cy)
    o2 = orient(ax, ay, bx, by, dx, dy)
    o3 = orient(cx, cy, dx, dy, ax, ay)
    o4 = orient(cx, cy, dx, dy, bx, by)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    return ((o1 == 0 and _on_seg(ax, ay, bx, by, cx, cy))
            or (o2 == 0 and _on_seg(ax, ay, bx, by, dx, dy))
            or (o3 == 0 and _on_seg(cx, cy, dx, dy, ax, ay))
            or (o4 == 0 and _on_seg(cx, cy, dx, dy, bx, by)))


def _ints(a):
    return [int(v) for v in a]


def disk_adjacency(x, y, rad):
    x, y, rad = _ints(x), _ints(y), _ints(rad)
    n = len(x)
    out = np.zeros((n, n), dtype=np.uint8)
    for i in range(n):
        xi, yi, ri = x[i], y[i], rad[i]
        for j in range(i + 1, n):
            dx = xi - x[j]
            dy = yi - y[j]
            s = ri + rad[j]
            if dx * dx + dy * dy <= s * s:
                out[i, j] = out[j, i] = 1
    return out


def segment_adjacency(ax, ay, bx, by):
    ax, ay, bx, by = _ints(ax), _ints(ay), _ints(bx), _ints(by)
    n = len(ax)
    out = np.zeros((n, n), dtype=np.uint8)
    for i in range(n):
        for j in range(i + 1, n):
            if seg_meet(ax[i], ay[i], bx[i], by[i], ax[j], ay[j], bx[j], by[j]):
                out[i, j] = out[j, i] = 1
    return out


def point_in_polygon(x, y, px, py):
    n = len(x)
    inside = False
    for k in range(n):
        k1 = (k + 1) % n
        xi, yi, xj, yj = x[k], y[k], x[k1], y[k1]
        if orient(xi, yi, xj, yj, px, py) == 0 and _on_seg(xi, yi, xj, yj, px, py):
            return True
        if (yi > py) != (yj > py):
            lhs = (px - xi) * (yj - yi)
            rhs = (xj - xi) * (py - yi)
            if (yj - yi > 0 and lhs < rhs) or (yj - yi < 0 and lhs > rhs):
                inside = not inside
    return inside


def polygon_visibility(x, y):
    x, y = _ints(x), _ints(y)
    n = len(x)
    out = np.zeros((n, n), dtype=np.uint8)
    for u in range(n):
        for v in range(u + 1, n):
            ok = True
            for k in range(n):
                k1 = (k + 1) % n
                o1 = orient(x[u], y[u], x[v], y[v], x[k], y[k])
                o2 = orient(x[u], y[u], x[v], y[v], x[k1], y[k1])
                if o1 * o2 >= 0:
                    continue
                o3 = orient(x[k], y[k], x[k1], y[k1], x[u], y[u])
                o4 = orient(x[k], y[k], x[k1], y[k1], x[v], y[v])
                if o3 * o4 < 0:
                    ok = False
                    break
            if ok and point_in_polygon(x, y, (x[u] + x[v]) // 2, (y[u] + y[v]) // 2):
                out[u, v] = out[v, u] = 1
    return out


def terrain_visibility(x, y):
    x, y = _ints(x), _ints(y)
    n = len(x)
    out = np.zeros((n, n), dtype=np.uint8)
    for u in range(n):
        for v in range(u + 1, n):
            if all(orient(x[u], y[u], x[v], y[v], x[k], y[k]) <= 0 for k in range(u + 1, v)):
                out[u, v] = out[v, u] = 1
    return out


def classify_disks_box(cx, cy, r2, x0, y0, x1, y1):
    out = np.empty(len(cx), dtype=np.int8)
    for i, (px, py, rr) in enumerate(zip(_ints(cx), _ints(cy), _ints(r2))):
        dx = x0 - px if px < x0 else (px - x1 if px > x1 else 0)
        dy = y0 - py if py < y0 else (py - y1 if py > y1 else 0)
        if dx * dx + dy * dy > rr:
            out[i] = 0
            continue
        qx = max(px - x0, x1 - px)
        qy = max(py - y0, y1 - py)
        out[i] = 2 if qx * qx + qy * qy <= rr else 1
    return out


def classify_halfplanes_box(a, b, c, x0, y0, x1, y1):
    out = np.empty(len(a), dtype=np.int8)
    for i, (ai, bi, ci) in enumerate(zip(_ints(a), _ints(b), _ints(c))):
        lo = ci + (ai * x0 if ai >= 0 else ai * x1) + (bi * y0 if bi >= 0 else bi * y1)
        hi = ci + (ai * x1 if ai >= 0 else ai * x0) + (bi * y1 if bi >= 0 else bi * y0)
        out[i] = 2 if lo >= 0 else (0 if hi < 0 else 1)
    return out


def find_crossing(x, y):
    x, y = _ints(x), _ints(y)
    n = len(x)
    for i in range(n):
        i1 = (i + 1) % n
        for j in range(i + 2, n):
            j1 = (j + 1) % n
            if j1 == i:
                continue
            if seg_meet(x[i], y[i], x[i1], y[i1], x[j], y[j], x[j1], y[j1]):
                return i, j
    return -1, -1


def decode_biclique_pairs(offsets, bids, sides, us, vs):
    offsets = _ints(offsets)
    bids = _ints(bids)
    sides = _ints(sides)
    out = np.zeros(len(us), dtype=np.uint8)
    for p, (u, v) in enumerate(zip(_ints(us), _ints(vs))):
        a, ae = offsets[u], offsets[u + 1]
        b, be = offsets[v], offsets[v + 1]
        while a < ae and b < be:
            if bids[a] < bids[b]:
                a += 1
            elif bids[a] > bids[b]:
                b += 1
            else:
                if sides[a] != sides[b]:
                    # an edge lies in exactly one biclique; a second witness means corrupt labels
                    if out[p]:
                        out[p] = 2
                        break
                    out[p] = 1
                a += 1
                b += 1
    return out

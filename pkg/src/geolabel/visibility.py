"""Labels for bichromatic segment intersection, capped (terrain) and polygon visibility graphs."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from . import _pykernels as pk
from . import kernels
from .bits import BitReader, BitWriter, DecodeError, Label, clog2
from .geom_graphs import to_grid
from .labeling import (LabelSet, SchemeDescriptor, bit_from_switches, decode_adjacent,
                       read_switch_row, register_decoder, write_switch_row)


class RealizationError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Bichromatic segments and the hereditary segment tree
# ---------------------------------------------------------------------------


def _seg(s) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    ax, ay, bx, by = (Fraction(v) for v in s)
    return (ax, ay, bx, by) if ax < bx else (bx, by, ax, ay)


def _y_at(s, x: Fraction) -> Fraction:
    ax, ay, bx, by = s
    return ay + (by - ay) * (x - ax) / (bx - ax)


@dataclass
class BichromaticSegments:
    red: list[tuple]
    blue: list[tuple]

    def __post_init__(self):
        self.red = [_seg(s) for s in self.red]
        self.blue = [_seg(s) for s in self.blue]
        self.validate()

    @property
    def segments(self) -> list[tuple]:
        return self.red + self.blue

    def color(self, sid: int) -> int:
        return 0 if sid < len(self.red) else 1

    def validate(self) -> None:
        xs = [c for s in self.segments for c in (s[0], s[2])]
        if len(set(xs)) != len(xs):
            raise ValueError("endpoint x-coordinates must be pairwise distinct")
        for group, name in ((self.red, "red"), (self.blue, "blue")):
            if len(group) < 2:
                continue
            g, _ = to_grid([c for s in group for c in s])
            meets = np.triu(kernels.segment_adjacency(g[0::4], g[1::4], g[2::4], g[3::4]), 1)
            if meets.any():
                i, j = np.argwhere(meets)[0]
                raise ValueError(f"{name} segments {i} and {j} intersect")

    def to_json(self) -> str:
        enc = lambda s: [[c.numerator, c.denominator] for c in s]  # noqa: E731
        return json.dumps({"red": [enc(s) for s in self.red], "blue": [enc(s) for s in self.blue]})

    @classmethod
    def from_json(cls, text: str) -> "BichromaticSegments":
        data = json.loads(text)
        dec = lambda s: tuple(Fraction(a, b) for a, b in s)  # noqa: E731
        return cls([dec(s) for s in data["red"]], [dec(s) for s in data["blue"]])


@dataclass
class HSTNode:
    id: int
    lo: Fraction | None
    hi: Fraction | None
    key: Fraction | None = None
    left: "HSTNode | None" = None
    right: "HSTNode | None" = None
    short: list[int] = field(default_factory=list)
    long: list[int] = field(default_factory=list)

    def contains(self, x: Fraction) -> bool:
        return (self.lo is None or self.lo < x) and (self.hi is None or x < self.hi)


class HST:
    """Balanced tree over the 2n endpoint abscissae; leaves are the gaps."""

    def __init__(self, segs: BichromaticSegments):
        self.segs = segs
        self.all = segs.segments
        xs = sorted(c for s in self.all for c in (s[0], s[2]))
        self.nodes: list[HSTNode] = []
        self.root = self._build(xs, None, None)
        self.stored: dict[int, list[tuple[int, bool]]] = {i: [] for i in range(len(self.all))}
        for sid, s in enumerate(self.all):
            self._store(self.root, sid, s)
        for node in self.nodes:
            for sid in node.short:
                self.stored[sid].append((node.id, False))
            for sid in node.long:
                self.stored[sid].append((node.id, True))
        for sid in self.stored:
            self.stored[sid].sort()

    def _build(self, xs, lo, hi) -> HSTNode:
        node = HSTNode(len(self.nodes), lo, hi)
        self.nodes.append(node)
        if xs:
            mid = len(xs) // 2
            node.key = xs[mid]
            node.left = self._build(xs[:mid], lo, xs[mid])
            node.right = self._build(xs[mid + 1:], xs[mid], hi)
        return node

    def _store(self, node: HSTNode, sid: int, s) -> None:
        a, b = s[0], s[2]
        if node.lo is not None and node.hi is not None and a <= node.lo and node.hi <= b:
            node.long.append(sid)
            return
        if (node.hi is not None and a >= node.hi) or (node.lo is not None and b <= node.lo):
            return
        node.short.append(sid)
        for child in (node.left, node.right):
            if child is not None:
                self._store(child, sid, s)

    def slab_ranks(self, node: HSTNode, long_color: int):
        """Ranks of one color's long segments and crossing intervals of the other color's shorts.

        Returns (rank, interval): rank[sid] orders the long segments bottom to top,
        interval[sid] = (lo, hi) such that the clipped short meets the long of rank k
        exactly when lo <= k < hi.
        """
        longs = [sid for sid in node.long if self.segs.color(sid) == long_color]
        shorts = [sid for sid in node.short if self.segs.color(sid) != long_color]
        if not longs:
            return {}, {sid: (0, 0) for sid in shorts}
        mid = (node.lo + node.hi) / 2
        longs.sort(key=lambda sid: _y_at(self.all[sid], mid))
        rank = {sid: k for k, sid in enumerate(longs)}
        interval = {}
        for sid in shorts:
            s = self.all[sid]
            below, below_or_on = [], []
            for x in (max(s[0], node.lo), min(s[2], node.hi)):
                y = _y_at(s, x)
                ys = [_y_at(self.all[lid], x) for lid in longs]
                below.append(sum(1 for v in ys if v < y))
                below_or_on.append(sum(1 for v in ys if v <= y))
            interval[sid] = (min(below), max(below_or_on))
        return rank, interval

    def boundary_ranks(self, node: HSTNode) -> dict[int, tuple[int, int]]:
        """For every long segment: how many longs of either color lie strictly below it at each slab end."""
        out = {}
        ends = (node.lo, node.hi)
        ys = {sid: [_y_at(self.all[sid], x) for x in ends] for sid in node.long}
        for sid in node.long:
            out[sid] = tuple(sum(1 for o in node.long if ys[o][e] < ys[sid][e]) for e in (0, 1))
        return out


def hst_params(n: int) -> dict:
    return {"nodebits": clog2(4 * n + 1), "width": clog2(n + 1)}


def hst_entry_bits(n: int) -> int:
    p = hst_params(n)
    return p["nodebits"] + 1 + 3 * p["width"]


def _meets_long_long(a: tuple, b: tuple) -> bool:
    return (a[1] - b[1]) * (a[2] - b[2]) <= 0


def _meets_long_short(long_vals: tuple, short_vals: tuple) -> bool:
    return short_vals[0] <= long_vals[0] < short_vals[1]


def _node_payloads(tree: HST) -> dict[int, dict[int, tuple]]:
    payload: dict[int, dict[int, tuple]] = {sid: {} for sid in range(len(tree.all))}
    for node in tree.nodes:
        if not node.long:
            for sid in node.short:
                payload[sid][node.id] = (0, 0)
            continue
        bounds = tree.boundary_ranks(node)
        for color in (0, 1):
            rank, interval = tree.slab_ranks(node, color)
            for sid, k in rank.items():
                payload[sid][node.id] = (k,) + bounds[sid]
            for sid, pair in interval.items():
                payload[sid][node.id] = pair
    return payload


def hst_labels(segs: BichromaticSegments, tree: HST | None = None) -> LabelSet:
    """Per segment: id, color, then (node, long bit, values) entries by node id.

    Long entries carry the same-color rank plus the two boundary ranks; short
    entries carry the crossing interval against the other color's longs.
    """
    tree = tree or HST(segs)
    n = len(tree.all)
    p = hst_params(n)
    idbits = clog2(max(n, 1))
    limit = 4 * clog2(2 * n)
    payload = _node_payloads(tree)
    labels = []
    for sid in range(n):
        entries = tree.stored[sid]
        if len(entries) > limit:
            raise AssertionError(f"segment {sid} stored at {len(entries)} > {limit} nodes")
        w = BitWriter()
        w.write(sid, idbits)
        w.bit(segs.color(sid))
        w.gamma(len(entries) + 1)
        for nid, is_long in entries:
            w.write(nid, p["nodebits"])
            w.bit(is_long)
            for v in payload[sid][nid]:
                w.write(v, p["width"])
        labels.append(w.finish())
    return LabelSet(SchemeDescriptor("hst", n, p), labels)


def _parse_hst(desc: SchemeDescriptor, lab: Label):
    nb, width = desc.params["nodebits"], desc.params["width"]
    r = BitReader(lab)
    vid = r.read(desc.idbits)
    color = r.bit()
    count = r.gamma() - 1
    if count * (nb + 1 + 2 * width) > r.remaining:
        raise DecodeError("entry count exceeds label length")
    entries = []
    prev = -1
    for _ in range(count):
        nid = r.read(nb)
        is_long = r.bit()
        vals = tuple(r.read(width) for _ in range(3 if is_long else 2))
        if nid <= prev or nid > 4 * desc.n:
            raise DecodeError("node ids out of range or not increasing")
        if not is_long and vals[0] > vals[1]:
            raise DecodeError("crossing interval out of order")
        prev = nid
        entries.append((nid, is_long, vals))
    r.done()
    return vid, color, entries


@register_decoder("hst")
def _decode_hst(desc: SchemeDescriptor, a: Label, b: Label) -> bool:
    _, ca, ea = _parse_hst(desc, a)
    _, cb, eb = _parse_hst(desc, b)
    if ca == cb:
        return False
    i = j = 0
    while i < len(ea) and j < len(eb):
        if ea[i][0] < eb[j][0]:
            i += 1
        elif ea[i][0] > eb[j][0]:
            j += 1
        else:
            (_, la, va), (_, lb, vb) = ea[i], eb[j]
            if la and lb and _meets_long_long(va, vb):
                return True
            if la != lb and _meets_long_short(va if la else vb, vb if la else va):
                return True
            i += 1
            j += 1
    return False


def hst_structure_report(segs: BichromaticSegments, tree: HST | None = None) -> dict:
    """Max nodes per segment, and which red-blue crossings lack a long/short or long/long witness."""
    tree = tree or HST(segs)
    nr = len(segs.red)
    payload = _node_payloads(tree)
    unwitnessed, long_long = [], 0
    for r_id in range(nr):
        sr = dict(tree.stored[r_id])
        for b_id in range(nr, len(tree.all)):
            if not pk.seg_meet(*tree.all[r_id], *tree.all[b_id]):
                continue
            kinds = set()
            for nid, b_long in tree.stored[b_id]:
                if nid not in sr:
                    continue
                vr, vb = payload[r_id][nid], payload[b_id][nid]
                if sr[nid] and b_long and _meets_long_long(vr, vb):
                    kinds.add("long_long")
                elif sr[nid] != b_long and _meets_long_short(vr if sr[nid] else vb, vb if sr[nid] else vr):
                    kinds.add("long_short")
            if not kinds:
                unwitnessed.append((r_id, b_id))
            elif kinds == {"long_long"}:
                long_long += 1
    max_nodes = max((len(v) for v in tree.stored.values()), default=0)
    return {"max_nodes": max_nodes, "bound": 4 * clog2(2 * len(tree.all)),
            "unwitnessed": unwitnessed, "long_long_only": long_long}


# ---------------------------------------------------------------------------
# Capped graphs
# ---------------------------------------------------------------------------


@dataclass
class CappedInstance:
    matrix: np.ndarray
    order: list[int]


def _permuted(m, order):
    m = np.asarray(m, dtype=bool)
    order = list(range(len(m))) if order is None else [int(v) for v in order]
    if sorted(order) != list(range(len(m))):
        raise ValueError("order is not a permutation")
    return m[np.ix_(order, order)], order


def capped_check(m: np.ndarray, order: Sequence[int] | None = None) -> tuple[int, int, int, int] | None:
    """None if capped under ``order``, else the lexicographically first violating (i, j, k, l)."""
    mm, order = _permuted(m, order)
    n = len(mm)
    idx = np.arange(n)
    upper = np.triu(mm, 1)
    # last[i, l]: largest k with i < k < l and ik an edge
    last = np.maximum.accumulate(np.where(upper, idx[None, :], -1), axis=1)
    last = np.concatenate([np.full((n, 1), -1), last[:, :-1]], axis=1)
    # first[i, l]: smallest j with i < j < l and jl an edge
    first = np.minimum.accumulate(np.where(upper, idx[:, None], n)[::-1], axis=0)[::-1]
    first = np.concatenate([first[1:], np.full((1, n), n)], axis=0)
    bad = (first < last) & (idx[:, None] < idx[None, :]) & ~upper
    if not bad.any():
        return None
    i = int(np.flatnonzero(bad.any(axis=1))[0])
    best = None
    for l in np.flatnonzero(bad[i]):
        l = int(l)
        ks = [k for k in range(i + 1, l) if upper[i, k]]
        for j in range(i + 1, l):
            if upper[j, l] and any(k > j for k in ks):
                k = min(k for k in ks if k > j)
                cand = (j, k, l)
                if best is None or cand < best:
                    best = cand
                break
    j, k, l = best
    return order[i], order[j], order[k], order[l]


def capped_cross_realization(m: np.ndarray, order: Sequence[int] | None, split: int):
    """minN over left positions and maxN over right positions; verified on every call.

    Positions are indices into ``order``.  Sentinels: minN = n (none), maxN = -1.
    """
    mm, order = _permuted(m, order)
    n = len(mm)
    if not 0 < split < n:
        raise ValueError("split must leave both sides non-empty")
    cross = mm[:split, split:]
    has_l = cross.any(axis=1)
    has_r = cross.any(axis=0)
    min_n = np.where(has_l, cross.argmax(axis=1) + split, n)
    max_n = np.where(has_r, split - 1 - cross[::-1].argmax(axis=0), -1)
    decoded = (min_n[:, None] <= np.arange(split, n)[None, :]) & (np.arange(split)[:, None] <= max_n[None, :])
    if not np.array_equal(decoded, cross):
        bad = np.argwhere(decoded != cross)[0]
        raise RealizationError(f"cross pair ({order[bad[0]]}, {order[bad[1] + split]}) breaks the "
                               "realization; the matrix is not capped under this order")
    return min_n.tolist(), max_n.tolist()


def _capped_levels(n: int, pos: int):
    """(lo, mid, hi, side) for every halving step that contains position pos."""
    lo, hi = 0, n
    out = []
    while hi - lo >= 2:
        mid = lo + (hi - lo) // 2
        side = int(pos >= mid)
        out.append((lo, mid, hi, side))
        lo, hi = (mid, hi) if side else (lo, mid)
    return out


def capped_labels(inst: CappedInstance) -> LabelSet:
    mm, order = _permuted(inst.matrix, inst.order)
    n = len(mm)
    width = clog2(n + 1)
    idbits = clog2(max(n, 1))
    values: list[list[int]] = [[] for _ in range(n)]
    stack = [(0, n)]
    while stack:
        lo, hi = stack.pop()
        if hi - lo < 2:
            continue
        mid = lo + (hi - lo) // 2
        sub = mm[lo:hi, lo:hi]
        min_n, max_n = capped_cross_realization(sub, None, mid - lo)
        for i, v in enumerate(min_n):
            values[lo + i].append((0, v - (mid - lo)))
        for j, v in enumerate(max_n):
            values[mid + j].append((1, v + 1))
        stack.append((lo, mid))
        stack.append((mid, hi))
    labels = []
    for pos in range(n):
        w = BitWriter()
        w.write(pos, idbits)
        levels = _capped_levels(n, pos)
        # the stack visits levels in depth order for every position
        assert len(values[pos]) == len(levels)
        for (side, val) in values[pos]:
            w.bit(side)
            w.write(val, width)
        labels.append(w.finish())
    lab_of_vertex = [None] * n
    for pos, v in enumerate(order):
        lab_of_vertex[v] = labels[pos]
    return LabelSet(SchemeDescriptor("capped", n, {"width": width}), lab_of_vertex)


def capped_bound(n: int) -> int:
    return clog2(max(n, 1)) + clog2(max(n, 1)) * (2 * clog2(max(n, 1)) + 2)


def _capped_entries(desc: SchemeDescriptor, lab: Label):
    r = BitReader(lab)
    pos = r.read(desc.idbits)
    if pos >= desc.n:
        raise DecodeError("position out of range")
    levels = _capped_levels(desc.n, pos)
    out = []
    for lo, mid, hi, side in levels:
        if r.bit() != side:
            raise DecodeError("side bit disagrees with the position")
        val = r.read(desc.params["width"])
        if val > (hi - mid if side == 0 else mid - lo):
            raise DecodeError("realization value out of range")
        out.append(val)
    r.done()
    return pos, levels, out


@register_decoder("capped")
def _decode_capped(desc: SchemeDescriptor, a: Label, b: Label) -> bool:
    pa, la, va = _capped_entries(desc, a)
    pb, lb, vb = _capped_entries(desc, b)
    if pa > pb:
        pa, pb, la, lb, va, vb = pb, pa, lb, la, vb, va
    for t, (lev_a, lev_b) in enumerate(zip(la, lb)):
        if lev_a[3] != lev_b[3]:
            lo, mid, hi, _ = lev_a
            min_n = va[t] + mid  # absolute position, hi means none
            max_n = vb[t] - 1 + lo  # absolute position, lo - 1 means none
            return min_n <= pb and pa <= max_n
    raise DecodeError("labels never separate")


# ---------------------------------------------------------------------------
# Polygons
# ---------------------------------------------------------------------------


def _grid_polygon(vertices) -> tuple[list[int], list[int]]:
    g, _ = to_grid([c for v in vertices for c in v])
    return g[0::2], g[1::2]


def _orient(xs, ys, a, b, c) -> int:
    return pk.orient(xs[a], ys[a], xs[b], ys[b], xs[c], ys[c])


def triangulate(xs: Sequence[int], ys: Sequence[int], idx: Sequence[int]) -> list[tuple[int, int, int]]:
    """Ear clipping of a counter-clockwise simple polygon given by vertex indices."""
    ring = list(idx)
    tris = []
    while len(ring) > 3:
        m = len(ring)
        for t in range(m):
            a, b, c = ring[t - 1], ring[t], ring[(t + 1) % m]
            if _orient(xs, ys, a, b, c) <= 0:
                continue
            if any(p not in (a, b, c) and _orient(xs, ys, a, b, p) >= 0 and _orient(xs, ys, b, c, p) >= 0
                   and _orient(xs, ys, c, a, p) >= 0 for p in ring):
                continue
            tris.append((a, b, c))
            ring.pop(t)
            break
        else:
            raise ValueError("no ear found; polygon is not simple or not counter-clockwise")
    tris.append(tuple(ring))
    return tris


def _is_ccw(xs, ys, idx) -> bool:
    area = sum(xs[idx[k]] * ys[idx[(k + 1) % len(idx)]] - xs[idx[(k + 1) % len(idx)]] * ys[idx[k]]
               for k in range(len(idx)))
    return area > 0


def _diagonal_ok(xs, ys, ring: Sequence[int], a: int, b: int) -> bool:
    n = len(ring)
    if abs(a - b) in (0, 1, n - 1):
        return False
    va, vb = ring[a], ring[b]
    for k in range(n):
        c, d = ring[k], ring[(k + 1) % n]
        if len({va, vb, c, d}) < 4:
            continue
        if pk.seg_meet(xs[va], ys[va], xs[vb], ys[vb], xs[c], ys[c], xs[d], ys[d]):
            return False
    mx, my = xs[va] + xs[vb], ys[va] + ys[vb]
    return pk.point_in_polygon([2 * xs[v] for v in ring], [2 * ys[v] for v in ring], mx, my)


def _chord_in_ring(xs, ys, ring: Sequence[int]) -> tuple[int, int]:
    n = len(ring)
    pos = {v: k for k, v in enumerate(ring)}
    bound = -(-2 * n // 3) + 1
    best = None
    for tri in triangulate(xs, ys, ring):
        for u, v in ((tri[0], tri[1]), (tri[1], tri[2]), (tri[2], tri[0])):
            a, b = sorted((pos[u], pos[v]))
            if b - a in (1, n - 1):
                continue
            worst = max(b - a + 1, n - (b - a) + 1)
            if best is None or worst < best[0]:
                best = (worst, a, b)
    if best is None or best[0] > bound:
        for a in range(n):
            for b in range(a + 2, n):
                if _diagonal_ok(xs, ys, ring, a, b):
                    worst = max(b - a + 1, n - (b - a) + 1)
                    if best is None or worst < best[0]:
                        best = (worst, a, b)
    if best is None:
        raise ValueError("no diagonal found")
    return best[1], best[2]


def balanced_chord(vertices: Sequence[Sequence]) -> tuple[int, int]:
    n = len(vertices)
    if n < 4:
        raise ValueError("a chord needs at least 4 vertices")
    xs, ys = _grid_polygon(vertices)
    if tuple(kernels.find_crossing(xs, ys)) != (-1, -1):
        raise ValueError("polygon is not simple")
    ring = list(range(n))
    if not _is_ccw(xs, ys, ring):
        ring.reverse()
    a, b = _chord_in_ring(xs, ys, ring)
    return tuple(sorted((ring[a], ring[b])))


DualSupplier = Callable[[list[int], list[int]], "BichromaticSegments | None"]


def _cross_switch(w: BitWriter, m, v: int, own: list[int], other: list[int], width: int) -> None:
    w.bit(0)
    w.write(own.index(v), width)
    write_switch_row(w, m[v, other], width)


def polygon_labels(vertices: Sequence[Sequence], m: np.ndarray | None = None,
                   cross_encoder: str = "switch_rows", duals: DualSupplier | None = None) -> LabelSet:
    """Balanced-chord recursion; cross visibility at each split goes through ``cross_encoder``."""
    from .geom_graphs import Instance, adjacency_matrix

    n = len(vertices)
    if n < 3:
        raise ValueError("a polygon needs at least 3 vertices")
    xs, ys = _grid_polygon(vertices)
    if tuple(kernels.find_crossing(xs, ys)) != (-1, -1):
        raise ValueError("polygon is not simple")
    if cross_encoder not in ("switch_rows", "hst_with_supplied_duals"):
        raise ValueError(f"unknown cross encoder {cross_encoder!r}")
    if cross_encoder == "hst_with_supplied_duals" and duals is None:
        raise ValueError("the hst cross encoder needs a dual-segment supplier")
    if m is None:
        m = adjacency_matrix(Instance("polygon_visibility", n, 0, {"vertices": tuple(vertices)}))
    m = np.asarray(m, dtype=np.uint8)
    width = clog2(max(n, 2))
    ring = list(range(n))
    if not _is_ccw(xs, ys, ring):
        ring.reverse()
    entries: list[list[Label]] = [[] for _ in range(n)]
    stack = [(ring, set(ring))]
    while stack:
        ring, owned = stack.pop()
        if len(owned) < 2:
            continue
        if len(ring) >= 4:
            a, b = _chord_in_ring(xs, ys, ring)
            r1, r2 = ring[a:b + 1], ring[b:] + ring[:a + 1]
            ends = {ring[a], ring[b]}
            small, large = (r1, r2) if len(r1) <= len(r2) else (r2, r1)
            o_small = owned & set(small)
            o_large = owned & (set(large) - ends)
        else:
            # a triangle: every pair sees each other, split the owners in boundary order
            own = [v for v in ring if v in owned]
            half = (len(own) + 1) // 2
            small, large = ring, ring
            o_small, o_large = set(own[:half]), set(own[half:])
        if o_small and o_large:
            side_a = [v for v in ring if v in o_small]
            side_b = [v for v in ring if v in o_large]
            segs = duals(side_a, side_b) if cross_encoder == "hst_with_supplied_duals" else None
            if segs is not None:
                sub = _hst_cross(segs, side_a, side_b, m)
                for k, v in enumerate(side_a + side_b):
                    w = BitWriter()
                    w.bit(1)
                    w.gamma(sub.descriptor.n + 1)
                    w.label(sub.labels[k])
                    entries[v].append((int(k >= len(side_a)), w.finish()))
            else:
                for side, own, other in ((0, side_a, side_b), (1, side_b, side_a)):
                    for v in own:
                        w = BitWriter()
                        _cross_switch(w, m, v, own, other, width)
                        entries[v].append((side, w.finish()))
            stack.append((large, o_large))
            stack.append((small, o_small))
        else:
            stack.append((small if o_small else large, o_small or o_large))
    labels = []
    idbits = clog2(n)
    for v in range(n):
        w = BitWriter()
        w.write(v, idbits)
        w.gamma(len(entries[v]) + 1)
        for side, lab in entries[v]:
            w.bit(side)
            w.gamma(lab.length + 1)
            w.label(lab)
        labels.append(w.finish())
    return LabelSet(SchemeDescriptor("polygon", n, {"width": width, "encoder": cross_encoder}), labels)


def _hst_cross(segs: BichromaticSegments, side_a: list[int], side_b: list[int], m) -> LabelSet:
    if len(segs.red) != len(side_a) or len(segs.blue) != len(side_b):
        raise ValueError("dual segment counts do not match the split")
    sub = hst_labels(segs)
    nr = len(side_a)
    for i, u in enumerate(side_a):
        for j, v in enumerate(side_b):
            if decode_adjacent(sub.descriptor, sub.labels[i], sub.labels[nr + j]) != bool(m[u, v]):
                raise ValueError(f"supplied dual segments disagree with visibility of ({u}, {v})")
    return sub


def _polygon_entries(desc: SchemeDescriptor, lab: Label):
    r = BitReader(lab)
    r.read(desc.idbits)
    count = r.gamma() - 1
    out = []
    for _ in range(count):
        side = r.bit()
        length = r.gamma() - 1
        out.append((side, r.label(length)))
    r.done()
    return out


def _cross_decode(desc: SchemeDescriptor, a: Label, b: Label) -> bool:
    ra, rb = BitReader(a), BitReader(b)
    kind = ra.bit()
    if rb.bit() != kind:
        raise DecodeError("cross encoders disagree")
    if kind == 0:
        width = desc.params["width"]
        ra.read(width)
        first, sw = read_switch_row(ra, width, desc.n + 1)
        ra.done()
        col = rb.read(width)
        read_switch_row(rb, width, desc.n + 1)
        rb.done()
        return bool(bit_from_switches(first, sw, col))
    na, nb = ra.gamma() - 1, rb.gamma() - 1
    if na != nb:
        raise DecodeError("hst sublabels disagree on size")
    sub = SchemeDescriptor("hst", na, hst_params(na))
    return decode_adjacent(sub, ra.label(ra.remaining), rb.label(rb.remaining))


@register_decoder("polygon")
def _decode_polygon(desc: SchemeDescriptor, a: Label, b: Label) -> bool:
    ea, eb = _polygon_entries(desc, a), _polygon_entries(desc, b)
    for (sa, la), (sb, lb) in zip(ea, eb):
        if sa != sb:
            return _cross_decode(desc, la, lb)
    raise DecodeError("labels never separate")


def grid_duals(side_a: list[int], side_b: list[int]) -> BichromaticSegments:
    """Complete bipartite realization: stacked horizontals against slanted near-verticals."""
    na, nb = len(side_a), len(side_b)
    eps = Fraction(1, 4 * (na + nb + 1))
    red = [(-1 - i * eps, Fraction(i + 1), nb + 2 + i * eps, Fraction(i + 1)) for i in range(na)]
    blue = [(Fraction(j + 1), Fraction(0), Fraction(j + 1) + eps / 2, Fraction(na + 1)) for j in range(nb)]
    return BichromaticSegments(red, blue)


def duals_from_json(text: str) -> DualSupplier:
    """Supplier backed by {"splits": [{"side_a": [...], "side_b": [...], "red": ..., "blue": ...}]}."""
    data = json.loads(text)
    table = {}
    for entry in data["splits"]:
        segs = BichromaticSegments.from_json(json.dumps({"red": entry["red"], "blue": entry["blue"]}))
        table[tuple(entry["side_a"]), tuple(entry["side_b"])] = segs
    return lambda a, b: table.get((tuple(a), tuple(b)))

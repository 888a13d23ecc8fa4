"""Adjacency labels: encoders, stateless decoders and the label dump format.

Every label in every scheme starts with the vertex id in ``clog2(n)`` bits;
the rest of the grammar depends on the scheme tag in the descriptor.
"""

from __future__ import annotations

import importlib
import io
import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence, TextIO

import numpy as np

from . import kernels
from .biclique import BicliqueDecomposition
from .bits import BitReader, BitWriter, DecodeError, Label, clog2
from .geom_graphs import PredicateSpec, eval_phi, phi_atoms


class ConfigError(ValueError):
    pass


@dataclass
class SchemeDescriptor:
    scheme: str
    n: int
    params: dict = field(default_factory=dict)

    @property
    def idbits(self) -> int:
        return clog2(max(self.n, 1))

    def to_json(self) -> dict:
        return {"scheme": self.scheme, "n": self.n, "params": self.params}

    @classmethod
    def from_json(cls, data: dict) -> "SchemeDescriptor":
        return cls(data["scheme"], data["n"], data.get("params", {}))


@dataclass
class LabelSet:
    descriptor: SchemeDescriptor
    labels: list[Label]

    @property
    def stats(self) -> dict:
        lens = [lab.length for lab in self.labels]
        return {"max_bits": max(lens, default=0), "total_bits": sum(lens)}

    def with_label(self, v: int, lab: Label) -> "LabelSet":
        labels = list(self.labels)
        labels[v] = lab
        return LabelSet(self.descriptor, labels)


# ---------------------------------------------------------------------------
# Decoder registry
# ---------------------------------------------------------------------------

_DECODERS: dict[str, Callable[[SchemeDescriptor, Label, Label], bool]] = {}
_SCHEME_MODULES = ("geolabel.semilinear", "geolabel.visibility")


def register_decoder(tag: str):
    def wrap(fn):
        _DECODERS[tag] = fn
        return fn
    return wrap


def read_id(desc: SchemeDescriptor, lab: Label) -> int:
    r = BitReader(lab)
    vid = r.read(desc.idbits)
    if vid >= desc.n:
        raise DecodeError(f"vertex id {vid} outside [0, {desc.n})")
    return vid


def decode_adjacent(desc: SchemeDescriptor, a: Label, b: Label) -> bool:
    if read_id(desc, a) == read_id(desc, b):
        raise ValueError("labels carry the same vertex id")
    fn = _DECODERS.get(desc.scheme)
    if fn is None:
        for mod in _SCHEME_MODULES:
            importlib.import_module(mod)
        fn = _DECODERS.get(desc.scheme)
        if fn is None:
            raise DecodeError(f"no decoder for scheme {desc.scheme!r}")
    return fn(desc, a, b)


def decode_pairs(ls: LabelSet, us: Sequence[int], vs: Sequence[int]) -> np.ndarray:
    """Decode many pairs; 1 = edge, 0 = no edge, 2 = decode or argument error."""
    desc = ls.descriptor
    if desc.scheme == "biclique_list":
        try:
            offsets, bids, sides, ids = parse_biclique_labels(ls)
        except DecodeError:
            pass
        else:
            us_a = np.asarray(us, dtype=np.int64)
            vs_a = np.asarray(vs, dtype=np.int64)
            out = kernels.decode_biclique_pairs(offsets, bids, sides, us_a, vs_a)
            same = np.asarray(ids)[us_a] == np.asarray(ids)[vs_a]
            out[same] = 2
            return out
    if desc.scheme == "composed_phi":
        return _decode_pairs_composed(ls, us, vs)
    out = np.zeros(len(us), dtype=np.uint8)
    for p, (u, v) in enumerate(zip(us, vs)):
        try:
            out[p] = decode_adjacent(desc, ls.labels[u], ls.labels[v])
        except (DecodeError, ValueError):
            out[p] = 2
    return out


# ---------------------------------------------------------------------------
# Biclique-list labels
# ---------------------------------------------------------------------------


def encode_from_bicliques(dec: BicliqueDecomposition) -> LabelSet:
    n, count = dec.n, len(dec.bicliques)
    idbits, bidbits = clog2(max(n, 1)), clog2(max(count, 1))
    entries: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    # position in the list is the biclique id, so ids are dense and ascending
    for bid, b in enumerate(dec.bicliques):
        for v in b.left:
            entries[v].append((bid, 0))
        for v in b.right:
            entries[v].append((bid, 1))
    labels = []
    for v in range(n):
        w = BitWriter()
        w.write(v, idbits)
        w.gamma(len(entries[v]) + 1)
        for bid, side in entries[v]:
            w.write(bid, bidbits)
            w.bit(side)
        labels.append(w.finish())
    desc = SchemeDescriptor("biclique_list", n, {"B": count, "provenance": dec.provenance})
    return LabelSet(desc, labels)


def _parse_biclique_label(desc: SchemeDescriptor, lab: Label) -> tuple[int, list[tuple[int, int]]]:
    count = desc.params["B"]
    bidbits = clog2(max(count, 1))
    r = BitReader(lab)
    vid = r.read(desc.idbits)
    if vid >= desc.n:
        raise DecodeError(f"vertex id {vid} outside [0, {desc.n})")
    nu = r.gamma() - 1
    if nu * (bidbits + 1) > r.remaining:
        raise DecodeError("membership count exceeds label length")
    out = []
    prev = -1
    for _ in range(nu):
        bid = r.read(bidbits)
        side = r.bit()
        if bid >= count or bid <= prev:
            raise DecodeError("biclique ids out of range or not increasing")
        prev = bid
        out.append((bid, side))
    r.done()
    return vid, out


@register_decoder("biclique_list")
def _decode_biclique_list(desc: SchemeDescriptor, a: Label, b: Label) -> bool:
    _, ea = _parse_biclique_label(desc, a)
    _, eb = _parse_biclique_label(desc, b)
    i = j = 0
    found = False
    while i < len(ea) and j < len(eb):
        if ea[i][0] < eb[j][0]:
            i += 1
        elif ea[i][0] > eb[j][0]:
            j += 1
        else:
            if ea[i][1] != eb[j][1]:
                if found:
                    raise DecodeError("pair covered by two bicliques")
                found = True
            i += 1
            j += 1
    return found


def parse_biclique_labels(ls: LabelSet):
    """CSR arrays (offsets, bids, sides) plus the id of every label."""
    offsets = [0]
    bids: list[int] = []
    sides: list[int] = []
    ids = []
    for lab in ls.labels:
        vid, entries = _parse_biclique_label(ls.descriptor, lab)
        ids.append(vid)
        bids.extend(e[0] for e in entries)
        sides.extend(e[1] for e in entries)
        offsets.append(len(bids))
    return (np.asarray(offsets, dtype=np.int64), np.asarray(bids, dtype=np.int64),
            np.asarray(sides, dtype=np.int8), ids)


# ---------------------------------------------------------------------------
# Bipartization hierarchy
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Piece:
    level: int
    left: range
    right: range


def bipartize(n: int) -> list[Piece]:
    """Recursive halving of ids 0..n-1; each split yields one left x right piece."""
    if n < 2:
        raise ValueError("bipartize needs n >= 2")
    pieces = []
    stack = [(0, n, 0)]
    while stack:
        lo, hi, level = stack.pop()
        if hi - lo < 2:
            continue
        mid = lo + (hi - lo + 1) // 2
        pieces.append(Piece(level, range(lo, mid), range(mid, hi)))
        stack.append((mid, hi, level + 1))
        stack.append((lo, mid, level + 1))
    return pieces


# ---------------------------------------------------------------------------
# Composition of per-polynomial labelings under a boolean combiner
# ---------------------------------------------------------------------------


def strict_phi_check(phi, t: int) -> None:
    """Only the f_i < 0 atoms are recoverable from "f_i >= 0" sublabels."""
    bad = sorted(k for k in phi_atoms(phi) if (k - 1) % 3 != 0)
    if bad:
        raise ConfigError(f"combiner uses non-strict atoms {bad}; only f_i<0 atoms are decodable")


def compose_predicate_labels(spec: PredicateSpec, sublabelsets: Sequence[LabelSet], phi=None) -> LabelSet:
    """Concatenate 2t labelings of "f_i >= 0", one per polynomial and argument order.

    ``sublabelsets[2(i-1)]`` decodes f_i(lower id, higher id) >= 0 and
    ``sublabelsets[2(i-1)+1]`` decodes f_i(higher id, lower id) >= 0.
    """
    phi = spec.phi if phi is None else phi
    if len(sublabelsets) != 2 * spec.t:
        raise ValueError(f"expected {2 * spec.t} sublabel sets, got {len(sublabelsets)}")
    strict_phi_check(phi, spec.t)
    n = sublabelsets[0].descriptor.n
    if any(s.descriptor.n != n or len(s.labels) != n for s in sublabelsets):
        raise ValueError("sublabel sets disagree on n")
    idbits = clog2(max(n, 1))
    labels = []
    for v in range(n):
        w = BitWriter()
        w.write(v, idbits)
        for s in sublabelsets:
            lab = s.labels[v]
            w.gamma(lab.length + 1)
            w.label(lab)
        labels.append(w.finish())
    desc = SchemeDescriptor("composed_phi", n, {
        "t": spec.t, "phi": phi, "subs": [s.descriptor.to_json() for s in sublabelsets]})
    return LabelSet(desc, labels)


def _split_composed(desc: SchemeDescriptor, lab: Label) -> tuple[int, list[Label]]:
    r = BitReader(lab)
    vid = r.read(desc.idbits)
    subs = []
    for _ in range(2 * desc.params["t"]):
        length = r.gamma() - 1
        subs.append(r.label(length))
    r.done()
    return vid, subs


@register_decoder("composed_phi")
def _decode_composed(desc: SchemeDescriptor, a: Label, b: Label) -> bool:
    ida, sa = _split_composed(desc, a)
    idb, sb = _split_composed(desc, b)
    phi = desc.params["phi"]
    strict_phi_check(phi, desc.params["t"])
    subdescs = [SchemeDescriptor.from_json(d) for d in desc.params["subs"]]
    orient = 0 if ida < idb else 1
    cache: dict[int, bool] = {}

    def negative(k: int) -> bool:
        i = (k - 1) // 3
        if i not in cache:
            j = 2 * i + orient
            cache[i] = not decode_adjacent(subdescs[j], sa[j], sb[j])
        return cache[i]

    return eval_phi(phi, negative)


def _phi_array(phi, atom_value: Callable[[int], np.ndarray], size: int) -> np.ndarray:
    op = phi[0]
    if op == "atom":
        return atom_value(phi[1])
    if op == "const":
        return np.full(size, bool(phi[1]))
    if op == "not":
        return ~_phi_array(phi[1], atom_value, size)
    parts = [_phi_array(p, atom_value, size) for p in phi[1:]]
    if op == "and":
        return np.logical_and.reduce(parts) if parts else np.ones(size, dtype=bool)
    if op == "or":
        return np.logical_or.reduce(parts) if parts else np.zeros(size, dtype=bool)
    raise ValueError(f"unknown operator {op!r}")


def _decode_pairs_composed(ls: LabelSet, us: Sequence[int], vs: Sequence[int]) -> np.ndarray:
    desc = ls.descriptor
    t = desc.params["t"]
    phi = desc.params["phi"]
    strict_phi_check(phi, t)
    subdescs = [SchemeDescriptor.from_json(d) for d in desc.params["subs"]]
    n = len(ls.labels)
    ids = np.full(n, -1, dtype=np.int64)
    sublabels = [[Label(0, 0)] * n for _ in range(2 * t)]
    for v, lab in enumerate(ls.labels):
        try:
            vid, subs = _split_composed(desc, lab)
        except DecodeError:
            continue
        if vid < desc.n:
            ids[v] = vid
            for j, sub in enumerate(subs):
                sublabels[j][v] = sub
    us_a = np.asarray(us, dtype=np.int64)
    vs_a = np.asarray(vs, dtype=np.int64)
    bad = (ids[us_a] < 0) | (ids[vs_a] < 0) | (ids[us_a] == ids[vs_a])
    lower = ids[us_a] < ids[vs_a]
    negative = {}
    for i in range(t):
        fwd = decode_pairs(LabelSet(subdescs[2 * i], sublabels[2 * i]), us_a, vs_a)
        rev = decode_pairs(LabelSet(subdescs[2 * i + 1], sublabels[2 * i + 1]), us_a, vs_a)
        res = np.where(lower, fwd, rev)
        bad |= res == 2
        negative[i] = res == 0
    out = _phi_array(phi, lambda k: negative[(k - 1) // 3], len(us_a)).astype(np.uint8)
    out[bad] = 2
    return out


# ---------------------------------------------------------------------------
# Switch-row baseline
# ---------------------------------------------------------------------------


def row_switches(row: Sequence[int]) -> tuple[int, list[int]]:
    """First bit and the positions i where row[i] != row[i+1]."""
    row = np.asarray(row, dtype=np.int8)
    if not len(row):
        return 0, []
    return int(row[0]), [int(i) for i in np.flatnonzero(row[1:] != row[:-1])]


def bit_from_switches(first: int, switches: Sequence[int], col: int) -> int:
    flips = sum(1 for s in switches if s < col)
    return first ^ (flips & 1)


def write_switch_row(w: BitWriter, row: Sequence[int], width: int) -> None:
    first, sw = row_switches(row)
    w.bit(first)
    w.gamma(len(sw) + 1)
    for s in sw:
        w.write(s, width)


def read_switch_row(r: BitReader, width: int, ncols: int) -> tuple[int, list[int]]:
    first = r.bit()
    count = r.gamma() - 1
    if count * width > r.remaining:
        raise DecodeError("switch count exceeds label length")
    sw = [r.read(width) for _ in range(count)]
    if any(s >= max(ncols - 1, 0) for s in sw) or any(x >= y for x, y in zip(sw, sw[1:])):
        raise DecodeError("switch positions out of range or not increasing")
    return first, sw


def switch_encode(m: np.ndarray, order: Sequence[int]) -> LabelSet:
    m = np.asarray(m)
    n = len(m)
    order = [int(v) for v in order]
    if sorted(order) != list(range(n)):
        raise ValueError("order is not a permutation of the vertices")
    pos = [0] * n
    for k, v in enumerate(order):
        pos[v] = k
    width = clog2(max(n, 1))
    labels = []
    for v in range(n):
        w = BitWriter()
        w.write(pos[v], width)
        write_switch_row(w, m[v, order], width)
        labels.append(w.finish())
    return LabelSet(SchemeDescriptor("switch_rows", n), labels)


@register_decoder("switch_rows")
def _decode_switch_rows(desc: SchemeDescriptor, a: Label, b: Label) -> bool:
    ra = BitReader(a)
    ra.read(desc.idbits)
    first, sw = read_switch_row(ra, desc.idbits, desc.n)
    ra.done()
    rb = BitReader(b)
    col = rb.read(desc.idbits)
    read_switch_row(rb, desc.idbits, desc.n)
    rb.done()
    return bool(bit_from_switches(first, sw, col))


def switch_counts(ls: LabelSet) -> list[int]:
    out = []
    for lab in ls.labels:
        r = BitReader(lab)
        r.read(ls.descriptor.idbits)
        r.bit()
        out.append(r.gamma() - 1)
    return out


# ---------------------------------------------------------------------------
# Space-filling-curve order and shatter estimate
# ---------------------------------------------------------------------------

CURVE_ORDER = 16


def hilbert_index(x: int, y: int, order: int = CURVE_ORDER) -> int:
    side = 1 << order
    d = 0
    s = side >> 1
    while s:
        rx = 1 if x & s else 0
        ry = 1 if y & s else 0
        d += s * s * ((3 * rx) ^ ry)
        if ry == 0:
            if rx == 1:
                x, y = side - 1 - x, side - 1 - y
            x, y = y, x
        s >>= 1
    return d


def sfc_order(points: Sequence[Sequence]) -> list[int]:
    """Vertex ids sorted along a Hilbert curve over the bounding box."""
    if not points:
        return []
    xs = [Fraction(p[0]) for p in points]
    ys = [Fraction(p[1]) for p in points]
    top = (1 << CURVE_ORDER) - 1

    def cell(v, lo, hi):
        return 0 if hi == lo else int((v - lo) * top / (hi - lo))

    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    keys = [(hilbert_index(cell(x, x0, x1), cell(y, y0, y1)), i) for i, (x, y) in enumerate(zip(xs, ys))]
    return [i for _, i in sorted(keys)]


def shatter_estimate(m: np.ndarray, mm: int, trials: int = 64, seed: int = 0) -> int:
    m = np.asarray(m, dtype=np.uint8)
    n = len(m)
    if mm > n:
        raise ValueError(f"sample size {mm} exceeds n={n}")
    rng = random.Random(seed)
    best = 0
    for _ in range(trials):
        cols = rng.sample(range(n), mm)
        best = max(best, len({row.tobytes() for row in m[:, cols]}))
    return best


# ---------------------------------------------------------------------------
# Dump format
# ---------------------------------------------------------------------------


def write_labels(ls: LabelSet, out: TextIO) -> None:
    out.write(json.dumps(ls.descriptor.to_json(), sort_keys=True) + "\n")
    for lab in ls.labels:
        out.write(lab.dump() + "\n")


def read_labels(src: TextIO | str) -> LabelSet:
    if isinstance(src, str):
        src = io.StringIO(src)
    header = src.readline()
    try:
        desc = SchemeDescriptor.from_json(json.loads(header))
    except (json.JSONDecodeError, KeyError) as exc:
        raise DecodeError("bad descriptor header") from exc
    labels = [Label.parse(line) for line in src if line.strip()]
    if len(labels) != desc.n:
        raise DecodeError(f"expected {desc.n} labels, found {len(labels)}")
    return LabelSet(desc, labels)


def dumps(ls: LabelSet) -> str:
    buf = io.StringIO()
    write_labels(ls, buf)
    return buf.getvalue()


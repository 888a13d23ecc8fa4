"""Rank-based labels for graphs defined by strict linear inequalities.

A literal is ``g(x) + h(y) < 0`` with g over the first vertex and h over the
second.  Replacing every derived value g(u) and -h(v) by its rank among all
values of the same literal keeps every comparison, so a label only needs the
ranks.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .bits import BitReader, BitWriter, Label, clog2
from .labeling import LabelSet, SchemeDescriptor, register_decoder
from .poly import Poly


class NotSemilinearError(ValueError):
    pass


def split_linear(f: Poly, d_left: int) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
    """(g, h) with g = x-coefficients plus the constant and h = y-coefficients."""
    g = [Fraction(0)] * (d_left + 1)
    h = [Fraction(0)] * (f.nvars - d_left)
    for exps, c in f.terms.items():
        deg = sum(exps)
        if deg == 0:
            g[d_left] += c
        elif deg == 1:
            i = exps.index(1)
            if i < d_left:
                g[i] += c
            else:
                h[i - d_left] += c
        else:
            raise NotSemilinearError(f"monomial {exps} is not linear")
    return tuple(g), tuple(h)


@dataclass(frozen=True)
class Literal:
    """Strict inequality g(x) + h(y) < 0."""

    g: tuple[Fraction, ...]
    h: tuple[Fraction, ...]

    def g_value(self, x: Sequence) -> Fraction:
        return sum((c * Fraction(v) for c, v in zip(self.g, x)), self.g[-1])

    def neg_h_value(self, y: Sequence) -> Fraction:
        return -sum((c * Fraction(v) for c, v in zip(self.h, y)), Fraction(0))

    def holds(self, x: Sequence, y: Sequence) -> bool:
        return self.g_value(x) < self.neg_h_value(y)


@dataclass(frozen=True)
class DNFPredicate:
    clauses: tuple[tuple[Literal, ...], ...]
    symmetric: bool = True

    def __post_init__(self):
        if not self.clauses or any(not c for c in self.clauses):
            raise ValueError("DNF needs at least one literal per clause")
        if len({len(c) for c in self.clauses}) != 1:
            raise ValueError("every clause must have the same number of literals")
        dims = {(len(lit.g) - 1, len(lit.h)) for c in self.clauses for lit in c}
        if len(dims) != 1:
            raise ValueError("literals disagree on dimensions")

    @property
    def k(self) -> int:
        return len(self.clauses)

    @property
    def l(self) -> int:  # noqa: E743
        return len(self.clauses[0])

    @property
    def dims(self) -> tuple[int, int]:
        lit = self.clauses[0][0]
        return len(lit.g) - 1, len(lit.h)

    def evaluate(self, x: Sequence, y: Sequence) -> bool:
        return any(all(lit.holds(x, y) for lit in clause) for clause in self.clauses)

    def adjacent(self, u: Sequence, v: Sequence) -> bool:
        if self.symmetric:
            return self.evaluate(u, v)
        return self.evaluate(u, v) or self.evaluate(v, u)

    def matrix(self, vectors: Sequence[Sequence], block: int = 512) -> np.ndarray:
        """Exact n x n adjacency (uint8, zero diagonal) in row blocks."""
        n = len(vectors)
        vecs = [tuple(Fraction(c) for c in v) for v in vectors]
        lits = []
        for clause in self.clauses:
            for lit in clause:
                # integer codes of the exact values keep every comparison g(u) < -h(v)
                gv = [lit.g_value(x) for x in vecs]
                hv = [lit.neg_h_value(y) for y in vecs]
                code = {val: i for i, val in enumerate(sorted(set(gv) | set(hv)))}
                lits.append((np.array([code[a] for a in gv]), np.array([code[b] for b in hv])))
        out = np.zeros((n, n), dtype=bool)
        for lo in range(0, n, block):
            rows = slice(lo, min(n, lo + block))
            acc = np.zeros((rows.stop - lo, n), dtype=bool)
            it = iter(lits)
            for clause in self.clauses:
                term = np.ones_like(acc)
                for _ in clause:
                    g, h = next(it)
                    term &= g[rows, None] < h[None, :]
                acc |= term
            out[rows] = acc
        if not self.symmetric:
            out |= out.T
        np.fill_diagonal(out, False)
        return out.astype(np.uint8)

    @classmethod
    def from_polys(cls, clauses: Sequence[Sequence[Poly]], d_left: int,
                   symmetric: bool = True) -> "DNFPredicate":
        """Each polynomial f stands for the strict literal f(x, y) < 0."""
        return cls(tuple(tuple(Literal(*split_linear(f, d_left)) for f in c) for c in clauses),
                   symmetric)

    def to_json(self) -> str:
        enc = lambda cs: [[c.numerator, c.denominator] for c in cs]  # noqa: E731
        return json.dumps({"k": self.k, "l": self.l, "symmetric": self.symmetric,
                           "clauses": [[{"g": enc(lit.g), "h": enc(lit.h)} for lit in c]
                                       for c in self.clauses]})

    @classmethod
    def from_json(cls, text: str) -> "DNFPredicate":
        data = json.loads(text)
        if "strict" in data and not data["strict"]:
            raise ValueError("only strict inequalities are accepted")
        dec = lambda cs: tuple(Fraction(a, b) for a, b in cs)  # noqa: E731
        dnf = cls(tuple(tuple(Literal(dec(lit["g"]), dec(lit["h"])) for lit in c)
                        for c in data["clauses"]), bool(data.get("symmetric", True)))
        if dnf.k != data.get("k", dnf.k) or dnf.l != data.get("l", dnf.l):
            raise ValueError("declared k or l does not match the clauses")
        return dnf


def _lit(d: int, g: dict[int, int], h: dict[int, int], const: int = 0) -> Literal:
    return Literal(tuple(Fraction(g.get(i, 0)) for i in range(d)) + (Fraction(const),),
                   tuple(Fraction(h.get(i, 0)) for i in range(d)))


def preset_dnf(name: str) -> DNFPredicate:
    if name == "interval":
        # [a, b] meets [c, d] iff a < d and c < b
        return DNFPredicate(((_lit(2, {0: 1}, {1: -1}), _lit(2, {1: -1}, {0: 1})),))
    if name == "permutation":
        # (top, bottom) positions: crossing iff the two orders disagree
        return DNFPredicate(((_lit(2, {0: 1}, {0: -1}), _lit(2, {1: -1}, {1: 1})),
                             (_lit(2, {0: -1}, {0: 1}), _lit(2, {1: 1}, {1: -1}))))
    if name == "circle":
        # chords (a, b), a < b, interleave: a_u < a_v < b_u < b_v or the mirror
        return DNFPredicate(((_lit(2, {0: 1}, {0: -1}), _lit(2, {1: -1}, {0: 1}), _lit(2, {1: 1}, {1: -1})),
                             (_lit(2, {0: -1}, {0: 1}), _lit(2, {0: 1}, {1: -1}), _lit(2, {1: -1}, {1: 1}))))
    if name == "tournament":
        return DNFPredicate(((_lit(1, {0: 1}, {0: -1}),),), symmetric=False)
    if name.startswith("boxicity-"):
        d = int(name.split("-", 1)[1])
        # box = (lo_1..lo_d, hi_1..hi_d); per axis lo_u < hi_v and lo_v < hi_u
        lits = []
        for a in range(d):
            lits.append(_lit(2 * d, {a: 1}, {d + a: -1}))
            lits.append(_lit(2 * d, {d + a: -1}, {a: 1}))
        return DNFPredicate((tuple(lits),))
    raise ValueError(f"unknown preset {name!r}")


# ---------------------------------------------------------------------------
# Ranks
# ---------------------------------------------------------------------------


def _ranks(values: Sequence[tuple[Fraction, int, int]]) -> list[int]:
    """Positions after sorting by (value, tie class, id)."""
    order = sorted(range(len(values)), key=lambda i: values[i])
    out = [0] * len(values)
    for r, i in enumerate(order):
        out[i] = r
    return out


def dominance_labels(left_pts: Sequence[Sequence], right_pts: Sequence[Sequence], l: int) -> LabelSet:
    """Left p and right s adjacent iff p_j < s_j on every axis j.

    Left vertices get ids 0..|L|-1, right vertices the following ids.
    """
    pts = [tuple(Fraction(c) for c in p) for p in list(left_pts) + list(right_pts)]
    if any(len(p) != l for p in pts):
        raise ValueError(f"every point needs {l} coordinates")
    nl, n = len(left_pts), len(pts)
    width = clog2(max(2 * n, 1))
    idbits = clog2(max(n, 1))
    ranks = []
    for axis in range(l):
        # at equal values the right point ranks first, so left < right is false
        ranks.append(_ranks([(p[axis], 1 if v < nl else 0, v) for v, p in enumerate(pts)]))
    labels = []
    for v in range(n):
        w = BitWriter()
        w.write(v, idbits)
        w.bit(v >= nl)
        for axis in range(l):
            w.write(ranks[axis][v], width)
        labels.append(w.finish())
    return LabelSet(SchemeDescriptor("dominance", n, {"l": l, "width": width}), labels)


def _read_fields(desc: SchemeDescriptor, lab: Label, header: int, count: int) -> tuple[list[int], list[int]]:
    r = BitReader(lab)
    r.read(desc.idbits)
    head = [r.bit() for _ in range(header)]
    vals = [r.read(desc.params["width"]) for _ in range(count)]
    r.done()
    return head, vals


@register_decoder("dominance")
def _decode_dominance(desc: SchemeDescriptor, a: Label, b: Label) -> bool:
    l = desc.params["l"]  # noqa: E741
    (sa,), ra = _read_fields(desc, a, 1, l)
    (sb,), rb = _read_fields(desc, b, 1, l)
    if sa == sb:
        return False
    if sa:
        ra, rb = rb, ra
    return all(x < y for x, y in zip(ra, rb))


def semilinear_labels(vertices: Sequence[Sequence], dnf: DNFPredicate) -> LabelSet:
    """Per vertex and literal, the ranks of g(v) and -h(v) among that literal's 2n values."""
    n = len(vertices)
    if dnf.dims[0] != dnf.dims[1]:
        raise ValueError("vertex roles must share a dimension")
    vecs = [tuple(Fraction(c) for c in v) for v in vertices]
    if any(len(v) != dnf.dims[0] for v in vecs):
        raise ValueError("vertex dimension does not match the predicate")
    width = clog2(max(2 * n, 1))
    idbits = clog2(max(n, 1))
    fields: list[list[int]] = [[] for _ in range(n)]
    for clause in dnf.clauses:
        for lit in clause:
            # -h before g at ties, so g(u) < -h(v) reads false on equal values
            vals = [(lit.g_value(x), 1, v) for v, x in enumerate(vecs)]
            vals += [(lit.neg_h_value(x), 0, v) for v, x in enumerate(vecs)]
            ranks = _ranks(vals)
            for v in range(n):
                fields[v].extend((ranks[v], ranks[n + v]))
    labels = []
    for v in range(n):
        w = BitWriter()
        w.write(v, idbits)
        for val in fields[v]:
            w.write(val, width)
        labels.append(w.finish())
    desc = SchemeDescriptor("semilinear", n, {"k": dnf.k, "l": dnf.l, "symmetric": dnf.symmetric,
                                              "width": width})
    return LabelSet(desc, labels)


@register_decoder("semilinear")
def _decode_semilinear(desc: SchemeDescriptor, a: Label, b: Label) -> bool:
    k, l = desc.params["k"], desc.params["l"]  # noqa: E741
    _, fa = _read_fields(desc, a, 0, 2 * k * l)
    _, fb = _read_fields(desc, b, 0, 2 * k * l)

    def directed(x, y):
        return any(all(x[2 * (i * l + j)] < y[2 * (i * l + j) + 1] for j in range(l)) for i in range(k))

    return directed(fa, fb) or (not desc.params["symmetric"] and directed(fb, fa))


def semilinear_bound(n: int, k: int, l: int) -> int:  # noqa: E741
    return clog2(max(n, 1)) + 2 * k * l * clog2(2 * n) + 8


def boxicity_labels(boxes: Sequence[Sequence]) -> LabelSet:
    """Boxes as (lo_1..lo_d, hi_1..hi_d); ranks of both corners on each axis."""
    n = len(boxes)
    if not n:
        raise ValueError("no boxes")
    d = len(boxes[0]) // 2
    bx = [tuple(Fraction(c) for c in b) for b in boxes]
    if any(len(b) != 2 * d for b in bx):
        raise ValueError("boxes disagree on dimension")
    if any(b[a] >= b[d + a] for b in bx for a in range(d)):
        raise ValueError("degenerate box: need lo < hi on every axis")
    width = clog2(2 * n)
    idbits = clog2(max(n, 1))
    fields: list[list[int]] = [[] for _ in range(n)]
    for a in range(d):
        # closed boxes: at equal values the low corner ranks first
        ranks = _ranks([(b[a], 0, v) for v, b in enumerate(bx)] + [(b[d + a], 1, v) for v, b in enumerate(bx)])
        for v in range(n):
            fields[v].extend((ranks[v], ranks[n + v]))
    labels = []
    for v in range(n):
        w = BitWriter()
        w.write(v, idbits)
        for val in fields[v]:
            w.write(val, width)
        labels.append(w.finish())
    return LabelSet(SchemeDescriptor("boxicity", n, {"d": d, "width": width}), labels)


@register_decoder("boxicity")
def _decode_boxicity(desc: SchemeDescriptor, a: Label, b: Label) -> bool:
    d = desc.params["d"]
    _, fa = _read_fields(desc, a, 0, 2 * d)
    _, fb = _read_fields(desc, b, 0, 2 * d)
    return all(fa[2 * i] < fb[2 * i + 1] and fb[2 * i] < fa[2 * i + 1] for i in range(d))

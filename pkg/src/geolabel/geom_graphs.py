"""Geometric graph instances, semialgebraic predicates and brute-force oracles.

Vertex ids are 0-based throughout the package.  All coordinates are
:class:`fractions.Fraction`; integer-grid copies are derived on demand for the
compiled kernels.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Sequence

import numpy as np

from . import _pykernels as pk
from . import kernels
from .poly import Poly

FAMILIES = (
    "unit_disk",
    "disk",
    "point_halfplane",
    "segment_intersection",
    "semilinear_dnf",
    "boxicity",
    "polygon_visibility",
    "terrain_visibility",
    "capped_abstract",
    "bichromatic_segments",
)

DEFAULT_BUDGET = 4096
POLYGON_BUDGET = 1024


class GenerationError(RuntimeError):
    pass


class BudgetError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Boolean combiner over sign atoms
# ---------------------------------------------------------------------------
# Atom k (1-based) of polynomial i (1-based): k = 3(i-1)+1 is f_i<0,
# 3(i-1)+2 is f_i=0 and 3(i-1)+3 is f_i<=0.  Expressions are nested lists:
# ["atom", k], ["not", e], ["and", e...], ["or", e...], ["const", bool].


def atom(i: int, kind: str) -> list:
    return ["atom", 3 * (i - 1) + {"lt": 1, "eq": 2, "le": 3}[kind]]


def phi_atoms(phi) -> set[int]:
    op = phi[0]
    if op == "atom":
        return {phi[1]}
    if op == "const":
        return set()
    out: set[int] = set()
    for sub in phi[1:]:
        out |= phi_atoms(sub)
    return out


def eval_phi(phi, value: Callable[[int], bool]) -> bool:
    op = phi[0]
    if op == "atom":
        return value(phi[1])
    if op == "const":
        return bool(phi[1])
    if op == "not":
        return not eval_phi(phi[1], value)
    if op == "and":
        return all(eval_phi(s, value) for s in phi[1:])
    if op == "or":
        return any(eval_phi(s, value) for s in phi[1:])
    raise ValueError(f"unknown operator {op!r}")


def sign_atom(k: int, signs: Sequence[int]) -> bool:
    s = signs[(k - 1) // 3]
    kind = (k - 1) % 3
    return s < 0 if kind == 0 else (s == 0 if kind == 1 else s <= 0)


@dataclass(frozen=True)
class PredicateSpec:
    """t polynomials in (x_1..x_dl, y_1..y_dr) plus a combiner over sign atoms."""

    polys: tuple[Poly, ...]
    phi: Any
    d_left: int
    d_right: int
    name: str = ""

    def __post_init__(self):
        nv = self.d_left + self.d_right
        for p in self.polys:
            if p.nvars != nv:
                raise ValueError("polynomial arity does not match d_left + d_right")
            # quadratic ranges (disks) are allowed even for t = 1
            if p.degree > max(self.t, 2):
                raise ValueError(f"polynomial degree {p.degree} exceeds bound for t={self.t}")
        bad = [k for k in phi_atoms(self.phi) if not 1 <= k <= 3 * self.t]
        if bad:
            raise ValueError(f"phi references atoms outside [1, {3 * self.t}]: {bad}")

    @property
    def t(self) -> int:
        return len(self.polys)

    def to_json(self) -> dict:
        return {"name": self.name, "d_left": self.d_left, "d_right": self.d_right,
                "polys": [p.to_json() for p in self.polys], "phi": self.phi}

    @classmethod
    def from_json(cls, data: dict) -> "PredicateSpec":
        nv = data["d_left"] + data["d_right"]
        return cls(tuple(Poly.from_json(nv, p) for p in data["polys"]), data["phi"],
                   data["d_left"], data["d_right"], data.get("name", ""))


def eval_sign(spec: PredicateSpec, i: int, u: Sequence, v: Sequence) -> int:
    """Exact sign of f_i(u, v); ``i`` is 1-based."""
    if len(u) != spec.d_left or len(v) != spec.d_right:
        raise ValueError("point dimension does not match the predicate")
    if not 1 <= i <= spec.t:
        raise ValueError(f"polynomial index {i} outside [1, {spec.t}]")
    val = spec.polys[i - 1]([Fraction(a) for a in u] + [Fraction(b) for b in v])
    return (val > 0) - (val < 0)


def eval_predicate(spec: PredicateSpec, u: Sequence, v: Sequence) -> bool:
    signs = [eval_sign(spec, i, u, v) for i in range(1, spec.t + 1)]
    return eval_phi(spec.phi, lambda k: sign_atom(k, signs))


def _vars(d_left: int, d_right: int):
    nv = d_left + d_right
    xs = [Poly.var(nv, i) for i in range(d_left)]
    ys = [Poly.var(nv, d_left + i) for i in range(d_right)]
    return xs, ys


def unit_disk_spec() -> PredicateSpec:
    (x1, x2), (y1, y2) = _vars(2, 2)
    f = 4 - (x1 - y1) ** 2 - (x2 - y2) ** 2
    return PredicateSpec((f,), ["not", atom(1, "lt")], 2, 2, "unit_disk")


def halfplane_spec() -> PredicateSpec:
    """Point y lies on or above the line y2 = x1*y1 + x2 with x = (slope, intercept)."""
    (m, q), (y1, y2) = _vars(2, 2)
    f = y2 - m * y1 - q
    return PredicateSpec((f,), ["not", atom(1, "lt")], 2, 2, "halfplane")


def point_halfplane_spec() -> PredicateSpec:
    """Point x on or above the line given by y = (slope, intercept)."""
    (x1, x2), (m, q) = _vars(2, 2)
    f = x2 - m * x1 - q
    return PredicateSpec((f,), ["not", atom(1, "lt")], 2, 2, "point_halfplane")


def _orient(a, b, c):
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def _product_le_zero(i: int, j: int) -> list:
    # f_i * f_j <= 0
    return ["or",
            ["and", atom(i, "le"), ["not", atom(j, "lt")]],
            ["and", ["not", atom(i, "lt")], atom(j, "le")]]


def segment_spec() -> PredicateSpec:
    """Closed segment intersection through four orientation polynomials.

    Exact unless all four endpoints are collinear.
    """
    xs, ys = _vars(4, 4)
    ua, ub = (xs[0], xs[1]), (xs[2], xs[3])
    va, vb = (ys[0], ys[1]), (ys[2], ys[3])
    polys = (_orient(ua, ub, va), _orient(ua, ub, vb), _orient(va, vb, ua), _orient(va, vb, ub))
    phi = ["and", _product_le_zero(1, 2), _product_le_zero(3, 4)]
    return PredicateSpec(polys, phi, 4, 4, "segment_intersection")


# ---------------------------------------------------------------------------
# Instances
# ---------------------------------------------------------------------------


@dataclass
class Instance:
    family: str
    n: int
    seed: int
    payload: dict
    params: dict = field(default_factory=dict)

    def to_json(self) -> str:
        out = {}
        for key, val in self.payload.items():
            out[key] = val if key == "matrix" else _frac_to_json(val)
        return json.dumps({"family": self.family, "n": self.n, "seed": self.seed,
                           "params": self.params, "payload": out}, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "Instance":
        data = json.loads(text)
        payload = {}
        for key, val in data["payload"].items():
            payload[key] = val if key == "matrix" else _frac_from_json(val)
        return cls(data["family"], data["n"], data["seed"], payload, data.get("params", {}))


def _frac_to_json(v):
    if isinstance(v, Fraction):
        return [v.numerator, v.denominator]
    if isinstance(v, int):
        return [v, 1]
    return [_frac_to_json(w) for w in v]


def _frac_from_json(v):
    if len(v) == 2 and all(isinstance(w, int) for w in v):
        return Fraction(v[0], v[1])
    return tuple(_frac_from_json(w) for w in v)


def to_grid(values: Sequence[Fraction]) -> tuple[list[int], int]:
    """Scale rationals to integers over their common denominator."""
    den = 1
    for v in values:
        den = den * v.denominator // math.gcd(den, v.denominator)
    return [int(v * den) for v in values], den


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------


def _distinct(rng: random.Random, lo: int, hi: int, k: int, seed: int) -> list[int]:
    if hi - lo + 1 < k:
        raise GenerationError(f"grid too coarse for {k} distinct values (seed={seed})")
    return rng.sample(range(lo, hi + 1), k)


def _refined(q: int, hi: int, k: int):
    """Grid (q, hi, F) fine enough to hold 2k distinct values."""
    fine = max(1, -(-2 * k // (hi + 1)))
    q, hi = q * fine, hi * fine
    return q, hi, lambda v: Fraction(v, q)


def _no_collinear(pts: Sequence[tuple[int, int]]) -> bool:
    for i, (xi, yi) in enumerate(pts):
        seen = set()
        for j, (xj, yj) in enumerate(pts):
            if i == j:
                continue
            dx, dy = xj - xi, yj - yi
            g = math.gcd(dx, dy)
            dx, dy = dx // g, dy // g
            if dx < 0 or (dx == 0 and dy < 0):
                dx, dy = -dx, -dy
            if (dx, dy) in seen:
                return False
            seen.add((dx, dy))
    return True


def generate_instance(family: str, n: int, seed: int, params: dict | None = None) -> Instance:
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    if n < 2 and family != "polygon_visibility":
        raise ValueError("n must be >= 2")
    params = dict(params or {})
    rng = random.Random(f"{family}:{n}:{seed}")
    q = int(params.get("denominator", 1024))
    width = Fraction(params.get("width", 4))
    hi = int(width * q)
    F = lambda k: Fraction(k, q)  # noqa: E731
    payload = _GENERATORS[family](rng, n, seed, q, hi, F, params)
    return Instance(family, n, seed, payload, params)


def _gen_unit_disk(rng, n, seed, q, hi, F, params):
    xs = _distinct(rng, 0, hi, n, seed)
    ys = _distinct(rng, 0, hi, n, seed)
    # no pair exactly at the tangency threshold
    for _ in range(100):
        x = np.array(xs, dtype=np.int64)
        y = np.array(ys, dtype=np.int64)
        d2 = (x[:, None] - x[None, :]) ** 2 + (y[:, None] - y[None, :]) ** 2
        np.fill_diagonal(d2, -1)
        bad = np.argwhere(d2 == 4 * q * q)
        if not len(bad):
            break
        i = int(bad[0][0])
        free = sorted(set(range(hi + 1)) - set(xs))
        xs[i] = rng.choice(free)
    else:
        raise GenerationError(f"could not avoid tangent pairs (seed={seed})")
    return {"points": tuple((F(a), F(b)) for a, b in zip(xs, ys))}


def _gen_disk(rng, n, seed, q, hi, F, params):
    pts = _gen_unit_disk(rng, n, seed, q, hi, F, params)["points"]
    rmin = Fraction(params.get("rmin", Fraction(1, 4)))
    rmax = Fraction(params.get("rmax", 1))
    radii = tuple(F(rng.randint(int(rmin * q), int(rmax * q))) for _ in range(n))
    return {"points": pts, "radii": radii}


def _gen_point_halfplane(rng, n, seed, q, hi, F, params):
    k = n // 2
    xs = _distinct(rng, 0, hi, k, seed)
    ys = _distinct(rng, 0, hi, k, seed)
    lines = []
    for _ in range(n - k):
        m = F(rng.randint(-q, q))
        b = F(rng.randint(0, hi))
        lines.append((m, b - m * Fraction(hi, 2 * q)))
    return {"points": tuple((F(a), F(b)) for a, b in zip(xs, ys)), "lines": tuple(lines)}


def _gen_segments(rng, n, seed, q, hi, F, params):
    max_len = int(Fraction(params.get("max_len", Fraction(hi, 4 * q))) * q)
    used_x: set[int] = set()
    segs: list[tuple[int, int, int, int]] = []
    tries = 0
    while len(segs) < n:
        tries += 1
        if tries > 200 * n + 1000:
            raise GenerationError(f"segment generation stalled (seed={seed})")
        ax, ay = rng.randint(0, hi), rng.randint(0, hi)
        bx = ax + rng.randint(1, max_len)
        by = ay + rng.randint(-max_len, max_len)
        if bx > hi or not 0 <= by <= hi or ax in used_x or bx in used_x:
            continue
        ok = True
        for (cx, cy, dx, dy) in segs:
            if (pk.orient(ax, ay, bx, by, cx, cy) == 0 or pk.orient(ax, ay, bx, by, dx, dy) == 0
                    or pk.orient(cx, cy, dx, dy, ax, ay) == 0 or pk.orient(cx, cy, dx, dy, bx, by) == 0):
                ok = False
                break
        if not ok:
            continue
        used_x.update((ax, bx))
        segs.append((ax, ay, bx, by))
    return {"segments": tuple(tuple(F(v) for v in s) for s in segs)}


def _gen_bichromatic(rng, n, seed, q, hi, F, params):
    n_red = int(params.get("n_red", n // 2))
    n_blue = n - n_red
    # refine the grid when the default one leaves too few free abscissae per segment
    fine = max(1, -(-16 * n // hi))
    if fine > 1:
        q, hi = q * fine, hi * fine
        F = lambda k: Fraction(k, q)  # noqa: E731
    used_x: set[int] = set()

    def fresh_x(lo, up):
        for _ in range(1000):
            v = rng.randint(lo, up)
            if v not in used_x:
                used_x.add(v)
                return v
        raise GenerationError(f"no free abscissa (seed={seed})")

    # red: a perturbed pencil of near-horizontal lines, pairwise disjoint on [0, hi]
    red = []
    gap = hi // (n_red + 1)
    for i in range(n_red):
        base = (i + 1) * gap
        slope = Fraction(rng.randint(-gap // 3, gap // 3), hi) if gap >= 3 else Fraction(0)
        a, b = sorted((fresh_x(0, hi), fresh_x(0, hi)))
        red.append((F(a), F(base) + slope * F(a), F(b), F(base) + slope * F(b)))
    # blue: near-vertical lines, pairwise disjoint on y in [0, hi]
    blue = []
    gapb = hi // (n_blue + 1)
    for j in range(n_blue):
        base = (j + 1) * gapb
        for _ in range(1000):
            t = rng.randint(1, max(1, gapb // 3))
            t = t if rng.random() < 0.5 else -t
            y0, y1 = sorted(rng.sample(range(0, hi + 1), 2))
            xa, xb = base + Fraction(t * y0, hi), base + Fraction(t * y1, hi)
            if xa.denominator == 1 and xb.denominator == 1 and int(xa) not in used_x \
                    and int(xb) not in used_x and xa != xb:
                break
            # snap the y-extent so the abscissae stay on the grid
            xa_i, xb_i = round(xa), round(xb)
            if xa_i in used_x or xb_i in used_x or xa_i == xb_i:
                continue
            y0f = Fraction((xa_i - base) * hi, t)
            y1f = Fraction((xb_i - base) * hi, t)
            if 0 <= min(y0f, y1f) and max(y0f, y1f) <= hi:
                xa, xb, y0, y1 = Fraction(xa_i), Fraction(xb_i), y0f, y1f
                break
        else:
            raise GenerationError(f"blue segment generation stalled (seed={seed})")
        used_x.update((int(xa), int(xb)))
        p, r = (xa, Fraction(y0)), (xb, Fraction(y1))
        if p[0] > r[0]:
            p, r = r, p
        blue.append((F(p[0]), F(p[1]), F(r[0]), F(r[1])))
    return {"red": tuple(red), "blue": tuple(blue)}


def _gen_semilinear(rng, n, seed, q, hi, F, params):
    preset = params.get("preset", "interval")
    q, hi, F = _refined(q, hi, 2 * n)
    if preset == "interval":
        vals = _distinct(rng, 0, hi, 2 * n, seed)
        vecs = [tuple(sorted(vals[2 * i:2 * i + 2])) for i in range(n)]
    elif preset == "permutation":
        top = _distinct(rng, 0, hi, n, seed)
        bot = _distinct(rng, 0, hi, n, seed)
        vecs = list(zip(top, bot))
    elif preset == "circle":
        pos = list(range(2 * n))
        rng.shuffle(pos)
        vecs = [tuple(sorted(pos[2 * i:2 * i + 2])) for i in range(n)]
    elif preset == "tournament":
        vecs = [(v,) for v in _distinct(rng, 0, hi, n, seed)]
    else:
        raise ValueError(f"unknown semilinear preset {preset!r}")
    return {"vectors": tuple(tuple(F(v) for v in vec) for vec in vecs)}


def _gen_boxicity(rng, n, seed, q, hi, F, params):
    d = int(params.get("d", 3))
    q, hi, F = _refined(q, hi, 2 * n)
    axes = []
    for _ in range(d):
        vals = _distinct(rng, 0, hi, 2 * n, seed)
        axes.append([sorted(vals[2 * i:2 * i + 2]) for i in range(n)])
    boxes = tuple(tuple(F(axes[a][i][0]) for a in range(d)) + tuple(F(axes[a][i][1]) for a in range(d))
                  for i in range(n))
    return {"boxes": boxes}


def _gen_polygon(rng, n, seed, q, hi, F, params):
    if n < 3:
        raise ValueError("a polygon needs n >= 3")
    budget = int(params.get("retries", 20))
    for _ in range(budget):
        xs = _distinct(rng, 0, hi, n, seed)
        ys = _distinct(rng, 0, hi, n, seed)
        pts = list(zip(xs, ys))
        if not _no_collinear(pts):
            continue
        rng.shuffle(pts)
        moves = 0
        limit = 20 * n * n + 100
        while moves < limit:
            i, j = kernels.find_crossing([p[0] for p in pts], [p[1] for p in pts])
            if i < 0:
                break
            # 2-opt: reverse the chain between the two crossing edges
            pts[i + 1:j + 1] = pts[i + 1:j + 1][::-1]
            moves += 1
        else:
            continue
        area2 = sum(pts[k][0] * pts[(k + 1) % n][1] - pts[(k + 1) % n][0] * pts[k][1] for k in range(n))
        if area2 < 0:
            pts.reverse()
        return {"vertices": tuple((F(a), F(b)) for a, b in pts)}
    raise GenerationError(f"no simple polygon within {budget} attempts (seed={seed})")


def _gen_terrain(rng, n, seed, q, hi, F, params):
    # heights on a finer sub-grid keep collinear triples rare at large n
    fine = 4096
    for _ in range(20):
        xs = sorted(_distinct(rng, 0, hi, n, seed))
        ys = [rng.randint(0, hi * fine) for _ in range(n)]
        pts = list(zip((x * fine for x in xs), ys))
        if n > 2048 or _no_collinear(pts):
            return {"vertices": tuple((F(a), Fraction(b, q * fine)) for a, b in zip(xs, ys))}
    raise GenerationError(f"terrain stayed degenerate (seed={seed})")


def capped_closure(m: np.ndarray) -> np.ndarray:
    """Close a 0/1 matrix under the rule: i<j<k<l, ik and jl edges => il edge."""
    m = np.array(m, dtype=bool)
    n = len(m)
    idx = np.arange(n)
    while True:
        upper = np.triu(m, 1)
        # last[i, l] = largest k < l with ik an edge (k > i), -1 if none
        last = np.where(upper, idx[None, :], -1)
        last = np.maximum.accumulate(last, axis=1)
        last = np.concatenate([np.full((n, 1), -1), last[:, :-1]], axis=1)
        # first[i, l] = smallest j > i with jl an edge (j < l), n if none
        first = np.where(upper, idx[:, None], n)
        first = np.minimum.accumulate(first[::-1], axis=0)[::-1]
        first = np.concatenate([first[1:], np.full((1, n), n)], axis=0)
        new = (first < last) & (idx[:, None] < idx[None, :]) & ~upper
        if not new.any():
            break
        m |= new | new.T
    np.fill_diagonal(m, False)
    return m.astype(np.uint8)


def _gen_capped(rng, n, seed, q, hi, F, params):
    p = float(params.get("p", 3.0 / n))
    m = np.zeros((n, n), dtype=np.uint8)
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                m[i, j] = m[j, i] = 1
    m = capped_closure(m)
    return {"matrix": m.tolist()}


_GENERATORS = {
    "unit_disk": _gen_unit_disk,
    "disk": _gen_disk,
    "point_halfplane": _gen_point_halfplane,
    "segment_intersection": _gen_segments,
    "semilinear_dnf": _gen_semilinear,
    "boxicity": _gen_boxicity,
    "polygon_visibility": _gen_polygon,
    "terrain_visibility": _gen_terrain,
    "capped_abstract": _gen_capped,
    "bichromatic_segments": _gen_bichromatic,
}


# ---------------------------------------------------------------------------
# Oracles
# ---------------------------------------------------------------------------


def segments_of(inst: Instance) -> list[tuple]:
    if inst.family == "bichromatic_segments":
        return list(inst.payload["red"]) + list(inst.payload["blue"])
    return list(inst.payload["segments"])


def segments_meet(s, t) -> bool:
    return pk.seg_meet(*s, *t)


def point_in_polygon(vertices, p) -> bool:
    return pk.point_in_polygon([v[0] for v in vertices], [v[1] for v in vertices], p[0], p[1])


def polygon_visible(vertices, u: int, v: int) -> bool:
    n = len(vertices)
    a, b = vertices[u], vertices[v]
    for k in range(n):
        c, d = vertices[k], vertices[(k + 1) % n]
        if (pk.orient(*a, *b, *c) * pk.orient(*a, *b, *d) < 0
                and pk.orient(*c, *d, *a) * pk.orient(*c, *d, *b) < 0):
            return False
    mid = ((a[0] + b[0]) / 2, (a[1] + b[1]) / 2)
    return point_in_polygon(vertices, mid)


def terrain_visible(vertices, u: int, v: int) -> bool:
    if u > v:
        u, v = v, u
    a, b = vertices[u], vertices[v]
    return all(pk.orient(*a, *b, *vertices[k]) <= 0 for k in range(u + 1, v))


def oracle_adjacent(inst: Instance, u: int, v: int) -> bool:
    if u == v:
        raise ValueError("oracle_adjacent needs distinct vertices")
    if not (0 <= u < inst.n and 0 <= v < inst.n):
        raise IndexError("vertex id out of range")
    fam, pl = inst.family, inst.payload
    if fam == "unit_disk":
        (a, b), (c, d) = pl["points"][u], pl["points"][v]
        return (a - c) ** 2 + (b - d) ** 2 <= 4
    if fam == "disk":
        (a, b), (c, d) = pl["points"][u], pl["points"][v]
        return (a - c) ** 2 + (b - d) ** 2 <= (pl["radii"][u] + pl["radii"][v]) ** 2
    if fam == "point_halfplane":
        k = len(pl["points"])
        if (u < k) == (v < k):
            return False
        p, line = (pl["points"][u], pl["lines"][v - k]) if u < k else (pl["points"][v], pl["lines"][u - k])
        return p[1] >= line[0] * p[0] + line[1]
    if fam == "segment_intersection":
        return segments_meet(pl["segments"][u], pl["segments"][v])
    if fam == "bichromatic_segments":
        k = len(pl["red"])
        if (u < k) == (v < k):
            return False
        segs = segments_of(inst)
        return segments_meet(segs[u], segs[v])
    if fam == "semilinear_dnf":
        from .semilinear import preset_dnf
        dnf = preset_dnf(inst.params.get("preset", "interval"))
        return dnf.adjacent(pl["vectors"][u], pl["vectors"][v])
    if fam == "boxicity":
        bu, bv = pl["boxes"][u], pl["boxes"][v]
        d = len(bu) // 2
        return all(bu[a] <= bv[d + a] and bv[a] <= bu[d + a] for a in range(d))
    if fam == "polygon_visibility":
        return polygon_visible(pl["vertices"], u, v)
    if fam == "terrain_visibility":
        return terrain_visible(pl["vertices"], u, v)
    if fam == "capped_abstract":
        return bool(pl["matrix"][u][v])
    raise ValueError(f"unknown family {fam!r}")


def adjacency_matrix(inst: Instance, budget: int | None = None) -> np.ndarray:
    """n x n symmetric 0/1 matrix (uint8) with zero diagonal."""
    n, fam, pl = inst.n, inst.family, inst.payload
    if budget is None:
        budget = POLYGON_BUDGET if fam == "polygon_visibility" else DEFAULT_BUDGET
    if n > budget:
        raise BudgetError(f"n={n} exceeds the brute-force budget {budget}")
    if fam in ("unit_disk", "disk"):
        pts = pl["points"]
        rad = [Fraction(1)] * n if fam == "unit_disk" else list(pl["radii"])
        g, _ = to_grid([p[0] for p in pts] + [p[1] for p in pts] + rad)
        return kernels.disk_adjacency(g[:n], g[n:2 * n], g[2 * n:])
    if fam in ("segment_intersection", "bichromatic_segments"):
        segs = segments_of(inst)
        g, _ = to_grid([c for s in segs for c in s])
        m = kernels.segment_adjacency(g[0::4], g[1::4], g[2::4], g[3::4])
        if fam == "bichromatic_segments":
            k = len(pl["red"])
            m[:k, :k] = 0
            m[k:, k:] = 0
        return m
    if fam in ("polygon_visibility", "terrain_visibility"):
        vs = pl["vertices"]
        g, _ = to_grid([c for v in vs for c in v])
        fn = kernels.polygon_visibility if fam == "polygon_visibility" else kernels.terrain_visibility
        return fn(g[0::2], g[1::2])
    if fam == "capped_abstract":
        m = np.array(pl["matrix"], dtype=np.uint8)
        np.fill_diagonal(m, 0)
        return m
    if fam == "semilinear_dnf":
        from .semilinear import preset_dnf
        return preset_dnf(inst.params.get("preset", "interval")).matrix(pl["vectors"])
    if fam == "boxicity":
        g, _ = to_grid([c for b in pl["boxes"] for c in b])
        d = len(pl["boxes"][0]) // 2
        b = np.array(g, dtype=np.int64).reshape(n, 2 * d)
        m = np.ones((n, n), dtype=bool)
        for a in range(d):
            m &= (b[:, None, a] <= b[None, :, d + a]) & (b[None, :, a] <= b[:, None, d + a])
        np.fill_diagonal(m, False)
        return m.astype(np.uint8)
    m = np.zeros((n, n), dtype=np.uint8)
    for u in range(n):
        for v in range(u + 1, n):
            if oracle_adjacent(inst, u, v):
                m[u, v] = m[v, u] = 1
    return m


def is_simple_polygon(vertices) -> bool:
    g, _ = to_grid([c for v in vertices for c in v])
    return kernels.find_crossing(g[0::2], g[1::2]) == (-1, -1)

"""Two-phase planar partition trees emitting biclique decompositions.

Phase 1 partitions the right-role points against the ranges of the
left-role vertices until few ranges cross a cell.  Phase 2 then swaps roles
inside every phase-1 leaf: the surviving left-role vertices become points and
the leaf's right-role points become ranges, partitioned by kd splits.  Every
incidence lands in exactly one emitted biclique.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import kernels
from .biclique import Biclique, BicliqueDecomposition, coalesce, validate_decomposition
from .geom_graphs import PredicateSpec
from .poly import Poly


class ConfigError(ValueError):
    pass


class PartitionError(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# Ranges
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Range:
    """A closed disk (cx, cy, r2) or halfplane a*x + b*y + c >= 0."""

    kind: str
    params: tuple[Fraction, ...]
    owner: int
    role: str = "dual"

    def __post_init__(self):
        if self.kind == "disk":
            if self.params[2] <= 0:
                raise ConfigError("disk range needs a positive radius")
        elif self.kind == "halfplane":
            if self.params[0] == 0 and self.params[1] == 0:
                raise ConfigError("halfplane needs a non-zero normal")
        else:
            raise ConfigError(f"unsupported range kind {self.kind!r}")

    def contains_point(self, p: Sequence) -> bool:
        x, y = Fraction(p[0]), Fraction(p[1])
        if self.kind == "disk":
            cx, cy, r2 = self.params
            return (x - cx) ** 2 + (y - cy) ** 2 <= r2
        a, b, c = self.params
        return a * x + b * y + c >= 0


def range_from_poly(f: Poly, owner: int, role: str) -> Range:
    """Read {z : f(z) >= 0} off a polynomial of degree <= 2 in two variables."""
    if f.nvars != 2:
        raise ConfigError("range polynomial must be bivariate")
    co = {e: c for e, c in f.terms.items()}
    get = lambda e: co.get(e, Fraction(0))  # noqa: E731
    if f.degree > 2:
        raise ConfigError("range boundary of degree > 2 is unsupported")
    a11, a22, a12 = get((2, 0)), get((0, 2)), get((1, 1))
    d, e, g = get((1, 0)), get((0, 1)), get((0, 0))
    if a11 == a22 == a12 == 0:
        return Range("halfplane", (d, e, g), owner, role)
    if a12 == 0 and a11 == a22 and a11 < 0:
        cx, cy = -d / (2 * a11), -e / (2 * a11)
        return Range("disk", (cx, cy, cx * cx + cy * cy - g / a11), owner, role)
    raise ConfigError("range is neither a disk nor a halfplane")


def derive_ranges(spec: PredicateSpec, fixed_points: Sequence[Sequence], owners: Sequence[int],
                  role: str, cache: dict | None = None) -> list[Range]:
    """role 'dual': fix the left argument, range over the right; 'primal': the reverse."""
    if spec.t != 1 or spec.d_left != 2 or spec.d_right != 2:
        raise ConfigError("partition trees need a single polynomial over planar roles")
    f = spec.polys[0]
    base = 0 if role == "dual" else 2
    out = []
    for p, o in zip(fixed_points, owners):
        key = (role, o)
        if cache is None or key not in cache:
            rng = range_from_poly(f.substitute({base: Fraction(p[0]), base + 1: Fraction(p[1])}), o, role)
            if cache is None:
                out.append(rng)
                continue
            cache[key] = rng
        out.append(cache[key])
    return out


# ---------------------------------------------------------------------------
# Cells and classification
# ---------------------------------------------------------------------------

DISJOINT, CROSSES, CONTAINS = 0, 1, 2
_NAMES = {DISJOINT: "disjoint", CROSSES: "crosses", CONTAINS: "contains"}


@dataclass(frozen=True)
class Box:
    x0: Fraction
    y0: Fraction
    x1: Fraction
    y1: Fraction


def classify(rng: Range, box: Box) -> str:
    """Exact closed-range versus closed-box classification."""
    x0, y0, x1, y1 = box.x0, box.y0, box.x1, box.y1
    if rng.kind == "disk":
        cx, cy, r2 = rng.params
        dx = x0 - cx if cx < x0 else (cx - x1 if cx > x1 else 0)
        dy = y0 - cy if cy < y0 else (cy - y1 if cy > y1 else 0)
        if dx * dx + dy * dy > r2:
            return "disjoint"
        fx, fy = max(cx - x0, x1 - cx), max(cy - y0, y1 - cy)
        return "contains" if fx * fx + fy * fy <= r2 else "crosses"
    if rng.kind == "halfplane":
        a, b, c = rng.params
        vals = [a * x + b * y + c for x in (x0, x1) for y in (y0, y1)]
        if min(vals) >= 0:
            return "contains"
        return "disjoint" if max(vals) < 0 else "crosses"
    raise ConfigError(f"unsupported range kind {rng.kind!r}")


def _lcm(values) -> int:
    out = 1
    for v in values:
        out = out * v // math.gcd(out, v)
    return out


def _array(values: list[int]) -> np.ndarray:
    if all(-(1 << 62) < v < (1 << 62) for v in values):
        return np.asarray(values, dtype=np.int64)
    return np.asarray(values, dtype=object)


class _Space:
    """Points and ranges of one phase as integers for the box kernels.

    When all coordinates share a small common denominator the grid is exact.
    Otherwise (halfplanes over rational slopes) points are rounded outward to a
    power-of-two grid: boxes still enclose their points, so "contains" and
    "disjoint" remain exact, and single points are decided with rationals.
    """

    def __init__(self, points: Sequence[Sequence], ranges: Sequence[Range]):
        kinds = {r.kind for r in ranges}
        if len(kinds) > 1:
            raise ConfigError("mixed range kinds within one role")
        self.kind = kinds.pop() if kinds else "disk"
        self.points = [(Fraction(p[0]), Fraction(p[1])) for p in points]
        self.ranges = list(ranges)
        dens = [c.denominator for p in self.points for c in p]
        if self.kind == "disk":
            dens += [c.denominator for r in ranges for c in r.params]
        scale = _lcm(dens)
        top = max((abs(c) for p in self.points for c in p), default=Fraction(1))
        self.exact = self.kind == "disk" or scale * top < kernels.INT64_SAFE
        if not self.exact:
            scale = 1 << max(0, 26 - math.ceil(top).bit_length())
        self.scale = scale
        lo = [(math.floor(x * scale), math.floor(y * scale)) for x, y in self.points]
        hi = [(math.ceil(x * scale), math.ceil(y * scale)) for x, y in self.points]
        self.x, self.y = _array([p[0] for p in lo]), _array([p[1] for p in lo])
        self.xh, self.yh = _array([p[0] for p in hi]), _array([p[1] for p in hi])
        if self.kind == "disk":
            cols = [[int(r.params[0] * scale) for r in ranges],
                    [int(r.params[1] * scale) for r in ranges],
                    [int(r.params[2] * scale * scale) for r in ranges]]
        else:
            cols = [[], [], []]
            for r in ranges:
                a, b, c = r.params
                c = c * scale
                k = _lcm([a.denominator, b.denominator, c.denominator])
                cols[0].append(int(a * k))
                cols[1].append(int(b * k))
                cols[2].append(int(c * k))
        self.r0, self.r1, self.r2 = (_array(c) for c in cols)

    def box(self, idx: np.ndarray) -> tuple[int, int, int, int]:
        return (int(self.x[idx].min()), int(self.y[idx].min()),
                int(self.xh[idx].max()), int(self.yh[idx].max()))

    def classify(self, ridx: np.ndarray, box, pidx: np.ndarray | None = None) -> np.ndarray:
        if not len(ridx):
            return np.zeros(0, dtype=np.int8)
        if not self.exact and pidx is not None and len(pidx) == 1:
            p = self.points[int(pidx[0])]
            return np.array([CONTAINS if self.ranges[i].contains_point(p) else DISJOINT
                             for i in ridx], dtype=np.int8)
        if self.kind == "disk":
            return kernels.classify_disks_box(self.r0[ridx], self.r1[ridx], self.r2[ridx], box)
        return kernels.classify_halfplanes_box(self.r0[ridx], self.r1[ridx], self.r2[ridx], box)

    def incidence(self, ridx: np.ndarray, pidx: np.ndarray) -> np.ndarray:
        """Boolean |ridx| x |pidx| matrix of point-in-range."""
        if not self.exact:
            return np.array([[self.ranges[i].contains_point(self.points[j]) for j in pidx]
                             for i in ridx], dtype=bool).reshape(len(ridx), len(pidx))
        px, py = self.x[pidx][None, :], self.y[pidx][None, :]
        a, b, c = self.r0[ridx][:, None], self.r1[ridx][:, None], self.r2[ridx][:, None]
        if self.kind == "disk":
            return (px - a) ** 2 + (py - b) ** 2 <= c
        return a * px + b * py + c >= 0

    def to_box(self, box) -> Box:
        return Box(*(Fraction(v, self.scale) for v in box))


# ---------------------------------------------------------------------------
# Partitioners
# ---------------------------------------------------------------------------


@dataclass
class Cell:
    box: tuple[int, int, int, int]
    point_idx: np.ndarray
    depth: int = 0


def _median_split(space: _Space, idx: np.ndarray, axis: int) -> tuple[np.ndarray, np.ndarray]:
    coord = space.x[idx] if axis == 0 else space.y[idx]
    order = np.lexsort((idx, coord))
    half = (len(idx) + 1) // 2
    return idx[order[:half]], idx[order[half:]]


def point_partition(space: _Space, idx: np.ndarray, r: int) -> list[Cell]:
    """kd-median split into r cells, alternating x and y, ties broken by id."""
    if r > len(idx):
        raise ValueError(f"r={r} exceeds the {len(idx)} points")
    depth = int(round(math.log2(r)))
    if 1 << depth != r or depth % 2:
        raise ValueError("r must be a power of 4")
    cells = [idx]
    for level in range(depth):
        nxt = []
        for c in cells:
            if len(c) < 2:
                nxt.append(c)
                continue
            nxt.extend(_median_split(space, c, level % 2))
        cells = nxt
    out = [Cell(space.box(c), c, depth) for c in cells if len(c)]
    _check_point_cells(space, out, len(idx), r)
    return out


def _check_point_cells(space: _Space, cells: list[Cell], m: int, r: int, lines: int = 100) -> None:
    """Post-condition: cell sizes and axis-parallel line crossings stay within bounds."""
    cap = -(-m // r) + (int(round(math.log2(r))) + 1) // 2
    big = max((len(c.point_idx) for c in cells), default=0)
    if big > cap:
        raise PartitionError(f"cell with {big} points exceeds {cap}")
    rng = random.Random(m * 7919 + r)
    lo_x, hi_x = min(c.box[0] for c in cells), max(c.box[2] for c in cells)
    lo_y, hi_y = min(c.box[1] for c in cells), max(c.box[3] for c in cells)
    bound = 2 * math.isqrt(r)
    for _ in range(lines):
        axis = rng.randrange(2)
        lo, hi = (lo_x, hi_x) if axis == 0 else (lo_y, hi_y)
        # half-integers never coincide with grid coordinates
        at = rng.randint(lo, max(lo, hi - 1)) + 0.5
        hits = sum(1 for c in cells if c.box[axis] < at < c.box[axis + 2])
        if hits > bound:
            raise PartitionError(f"axis-parallel line crosses {hits} > {bound} cells")


def phase_threshold(m: int, exponent: float) -> int:
    """ceil(m ** exponent), with near-integer powers rounded first."""
    t = m ** exponent
    return round(t) if abs(t - round(t)) < 1e-9 else math.ceil(t)


def effective_r(r: int, npts: int) -> int:
    """Largest power of 4 that is <= min(r, npts), at least 4."""
    out = 4
    while out * 4 <= min(r, npts):
        out *= 4
    return out


def range_partition(space: _Space, ridx: np.ndarray, pidx: np.ndarray, D: int,
                    seed: int = 0, max_cells: int | None = None) -> list[Cell]:
    """Refine the point set into cells each crossed by at most |ridx|/D ranges.

    Cells are bounding boxes of their points, refined by median splits on the
    longer side until the crossing bound holds.  A single-point cell is never
    crossed, so the bound is always reachable.
    """
    del seed  # the refinement is deterministic
    if D < 2:
        raise ValueError("D must be >= 2")
    limit = len(ridx) / D
    budget = max_cells if max_cells is not None else max(len(pidx), 1)
    out: list[Cell] = []
    stack = [(pidx, 0)]
    while stack:
        idx, depth = stack.pop()
        box = space.box(idx)
        crossing = int(np.count_nonzero(space.classify(ridx, box, idx) == CROSSES))
        if crossing <= limit:
            out.append(Cell(box, idx, depth))
            if len(out) > budget:
                raise PartitionError(f"cell budget {budget} exhausted "
                                     f"(m={len(ridx)}, D={D}, points={len(pidx)})")
            continue
        if len(idx) < 2:
            raise PartitionError("singleton cell crossed; classification is inconsistent")
        axis = 0 if box[2] - box[0] >= box[3] - box[1] else 1
        lo, hi = _median_split(space, idx, axis)
        stack.append((hi, depth + 1))
        stack.append((lo, depth + 1))
    out.sort(key=lambda c: int(c.point_idx.min()))
    return out


# ---------------------------------------------------------------------------
# Two-phase tree
# ---------------------------------------------------------------------------


@dataclass
class BuildConfig:
    D: int = 4
    r: int = 16
    N_exponent: float = 2.0 / 3.0
    leaf_point_cap: int = 4
    seed: int = 0

    def __post_init__(self):
        if self.D < 2:
            raise ConfigError("D must be >= 2")
        if self.r < 4 or self.r & (self.r - 1) or int(math.log2(self.r)) % 2:
            raise ConfigError("r must be a power of 4, at least 4")
        if not 0 < self.N_exponent < 1:
            raise ConfigError("N_exponent must lie in (0, 1)")
        if self.leaf_point_cap < 1:
            raise ConfigError("leaf_point_cap must be positive")


@dataclass
class TreeNode:
    id: int
    phase: int
    grid_box: tuple[int, int, int, int]
    scale: int
    point_ids: list[int]
    crossing_range_ids: list[int]
    containing_range_ids: list[int]
    depth: int
    biclique_ids: list[int] = field(default_factory=list)
    is_cell: bool = True
    children: list["TreeNode"] = field(default_factory=list)

    def walk(self):
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))

    @property
    def box(self) -> Box:
        return Box(*(Fraction(v, self.scale) for v in self.grid_box))

    def to_json(self) -> dict:
        b = self.box
        return {"id": self.id, "phase": self.phase, "depth": self.depth,
                "box": [[v.numerator, v.denominator] for v in (b.x0, b.y0, b.x1, b.y1)],
                "points": len(self.point_ids), "crossing": len(self.crossing_range_ids),
                "containing": len(self.containing_range_ids), "bicliques": len(self.biclique_ids),
                "children": [c.id for c in self.children]}


class _Builder:
    def __init__(self, n: int, cfg: BuildConfig):
        self.n = n
        self.cfg = cfg
        self.bicliques: list[Biclique] = []
        self.phase_of: list[int] = []
        self.next_id = 0

    def emit(self, left, right, phase: int) -> int | None:
        if not len(left) or not len(right):
            return None
        bid = len(self.bicliques)
        self.bicliques.append(Biclique(bid, tuple(int(v) for v in left), tuple(int(v) for v in right)))
        self.phase_of.append(phase)
        return bid

    def node(self, phase, space, box, pidx, cross, contain, depth, point_ids, range_ids):
        node = TreeNode(self.next_id, phase, box, space.scale,
                        [int(point_ids[i]) for i in pidx], [int(range_ids[i]) for i in cross],
                        [int(range_ids[i]) for i in contain], depth)
        self.next_id += 1
        return node


def build_two_phase_tree(P: Sequence[Sequence], S: Sequence[Sequence], spec: PredicateSpec,
                         cfg: BuildConfig | None = None, p_ids: Sequence[int] | None = None,
                         s_ids: Sequence[int] | None = None,
                         n: int | None = None,
                         range_cache: dict | None = None) -> tuple[TreeNode, BicliqueDecomposition]:
    """Decompose the incidences {(p, s) : f(p, s) >= 0}; bicliques are (P side) x (S side)."""
    cfg = cfg or BuildConfig()
    p_ids = list(range(len(P))) if p_ids is None else [int(v) for v in p_ids]
    s_ids = list(range(len(P), len(P) + len(S))) if s_ids is None else [int(v) for v in s_ids]
    if n is None:
        n = max(p_ids + s_ids, default=-1) + 1
    b = _Builder(n, cfg)
    if not P or not S:
        root = TreeNode(0, 1, (0, 0, 0, 0), 1, [], [], [], 0)
        return root, BicliqueDecomposition(n, [], "partition_tree")

    dual = derive_ranges(spec, P, p_ids, "dual", range_cache)
    primal = derive_ranges(spec, S, s_ids, "primal", range_cache)
    space1 = _Space(S, dual)
    space2 = _Space(P, primal)
    threshold = phase_threshold(len(P), cfg.N_exponent)
    p_owner = np.asarray(p_ids, dtype=np.int64)
    s_owner = np.asarray(s_ids, dtype=np.int64)

    def phase2(pidx, ridx, box, level, steps):
        """Points are P indices, ranges are S indices.

        A node with ``steps == 0`` is a cell of the parent's r-way kd partition;
        the binary median splits in between also classify and emit, so a range
        containing several sibling cells is emitted once.
        """
        cls = space2.classify(ridx, box, pidx)
        contain = ridx[cls == CONTAINS]
        cross = ridx[cls == CROSSES]
        node = b.node(2, space2, box, pidx, cross, contain, level, p_ids, s_ids)
        node.is_cell = steps == 0
        bid = b.emit(p_owner[pidx], s_owner[contain], 2)
        if bid is not None:
            node.biclique_ids.append(bid)
        if not len(cross):
            return node
        if steps == 0:
            if len(pidx) <= max(cfg.leaf_point_cap, 3):
                inc = space2.incidence(cross, pidx)
                for j, pi in enumerate(pidx):
                    hit = cross[inc[:, j]]
                    bid = b.emit([p_owner[pi]], s_owner[hit], 2)
                    if bid is not None:
                        node.biclique_ids.append(bid)
                return node
            r_eff = effective_r(cfg.r, len(pidx))
            # the median splits below reproduce this partition; its post-condition runs here
            point_partition(space2, pidx, r_eff)
            steps = r_eff.bit_length() - 1
            level += 1
        # x splits on even remaining steps, so every r-cell starts with x
        for half in _median_split(space2, pidx, 0 if steps % 2 == 0 else 1):
            if len(half):
                node.children.append(phase2(half, cross, space2.box(half), level, steps - 1))
        return node

    def phase1(sidx, ridx, box, level, limit):
        """Points are S indices, ranges are P indices.

        Nodes whose crossing count is within ``limit`` are cells of the parent's
        cutting and start a new level; the others are intermediate median splits
        of the refinement, where contained ranges are emitted once for the
        whole region instead of once per final cell.
        """
        cls = space1.classify(ridx, box, sidx)
        contain = ridx[cls == CONTAINS]
        cross = ridx[cls == CROSSES]
        is_cell = limit is None or len(cross) <= limit
        if is_cell and limit is not None:
            level += 1
        node = b.node(1, space1, box, sidx, cross, contain, level, s_ids, p_ids)
        node.is_cell = is_cell
        bid = b.emit(p_owner[contain], s_owner[sidx], 1)
        if bid is not None:
            node.biclique_ids.append(bid)
        if not len(cross):
            return node
        if is_cell:
            if len(cross) <= threshold:
                node.children.append(phase2(cross, sidx, space2.box(cross), 0, 0))
                return node
            limit = len(cross) / cfg.D
        axis = 0 if box[2] - box[0] >= box[3] - box[1] else 1
        for half in _median_split(space1, sidx, axis):
            node.children.append(phase1(half, cross, space1.box(half), level, limit))
        return node

    all_s = np.arange(len(S))
    root = phase1(all_s, np.arange(len(P)), space1.box(all_s), 0, None)
    dec = BicliqueDecomposition(n, b.bicliques, "partition_tree")
    dec.phase_of = b.phase_of  # type: ignore[attr-defined]
    return root, dec


def tree_nu_stats(tree: TreeNode, dec: BicliqueDecomposition) -> dict:
    nu_p: dict[int, int] = {}
    nu_s: dict[int, int] = {}
    per_phase = {1: {}, 2: {}}
    depth = {1: 0, 2: 0}
    count = 0
    for node in tree.walk():
        count += 1
        depth[node.phase] = max(depth[node.phase], node.depth)
        for bid in node.biclique_ids:
            bq = dec.bicliques[bid]
            for v in bq.left:
                nu_p[v] = nu_p.get(v, 0) + 1
                per_phase[node.phase][v] = per_phase[node.phase].get(v, 0) + 1
            for v in bq.right:
                nu_s[v] = nu_s.get(v, 0) + 1
                per_phase[node.phase][v] = per_phase[node.phase].get(v, 0) + 1
    return {
        "nu_P": nu_p, "nu_S": nu_s,
        "nu_P_max": max(nu_p.values(), default=0), "nu_S_max": max(nu_s.values(), default=0),
        "phase1_nu_max": max(per_phase[1].values(), default=0),
        "phase2_nu_max": max(per_phase[2].values(), default=0),
        "phase1_depth": depth[1], "phase2_depth": depth[2], "node_count": count,
    }


def tree_dump(tree: TreeNode) -> list[dict]:
    return [node.to_json() for node in tree.walk()]


# ---------------------------------------------------------------------------
# Labelings built on the tree
# ---------------------------------------------------------------------------


def incidence_matrix(P, S, spec: PredicateSpec, p_ids, s_ids, n: int) -> np.ndarray:
    """Exact bipartite incidence as an n x n symmetric matrix (reference oracle)."""
    m = np.zeros((n, n), dtype=np.uint8)
    f = spec.polys[0]
    for p, pi in zip(P, p_ids):
        for s, si in zip(S, s_ids):
            if f([Fraction(p[0]), Fraction(p[1]), Fraction(s[0]), Fraction(s[1])]) >= 0:
                m[pi, si] = m[si, pi] = 1
    return m


def bipartized_decomposition(points_left: Sequence[Sequence], points_right: Sequence[Sequence],
                             spec: PredicateSpec, cfg: BuildConfig | None = None,
                             flip: bool = False) -> BicliqueDecomposition:
    """Union of two-phase trees over the halving hierarchy of vertex ids.

    ``points_left[v]`` / ``points_right[v]`` embed vertex v in the left and right
    argument roles.  With ``flip`` false the lower-id half of every piece takes
    the left role, otherwise the higher-id half does; bicliques always list the
    left-role vertices first.
    """
    from .labeling import bipartize

    n = len(points_left)
    bicliques = []
    cache: dict = {}
    for piece in bipartize(n):
        lo, hi = list(piece.left), list(piece.right)
        if flip:
            lo, hi = hi, lo
        _, dec = build_two_phase_tree([points_left[v] for v in lo], [points_right[v] for v in hi],
                                      spec, cfg, lo, hi, n, cache)
        bicliques.extend((bq.left, bq.right) for bq in dec.bicliques)
    # fewer memberships, and no two bicliques left with one identical side
    return coalesce(BicliqueDecomposition.from_pairs(n, bicliques, "partition_tree"))


def partition_tree_labels(points: Sequence[Sequence], spec: PredicateSpec,
                          cfg: BuildConfig | None = None, matrix: np.ndarray | None = None):
    """Biclique-list labels for a symmetric single-polynomial graph."""
    from .labeling import encode_from_bicliques

    dec = bipartized_decomposition(points, points, spec, cfg)
    if matrix is not None:
        rep = validate_decomposition(dec, matrix)
        if not rep.ok:
            raise PartitionError(f"decomposition invalid: {len(rep.missing_edges)} missing, "
                                 f"{len(rep.double_covered)} doubled, "
                                 f"{len(rep.covered_nonedges)} spurious")
    return encode_from_bicliques(dec), dec


def segment_line(seg: Sequence) -> tuple[Fraction, Fraction]:
    """(slope, intercept) of the supporting line; needs distinct endpoint x."""
    ax, ay, bx, by = (Fraction(v) for v in seg)
    if ax == bx:
        raise ConfigError("vertical segments have no slope-intercept form")
    m = (by - ay) / (bx - ax)
    return m, ay - m * ax


def strict_segment_phi() -> list:
    """Proper crossing from the f_i < 0 atoms of the four orientation tests."""
    from .geom_graphs import atom

    def differ(i, j):
        return ["or", ["and", atom(i, "lt"), ["not", atom(j, "lt")]],
                ["and", ["not", atom(i, "lt")], atom(j, "lt")]]

    return ["and", differ(1, 2), differ(3, 4)]


def segment_labels(segments: Sequence[Sequence], cfg: BuildConfig | None = None):
    """Composed labels for segment intersection in general position.

    With the left endpoint first, the orientation of endpoint w against the
    segment u has the sign of "w lies above the line of u", a halfplane test
    in (slope, intercept) x point space.  The tests against the right-hand
    segment are the same relations with the arguments swapped.
    """
    from .geom_graphs import halfplane_spec, segment_spec
    from .labeling import compose_predicate_labels, encode_from_bicliques

    segs = [tuple(Fraction(v) for v in s) for s in segments]
    segs = [s if s[0] < s[2] else (s[2], s[3], s[0], s[1]) for s in segs]
    lines = [segment_line(s) for s in segs]
    left_ends = [(s[0], s[1]) for s in segs]
    right_ends = [(s[2], s[3]) for s in segs]
    hp = halfplane_spec()
    subs = []
    for ends in (left_ends, right_ends):
        subs.append([encode_from_bicliques(bipartized_decomposition(lines, ends, hp, cfg, flip=flip))
                     for flip in (False, True)])
    # f3(u, v) = f1(v, u) and f4(u, v) = f2(v, u)
    order = [subs[0][0], subs[0][1], subs[1][0], subs[1][1],
             subs[0][1], subs[0][0], subs[1][1], subs[1][0]]
    return compose_predicate_labels(segment_spec(), order, strict_segment_phi())


def point_halfplane_labels(points: Sequence[Sequence], lines: Sequence[Sequence],
                           cfg: BuildConfig | None = None, matrix: np.ndarray | None = None):
    """Points get ids 0..k-1 and lines k..n-1; one tree, no bipartization needed."""
    from .geom_graphs import point_halfplane_spec
    from .labeling import encode_from_bicliques

    k, n = len(points), len(points) + len(lines)
    _, dec = build_two_phase_tree(points, lines, point_halfplane_spec(), cfg,
                                  range(k), range(k, n), n)
    if matrix is not None and not validate_decomposition(dec, matrix).ok:
        raise PartitionError("decomposition does not match the incidence matrix")
    return encode_from_bicliques(dec), dec

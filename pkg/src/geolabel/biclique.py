"""Biclique edge partitions: containers, exact validation and size metrics."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np


@dataclass(frozen=True)
class Biclique:
    id: int
    left: tuple[int, ...]
    right: tuple[int, ...]

    def __post_init__(self):
        left = tuple(sorted(set(self.left)))
        right = tuple(sorted(set(self.right)))
        if not left or not right:
            raise ValueError("biclique sides must be non-empty")
        if set(left) & set(right):
            raise ValueError("biclique sides must be disjoint")
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)

    @property
    def size(self) -> int:
        return len(self.left) + len(self.right)

    @property
    def edge_count(self) -> int:
        return len(self.left) * len(self.right)


@dataclass
class BicliqueDecomposition:
    n: int
    bicliques: list[Biclique] = field(default_factory=list)
    provenance: str = ""

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[Sequence[int], Sequence[int]]],
                   provenance: str = "") -> "BicliqueDecomposition":
        """Build from (left, right) sequences, numbering bicliques densely."""
        return cls(n, [Biclique(i, tuple(l), tuple(r)) for i, (l, r) in enumerate(pairs)], provenance)

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "provenance": self.provenance,
                           "bicliques": [{"left": list(b.left), "right": list(b.right)}
                                         for b in self.bicliques]})

    @classmethod
    def from_json(cls, text: str) -> "BicliqueDecomposition":
        data = json.loads(text)
        return cls.from_pairs(data["n"], [(b["left"], b["right"]) for b in data["bicliques"]],
                              data.get("provenance", ""))


@dataclass
class ValidationReport:
    ok: bool
    missing_edges: list[tuple[int, int]]
    double_covered: list[tuple[int, int]]
    covered_nonedges: list[tuple[int, int]]


def coverage_matrix(dec: BicliqueDecomposition) -> np.ndarray:
    """How many bicliques cover each unordered pair (symmetric, int32)."""
    cover = np.zeros((dec.n, dec.n), dtype=np.int32)
    for b in dec.bicliques:
        if b.left[-1] >= dec.n or b.right[-1] >= dec.n or min(b.left[0], b.right[0]) < 0:
            raise ValueError(f"biclique {b.id} references a vertex outside [0, {dec.n})")
        cover[np.ix_(b.left, b.right)] += 1
    return cover + cover.T


def _pairs(mask: np.ndarray) -> list[tuple[int, int]]:
    return [(int(u), int(v)) for u, v in np.argwhere(np.triu(mask, 1))]


def validate_decomposition(dec: BicliqueDecomposition, m: np.ndarray) -> ValidationReport:
    m = np.asarray(m)
    if m.shape != (dec.n, dec.n):
        raise ValueError(f"decomposition has n={dec.n} but matrix is {m.shape}")
    cover = coverage_matrix(dec)
    edges = m.astype(bool)
    # a biclique holding u on both sides is rejected at construction, so the
    # diagonal of cover is always zero
    missing = _pairs(edges & (cover == 0))
    double = _pairs(cover > 1)
    nonedges = _pairs(~edges & (cover > 0))
    return ValidationReport(not (missing or double or nonedges), missing, double, nonedges)


def metrics(dec: BicliqueDecomposition) -> dict:
    nu = np.zeros(dec.n, dtype=np.int64)
    size = 0
    for b in dec.bicliques:
        nu[list(b.left)] += 1
        nu[list(b.right)] += 1
        size += b.size
    return {"size": size, "count": len(dec.bicliques), "nu": nu.tolist(),
            "nu_max": int(nu.max()) if dec.n else 0,
            "edges": sum(b.edge_count for b in dec.bicliques)}


def star_decomposition(m: np.ndarray) -> BicliqueDecomposition:
    """{u} x {higher-id neighbours of u} for every u that has one."""
    m = np.asarray(m)
    n = len(m)
    pairs = []
    for u in range(n):
        higher = np.flatnonzero(m[u, u + 1:]) + u + 1
        if len(higher):
            pairs.append(((u,), tuple(int(v) for v in higher)))
    return BicliqueDecomposition.from_pairs(n, pairs, "star")


def merge(decs: Iterable[BicliqueDecomposition], n: int, provenance: str = "") -> BicliqueDecomposition:
    pairs = [(b.left, b.right) for d in decs for b in d.bicliques]
    return BicliqueDecomposition.from_pairs(n, pairs, provenance)


def coalesce(dec: BicliqueDecomposition) -> BicliqueDecomposition:
    """Merge bicliques whose left (or right) sides are identical, until none are.

    A x B and A x C in an edge partition force B and C apart, so A x (B u C) is
    again a biclique and the result is still a partition of the same edges.
    Sides keep their orientation.
    """
    pairs = [(b.left, b.right) for b in dec.bicliques]
    while True:
        groups: dict[tuple, list[int]] = {}
        for i, (l, r) in enumerate(pairs):
            groups.setdefault((0, l), []).append(i)
            groups.setdefault((1, r), []).append(i)
        used: set[int] = set()
        merged: dict[int, tuple] = {}
        for (side, key), members in groups.items():
            members = [i for i in members if i not in used]
            if len(members) < 2:
                continue
            other = tuple(sorted(v for i in members for v in pairs[i][1 - side]))
            used.update(members)
            merged[members[0]] = (key, other) if side == 0 else (other, key)
        if not merged:
            break
        pairs = [merged.get(i, p) for i, p in enumerate(pairs) if i in merged or i not in used]
    return BicliqueDecomposition.from_pairs(dec.n, pairs, dec.provenance)

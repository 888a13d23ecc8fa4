from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from geolabel.geom_graphs import adjacency_matrix, generate_instance
from geolabel.labeling import decode_adjacent, decode_pairs
from geolabel.poly import Poly
from geolabel.semilinear import (DNFPredicate, NotSemilinearError, boxicity_labels, dominance_labels,
                                 preset_dnf, semilinear_bound, semilinear_labels, split_linear)


def all_pairs(ls):
    us, vs = np.triu_indices(ls.descriptor.n, 1)
    return np.asarray(decode_pairs(ls, us, vs)), us, vs


def test_split_linear():
    x1, y1 = Poly.var(2, 0), Poly.var(2, 1)
    assert split_linear(x1 - y1, 1) == ((1, 0), (-1,))
    x1, x2, y1, y2 = (Poly.var(4, i) for i in range(4))
    assert split_linear(2 * x1 + 3 * x2 - y2 + 5, 2) == ((2, 3, 5), (0, -1))
    with pytest.raises(NotSemilinearError):
        split_linear(Poly.var(2, 0) * Poly.var(2, 1), 1)


def test_dominance_examples():
    def edge(p, s):
        ls = dominance_labels([p], [s], 2)
        return decode_adjacent(ls.descriptor, ls.labels[0], ls.labels[1])

    assert edge((0, 0), (1, 1))
    assert not edge((0, 5), (1, 1))
    # equal first coordinates: 0 < 0 is false
    assert not edge((0, 0), (0, 1))
    with pytest.raises(ValueError):
        dominance_labels([(0, 0)], [(1,)], 2)


def test_dominance_same_side_never_adjacent():
    ls = dominance_labels([(0, 0), (5, 5)], [(9, 9)], 2)
    assert not decode_adjacent(ls.descriptor, ls.labels[0], ls.labels[1])


def test_dominance_invariant_under_increasing_maps():
    rng = np.random.default_rng(2)
    left = rng.integers(-20, 20, (15, 2)).tolist()
    right = rng.integers(-20, 20, (15, 2)).tolist()
    warp = lambda p: tuple(F(c) ** 3 + 7 for c in p)  # noqa: E731
    a = dominance_labels(left, right, 2)
    b = dominance_labels([warp(p) for p in left], [warp(p) for p in right], 2)
    assert a.labels == b.labels


@pytest.mark.parametrize("preset", ["interval", "permutation", "circle", "tournament"])
def test_presets_match_oracle(preset):
    inst = generate_instance("semilinear_dnf", 256, 3, {"preset": preset})
    m = adjacency_matrix(inst)
    dnf = preset_dnf(preset)
    ls = semilinear_labels(inst.payload["vectors"], dnf)
    out, us, vs = all_pairs(ls)
    assert np.array_equal(out, m[us, vs])
    assert ls.stats["max_bits"] <= semilinear_bound(256, dnf.k, dnf.l)


def test_interval_bound_formula():
    # k = 1, l = 2: ceil(log2 n) + 4 ceil(log2 2n) + 8
    assert semilinear_bound(256, 1, 2) == 8 + 4 * 9 + 8


def test_tournament_is_directed_dominance():
    dnf = preset_dnf("tournament")
    assert not dnf.symmetric and (dnf.k, dnf.l) == (1, 1)
    assert dnf.evaluate((1,), (2,)) and not dnf.evaluate((2,), (1,))
    assert dnf.adjacent((2,), (1,))


def test_order_isomorphism():
    inst = generate_instance("semilinear_dnf", 120, 4, {"preset": "circle"})
    vecs = inst.payload["vectors"]
    values = sorted({c for v in vecs for c in v})
    rank = {c: i for i, c in enumerate(values)}
    ranked = [tuple(rank[c] for c in v) for v in vecs]
    dnf = preset_dnf("circle")
    a = all_pairs(semilinear_labels(vecs, dnf))[0]
    b = all_pairs(semilinear_labels(ranked, dnf))[0]
    assert np.array_equal(a, b)


def test_dnf_json_and_validation():
    dnf = preset_dnf("circle")
    back = DNFPredicate.from_json(dnf.to_json())
    assert back == dnf
    with pytest.raises(ValueError):
        DNFPredicate.from_json('{"strict": false, "clauses": [[{"g": [[1, 1], [0, 1]], "h": [[-1, 1]]}]]}')
    with pytest.raises(ValueError):
        DNFPredicate(())
    with pytest.raises(ValueError):
        semilinear_labels([(1, 2, 3)], preset_dnf("interval"))


def test_from_polys_matches_preset():
    x1, x2, y1, y2 = (Poly.var(4, i) for i in range(4))
    dnf = DNFPredicate.from_polys([[x1 - y2, y1 - x2]], 2)
    assert dnf == preset_dnf("interval")


def test_boxicity_examples():
    same = boxicity_labels([(0, 0, 1, 1), (0, 0, 1, 1)])
    assert decode_adjacent(same.descriptor, same.labels[0], same.labels[1])
    apart = boxicity_labels([(0, 0, 1, 1), (2, 0, 3, 1)])
    assert not decode_adjacent(apart.descriptor, apart.labels[0], apart.labels[1])
    with pytest.raises(ValueError):
        boxicity_labels([(0, 0, 0, 1)])


def test_boxicity_matches_overlap_oracle():
    inst = generate_instance("boxicity", 128, 2)
    m = adjacency_matrix(inst)
    for ls in (boxicity_labels(inst.payload["boxes"]), semilinear_labels(inst.payload["boxes"], preset_dnf("boxicity-3"))):
        out, us, vs = all_pairs(ls)
        assert np.array_equal(out, m[us, vs])


@settings(max_examples=30, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 30), st.integers(1, 10)), min_size=2, max_size=25))
def test_interval_labels_with_ties(spans):
    ivs = [(a, a + w) for a, w in spans]
    ls = semilinear_labels(ivs, preset_dnf("interval"))
    out, us, vs = all_pairs(ls)
    expect = [ivs[u][0] < ivs[v][1] and ivs[v][0] < ivs[u][1] for u, v in zip(us, vs)]
    assert out.tolist() == [int(e) for e in expect]


@pytest.mark.parametrize("preset", ["interval", "permutation", "circle", "tournament", "boxicity-2"])
def test_matrix_matches_pairwise_with_ties(preset):
    dnf = preset_dnf(preset)
    rng = np.random.default_rng(8)
    # few distinct values so many comparisons tie
    d = dnf.dims[0]
    vecs = [tuple(F(int(c), 2) for c in rng.integers(0, 5, d)) for _ in range(30)]
    m = dnf.matrix(vecs, block=7)
    for u in range(30):
        for v in range(30):
            assert bool(m[u, v]) == (u != v and dnf.adjacent(vecs[u], vecs[v]))


def test_boxicity_matrix_counts_touching_boxes():
    from geolabel.geom_graphs import Instance
    boxes = ((F(0), F(0), F(1), F(1)), (F(1), F(1), F(2), F(2)), (F(3), F(0), F(4), F(1)))
    m = adjacency_matrix(Instance("boxicity", 3, 0, {"boxes": boxes}, {"d": 2}))
    assert m.tolist() == [[0, 1, 0], [1, 0, 0], [0, 0, 0]]

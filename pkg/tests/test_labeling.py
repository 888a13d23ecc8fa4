import io

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from geolabel.biclique import BicliqueDecomposition, star_decomposition
from geolabel.bits import BitWriter, DecodeError, Label
from geolabel.geom_graphs import adjacency_matrix, generate_instance, unit_disk_spec
from geolabel.labeling import (ConfigError, LabelSet, SchemeDescriptor, bipartize, compose_predicate_labels,
                               decode_adjacent, decode_pairs, dumps, encode_from_bicliques, read_labels,
                               sfc_order, shatter_estimate, switch_counts, switch_encode, write_labels)


def graph(n, edges):
    m = np.zeros((n, n), dtype=np.uint8)
    for u, v in edges:
        m[u, v] = m[v, u] = 1
    return m


def all_pairs(ls):
    n = ls.descriptor.n
    us, vs = np.triu_indices(n, 1)
    return np.asarray(decode_pairs(ls, us, vs)), us, vs


# -- biclique-list labels ---------------------------------------------------

def test_three_colour_example_label():
    # vertex 0 is on the left of biclique 0 and on the right of biclique 1
    d = BicliqueDecomposition.from_pairs(6, [((0, 1), (2, 3)), ((4,), (0, 5)), ((2, 5), (3,))])
    ls = encode_from_bicliques(d)
    # id 000, gamma(3) = 011, then (00, 0) and (01, 1)
    assert ls.labels[0].to_str() == "000" + "011" + "000" + "011"
    m = graph(6, [(0, 2), (0, 3), (1, 2), (1, 3), (4, 0), (4, 5), (2, 3), (5, 3)])
    out, us, vs = all_pairs(ls)
    assert np.array_equal(out, m[us, vs])


def test_isolated_vertex_and_single_edge():
    d = BicliqueDecomposition.from_pairs(3, [((0,), (1,))])
    ls = encode_from_bicliques(d)
    assert ls.labels[2].to_str() == "10" + "1"
    k2 = encode_from_bicliques(BicliqueDecomposition.from_pairs(2, [((0,), (1,))]))
    # one biclique needs zero id bits, so each entry is just the side bit
    assert [lab.to_str() for lab in k2.labels] == ["0" + "010" + "0", "1" + "010" + "1"]


def _hand_label(vid, entries, idbits=2, bidbits=3):
    w = BitWriter()
    w.write(vid, idbits)
    w.gamma(len(entries) + 1)
    for bid, side in entries:
        w.write(bid, bidbits)
        w.bit(side)
    return w.finish()


def test_decode_by_shared_biclique():
    desc = SchemeDescriptor("biclique_list", 4, {"B": 8})
    a = _hand_label(0, [(5, 0)])
    assert decode_adjacent(desc, a, _hand_label(1, [(5, 1)]))
    assert not decode_adjacent(desc, a, _hand_label(1, [(5, 0)]))
    assert not decode_adjacent(desc, a, _hand_label(1, [(2, 1), (6, 1)]))


def test_decode_errors():
    desc = SchemeDescriptor("biclique_list", 4, {"B": 8})
    a = _hand_label(0, [(5, 0)])
    with pytest.raises(ValueError):
        decode_adjacent(desc, a, a)
    with pytest.raises(DecodeError):
        decode_adjacent(desc, Label(a.bits >> 2, a.length - 2), _hand_label(1, [(5, 1)]))
    with pytest.raises(DecodeError):
        decode_adjacent(SchemeDescriptor("no_such_scheme", 4), a, _hand_label(1, []))


def test_decode_pairs_flags_errors():
    ls = encode_from_bicliques(BicliqueDecomposition.from_pairs(3, [((0,), (1, 2))]))
    out = decode_pairs(ls, [0, 0, 1], [1, 0, 2])
    assert list(out) == [1, 2, 0]


@st.composite
def matrices(draw):
    n = draw(st.integers(2, 16))
    bits = draw(st.lists(st.booleans(), min_size=n * n, max_size=n * n))
    m = np.triu(np.array(bits, dtype=np.uint8).reshape(n, n), 1)
    return m + m.T


@settings(max_examples=50, deadline=None)
@given(matrices())
def test_round_trip_and_self_delimiting(m):
    ls = encode_from_bicliques(star_decomposition(m))
    out, us, vs = all_pairs(ls)
    assert np.array_equal(out, m[us, vs])
    back = read_labels(dumps(ls))
    assert back.labels == ls.labels and back.descriptor == ls.descriptor
    for v, lab in enumerate(ls.labels):
        longer = Label(lab.bits << 1, lab.length + 1)
        other = (v + 1) % len(m)
        with pytest.raises(DecodeError):
            decode_adjacent(ls.descriptor, longer, ls.labels[other])


def test_dump_errors():
    ls = encode_from_bicliques(star_decomposition(graph(3, [(0, 1)])))
    text = dumps(ls)
    with pytest.raises(DecodeError):
        read_labels(text.rsplit("\n", 2)[0] + "\n")
    with pytest.raises(DecodeError):
        read_labels("not json\n1:1\n")
    buf = io.StringIO()
    write_labels(ls, buf)
    assert buf.getvalue() == text


# -- bipartization ----------------------------------------------------------

def test_bipartize_small():
    assert [(list(p.left), list(p.right)) for p in bipartize(2)] == [([0], [1])]
    assert [(list(p.left), list(p.right)) for p in bipartize(4)] == [([0, 1], [2, 3]), ([0], [1]), ([2], [3])]
    counts = np.zeros(8, int)
    for p in bipartize(8):
        counts[list(p.left)] += 1
        counts[list(p.right)] += 1
    assert counts.tolist() == [3] * 8
    with pytest.raises(ValueError):
        bipartize(1)


@pytest.mark.parametrize("n", [2, 3, 5, 17, 100, 255])
def test_bipartize_partitions_pairs(n):
    cover = np.zeros((n, n), int)
    for p in bipartize(n):
        cover[np.ix_(list(p.left), list(p.right))] += 1
    cover = cover + cover.T
    assert (cover[np.triu_indices(n, 1)] == 1).all()


# -- composition ------------------------------------------------------------

def test_compose_matches_sublabels():
    inst = generate_instance("unit_disk", 30, 4)
    m = adjacency_matrix(inst)
    sub = encode_from_bicliques(star_decomposition(m))
    ls = compose_predicate_labels(unit_disk_spec(), [sub, sub])
    out, us, vs = all_pairs(ls)
    assert np.array_equal(out, m[us, vs])
    never = compose_predicate_labels(unit_disk_spec(), [sub, sub], ["const", False])
    assert not all_pairs(never)[0].any()


def test_compose_argument_checks():
    sub = encode_from_bicliques(star_decomposition(graph(3, [(0, 1)])))
    with pytest.raises(ValueError):
        compose_predicate_labels(unit_disk_spec(), [sub])
    with pytest.raises(ConfigError):
        compose_predicate_labels(unit_disk_spec(), [sub, sub], ["atom", 3])


# -- switch rows ------------------------------------------------------------

def test_switch_counts_on_complete_and_empty():
    n = 9
    full = np.ones((n, n), dtype=np.uint8) - np.eye(n, dtype=np.uint8)
    order = list(np.random.default_rng(0).permutation(n))
    assert max(switch_counts(switch_encode(full, order))) <= 2
    assert set(switch_counts(switch_encode(np.zeros((n, n)), order))) == {0}


@settings(max_examples=40, deadline=None)
@given(matrices(), st.randoms())
def test_switch_round_trip(m, rnd):
    order = list(range(len(m)))
    rnd.shuffle(order)
    out, us, vs = all_pairs(switch_encode(m, order))
    assert np.array_equal(out, m[us, vs])


def test_curve_order():
    assert sfc_order([(5, 5)]) == [0]
    # corners: bottom-left, top-left, top-right, bottom-right along the curve
    corners = [(1, 1), (0, 0), (1, 0), (0, 1)]
    assert sfc_order(corners) == [1, 3, 0, 2]
    assert sfc_order([corners[i] for i in [1, 3, 0, 2]]) == [0, 1, 2, 3]


def test_shatter_estimate():
    assert shatter_estimate(np.zeros((10, 10)), 4) == 1
    full = np.ones((10, 10), dtype=np.uint8) - np.eye(10, dtype=np.uint8)
    for mm in (1, 3, 6):
        assert shatter_estimate(full, mm) <= mm + 1
    with pytest.raises(ValueError):
        shatter_estimate(full, 11)
    m = adjacency_matrix(generate_instance("unit_disk", 200, 1))
    est = [shatter_estimate(m, mm, trials=32) for mm in (4, 8, 16, 32)]
    assert est == sorted(est)
    assert all(e <= 4 * mm * mm for e, mm in zip(est, (4, 8, 16, 32)))


def test_label_set_helpers():
    ls = encode_from_bicliques(star_decomposition(graph(3, [(0, 1)])))
    assert ls.stats["max_bits"] == max(lab.length for lab in ls.labels)
    swapped = ls.with_label(0, ls.labels[1])
    assert swapped.labels[0] == ls.labels[1] and ls.labels[0] != ls.labels[1]
    assert isinstance(swapped, LabelSet)

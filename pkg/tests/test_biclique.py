import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from geolabel.biclique import (Biclique, BicliqueDecomposition, coalesce, coverage_matrix, merge, metrics,
                               star_decomposition, validate_decomposition)


def graph(n, edges):
    m = np.zeros((n, n), dtype=np.uint8)
    for u, v in edges:
        m[u, v] = m[v, u] = 1
    return m


def dec(n, *pairs):
    return BicliqueDecomposition.from_pairs(n, pairs)


def test_single_edge():
    d = dec(2, ((0,), (1,)))
    assert validate_decomposition(d, graph(2, [(0, 1)])).ok
    assert metrics(d) == {"size": 2, "count": 1, "nu": [1, 1], "nu_max": 1, "edges": 1}


def test_triangle_split_in_two():
    d = dec(3, ((0,), (1, 2)), ((1,), (2,)))
    assert validate_decomposition(d, graph(3, [(0, 1), (0, 2), (1, 2)])).ok


def test_spurious_pair_reported():
    rep = validate_decomposition(dec(3, ((0, 1), (2,))), graph(3, [(0, 2)]))
    assert not rep.ok
    assert rep.covered_nonedges == [(1, 2)]
    assert rep.missing_edges == [] and rep.double_covered == []


def test_missing_and_doubled_reported():
    m = graph(3, [(0, 1), (1, 2)])
    rep = validate_decomposition(dec(3, ((0,), (1,)), ((1,), (0,))), m)
    assert rep.double_covered == [(0, 1)]
    assert rep.missing_edges == [(1, 2)]


def test_shape_mismatch():
    with pytest.raises(ValueError):
        validate_decomposition(dec(3, ((0,), (1,))), np.zeros((4, 4)))


def test_bad_bicliques():
    with pytest.raises(ValueError):
        Biclique(0, (), (1,))
    with pytest.raises(ValueError):
        Biclique(0, (1, 2), (2,))
    with pytest.raises(ValueError):
        coverage_matrix(dec(2, ((0,), (5,))))


def test_star_of_triangle():
    d = star_decomposition(graph(3, [(0, 1), (0, 2), (1, 2)]))
    assert [(b.left, b.right) for b in d.bicliques] == [((0,), (1, 2)), ((1,), (2,))]
    assert metrics(d)["size"] == 5


def test_star_of_k4():
    d = star_decomposition(np.ones((4, 4), dtype=np.uint8) - np.eye(4, dtype=np.uint8))
    met = metrics(d)
    # (1+3) + (1+2) + (1+1)
    assert met["size"] == 9
    assert met["nu"] == [1, 2, 3, 3]
    assert met["nu_max"] == 3


def test_star_of_path_and_empty():
    d = star_decomposition(graph(3, [(0, 1), (1, 2)]))
    assert [(b.left, b.right) for b in d.bicliques] == [((0,), (1,)), ((1,), (2,))]
    assert metrics(d)["nu"] == [1, 2, 1]
    assert star_decomposition(np.zeros((5, 5))).bicliques == []


def test_json_round_trip_and_merge():
    d = dec(4, ((0,), (1, 2)), ((3,), (1,)))
    d.provenance = "hand"
    back = BicliqueDecomposition.from_json(d.to_json())
    assert back.bicliques == d.bicliques and back.provenance == "hand"
    both = merge([d, dec(4, ((2,), (3,)))], 4)
    assert [b.id for b in both.bicliques] == [0, 1, 2]
    assert metrics(both)["edges"] == 4


@st.composite
def matrices(draw):
    n = draw(st.integers(1, 14))
    bits = draw(st.lists(st.booleans(), min_size=n * n, max_size=n * n))
    m = np.triu(np.array(bits, dtype=np.uint8).reshape(n, n), 1)
    return m + m.T


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_star_is_always_valid(m):
    d = star_decomposition(m)
    assert validate_decomposition(d, m).ok
    met = metrics(d)
    assert met["edges"] == int(m.sum()) // 2
    # second, independent pass over the same quantities
    nu = [sum(v in b.left or v in b.right for b in d.bicliques) for v in range(len(m))]
    assert met["nu"] == nu
    assert met["size"] == sum(len(b.left) + len(b.right) for b in d.bicliques)


def test_coalesce_merges_shared_sides():
    dec = BicliqueDecomposition.from_pairs(4, [((0,), (2,)), ((1,), (2,)), ((0,), (3,))])
    out = coalesce(dec)
    m = np.zeros((4, 4), dtype=np.uint8)
    for u, v in ((0, 2), (1, 2), (0, 3)):
        m[u, v] = m[v, u] = 1
    assert validate_decomposition(out, m).ok
    # groups are taken in order of first appearance: the shared left side {0} wins
    assert [(b.left, b.right) for b in out.bicliques] == [((0,), (2, 3)), ((1,), (2,))]
    assert coalesce(out).bicliques == out.bicliques


def test_coalesce_never_raises_membership():
    rng = np.random.default_rng(6)
    m = np.triu(rng.random((30, 30)) < 0.3, 1)
    m = (m | m.T).astype(np.uint8)
    star = star_decomposition(m)
    out = coalesce(star)
    assert validate_decomposition(out, m).ok
    assert all(a <= b for a, b in zip(metrics(out)["nu"], metrics(star)["nu"]))

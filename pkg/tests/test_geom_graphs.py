import itertools
import json
import random
from fractions import Fraction as F

import numpy as np
import pytest

from geolabel.geom_graphs import (FAMILIES, BudgetError, Instance, PredicateSpec, adjacency_matrix,
                                  atom, capped_closure, eval_predicate, eval_sign, generate_instance,
                                  is_simple_polygon, oracle_adjacent, segment_spec, unit_disk_spec)
from geolabel.poly import Poly


def pts(*coords):
    return tuple((F(a), F(b)) for a, b in coords)


# -- signs ------------------------------------------------------------------

def test_unit_disk_signs():
    spec = unit_disk_spec()
    assert eval_sign(spec, 1, (0, 0), (2, 0)) == 0
    assert eval_sign(spec, 1, (0, 0), (0, 0)) == 1
    # 4 - (9 + 16) = -21
    assert eval_sign(spec, 1, (0, 0), (3, 4)) == -1
    assert spec.polys[0]([0, 0, 3, 4]) == -21


def test_sign_argument_errors():
    spec = unit_disk_spec()
    with pytest.raises(ValueError):
        eval_sign(spec, 1, (0, 0, 0), (1, 1))
    with pytest.raises(ValueError):
        eval_sign(spec, 2, (0, 0), (1, 1))


def test_predicate_spec_validation_and_json():
    x = Poly.var(2, 0)
    with pytest.raises(ValueError):
        PredicateSpec((x ** 3,), atom(1, "lt"), 1, 1)
    with pytest.raises(ValueError):
        PredicateSpec((x,), atom(2, "lt"), 1, 1)
    spec = segment_spec()
    back = PredicateSpec.from_json(json.loads(json.dumps(spec.to_json())))
    rng = random.Random(3)
    for _ in range(50):
        u = [F(rng.randint(-9, 9)) for _ in range(4)]
        v = [F(rng.randint(-9, 9)) for _ in range(4)]
        assert eval_predicate(spec, u, v) == eval_predicate(back, u, v)


def _parametric_meet(s, t):
    """Closed segment intersection by solving p + a r = q + b w for a, b in [0, 1]."""
    p, r = (s[0], s[1]), (s[2] - s[0], s[3] - s[1])
    q, w = (t[0], t[1]), (t[2] - t[0], t[3] - t[1])
    den = r[0] * w[1] - r[1] * w[0]
    qp = (q[0] - p[0], q[1] - p[1])
    if den == 0:
        if qp[0] * r[1] - qp[1] * r[0] != 0:
            return False
        rr = r[0] * r[0] + r[1] * r[1]
        a0 = (qp[0] * r[0] + qp[1] * r[1]) / rr
        a1 = a0 + (w[0] * r[0] + w[1] * r[1]) / rr
        return max(min(a0, a1), 0) <= min(max(a0, a1), 1)
    a = F(qp[0] * w[1] - qp[1] * w[0], den)
    b = F(qp[0] * r[1] - qp[1] * r[0], den)
    return 0 <= a <= 1 and 0 <= b <= 1


def test_segment_phi_matches_parametric_intersection():
    spec = segment_spec()
    rng = random.Random(11)
    agree = 0
    for _ in range(1000):
        s = [rng.randint(0, 12) for _ in range(4)]
        t = [rng.randint(0, 12) for _ in range(4)]
        if (s[0], s[1]) == (s[2], s[3]) or (t[0], t[1]) == (t[2], t[3]):
            continue
        if all(eval_sign(spec, i, s, t) == 0 for i in (1, 2)):
            continue  # all four endpoints collinear: the orientation formula does not cover this case
        assert eval_predicate(spec, s, t) == _parametric_meet(s, t), (s, t)
        agree += 1
    assert agree > 900


# -- oracles ----------------------------------------------------------------

def test_touching_unit_disks_are_adjacent():
    inst = Instance("unit_disk", 2, 0, {"points": pts((0, 0), (2, 0))})
    assert oracle_adjacent(inst, 0, 1)
    with pytest.raises(ValueError):
        oracle_adjacent(inst, 1, 1)


def test_convex_polygons_are_complete():
    square = Instance("polygon_visibility", 4, 0, {"vertices": pts((0, 0), (1, 0), (1, 1), (0, 1))})
    assert all(oracle_adjacent(square, u, v) for u, v in itertools.combinations(range(4), 2))
    pent = Instance("polygon_visibility", 5, 0, {"vertices": pts((0, 0), (4, 0), (5, 3), (2, 5), (-1, 3))})
    assert adjacency_matrix(pent).tolist() == (np.ones((5, 5), int) - np.eye(5, dtype=int)).tolist()


def test_terrain_valley_sees_across():
    valley = Instance("terrain_visibility", 3, 0, {"vertices": pts((0, 5), (1, 0), (2, 5))})
    assert oracle_adjacent(valley, 0, 2)
    spike = Instance("terrain_visibility", 3, 0, {"vertices": pts((0, 0), (1, 5), (2, 0))})
    assert not oracle_adjacent(spike, 0, 2)


def test_small_disk_matrices():
    far = Instance("unit_disk", 2, 0, {"points": pts((0, 0), (5, 0))})
    assert adjacency_matrix(far).sum() == 0
    three = Instance("unit_disk", 3, 0, {"points": pts((0, 0), (1, 0), (4, 0))})
    m = adjacency_matrix(three)
    assert [(int(u), int(v)) for u, v in zip(*np.nonzero(np.triu(m)))] == [(0, 1)]


def test_budget_refusal():
    inst = generate_instance("unit_disk", 40, 1)
    with pytest.raises(BudgetError):
        adjacency_matrix(inst, budget=39)


# -- generators -------------------------------------------------------------

def test_generation_is_deterministic():
    a = generate_instance("unit_disk", 4, 7)
    b = generate_instance("unit_disk", 4, 7)
    assert a.to_json() == b.to_json()
    assert all(0 <= c <= 4 for p in a.payload["points"] for c in p)
    assert generate_instance("unit_disk", 4, 8).to_json() != a.to_json()


def test_terrain_x_increasing():
    vs = generate_instance("terrain_visibility", 3, 1).payload["vertices"]
    assert vs[0][0] < vs[1][0] < vs[2][0]


def _proper_or_touching(a, b, c, d):
    return _parametric_meet((*a, *b), (*c, *d))


def test_generated_polygon_is_simple():
    vs = generate_instance("polygon_visibility", 64, 9).payload["vertices"]
    n = len(vs)
    for i in range(n):
        for j in range(i + 1, n):
            if j == i + 1 or (i == 0 and j == n - 1):
                continue
            assert not _proper_or_touching(vs[i], vs[(i + 1) % n], vs[j], vs[(j + 1) % n])
    assert is_simple_polygon(vs)
    tri = generate_instance("polygon_visibility", 3, 1)
    assert len(tri.payload["vertices"]) == 3


@pytest.mark.parametrize("family", FAMILIES)
def test_matrix_matches_oracle_and_is_symmetric(family):
    inst = generate_instance(family, 36, 2)
    m = adjacency_matrix(inst)
    assert m.shape == (36, 36) and not m.diagonal().any()
    symmetric = not (family == "semilinear_dnf" and inst.params.get("preset") == "tournament")
    for u, v in itertools.combinations(range(36), 2):
        assert bool(m[u, v]) == oracle_adjacent(inst, u, v)
        if symmetric:
            assert oracle_adjacent(inst, u, v) == oracle_adjacent(inst, v, u)


@pytest.mark.parametrize("family", FAMILIES)
def test_instance_json_round_trip(family):
    inst = generate_instance(family, 12, 5)
    back = Instance.from_json(inst.to_json())
    assert back.to_json() == inst.to_json()
    assert np.array_equal(adjacency_matrix(back), adjacency_matrix(inst))


def test_terrains_satisfy_four_tuple_rule():
    for seed in range(3):
        m = adjacency_matrix(generate_instance("terrain_visibility", 24, seed))
        for i, j, k, l in itertools.combinations(range(24), 4):
            if m[i, k] and m[j, l]:
                assert m[i, l]


def test_capped_closure_fixpoint():
    m = np.zeros((4, 4), dtype=np.uint8)
    m[0, 2] = m[2, 0] = m[1, 3] = m[3, 1] = 1
    c = capped_closure(m)
    assert c[0, 3] and c[3, 0]
    assert np.array_equal(capped_closure(c), c)

import random
from fractions import Fraction
from itertools import product

import pytest

from prefixpoly.ballot import catalan, enumerate_K
from prefixpoly.errors import ResourceLimitError
from prefixpoly.exactmath import poly_eval
from prefixpoly.treefan import (
    PlaneBinaryTree,
    PolygonDecomposition,
    assoc_face_poset_check,
    build_tree_phi,
    chamber_rays,
    chamber_vertices,
    delta_membership,
    delta_volume,
    diagonal_ray,
    enumerate_trees,
    face_structure,
    fan_contains,
    fan_inequalities,
    k_of_tree,
    locate_in_fan,
    polytope_vertices,
    subdivision_volume_total,
    tree_of_k,
    tree_triangulation,
    triangulation_tree,
)
from prefixpoly.volume import PolytopeSpec, volume_poly

F = Fraction

LEFT_COMB_2 = PlaneBinaryTree(((None, None), None))
RIGHT_COMB_2 = PlaneBinaryTree((None, (None, None)))
# root 3 with left subtree 1-(right child 2) and right leaf child 4
EXAMPLE_TREE_4 = tree_of_k((2, 1, 0, 1))


def test_enumerate_counts():
    for n in range(1, 8):
        assert len(enumerate_trees(n)) == catalan(n)
    assert EXAMPLE_TREE_4 in enumerate_trees(4)
    with pytest.raises(ResourceLimitError):
        enumerate_trees(11)


def test_parens_round_trip():
    for n in range(1, 6):
        for t in enumerate_trees(n):
            assert PlaneBinaryTree.from_parens(t.to_parens()) == t
    with pytest.raises(ValueError):
        PlaneBinaryTree.from_parens("(()")


def test_k_of_combs():
    assert k_of_tree(LEFT_COMB_2).parts == (2, 0)
    assert k_of_tree(RIGHT_COMB_2).parts == (1, 1)
    n = 5
    right_comb = tree_of_k((1,) * n)
    assert right_comb.to_parens() == "()" * n
    left_comb = tree_of_k((n,) + (0,) * (n - 1))
    assert left_comb.to_parens() == "(" * n + ")" * n


def test_k_bijection_round_trip():
    for n in range(1, 8):
        seen = []
        for t in enumerate_trees(n):
            k = k_of_tree(t)
            seen.append(k.parts)
            assert tree_of_k(k) == t
        assert sorted(seen) == sorted(k.parts for k in enumerate_K(n))


def test_k_worked_nine_vertex_composition():
    k = (2, 3, 0, 1, 0, 1, 0, 2, 0)
    tree = tree_of_k(k)
    assert tree.n == 9
    assert k_of_tree(tree).parts == k


def test_fan_inequalities_example_tree():
    ineqs = {q.as_tuple() for q in fan_inequalities(EXAMPLE_TREE_4)}
    # covers (3,1) left, (1,2) right, (3,4) right
    assert ineqs == {(2, 3, +1), (2, 2, -1), (4, 4, -1)}


def test_fan_inequalities_combs():
    # right comb: every child is a right child, all interval sums <= 0
    right = tree_of_k((1, 1, 1))
    assert {q.as_tuple() for q in fan_inequalities(right)} == {(2, 2, -1), (3, 3, -1)}
    left = tree_of_k((3, 0, 0))
    assert {q.as_tuple() for q in fan_inequalities(left)} == {(2, 2, +1), (3, 3, +1)}


def test_chamber_areas_match_monomials_n2():
    # the two planar chambers split x1 x2 + x1^2/2 into x1 x2 and x1^2/2
    spec = PolytopeSpec([1, 1])
    assert delta_volume(RIGHT_COMB_2, spec) == 1  # x1 x2
    assert delta_volume(LEFT_COMB_2, spec) == F(1, 2)
    right_verts = set(chamber_vertices(RIGHT_COMB_2, spec))
    assert right_verts == {(0, 0), (1, 0), (0, 1), (1, 1)}
    left_verts = set(chamber_vertices(LEFT_COMB_2, spec))
    assert left_verts == {(0, 1), (1, 1), (0, 2)}


def test_locate_in_fan():
    assert locate_in_fan([0, 0], 3) is None
    pt = [F(-1), F(2), F(1)]
    located = locate_in_fan(pt, 4)
    owners = [t for t in enumerate_trees(4) if fan_contains(t, pt, strict=True)]
    assert len(owners) == 1 and located == owners[0]
    assert k_of_tree(located).parts == (3, 1, 0, 0)
    with pytest.raises(ValueError):
        locate_in_fan([0], 3)


def test_fan_completeness_sweep():
    rng = random.Random(1234)
    for n in (2, 3, 4, 5):
        trees = enumerate_trees(n)
        hits = 0
        for _ in range(250):
            pt = [F(rng.randint(-30, 30)) for _ in range(n - 1)]
            owners = [t for t in trees if fan_contains(t, pt, strict=True)]
            located = locate_in_fan(pt, n)
            if owners:
                assert len(owners) == 1 and located == owners[0]
                hits += 1
            else:
                assert located is None
        assert hits > 150


def test_triangulation_round_trip():
    assert tree_triangulation(enumerate_trees(1)[0]).diagonals == frozenset()
    for n in range(1, 7):
        for t in enumerate_trees(n):
            dec = tree_triangulation(t)
            assert len(dec.diagonals) == max(0, n - 1)
            assert triangulation_tree(dec) == t
    with pytest.raises(ValueError):
        triangulation_tree(PolygonDecomposition(5, [(0, 2)]))


def test_polygon_decomposition_validation():
    with pytest.raises(ValueError):
        PolygonDecomposition(6, [(0, 2), (1, 3)])  # crossing
    with pytest.raises(ValueError):
        PolygonDecomposition(5, [(0, 4)])  # boundary edge, not a diagonal


def test_chamber_rays():
    rays2 = {chamber_rays(t) for t in enumerate_trees(2)}
    assert rays2 == {frozenset({(1,)}), frozenset({(-1,)})}
    counts = {}
    union = set()
    for t in enumerate_trees(3):
        rays = chamber_rays(t)
        assert len(rays) == 2
        union |= rays
        for r in rays:
            counts[r] = counts.get(r, 0) + 1
    assert union == {(1, 0), (0, 1), (-1, 0), (0, -1), (-1, 1)}
    assert all(c == 2 for c in counts.values())


def test_rays_match_triangulation_diagonals():
    for n in range(2, 6):
        for t in enumerate_trees(n):
            dec = tree_triangulation(t)
            assert chamber_rays(t) == frozenset(diagonal_ray(d, n) for d in dec.diagonals)


def test_assoc_face_poset():
    assert assoc_face_poset_check(2)
    assert assoc_face_poset_check(3)
    assert assoc_face_poset_check(4)


def test_build_tree_phi_worked_example():
    spec = PolytopeSpec([6, 2, 7])
    planted = build_tree_phi(spec, [1, 4, 3], 16)
    assert not planted.degenerate
    assert planted.is_planted_binary()
    assert planted.total_length() == 16
    shape = planted.binary_shape()
    assert k_of_tree(shape).parts == (2, 0, 1)
    # heights u_i - v_i: vertex 2 is the lowest valley, children 1 and 3
    labels = {lbl for lbl in planted.vertex_label.values() if lbl}
    assert labels == {1, 2, 3}
    assert sorted(map(str, planted.length.values())) == sorted(
        map(str, [F(3), F(2), F(4), F(1), F(2), F(3), F(1)])
    )
    assert delta_membership(shape, spec, [1, 4, 3])


def test_build_tree_phi_degenerate():
    planted = build_tree_phi(PolytopeSpec([1]), [0], 3)
    assert planted.degenerate
    with pytest.raises(ValueError):
        planted.binary_shape()


def test_build_tree_phi_validation():
    with pytest.raises(ValueError):
        build_tree_phi(PolytopeSpec([1, 1]), [2, 0], 10)  # outside the polytope
    with pytest.raises(ValueError):
        build_tree_phi(PolytopeSpec([1, 1]), [1, 1], 2)  # s too small


def test_phi_shape_matches_strict_chamber():
    rng = random.Random(55)
    matched = 0
    for _ in range(120):
        n = rng.randint(2, 5)
        xs = [F(rng.randint(1, 6)) for _ in range(n)]
        spec = PolytopeSpec(xs)
        ys = []
        acc = F(0)
        for i in range(n):
            hi = spec.u[i] - acc
            yi = min(hi, F(rng.randint(0, 24), 5))
            ys.append(yi)
            acc += yi
        planted = build_tree_phi(spec, ys, spec.u[-1] + 3)
        if planted.degenerate:
            continue
        shape = planted.binary_shape()
        owners = [
            t for t in enumerate_trees(n) if delta_membership(t, spec, ys, strict=True)
        ]
        assert owners == [shape]
        matched += 1
    assert matched > 40


def test_delta_membership_relations():
    spec = PolytopeSpec([2, 1, 3])
    rng = random.Random(66)
    for _ in range(50):
        ys = []
        acc = F(0)
        for i in range(3):
            hi = spec.u[i] - acc
            yi = min(hi, F(rng.randint(0, 12), 4))
            ys.append(yi)
            acc += yi
        shifted = [ys[i] - spec.x[i] for i in range(1, 3)]
        for t in enumerate_trees(3):
            assert delta_membership(t, spec, ys) == fan_contains(t, shifted)
        assert any(delta_membership(t, spec, ys) for t in enumerate_trees(3))
    # y = x lands on the boundary of every chamber
    for t in enumerate_trees(3):
        assert delta_membership(t, spec, spec.x)
        assert not delta_membership(t, spec, spec.x, strict=True)


def test_delta_volume_monomial():
    rng = random.Random(4)
    tree = tree_of_k((2, 1, 0, 3, 0, 0))
    for _ in range(5):
        xs = [F(rng.randint(1, 9), rng.randint(1, 3)) for _ in range(6)]
        expected = xs[0] ** 2 * xs[1] * xs[3] ** 3 / 12  # 2! 1! 3! = 12
        assert delta_volume(tree, PolytopeSpec(xs)) == expected


def test_subdivision_total():
    spec = PolytopeSpec([1, 1, 1])
    assert subdivision_volume_total(spec) == F(8, 3)
    rng = random.Random(44)
    for n in range(1, 7):
        xs = [F(rng.randint(0, 9), rng.randint(1, 4)) for _ in range(n)]
        spec = PolytopeSpec(xs)
        assert subdivision_volume_total(spec) == poly_eval(volume_poly(n), xs)


def test_delta_volume_monte_carlo():
    # sample the box, keep polytope points, and compare chamber frequencies
    spec = PolytopeSpec([1, 1, 1])
    trees = enumerate_trees(3)
    expected = {t: delta_volume(t, spec) for t in trees}
    total = poly_eval(volume_poly(3), spec.x)
    rng = random.Random(2024)
    counts = {t: 0 for t in trees}
    inside = 0
    trials = 100_000
    for _ in range(trials):
        y = [F(rng.randint(0, 1000 * int(u)), 1000) for u in (1, 2, 3)]
        if y[0] > 1 or y[0] + y[1] > 2 or sum(y) > 3:
            continue
        inside += 1
        for t in trees:
            if delta_membership(t, spec, y, strict=True):
                counts[t] += 1
                break
    for t in trees:
        share = float(expected[t] / total)
        got = counts[t] / inside
        sigma = (share * (1 - share) / inside) ** 0.5
        assert abs(got - share) <= 4 * sigma + 1e-9


def test_face_structure():
    assert face_structure(PolytopeSpec([1, 2, 3])) == ((1, 1, 1), 8)
    assert face_structure(PolytopeSpec([1, 0, 0])) == ((3,), 4)
    assert face_structure(PolytopeSpec([1, 0, 2])) == ((2, 1), 6)
    with pytest.raises(ValueError):
        face_structure(PolytopeSpec([0, 1]))


def test_face_structure_vertex_oracle():
    for n in range(1, 5):
        for xs in product(range(3), repeat=n):
            if xs[0] == 0:
                continue
            spec = PolytopeSpec(xs)
            _, count = face_structure(spec)
            assert count == len(polytope_vertices(spec))


def test_polytope_vertices_example():
    verts = polytope_vertices(PolytopeSpec([1, 2]))
    assert set(verts) == {(0, 0), (1, 0), (1, 2), (0, 3)}

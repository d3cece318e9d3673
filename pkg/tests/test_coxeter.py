import pytest

from qdunkl.coxeter import (
    OrderCapExceeded,
    angular_order,
    arithmetic_type_check,
    classify_rank2,
    generate_group,
    oriented_decompositions,
    two_rotations,
)
from qdunkl.linalg import matmul, vecmat, wedge2
from qdunkl.rootsystem import build_standard

from .conftest import refl

# (order, |S|, class sizes); independent values for the Weyl and Coxeter groups
EXPECTED = {
    "A1": (2, 1, [1, 1]),
    "A2": (6, 3, [1, 2, 3]),
    "A3": (24, 6, [1, 3, 6, 6, 8]),
    "B2": (8, 4, [1, 1, 2, 2, 2]),
    "B3": (48, 9, [1, 1, 3, 3, 6, 6, 6, 6, 8, 8]),
    "G2": (12, 6, [1, 1, 2, 2, 3, 3]),
    "I2(5)": (10, 5, [1, 2, 2, 5]),
    "H3": (120, 15, [1, 1, 12, 12, 12, 12, 15, 15, 20, 20]),
    "D4": (192, 12, [1, 1, 6, 6, 6, 12, 12, 12, 24, 24, 24, 32, 32]),
}


@pytest.mark.parametrize("name", list(EXPECTED))
def test_group_census(ctx, name):
    G = ctx(name).group if name in ("A1", "A2", "A3", "B2", "B3", "G2", "I2(5)") else generate_group(build_standard(name))
    order, nrefl, classes = EXPECTED[name]
    assert G.order == order
    assert len(G.reflections) == nrefl
    assert sorted(len(c) for c in G.classes) == classes
    assert sum(len(c) for c in G.classes) == order


def test_table_matches_matrices(ctx):
    G = ctx("B3").group
    for a in range(0, G.order, 5):
        for b in range(0, G.order, 7):
            assert matmul(G.elements[a], G.elements[b]) == G.elements[G.table[a][b]]


def test_b2_reflections_form_two_classes(ctx):
    G = ctx("B2").group
    S = set(G.reflections)
    refl_classes = [c for c in G.classes if set(c) <= S]
    assert sorted(len(c) for c in refl_classes) == [2, 2]


def test_order_cap():
    with pytest.raises(OrderCapExceeded):
        generate_group(build_standard("B3"), order_cap=20)


def test_conjugating_a_reflection_moves_its_root(ctx):
    G = ctx("G2").group
    rs = G.rootsystem
    for g in range(G.order):
        for i, alpha in enumerate(rs.roots):
            s = G.reflection_for_root(i)
            target = G.reflection_for_root(rs.index(vecmat(alpha, G.elements[g])))
            assert G.table[G.table[G.inverse[g]][s]][g] == target


# two-rotations


def test_a1_has_no_rotations(ctx):
    assert two_rotations(ctx("A1").group) == []


def test_a2_rotations(ctx):
    rots = two_rotations(ctx("A2").group)
    assert len(rots) == 2
    assert all(r.proper and r.order == 3 and len(r.decompositions) == 3 for r in rots)


def test_b2_rotations(ctx):
    rots = two_rotations(ctx("B2").group)
    proper = [r for r in rots if r.proper]
    assert len(proper) == 2 and all(r.order == 4 and len(r.decompositions) == 4 for r in proper)
    central = [r for r in rots if not r.proper]
    assert len(central) == 1 and central[0].order == 2
    assert ctx("B2").group.elements[central[0].index] == ((-1, 0), (0, -1))


@pytest.mark.parametrize("name", ["A2", "B2", "G2", "A3", "B3", "I2(5)"])
def test_orientation_flips_under_inversion(ctx, name):
    G = ctx(name).group
    rots = {r.index: r for r in two_rotations(G)}
    for r in rots.values():
        if not r.proper:
            continue
        inv = rots[G.inverse[r.index]]
        assert inv.orientation == {k: -v for k, v in r.orientation.items()}
        for s, t, a, b, mu in oriented_decompositions(G, r):
            assert G.table[s][t] == r.index
            w = wedge2(a, b)
            assert all(w.get(k, 0) == mu * v for k, v in r.orientation.items())
            assert mu != 0


def test_orientation_follows_the_rotation(ctx):
    G = ctx("B2").group
    for r in two_rotations(G):
        if r.proper:
            alpha, beta = r.pair
            turned = vecmat(alpha, G.elements[r.index])
            ratio = wedge2(alpha, turned)[(0, 1)] * r.orientation[(0, 1)]
            assert ratio > 0


# rank-2 classification and arithmetic type


@pytest.mark.parametrize(
    "name,kinds",
    [("A2", {"hexagonal"}), ("B2", {"octagonal", "orthogonal"}), ("G2", {"dodecagonal", "orthogonal"})],
)
def test_rank2_kinds(ctx, name, kinds):
    G = ctx(name).group
    assert {classify_rank2(G, r).kind for r in two_rotations(G)} == kinds


def test_g2_order_six_is_dodecagonal(ctx):
    G = ctx("G2").group
    for r in two_rotations(G):
        if r.order == 6:
            assert classify_rank2(G, r).kind == "dodecagonal"


def test_crystallographic_planes_have_arithmetic_halves(ctx):
    for name in ("A2", "B2", "G2", "A3", "B3"):
        G = ctx(name).group
        for r in two_rotations(G):
            if r.proper:
                assert classify_rank2(G, r).arithmetic_half is not None, name


def test_pentagonal_plane_has_none(ctx):
    G = ctx("I2(5)").group
    assert all(classify_rank2(G, r).arithmetic_half is None for r in two_rotations(G))


def test_a2_initial_triple_is_arithmetic():
    a, b = (1, -1, 0), (0, 1, -1)
    ab = tuple(x + y for x, y in zip(a, b))
    assert arithmetic_type_check([a, ab, b])


def test_arithmetic_type_examples():
    assert arithmetic_type_check([(1, 0), (2, 1), (1, 1), (0, 1), (-1, 1)])
    assert not arithmetic_type_check([(1, 0), (3, 7), (-2, 5)])
    with pytest.raises(ValueError):
        arithmetic_type_check([(1, 0), (0, 1)])


def test_angular_order_is_counter_clockwise():
    vs = [(0, 1), (1, 0), (-1, 0), (1, 1)]
    assert angular_order((1, 0), (0, 1), vs) == [(1, 0), (1, 1), (0, 1), (-1, 0)]


def test_reflection_lookup(ctx):
    G = ctx("A2").group
    s = refl(G, (1, -1, 0))
    assert G.is_reflection_matrix(s)
    assert G.root_of(s) == (1, -1, 0)

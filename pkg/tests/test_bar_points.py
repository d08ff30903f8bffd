from fractions import Fraction

import pytest

from algebra.errors import MalformedInput
from bar import (
    BarPoint,
    DLPoint,
    JoinPoint,
    MapDirection,
    act,
    basepoint,
    contraction_point,
    dl_join_maps,
    letter_group,
    negate_point,
    project_to_b,
    random_bar_point,
    random_cone_point,
    scale_point,
    shuffle_add,
    splitting_value,
)

HALF = Fraction(1, 2)


def test_canonical_form_folds_merges_and_drops():
    Z3 = letter_group("Z/3")
    u = BarPoint(Z3, (0, HALF, HALF, 1), ((1,), (1,), (1,), (2,)), head=(1,))
    assert u.head == (2,)
    assert u.coords == (HALF,)
    assert u.letters == ((2,),)
    assert u == BarPoint(Z3, (HALF,), ((2,),), head=(2,))


def test_identity_letters_vanish():
    Z2 = letter_group("Z/2")
    assert BarPoint(Z2, (HALF,), ((2,),), head=(0,)) == basepoint(Z2)
    assert BarPoint(Z2, (0,), ((1,),), head=None) == basepoint(Z2, in_e=False)


@pytest.mark.parametrize("coords", [(HALF, Fraction(1, 3)), (Fraction(3, 2),), (-1,)])
def test_bad_coordinates_rejected(coords):
    Z2 = letter_group("Z/2")
    with pytest.raises(MalformedInput):
        BarPoint(Z2, coords, ((1,),) * len(coords), head=(0,))


def test_shuffle_sum_is_an_abelian_group_law(rng):
    group = letter_group("Z/2+Z/3")
    e = basepoint(group)
    for _ in range(30):
        u, v, w = (random_bar_point(group, rng) for _ in range(3))
        assert shuffle_add(u, v) == shuffle_add(v, u)
        assert shuffle_add(shuffle_add(u, v), w) == shuffle_add(u, shuffle_add(v, w))
        assert shuffle_add(u, e) == u
        assert shuffle_add(u, negate_point(u)) == e


def test_projection_to_b_is_additive(rng):
    group = letter_group("Z")
    for _ in range(10):
        u, v = random_bar_point(group, rng), random_bar_point(group, rng)
        assert project_to_b(shuffle_add(u, v)) == shuffle_add(project_to_b(u), project_to_b(v))


def test_mixed_points_cannot_be_added():
    Z2 = letter_group("Z/2")
    with pytest.raises(MalformedInput):
        shuffle_add(basepoint(Z2), basepoint(Z2, in_e=False))
    with pytest.raises(MalformedInput):
        shuffle_add(basepoint(Z2), basepoint(letter_group("Z/3")))


def test_non_abelian_letters_have_no_shuffle_sum():
    S3 = letter_group("S3")
    u = BarPoint(S3, (HALF,), ((1, 0, 2),), head=(0, 1, 2))
    with pytest.raises(ValueError):
        shuffle_add(u, u)
    with pytest.raises(ValueError):
        negate_point(u)


def test_contraction_endpoints(rng):
    group = letter_group("Z/2+Z/3")
    for _ in range(20):
        u = random_bar_point(group, rng)
        assert contraction_point(u, 0) == u
        assert contraction_point(u, 1) == basepoint(group)
        assert contraction_point(u, Fraction(1, 3)).level <= u.level + 1


def test_contraction_needs_an_eg_point():
    with pytest.raises(MalformedInput):
        contraction_point(basepoint("Z/2", in_e=False), HALF)
    with pytest.raises(MalformedInput):
        contraction_point(basepoint("Z/2"), 2)


def test_splitting_is_linear_and_restricts_to_the_fiber(rng):
    Q2 = letter_group("Q^2")
    h = (Fraction(1, 3), Fraction(-2))
    assert splitting_value(BarPoint(Q2, (), (), head=h)) == h
    for _ in range(20):
        u, v = random_bar_point(Q2, rng), random_bar_point(Q2, rng)
        total = splitting_value(shuffle_add(u, v))
        assert total == Q2.multiply(splitting_value(u), splitting_value(v))
        c = Fraction(rng.randint(-4, 4), 3)
        assert splitting_value(scale_point(c, u)) == Q2.scale(c, splitting_value(u))


def test_scalar_action_distributes(rng):
    Q1 = letter_group("Q^1")
    for _ in range(10):
        u, v = random_bar_point(Q1, rng), random_bar_point(Q1, rng)
        c = Fraction(rng.randint(1, 5), 2)
        assert scale_point(c, shuffle_add(u, v)) == shuffle_add(scale_point(c, u), scale_point(c, v))
    with pytest.raises(MalformedInput):
        scale_point(2, basepoint("Z/2"))


def test_boundary_level_maps_to_canonical_join_point():
    Z3 = letter_group("Z/3")
    x = DLPoint(Z3, (1,), Fraction(1), DLPoint(Z3, (2,), Fraction(1)))
    assert x.tail is None
    assert dl_join_maps(Z3, x, MapDirection.DL_TO_JOIN) == JoinPoint(Z3, (1,), Fraction(1))


def test_cone_tip_forgets_the_head():
    Z3 = letter_group("Z/3")
    y = DLPoint(Z3, (1,), Fraction(1))
    assert DLPoint(Z3, (2,), Fraction(0), y) == DLPoint(Z3, (0,), Fraction(0), act((2,), y))


@pytest.mark.parametrize("name", ["Z/3", "Z/2+Z/2", "S3"])
def test_dl_join_round_trip_and_equivariance(rng, name):
    group = letter_group(name)
    for _ in range(20):
        level = rng.randint(0, 3)
        x = random_cone_point(DLPoint, group, level, rng)
        y = random_cone_point(JoinPoint, group, level, rng)
        image = dl_join_maps(group, x, MapDirection.DL_TO_JOIN)
        assert dl_join_maps(group, image, MapDirection.JOIN_TO_DL) == x
        assert dl_join_maps(group, dl_join_maps(group, y, "join_to_dl"), "dl_to_join") == y
        g = group.random_element(rng)
        assert dl_join_maps(group, act(g, x), MapDirection.DL_TO_JOIN) == act(g, image)


def test_dl_join_maps_reject_the_wrong_model():
    Z2 = letter_group("Z/2")
    with pytest.raises(MalformedInput):
        dl_join_maps(Z2, JoinPoint(Z2, (1,), Fraction(1)), MapDirection.DL_TO_JOIN)
    with pytest.raises(MalformedInput):
        JoinPoint(Z2, (1,), HALF)

from fractions import Fraction

import pytest

from algebra.errors import InvalidCocycle, MalformedInput
from algebra.matrices import Ring
from deligne import (
    CechTower,
    DeligneCocycle,
    class_is_trivial,
    cocycle_check,
    deligne_differential,
    gerbe_view,
    integral_generators,
    localize,
    random_cochain,
    random_exact,
    random_tower,
    tower_bidegrees,
    tower_check,
    tower_collapse,
    tower_differential,
    weil_kostant_lift,
)
from simplicial import Cochain, integral_periods, star_cover


def test_bidegrees_stop_below_the_weight():
    assert tower_bidegrees(3, 3) == [(2, 0), (1, 1), (0, 2)]
    assert tower_bidegrees(3, 2) == [(2, 0), (1, 1)]
    assert tower_bidegrees(2, 5) == [(1, 0), (0, 1)]
    assert tower_bidegrees(1, 1) == [(0, 0)]


def test_zero_tower(torus):
    T = CechTower(star_cover(torus), 2, 2)
    assert T.is_zero()
    assert tower_check(T).valid
    assert tower_collapse(T).is_zero()


@pytest.mark.parametrize("p, q", [(1, 1), (2, 2), (2, 3), (3, 3)])
def test_total_differential_squares_to_zero(rng, sphere2, p, q):
    cover = star_cover(sphere2)
    for _ in range(3):
        T = random_tower(cover, p, q, rng)
        assert tower_differential(tower_differential(T)).is_zero()


@pytest.mark.parametrize("p, q", [(1, 1), (2, 2), (2, 1)])
def test_collapse_commutes_with_the_differentials(rng, torus, p, q):
    cover = star_cover(torus)
    for _ in range(3):
        T = random_tower(cover, p, q, rng)
        assert tower_collapse(tower_differential(T), check=False) == deligne_differential(tower_collapse(T, check=False))


def test_boundary_towers_collapse_to_trivial_classes(rng, sphere2):
    cover = star_cover(sphere2)
    for p in (1, 2):
        boundary = tower_differential(random_tower(cover, p, 2, rng))
        assert tower_check(boundary).valid
        collapsed = tower_collapse(boundary)
        assert cocycle_check(collapsed).valid
        assert class_is_trivial(collapsed).trivial


def test_localize_a_torus_lift(torus):
    x = weil_kostant_lift(integral_generators(torus, 2)[0].to_ring(Ring.Q))
    T = localize(x)
    assert tower_check(T).valid
    assert T.integral == x.c.values
    assert class_is_trivial(tower_collapse(T) - x).trivial


def test_localize_an_exact_cocycle(rng, circle):
    x = random_exact(circle, 1, 1, rng)
    T = localize(x)
    assert tower_check(T).valid
    assert class_is_trivial(tower_collapse(T)).trivial


def test_localize_rejects_non_cocycles(circle):
    with pytest.raises(InvalidCocycle):
        localize(DeligneCocycle.from_parts(circle, 1, 1, c=[1, 0, 0]))


def test_defect_names_equation_and_intersection(circle):
    cover = star_cover(circle)
    T = CechTower(cover, 1, 1, integral={(0, 1): 1})
    report = tower_check(T)
    assert not report.valid
    assert report.defect["equation"].startswith("ι(m)")
    assert report.defect["intersection"] == "0,1"
    with pytest.raises(InvalidCocycle):
        tower_collapse(T)


def test_component_support_is_checked(sphere2):
    cover = star_cover(sphere2)
    assert (2, 3) not in cover.intersection((0, 1))
    with pytest.raises(MalformedInput, match="outside the intersection"):
        CechTower(cover, 3, 3, components={(1, 1): {(0, 1): Cochain.indicator(sphere2, (2, 3), Ring.Q)}})
    with pytest.raises(MalformedInput, match="outside the intersection"):
        CechTower(cover, 3, 3, components={(0, 2): {(0,): Cochain.indicator(sphere2, (1, 2, 3), Ring.Q)}})
    with pytest.raises(MalformedInput, match="does not occur"):
        CechTower(cover, 3, 2, components={(0, 2): {}})


def test_weight_and_values_are_validated(circle):
    cover = star_cover(circle)
    with pytest.raises(MalformedInput):
        CechTower(cover, 1, 0)
    with pytest.raises(MalformedInput):
        CechTower(cover, 1, 1, integral={(0, 1): Fraction(1, 2)})
    with pytest.raises(MalformedInput):
        CechTower(cover, 1, 1, integral={(0,): 1})


def test_tower_json_round_trip(torus):
    T = localize(weil_kostant_lift(integral_generators(torus, 2)[0].to_ring(Ring.Q)))
    assert CechTower.from_json(T.to_json(), torus) == T


def test_degree_three_classes_on_sphere2_are_trivial(rng, sphere2):
    for _ in range(3):
        x = DeligneCocycle.from_parts(sphere2, 3, 2, theta=random_cochain(sphere2, 2, Ring.Q, rng))
        assert class_is_trivial(x).trivial
        T = localize(x)
        assert tower_check(T).valid
        assert class_is_trivial(tower_collapse(T)).trivial


def test_gerbe_on_sphere3_has_unit_period(sphere3):
    x = weil_kostant_lift(integral_generators(sphere3, 3)[0].to_ring(Ring.Q))
    gerbe = gerbe_view(localize(x))
    assert gerbe.consistency.valid
    assert not gerbe.is_trivial
    periods = integral_periods(gerbe.curvature)
    assert periods.periods[0] in (1, -1)
    assert gerbe.to_json()["consistency"]["valid"] is True


def test_gerbe_view_needs_degree_three(torus):
    with pytest.raises(MalformedInput):
        gerbe_view(CechTower(star_cover(torus), 2, 2))

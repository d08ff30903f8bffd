from fractions import Fraction

import pytest

from algebra.errors import MalformedInput
from algebra.groups import TRIVIAL, Z, FgAbGroup, cyclic
from algebra.homology import homology
from algebra.matrices import Ring
from simplicial import (
    Cochain,
    build_complex,
    chain_complex,
    coboundary,
    cohomology,
    discrete_points,
    integral_periods,
    join_complex,
    simplicial_homology,
    sphere,
    standard_space,
    star_cover,
)

GOLDEN_HOMOLOGY = {
    "point": [Z],
    "circle": [Z, Z],
    "sphere(2)": [Z, TRIVIAL, Z],
    "sphere(3)": [Z, TRIVIAL, TRIVIAL, Z],
    "torus": [Z, FgAbGroup(2), Z],
    "rp2": [Z, cyclic(2), TRIVIAL],
    "klein": [Z, FgAbGroup.parse("Z+Z/2"), TRIVIAL],
}


@pytest.mark.parametrize("name", sorted(GOLDEN_HOMOLOGY))
def test_corpus_homology(name):
    X = standard_space(name)
    assert simplicial_homology(X).table() == GOLDEN_HOMOLOGY[name]


@pytest.mark.parametrize("name", sorted(GOLDEN_HOMOLOGY))
def test_euler_characteristic_agrees_with_betti_numbers(name):
    X = standard_space(name)
    betti = [g.free_rank for g in simplicial_homology(X, Ring.Q).table()]
    assert X.euler_characteristic() == sum((-1) ** n * b for n, b in enumerate(betti))


def test_klein_bottle_is_minimal(klein):
    assert klein.f_vector() == (8, 24, 16)
    assert klein.euler_characteristic() == 0
    triangles = [set(t) for t in klein.simplices(2)]
    for edge in klein.simplices(1):
        assert sum(set(edge) <= t for t in triangles) == 2
    # no fundamental class over Z
    assert simplicial_homology(klein).group(2).is_trivial


def test_torsion_moves_up_in_cohomology():
    assert cohomology(standard_space("rp2")).table() == [Z, TRIVIAL, cyclic(2)]
    assert cohomology(standard_space("klein")).table() == [Z, Z, cyclic(2)]


def test_chain_complex_shape(torus):
    C = chain_complex(torus)
    assert [C.rank(n) for n in range(3)] == list(torus.f_vector())
    assert homology(C).table() == GOLDEN_HOMOLOGY["torus"]


def test_rational_homology_forgets_torsion():
    table = simplicial_homology(standard_space("rp2"), Ring.Q).table()
    assert [g.free_rank for g in table] == [1, 0, 0]


def test_sphere_name_variants():
    assert standard_space("sphere3") == standard_space("sphere(3)") == sphere(3)
    with pytest.raises(MalformedInput):
        standard_space("moebius")


@pytest.mark.parametrize("facets", [[], [[0, 0, 1]], [[0, "a"]], [[]]])
def test_malformed_facets_rejected(facets):
    with pytest.raises(MalformedInput):
        build_complex(facets)


def test_complex_json_round_trip(torus):
    assert type(torus).from_json(torus.to_json()) == torus


def test_star_cover_nerve_is_the_complex(torus, klein):
    for X in (torus, klein):
        assert star_cover(X).nerve() == X


def test_star_intersections_shrink():
    X = standard_space("sphere(2)")
    cover = star_cover(X)
    assert cover.intersection((0, 1)) <= cover.star(0)
    assert (0, 1, 2) in cover.intersection((0, 1))
    assert cover.local_simplices((0, 1, 2), 2) == [(0, 1, 2)]


def test_join_of_two_point_pairs_is_a_circle():
    S0 = discrete_points(2)
    table = simplicial_homology(join_complex(S0, S0)).table()
    assert table == [Z, Z]


def test_coboundary_squares_to_zero(rng, torus):
    for degree in (0, 1):
        values = {s: rng.randint(-3, 3) for s in torus.simplices(degree)}
        theta = Cochain(torus, degree, Ring.Z, values)
        assert coboundary(coboundary(theta)).is_zero()


def test_q_mod_z_values_are_reduced():
    X = standard_space("circle")
    theta = Cochain(X, 1, Ring.QMODZ, {(0, 1): Fraction(7, 2), (1, 2): -1})
    assert theta((0, 1)) == Fraction(1, 2)
    assert theta((1, 2)) == 0
    with pytest.raises(MalformedInput):
        theta.to_ring(Ring.Q)


def test_integer_cochain_rejects_fractions(circle):
    with pytest.raises(MalformedInput):
        Cochain(circle, 1, Ring.Z, {(0, 1): Fraction(1, 3)})
    with pytest.raises(MalformedInput):
        Cochain(circle, 1, Ring.Z, {(0, 1, 2): 1})


def test_cochain_json_round_trip(circle):
    theta = Cochain(circle, 1, Ring.Q, {(0, 1): Fraction(-2, 3)})
    assert theta.to_json()["values"] == {"0,1": "-2/3"}
    assert Cochain.from_json(theta.to_json(), circle) == theta


def test_half_period_on_the_circle(circle):
    report = integral_periods(Cochain.indicator(circle, (0, 1), Ring.Q, Fraction(1, 2)))
    assert report.is_closed
    assert [abs(p) for p in report.periods] == [Fraction(1, 2)]
    assert not report.has_integral_periods
    assert report.first_non_integral()[0] == 0


def test_integral_period_on_the_circle(circle):
    report = integral_periods(Cochain.indicator(circle, (0, 1), Ring.Q, 3))
    assert report.has_integral_periods
    assert report.first_non_integral() is None


def test_non_closed_cochain_has_no_periods(sphere2):
    report = integral_periods(Cochain.indicator(sphere2, (0, 1), Ring.Q))
    assert not report.is_closed
    assert report.periods is None
    assert report.to_json()["closed"] is False


@pytest.mark.parametrize("m", [2, 3])
@pytest.mark.parametrize("name", ["circle", "sphere(2)"])
def test_join_with_points_suspends_reduced_homology(m, name):
    X = standard_space(name)
    top = X.dimension
    table = simplicial_homology(join_complex(discrete_points(m), X)).table()
    assert table[0] == Z
    assert all(g.is_trivial for g in table[1:top + 1])
    assert table[top + 1] == FgAbGroup(m - 1)

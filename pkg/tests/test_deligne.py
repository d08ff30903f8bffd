from fractions import Fraction

import pytest

from algebra.errors import CurvatureError, InvalidCocycle, LiftRejected, MalformedInput
from algebra.homology import homology
from algebra.linear import rational_rank
from algebra.matrices import RatMatrix, Ring
from deligne import (
    DeligneCocycle,
    characteristic_class,
    class_is_trivial,
    coboundary_matrix,
    cocycle_check,
    deligne_complex,
    deligne_differential,
    dlog_consistency,
    exp_cochain,
    flat_class_is_trivial,
    flat_class_order,
    flat_cocycle_from_torsion,
    flat_normal_form,
    free_generators,
    integral_generators,
    random_cochain,
    random_exact,
    remove_integral_part,
    scalar_curvature,
    weil_kostant_lift,
)
from simplicial import Cochain, coboundary, standard_space

HALF = Fraction(1, 2)


@pytest.fixture(scope="module")
def point():
    return standard_space("point")


def test_complex_ranks(circle):
    C = deligne_complex(circle, 1, 2)
    assert [C.rank(n) for n in range(3)] == [3, 9, 3]
    assert C.labels[1][:3] == [("c", s) for s in circle.simplices(1)]


def test_complex_rejects_negative_weight(circle):
    with pytest.raises(MalformedInput):
        deligne_complex(circle, -1, 2)


def test_weight_zero_on_a_point(point):
    table = homology(deligne_complex(point, 0, 1)).table()
    assert [g.free_rank for g in table] == [1, 0]
    # Z(0)_D on a point: H^0 = Z, H^1 = 0
    one = DeligneCocycle.from_parts(point, 0, 0, c=[1], omega=[1])
    assert cocycle_check(one).valid
    assert not class_is_trivial(one).trivial
    assert class_is_trivial(DeligneCocycle.from_parts(point, 1, 0, theta=[Fraction(2, 7)])).trivial


def test_weight_one_on_a_point(point):
    # Z(1)_D on a point is Q/Z in degree 1
    assert not cocycle_check(DeligneCocycle.from_parts(point, 0, 1, c=[1])).valid
    half = DeligneCocycle.from_parts(point, 1, 1, theta=[HALF])
    assert cocycle_check(half).valid
    assert not class_is_trivial(half).trivial
    assert class_is_trivial(half.scale(2)).trivial
    integer = class_is_trivial(DeligneCocycle.from_parts(point, 1, 1, theta=[3]))
    assert integer.trivial
    assert integer.witness.c.to_vector() == [3]


def test_omega_below_weight_rejected(circle):
    with pytest.raises(MalformedInput):
        DeligneCocycle.from_parts(circle, 1, 2, omega=[1, 0, 0])


def test_wrong_component_degree_rejected(circle):
    with pytest.raises(MalformedInput):
        DeligneCocycle(circle, 1, 1, Cochain.zero(circle, 0, Ring.Z), Cochain.zero(circle, 1, Ring.Q),
                       Cochain.zero(circle, 0, Ring.Q))


@pytest.mark.parametrize("name, p, q", [("circle", 1, 1), ("torus", 2, 1), ("torus", 2, 2), ("sphere(2)", 2, 3)])
def test_exact_cocycles_are_trivial_with_a_witness(rng, name, p, q):
    X = standard_space(name)
    for _ in range(3):
        x = random_exact(X, p, q, rng)
        report = cocycle_check(x)
        assert report.valid
        assert report.class_is_zero
        triviality = class_is_trivial(x)
        assert triviality.trivial
        assert deligne_differential(triviality.witness) == x


def test_differential_squares_to_zero(rng, torus):
    for p, q in ((0, 1), (1, 1), (1, 2)):
        x = DeligneCocycle.from_parts(
            torus, p, q,
            c=random_cochain(torus, p, Ring.Z, rng),
            omega=random_cochain(torus, p, Ring.Q, rng) if p >= q else None,
            theta=random_cochain(torus, p - 1, Ring.Q, rng) if p else None,
        )
        assert deligne_differential(deligne_differential(x)).is_zero()


def test_defects_are_named(circle):
    x = DeligneCocycle.from_parts(circle, 1, 1, c=[1, 0, 0])
    report = cocycle_check(x)
    assert not report.valid
    assert report.defects == ["ι(c) - ω - δθ ≠ 0"]
    with pytest.raises(InvalidCocycle):
        class_is_trivial(x)


def test_weil_kostant_lift_on_the_torus(torus):
    generator = integral_generators(torus, 2)[0]
    omega = generator.to_ring(Ring.Q)
    lift = weil_kostant_lift(omega)
    assert cocycle_check(lift).valid
    assert scalar_curvature(lift) == omega
    assert characteristic_class(lift.c) == characteristic_class(generator)
    assert not class_is_trivial(lift).trivial
    assert remove_integral_part(lift) is None
    assert DeligneCocycle.from_json(lift.to_json(), torus) == lift


@pytest.mark.parametrize("p", [1, 2])
def test_every_torus_generator_lifts(torus, p):
    for generator in integral_generators(torus, p):
        lift = weil_kostant_lift(generator.to_ring(Ring.Q))
        assert scalar_curvature(lift) == generator.to_ring(Ring.Q)


def test_lift_is_canonical_on_the_torus_generator(torus):
    generator = integral_generators(torus, 2)[0]
    shift = coboundary(Cochain.indicator(torus, torus.simplices(1)[0], Ring.Q, Fraction(1, 3)))
    omega = generator.to_ring(Ring.Q) + shift
    lift = weil_kostant_lift(omega)
    assert lift.c == generator
    assert lift == weil_kostant_lift(omega)
    # θ has independent support columns, so no proper subset of them solves δθ = ι(c) - ω
    delta = coboundary_matrix(torus, 1)
    support = [j for j, value in enumerate(lift.theta.to_vector()) if value]
    columns = RatMatrix.from_dense([[delta.column(j)[i] for j in support] for i in range(delta.rows)], len(support))
    assert rational_rank(columns) == len(support)


def test_lift_drops_torsion_coordinates(klein):
    assert free_generators(klein, 2) == []
    assert weil_kostant_lift(Cochain.zero(klein, 2)).c.is_zero()
    generator = free_generators(klein, 1)[0]
    assert weil_kostant_lift(generator.to_ring(Ring.Q)).c == generator


def test_half_period_is_rejected(circle):
    with pytest.raises(LiftRejected) as excinfo:
        weil_kostant_lift(Cochain.indicator(circle, (0, 1), Ring.Q, HALF))
    assert excinfo.value.period_index == 0
    assert abs(excinfo.value.period) == HALF


def test_non_closed_form_is_rejected(sphere2):
    with pytest.raises(LiftRejected):
        weil_kostant_lift(Cochain.indicator(sphere2, (0, 1), Ring.Q))


def test_curvature_needs_weight_equal_to_degree(torus, rng):
    x = random_exact(torus, 2, 1, rng)
    with pytest.raises(CurvatureError):
        scalar_curvature(x)


def test_klein_torsion_class_is_flat_of_order_two(klein):
    c = Cochain.indicator(klein, klein.simplices(2)[0], Ring.Z)
    x = flat_cocycle_from_torsion(c, 2)
    assert cocycle_check(x).valid
    assert not class_is_trivial(x).trivial
    assert class_is_trivial(x.scale(2)).trivial
    data = flat_normal_form(x)
    assert data.degree == 1
    assert not flat_class_is_trivial(data)
    assert flat_class_order(data) == 2


def test_rp2_torsion_classes_are_flat_of_order_dividing_two():
    rp2 = standard_space("rp2")
    generators = integral_generators(rp2, 2)
    assert generators
    for generator in generators:
        x = flat_cocycle_from_torsion(generator, 3)
        assert cocycle_check(x).valid
        order = flat_class_order(flat_normal_form(x))
        assert order is not None and 2 % order == 0


def test_torus_has_no_torsion_to_flatten(torus):
    with pytest.raises(MalformedInput):
        flat_cocycle_from_torsion(integral_generators(torus, 2)[0], 2)


def test_flat_normal_form_guards(torus, rng):
    lift = weil_kostant_lift(integral_generators(torus, 2)[0].to_ring(Ring.Q))
    with pytest.raises(CurvatureError):
        flat_normal_form(lift)
    with pytest.raises(CurvatureError):
        flat_normal_form(random_exact(torus, 2, 1, rng))


def test_flat_invariant_detects_triviality(circle):
    flat = DeligneCocycle.from_parts(circle, 1, 1, theta=[Fraction(1, 3)] * 3)
    data = flat_normal_form(flat)
    assert data.degree == 0
    assert not flat_class_is_trivial(data)
    assert flat_class_order(data) == 3
    assert class_is_trivial(flat.scale(3)).trivial


def test_removing_the_integral_part(rng, torus):
    x = random_exact(torus, 2, 2, rng)
    reduced = remove_integral_part(x)
    assert reduced.c.is_zero()
    assert class_is_trivial(reduced - x).trivial


def test_exp_and_dlog_are_consistent(rng, torus):
    for degree in (0, 1):
        assert dlog_consistency(random_cochain(torus, degree, Ring.Q, rng))
    assert dlog_consistency(Cochain.indicator(torus, (0,), Ring.Q, 5))


def test_exp_reduces_mod_one(circle):
    f = Cochain.indicator(circle, (0, 1), Ring.Q, Fraction(3, 2))
    assert exp_cochain(f) == Cochain.indicator(circle, (0, 1), Ring.QMODZ, HALF)
    assert exp_cochain(f.scale(2)).is_zero()

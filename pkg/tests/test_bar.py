import pytest

from algebra.errors import MalformedInput, ResourceBudgetExceeded, SimplicialIdentityError
from algebra.groups import TRIVIAL, Z, FgAbGroup, cyclic
from algebra.homology import homology
from algebra.matrices import IntMatrix
from bar import (
    SimAbGroup,
    b_of,
    bar_resolution_check,
    bar_resolution_data,
    constant,
    e_of,
    em_homology,
    iterate_b,
    milnor_join_homology,
    normalized_chains,
)
from commands.join_model import projective_homology, sphere_homology, wedge_homology


def test_bar_constructions_have_the_expected_ranks():
    G = cyclic(2)
    assert [e_of(G, 3).size(n) for n in range(4)] == [1, 2, 3, 4]
    assert [b_of(G, 3).size(n) for n in range(4)] == [0, 1, 2, 3]
    assert constant(G, 2).groups() == [G, G, G]


def test_broken_identity_is_named():
    one, two = IntMatrix.from_dense([[1]]), IntMatrix.from_dense([[2]])
    with pytest.raises(SimplicialIdentityError, match="d_0 s_0"):
        SimAbGroup(1, ((0,), (0,)), {(1, 0): two, (1, 1): one}, {(0, 0): one})


def test_iterated_bar_is_simplicial():
    S = iterate_b(cyclic(2), 2, 3)
    assert S.size(0) == 0
    S.check_identities()


@pytest.mark.parametrize("G", [cyclic(2), cyclic(3), Z])
def test_eg_is_acyclic(G):
    N = 3
    table = homology(normalized_chains(e_of(G, N))).table()
    assert table[0] == Z
    assert all(g.is_trivial for g in table[1:N])


def test_bg_of_z2_in_low_degrees():
    table = homology(normalized_chains(b_of(cyclic(2), 4))).table()
    assert table[:4] == [Z, cyclic(2), TRIVIAL, cyclic(2)]


def test_k_z2_1():
    assert em_homology(cyclic(2), 1, 5) == [Z, cyclic(2), TRIVIAL, cyclic(2), TRIVIAL, cyclic(2)]


def test_k_z_2():
    assert em_homology(Z, 2, 4) == [Z, TRIVIAL, Z, TRIVIAL, Z]


def test_k_z_1_is_a_circle():
    assert em_homology(Z, 1, 3) == [Z, Z, TRIVIAL, TRIVIAL]


@pytest.mark.parametrize("A, s, N, expected", [
    (cyclic(2), 1, 4, [Z, cyclic(2), TRIVIAL, cyclic(2), TRIVIAL]),
    (cyclic(2), 2, 2, [Z, TRIVIAL, cyclic(2)]),
    (Z, 1, 3, [Z, Z, TRIVIAL, TRIVIAL]),
    (Z, 2, 2, [Z, TRIVIAL, Z]),
])
def test_diagonal_and_multisimplicial_routes_agree(A, s, N, expected):
    assert em_homology(A, s, N, diagonal=True) == expected
    assert em_homology(A, s, N) == expected


@pytest.mark.parametrize("text, s", [("Z/3", 2), ("Z/2+Z/4", 1)])
def test_em_bottom_class(text, s):
    A = FgAbGroup.parse(text)
    groups = em_homology(A, s, s)
    assert groups[0] == Z
    assert all(g.is_trivial for g in groups[1:s])
    assert groups[s] == A


def test_rank_budget_names_the_degree():
    with pytest.raises(ResourceBudgetExceeded) as excinfo:
        em_homology(cyclic(2), 3, 6, budget=10)
    assert excinfo.value.budget == 10
    assert "degree" in str(excinfo.value)


def test_iteration_count_must_be_positive():
    with pytest.raises(MalformedInput):
        em_homology(Z, 0, 2)


@pytest.mark.parametrize("n", [0, 1, 2])
def test_join_model_of_z2(n):
    model = milnor_join_homology(cyclic(2), n)
    assert model.e_homology + [TRIVIAL] * (n + 1 - len(model.e_homology)) == sphere_homology(n)
    assert model.b_homology + [TRIVIAL] * (n + 1 - len(model.b_homology)) == projective_homology(n)


@pytest.mark.parametrize("n", [0, 1, 2])
def test_join_model_wedge_count(n):
    assert milnor_join_homology(cyclic(3), n).e_homology == wedge_homology(3, n)


def test_join_model_rejects_infinite_groups():
    with pytest.raises(MalformedInput):
        milnor_join_homology(Z, 1)
    with pytest.raises(MalformedInput):
        milnor_join_homology(cyclic(2), -1)


def test_bar_resolution_stage_names():
    assert bar_resolution_data(cyclic(2), 2, 1).names == ["G", "EG", "EBG", "B^2G"]


@pytest.mark.parametrize("text, L, N", [("Z/2", 2, 2), ("Z", 1, 2), ("Z/2+Z/4", 1, 2)])
def test_bar_resolution_is_exact(text, L, N):
    report = bar_resolution_check(FgAbGroup.parse(text), L, N)
    assert report.exact, report.to_json()
    assert report.to_json()["exact"] is True


def test_bar_resolution_needs_positive_length():
    with pytest.raises(MalformedInput):
        bar_resolution_check(cyclic(2), 0, 2)

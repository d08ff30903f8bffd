from fractions import Fraction

import pytest
from sympy import ZZ, Matrix
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from algebra.complexes import ChainMap, Direction, DoubleComplex, GradedComplex, mapping_cone, total_complex
from algebra.errors import DimensionMismatch, MalformedInput, NotAChainMap, NotAComplex
from algebra.groups import TRIVIAL, Z, FgAbGroup, cyclic
from algebra.homology import homology, is_boundary
from algebra.linear import integer_kernel, rational_kernel, solve_linear, solve_mixed
from algebra.matrices import IntMatrix, RatMatrix, Ring, block_matrix, format_scalar, parse_scalar
from algebra.smith import smith_normal_form


def random_int_matrix(rng, rows, cols, density=0.5, bound=4):
    entries = {}
    for r in range(rows):
        for c in range(cols):
            if rng.random() < density:
                entries[(r, c)] = rng.randint(-bound, bound)
    return IntMatrix(rows, cols, entries)


def sympy_divisors(A):
    if not A.rows or not A.cols:
        return []
    D = sympy_snf(Matrix(A.to_dense()), domain=ZZ)
    return sorted(abs(int(D[i, i])) for i in range(min(D.shape)) if D[i, i] != 0)


def test_zero_entries_are_not_stored():
    A = IntMatrix(2, 2, {(0, 0): 0, (1, 1): 3})
    assert A.nnz() == 1
    assert A.to_dense() == [[0, 0], [0, 3]]


def test_out_of_range_entry_rejected():
    with pytest.raises((DimensionMismatch, MalformedInput)):
        IntMatrix(2, 2, {(2, 0): 1})


def test_rational_entries_stay_in_lowest_terms():
    A = RatMatrix(1, 1, {(0, 0): Fraction(4, 6)})
    assert A[0, 0] == Fraction(2, 3)
    assert format_scalar(A[0, 0]) == "2/3"
    assert parse_scalar("-3/6") == Fraction(-1, 2)


def test_product_and_transpose():
    A = IntMatrix.from_dense([[1, 2], [0, 1]])
    B = IntMatrix.from_dense([[1, -2], [0, 1]])
    assert A @ B == IntMatrix.identity(2)
    assert A.transpose().to_dense() == [[1, 0], [2, 1]]
    with pytest.raises(DimensionMismatch):
        A @ IntMatrix.zeros(3, 1)


def test_block_matrix_places_blocks():
    M = block_matrix(IntMatrix, 3, 3, {(0, 0): IntMatrix.identity(2), (2, 2): IntMatrix.from_dense([[5]])})
    assert M.to_dense() == [[1, 0, 0], [0, 1, 0], [0, 0, 5]]


@pytest.mark.parametrize("shape", [(3, 3), (4, 6), (6, 4), (5, 5)])
def test_smith_form_matches_sympy(rng, shape):
    for _ in range(5):
        A = random_int_matrix(rng, *shape)
        snf = smith_normal_form(A)
        assert snf.U @ A @ snf.V == snf.D
        assert snf.U @ snf.U_inv == IntMatrix.identity(A.rows)
        assert snf.V @ snf.V_inv == IntMatrix.identity(A.cols)
        divisors = snf.divisors
        assert all(b % a == 0 for a, b in zip(divisors, divisors[1:]))
        assert sorted(divisors) == sympy_divisors(A)
        assert snf.rank == Matrix(A.to_dense()).rank()


def test_smith_form_is_deterministic(rng):
    A = random_int_matrix(rng, 5, 4)
    assert smith_normal_form(A) == smith_normal_form(A)


def test_group_parsing_and_invariant_factors():
    G = FgAbGroup.parse("Z^2+Z/2+Z/4")
    assert (G.free_rank, G.torsion) == (2, (2, 4))
    assert str(G) == "Z^2 + Z/2 + Z/4"
    assert FgAbGroup.from_orders([6, 4]).torsion == (2, 12)
    assert FgAbGroup.parse("Z/2+Z/3") == cyclic(6)
    assert FgAbGroup.parse("0") == TRIVIAL
    assert cyclic(0) == Z
    assert G.to_json() == {"rank": 2, "torsion": [2, 4]}
    with pytest.raises(MalformedInput):
        FgAbGroup.parse("Z/x")


def test_solve_linear_over_z_and_q():
    A = IntMatrix.from_dense([[2]])
    assert solve_linear(A, [3], Ring.Z) is None
    assert solve_linear(A, [3], Ring.Q) == [Fraction(3, 2)]
    with pytest.raises(DimensionMismatch):
        solve_linear(A, [1, 2])


def test_solve_mixed_separates_integer_and_rational_unknowns():
    A_int = IntMatrix.from_dense([[1], [1]])
    A_rat = IntMatrix.from_dense([[1], [0]])
    y, x = solve_mixed(A_int, A_rat, [Fraction(1, 2), 3])
    assert y == [3]
    assert x == [Fraction(-5, 2)]
    # 2y = 1 over Z
    assert solve_mixed(IntMatrix.from_dense([[2]]), IntMatrix.zeros(1, 0), [1]) is None


def test_kernels():
    A = IntMatrix.from_dense([[2, 4]])
    basis = integer_kernel(A)
    assert len(basis) == 1
    assert A.apply(basis[0]) == [0]
    assert abs(basis[0][1]) == 1
    assert rational_kernel(A) == [[Fraction(-2), Fraction(1)]]


def circle_chain_complex():
    d1 = IntMatrix.from_dense([[-1, -1, 0], [1, 0, -1], [0, 1, 1]])
    return GradedComplex(Ring.Z, 0, 1, {0: 3, 1: 3}, {1: d1}, Direction.CHAIN)


def test_homology_of_a_cycle_graph():
    result = homology(circle_chain_complex(), with_generators=True)
    assert result.table() == [Z, Z]
    generator = result.generators[1][0]
    assert result.express(1, generator) in ([1], [-1])
    assert not is_boundary(circle_chain_complex(), 1, generator)


def test_torsion_homology():
    C = GradedComplex(Ring.Z, 0, 1, {0: 1, 1: 1}, {1: IntMatrix.from_dense([[2]])}, Direction.CHAIN)
    assert homology(C).table() == [cyclic(2), TRIVIAL]
    assert homology(C, with_generators=True).table() == [cyclic(2), TRIVIAL]
    assert homology(C.over_rationals()).group(0).free_rank == 0


def test_non_complex_rejected():
    d = IntMatrix.from_dense([[1]])
    with pytest.raises(NotAComplex):
        GradedComplex(Ring.Z, 0, 2, {0: 1, 1: 1, 2: 1}, {0: d, 1: d}, Direction.COCHAIN)


def test_cone_of_identity_is_acyclic():
    C = circle_chain_complex()
    identity = ChainMap(C, C, {n: IntMatrix.identity(C.rank(n)) for n in C.degrees()})
    cone = mapping_cone(identity)
    assert all(g.is_trivial for g in homology(cone).table())


def test_non_chain_map_rejected():
    C = circle_chain_complex()
    with pytest.raises(NotAChainMap):
        ChainMap(C, C, {0: IntMatrix.identity(3), 1: IntMatrix.from_dense([[1, 0, 0], [0, 0, 0], [0, 0, 0]])})


def test_total_complex_of_a_commuting_square():
    one = IntMatrix.identity(1)
    D = DoubleComplex(
        Ring.Z,
        ranks={(0, 0): 1, (1, 0): 1, (0, 1): 1, (1, 1): 1},
        horizontal={(0, 0): one, (0, 1): one},
        vertical={(0, 0): one, (1, 0): one},
    )
    T = total_complex(D)
    assert [T.rank(n) for n in (0, 1, 2)] == [1, 2, 1]
    assert all(g.is_trivial for g in homology(T).table())

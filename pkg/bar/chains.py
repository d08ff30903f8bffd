import logging
from functools import lru_cache
from itertools import product
from math import comb, prod

from algebra.complexes import Direction, GradedComplex
from algebra.errors import MalformedInput, ResourceBudgetExceeded
from algebra.homology import homology
from algebra.matrices import IntMatrix, Ring
from bar.simplicial_groups import iterate_b

logger = logging.getLogger(__name__)

DEFAULT_RANK_BUDGET = 200_000

# Raw enumeration may look at this many candidates per kept generator
_SCAN_FACTOR = 20


def _free_vectors(length, weight):
    """Nonnegative integer vectors of the given length with sum <= weight"""
    if length == 0:
        yield ()
        return
    for head in range(weight + 1):
        for tail in _free_vectors(length - 1, weight - head):
            yield (head,) + tail


def _elements(orders, weight_bound):
    """All group elements on the given generators, free coordinates weight-bounded"""
    free_positions = [k for k, o in enumerate(orders) if o == 0]
    torsion_positions = [k for k, o in enumerate(orders) if o != 0]
    for free in _free_vectors(len(free_positions), weight_bound):
        for torsion in product(*(range(orders[k]) for k in torsion_positions)):
            element = [0] * len(orders)
            for k, value in zip(free_positions, free):
                element[k] = value
            for k, value in zip(torsion_positions, torsion):
                element[k] = value
            yield tuple(element)


def _element_count(orders, weight_bound):
    free = sum(1 for o in orders if o == 0)
    return comb(weight_bound + free, free) * prod(o for o in orders if o)


def _check_weight_monotone(S):
    """Structure maps must send nonnegative free coordinates to nonnegative ones without raising weight"""
    maps = [((n, n - 1), m) for (n, _), m in S.faces.items()]
    maps += [((n, n + 1), m) for (n, _), m in S.degeneracies.items()]
    for (source, target), matrix in maps:
        column_weight = {}
        for (r, c), value in matrix.items():
            if S.orders[target][r] == 0 and S.orders[source][c] == 0:
                if value < 0:
                    return source
                column_weight[c] = column_weight.get(c, 0) + value
        if any(w > 1 for w in column_weight.values()):
            return source
    return None


def normalized_chains(S, weight_bound=None, budget=DEFAULT_RANK_BUDGET):
    """
    Normalized chains of the underlying simplicial set of S.

    Degree n is free on the nondegenerate elements of S_n (those not of
    the form s_i(y)); the differential is the alternating sum of faces,
    with degenerate faces dropped. Free generators are read as the free
    monoid N, truncated at total weight weight_bound; faces never raise
    weight, so the truncation is a simplicial subset.

    Args:
        S (SimAbGroup): Input; its identities were verified on construction.
        weight_bound (int, optional): Defaults to S.degree_bound + 1.
        budget (int): Maximum number of generators in one degree.

    Returns:
        GradedComplex: Chain complex in degrees 0..N over Z.

    Raises:
        ResourceBudgetExceeded: When a degree holds too many generators,
            or free coordinates cannot be weight-truncated.
    """
    N = S.degree_bound
    M = N + 1 if weight_bound is None else weight_bound
    has_free = any(o == 0 for orders in S.orders for o in orders)
    if has_free:
        bad = _check_weight_monotone(S)
        if bad is not None:
            raise ResourceBudgetExceeded(bad, "unbounded", budget)

    bases = []
    for n in range(N + 1):
        raw = _element_count(S.orders[n], M)
        if raw > _SCAN_FACTOR * budget:
            raise ResourceBudgetExceeded(n, raw, budget)
        basis = []
        for x in _elements(S.orders[n], M):
            if n and any(S.apply_degeneracy(n - 1, i, S.apply_face(n, i, x)) == x for i in range(n)):
                continue
            basis.append(x)
            if len(basis) > budget:
                raise ResourceBudgetExceeded(n, len(basis), budget)
        bases.append(basis)
        logger.debug(f"{S.name or 'S'}: {len(basis)} nondegenerate {n}-simplices")

    differentials = {}
    for n in range(1, N + 1):
        index = {x: k for k, x in enumerate(bases[n - 1])}
        entries = {}
        for c, x in enumerate(bases[n]):
            for i in range(n + 1):
                row = index.get(S.apply_face(n, i, x))
                if row is not None:
                    entries[(row, c)] = entries.get((row, c), 0) + (-1) ** i
        differentials[n] = IntMatrix(len(bases[n - 1]), len(bases[n]), entries)

    return GradedComplex(
        ring=Ring.Z, lo=0, hi=N,
        ranks={n: len(bases[n]) for n in range(N + 1)},
        differentials=differentials,
        direction=Direction.CHAIN,
        labels={n: bases[n] for n in range(N + 1)},
    )


# Multisimplicial model of B^s A: a cell of multidegree (n_1, ..., n_s) is
# an n_1 x ... x n_s array of elements of A with no zero slice in any direction.

def _shapes(s, degree):
    if degree == 0:
        yield (0,) * s
        return
    def split(parts, total):
        if parts == 1:
            if total >= 1:
                yield (total,)
            return
        for first in range(1, total - parts + 2):
            for rest in split(parts - 1, total - first):
                yield (first,) + rest
    yield from split(s, degree)


def _finite_cell_count(shape, order):
    """Arrays over a group of the given order with no zero slice (inclusion-exclusion)"""
    total = 0
    for removed in product(*(range(n + 1) for n in shape)):
        sign = (-1) ** sum(removed)
        ways = prod(comb(n, k) for n, k in zip(shape, removed))
        total += sign * ways * order ** prod(n - k for n, k in zip(shape, removed))
    return total


@lru_cache(maxsize=None)
def _positions(shape):
    return tuple(product(*(range(n) for n in shape)))


@lru_cache(maxsize=None)
def _position_index(shape):
    return {pos: k for k, pos in enumerate(_positions(shape))}


def _is_nondegenerate(shape, entries, zero):
    if not any(shape):
        return True
    if not all(shape):
        return False
    positions = _positions(shape)
    for axis, length in enumerate(shape):
        for q in range(length):
            if all(entries[k] == zero for k, pos in enumerate(positions) if pos[axis] == q):
                return False
    return True


def _cells(shape, orders, weight_bound):
    zero = (0,) * len(orders)
    count = prod(shape)
    elements = list(_elements(orders, weight_bound))

    def fill(prefix, weight):
        if len(prefix) == count:
            if _is_nondegenerate(shape, prefix, zero):
                yield prefix
            return
        for element in elements:
            w = weight + sum(v for v, o in zip(element, orders) if o == 0)
            if w <= weight_bound:
                yield from fill(prefix + (element,), w)

    if count == 0:
        yield ()
        return
    yield from fill((), 0)


def _add(a, b, orders):
    return tuple((x + y) % o if o else x + y for x, y, o in zip(a, b, orders))


def _face(shape, entries, axis, i, orders):
    """Face d_i in one direction: drop the first/last slice or merge slices i-1 and i"""
    n = shape[axis]
    new_shape = shape[:axis] + (n - 1,) + shape[axis + 1:]
    source_index = _position_index(shape)
    result = []
    for pos in _positions(new_shape):
        q = pos[axis]
        if i == 0:
            sources = [q + 1]
        elif i == n:
            sources = [q]
        elif q < i - 1:
            sources = [q]
        elif q == i - 1:
            sources = [i - 1, i]
        else:
            sources = [q + 1]
        value = (0,) * len(orders)
        for src in sources:
            key = pos[:axis] + (src,) + pos[axis + 1:]
            value = _add(value, entries[source_index[key]], orders)
        result.append(value)
    return new_shape, tuple(result)


def em_chain_complex(A, s, top, weight_bound=None, budget=DEFAULT_RANK_BUDGET):
    """
    Total complex of the normalized s-multisimplicial chains of B^s A.

    By Eilenberg-Zilber this computes the homology of the diagonal
    iterate_b(A, s, ...). The differential on multidegree (n_1, ..., n_s)
    is Σ_j (-1)^{n_1 + ... + n_{j-1}} Σ_i (-1)^i d_i^{(j)}.

    Args:
        A (FgAbGroup): Coefficient group.
        s (int): Number of bar iterations.
        top (int): Highest total degree built.
        weight_bound (int, optional): Truncation for free summands, default top.
        budget (int): Maximum generators per degree.

    Returns:
        GradedComplex: Chain complex in degrees 0..top.
    """
    if s < 1:
        raise MalformedInput(f"Iteration count must be at least 1, got {s}")
    orders = tuple(A.orders)
    M = top if weight_bound is None else weight_bound
    zero = (0,) * len(orders)

    bases = []
    for degree in range(top + 1):
        basis = []
        for shape in _shapes(s, degree):
            if degree and A.is_finite:
                expected = _finite_cell_count(shape, A.order)
                if len(basis) + expected > budget:
                    raise ResourceBudgetExceeded(degree, len(basis) + expected, budget)
            for entries in _cells(shape, orders, M):
                basis.append((shape, entries))
                if len(basis) > budget:
                    raise ResourceBudgetExceeded(degree, len(basis), budget)
        bases.append(basis)
        logger.debug(f"B^{s}({A}): {len(basis)} cells in degree {degree}")

    differentials = {}
    for degree in range(1, top + 1):
        index = {cell: k for k, cell in enumerate(bases[degree - 1])}
        entries = {}
        for c, (shape, values) in enumerate(bases[degree]):
            offset = 0
            for axis, n in enumerate(shape):
                for i in range(n + 1):
                    face = _face(shape, values, axis, i, orders)
                    if not _is_nondegenerate(face[0], face[1], zero):
                        continue
                    row = index.get(face)
                    if row is not None:
                        sign = (-1) ** (offset + i)
                        entries[(row, c)] = entries.get((row, c), 0) + sign
                offset += n
        differentials[degree] = IntMatrix(len(bases[degree - 1]), len(bases[degree]), entries)

    return GradedComplex(
        ring=Ring.Z, lo=0, hi=top,
        ranks={d: len(bases[d]) for d in range(top + 1)},
        differentials=differentials,
        direction=Direction.CHAIN,
    )


def em_homology(A, s, N, weight_bound=None, budget=DEFAULT_RANK_BUDGET, diagonal=False):
    """
    Integral homology of K(A, s) in degrees 0..N.

    The default route is the multisimplicial total complex of
    em_chain_complex. With diagonal=True the normalized chains of the
    simplicial abelian group iterate_b(A, s, N + 1) are used instead; both
    agree, the diagonal being far larger.

    Args:
        A (FgAbGroup): Coefficient group.
        s (int): Eilenberg-MacLane degree, at least 1.
        N (int): Highest homology degree reported.
        weight_bound (int, optional): Truncation for free summands, default N + 1.
        budget (int): Maximum generators per degree.
        diagonal (bool): Compute from normalized_chains(iterate_b(A, s, N + 1)).

    Returns:
        list: FgAbGroup per degree 0..N.

    Raises:
        ResourceBudgetExceeded: Naming the first degree over budget.
    """
    M = N + 1 if weight_bound is None else weight_bound
    if diagonal:
        complex_ = normalized_chains(iterate_b(A, s, N + 1), weight_bound=M, budget=budget)
    else:
        complex_ = em_chain_complex(A, s, N + 1, weight_bound=M, budget=budget)
    result = homology(complex_)
    groups = [result.group(n) for n in range(N + 1)]
    logger.info(f"H_*(K({A}, {s})) up to degree {N}: {', '.join(str(g) for g in groups)}")
    return groups

import logging
from dataclasses import dataclass, field
from fractions import Fraction

from algebra.errors import DimensionMismatch
from algebra.groups import FgAbGroup
from algebra.linear import integer_divisors, rational_kernel, rational_rank, rref, solve_linear
from algebra.matrices import IntMatrix, Ring
from algebra.smith import smith_normal_form

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class _IntegralProjection:
    """Data expressing a cycle of one degree in the chosen generators (over Z)"""
    kernel_offset: int
    v_inv: IntMatrix
    u_quotient: IntMatrix
    orders: tuple
    kept: tuple


@dataclass(frozen=True)
class _RationalProjection:
    """Same for Q: free kernel columns plus the reduced image rows"""
    free_columns: tuple
    image_rows: tuple
    image_pivots: tuple
    kept: tuple


@dataclass(frozen=True)
class HomologyResult:
    """
    Homology of a GradedComplex, degree by degree.

    Attributes:
        ring (Ring): Coefficient ring of the complex.
        groups (dict): degree -> FgAbGroup (over Q only free_rank is used).
        generators (dict): degree -> list of dense cycle vectors, one per
            cyclic summand in the order free summands first, then torsion
            summands by increasing order. Empty when not requested.
    """
    ring: Ring
    groups: dict
    generators: dict = field(default_factory=dict)
    _projections: dict = field(default_factory=dict, repr=False, compare=False)

    def group(self, n):
        return self.groups.get(n, FgAbGroup())

    def degrees(self):
        return sorted(self.groups)

    def table(self):
        return [self.group(n) for n in range(min(self.groups, default=0), max(self.groups, default=-1) + 1)]

    def express(self, n, cycle):
        """
        Coordinates of a cycle in the generators of degree n.

        Torsion coordinates are reduced into [0, order). Over Q the
        coordinates are rationals.

        Args:
            n (int): Degree.
            cycle (list): Dense cycle vector.

        Returns:
            list: One coordinate per generator.
        """
        projection = self._projections.get(n)
        if projection is None:
            raise ValueError(f"No generator data for degree {n}; compute with with_generators=True")
        if isinstance(projection, _RationalProjection):
            return _express_rational(projection, cycle)

        if len(cycle) != projection.v_inv.cols:
            raise DimensionMismatch(f"Cycle of length {len(cycle)} in degree {n}")
        kernel_coords = projection.v_inv.apply([int(Fraction(x)) for x in cycle])[projection.kernel_offset:]
        reduced = projection.u_quotient.apply(kernel_coords)
        coords = []
        for i, order in zip(projection.kept, projection.orders):
            coords.append(reduced[i] % order if order else reduced[i])
        return coords

    def to_json(self):
        symbol = "Q" if self.ring is Ring.Q else None
        rows = []
        for n in self.degrees():
            entry = {"degree": n, **self.group(n).to_json()}
            if symbol:
                entry["field"] = symbol
            rows.append(entry)
        return rows


def _express_rational(projection, cycle):
    x = [Fraction(cycle[j]) for j in projection.free_columns]
    for row, pivot in zip(projection.image_rows, projection.image_pivots):
        if x[pivot]:
            factor = x[pivot]
            x = [a - factor * b for a, b in zip(x, row)]
    return [x[j] for j in projection.kept]


def homology(C, with_generators=False):
    """
    Compute the homology of a complex in every degree.

    Without generators the integral computation strips unit pivots from
    each differential sparsely and runs Smith form only on what remains.
    With generators every degree goes through the dense Smith form, which
    tracks the transforms needed for cycle representatives.

    Args:
        C (GradedComplex): Input complex.
        with_generators (bool): Whether to return cycle representatives.

    Returns:
        HomologyResult: Groups and, optionally, generators with projection data.
    """
    if C.ring is Ring.Q:
        return _rational_homology(C, with_generators)
    if with_generators:
        return _integral_homology_with_generators(C)
    return _integral_homology(C)


def _integral_homology(C):
    cache = {}

    def divisors_of(n):
        if n not in cache:
            d = C.d(n)
            cache[n] = integer_divisors(d) if d.rows and d.cols else (0, [])
        return cache[n]

    groups = {}
    for n in C.degrees():
        rank_out, _ = divisors_of(n)
        rank_in, torsion = divisors_of(n - C.direction.step)
        free = C.rank(n) - rank_out - rank_in
        groups[n] = FgAbGroup.from_orders([0] * free + torsion)
        logger.debug(f"Degree {n}: rank {C.rank(n)}, H = {groups[n]}")
    return HomologyResult(ring=Ring.Z, groups=groups)


def _integral_homology_with_generators(C):
    groups, generators, projections = {}, {}, {}
    for n in C.degrees():
        size = C.rank(n)
        out = C.d(n)
        snf_out = smith_normal_form(out)
        r = snf_out.rank
        kernel = [snf_out.V.column(j) for j in range(r, size)]
        k = len(kernel)

        # incoming boundaries written in kernel coordinates: rows r.. of V_inv·d_in
        incoming = C.incoming(n)
        relations = snf_out.V_inv @ incoming
        quotient = IntMatrix(k, incoming.cols, {
            (row - r, col): value for (row, col), value in relations.items() if row >= r
        })
        snf_q = smith_normal_form(quotient)
        diagonal = snf_q.diagonal
        orders_all = [diagonal[i] if i < len(diagonal) else 0 for i in range(k)]

        # free summands first, then torsion by increasing order
        free_idx = [i for i in range(k) if orders_all[i] == 0]
        torsion_idx = [i for i in range(k) if orders_all[i] > 1]
        kept = tuple(free_idx + torsion_idx)
        orders = tuple(orders_all[i] for i in kept)

        kernel_matrix = IntMatrix.from_columns(kernel, size) if k else IntMatrix.zeros(size, 0)
        basis = kernel_matrix @ snf_q.U_inv
        generators[n] = [basis.column(i) for i in kept]
        groups[n] = FgAbGroup.from_orders(list(orders))
        projections[n] = _IntegralProjection(
            kernel_offset=r, v_inv=snf_out.V_inv, u_quotient=snf_q.U, orders=orders, kept=kept,
        )
        logger.debug(f"Degree {n}: kernel rank {k}, H = {groups[n]}")
    return HomologyResult(ring=Ring.Z, groups=groups, generators=generators, _projections=projections)


def _rational_homology(C, with_generators):
    groups, generators, projections = {}, {}, {}
    for n in C.degrees():
        out = C.d(n).to_rational()
        incoming = C.incoming(n).to_rational()
        if not with_generators:
            dim = C.rank(n) - rational_rank(out) - rational_rank(incoming)
            groups[n] = FgAbGroup(dim)
            continue

        kernel = rational_kernel(out)
        _, pivots_out = rref(out.to_dense(), out.cols)
        free_columns = tuple(j for j in range(out.cols) if j not in set(pivots_out))
        # image vectors in kernel coordinates are their values on the free columns
        image = [[Fraction(col[j]) for j in free_columns] for col in
                 (incoming.column(c) for c in range(incoming.cols))]
        rows, pivots = rref(image, len(free_columns)) if image else ([], [])
        rows = tuple(tuple(row) for row, _ in zip(rows, pivots))
        kept = tuple(j for j in range(len(free_columns)) if j not in set(pivots))
        groups[n] = FgAbGroup(len(kept))
        generators[n] = [kernel[j] for j in kept]
        projections[n] = _RationalProjection(
            free_columns=free_columns, image_rows=rows, image_pivots=tuple(pivots), kept=kept,
        )
    return HomologyResult(ring=Ring.Q, groups=groups, generators=generators, _projections=projections)


def is_boundary(C, n, vector):
    """Whether a vector of degree n lies in the image of the incoming differential"""
    return solve_linear(C.incoming(n), list(vector)) is not None

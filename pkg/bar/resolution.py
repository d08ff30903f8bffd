import logging
from dataclasses import dataclass, field

from algebra.errors import MalformedInput
from algebra.linear import integer_kernel, solve_linear
from algebra.matrices import IntMatrix, Ring
from bar.simplicial_groups import b_of, bar_projection, constant, e_of, fiber_inclusion

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BarResolutionData:
    """
    The sequence 0 -> G -> EG -> EBG -> ... -> EB^{L-1}G -> B^L G -> 0.

    Each interior map σ: EB^{k-1}G -> EB^kG is the projection onto
    B^kG followed by the fiber inclusion; the first map is the fiber
    inclusion of G and the last one the projection.

    Attributes:
        group (FgAbGroup): G.
        length (int): L.
        degree_bound (int): N.
        classifying (tuple): B^0G (constant), B^1G, ..., B^LG.
        stages (tuple): G, EG, EBG, ..., EB^{L-1}G, B^LG.
    """
    group: object
    length: int
    degree_bound: int
    classifying: tuple = field(repr=False)
    stages: tuple = field(repr=False)

    @property
    def names(self):
        def bar(k):
            return "" if k == 0 else ("B" if k == 1 else f"B^{k}")
        return ["G"] + [f"E{bar(k)}G" for k in range(self.length)] + [f"{bar(self.length)}G"]

    def maps(self, n):
        """Matrices of the maps between consecutive stages in degree n"""
        B = self.classifying
        result = [fiber_inclusion(B[0], n)]
        for k in range(1, self.length):
            result.append(fiber_inclusion(B[k], n) @ bar_projection(B[k - 1], n))
        result.append(bar_projection(B[self.length - 1], n))
        return result


@dataclass(frozen=True)
class ExactnessFailure:
    degree: int
    stage: str
    kind: str
    witness: list

    def to_json(self):
        return {"degree": self.degree, "stage": self.stage, "kind": self.kind, "witness": self.witness}


@dataclass(frozen=True)
class ExactnessReport:
    group: str
    length: int
    degree_bound: int
    stages: list
    failures: list

    @property
    def exact(self):
        return not self.failures

    def to_json(self):
        return {
            "group": self.group,
            "length": self.length,
            "degree_bound": self.degree_bound,
            "stages": self.stages,
            "exact": self.exact,
            "failures": [f.to_json() for f in self.failures],
        }


def bar_resolution_data(G, L, N):
    if L < 1:
        raise MalformedInput(f"Resolution length must be at least 1, got {L}")
    classifying = [constant(G, N)]
    for _ in range(L):
        classifying.append(b_of(classifying[-1], N))
    stages = [classifying[0]] + [e_of(S, N) for S in classifying[:L]] + [classifying[L]]
    return BarResolutionData(G, L, N, tuple(classifying), tuple(stages))


def _relations(orders):
    """Columns generating the relation subgroup of Z^k presented by the orders"""
    torsion = [k for k, o in enumerate(orders) if o]
    return IntMatrix(len(orders), len(torsion), {(k, j): orders[k] for j, k in enumerate(torsion)})


def _in_image(generators, vector):
    return solve_linear(generators, vector, Ring.Z) is not None


def _check_homomorphism(F, source_orders, relations):
    for c, order in enumerate(source_orders):
        if order:
            image = [order * x for x in F.column(c)]
            if not _in_image(relations, image):
                return [int(c == j) for j in range(len(source_orders))]
    return None


def _check_simplicial(data, n, k, F):
    """σ commutes with the faces d_i: degree n -> n - 1"""
    source, target = data.stages[k], data.stages[k + 1]
    F_lower = data.maps(n - 1)[k]
    relations = _relations(target.orders[n - 1])
    for i in range(n + 1):
        difference = F_lower @ source.face(n, i) - target.face(n, i) @ F
        for c in range(difference.cols):
            if not _in_image(relations, difference.column(c)):
                return i, [int(c == j) for j in range(difference.cols)]
    return None


def bar_resolution_check(G, L, N):
    """
    Verify exactness of the bar resolution sequence degreewise.

    In every degree n <= N the groups are presented by generator orders
    and the maps by integer matrices. The check confirms that each map is
    a simplicial homomorphism, that consecutive composites vanish, and
    that every kernel element lies in the previous image; at the ends this
    is injectivity of G -> EG and surjectivity onto B^L G.

    Args:
        G (FgAbGroup): Coefficient group.
        L (int): Length, at least 1.
        N (int): Degree bound.

    Returns:
        ExactnessReport: Failures carry a witness generator vector.
    """
    data = bar_resolution_data(G, L, N)
    names = data.names
    failures = []
    for n in range(N + 1):
        maps = data.maps(n)
        orders = [S.orders[n] for S in data.stages]
        relations = [_relations(o) for o in orders]

        for k, F in enumerate(maps):
            label = f"{names[k]} -> {names[k + 1]}"
            witness = _check_homomorphism(F, orders[k], relations[k + 1])
            if witness is not None:
                failures.append(ExactnessFailure(n, label, "not a homomorphism", witness))
            if n:
                bad = _check_simplicial(data, n, k, F)
                if bad is not None:
                    failures.append(ExactnessFailure(n, label, f"does not commute with d_{bad[0]}", bad[1]))

        for k in range(len(maps) - 1):
            composite = maps[k + 1] @ maps[k]
            for c in range(composite.cols):
                if not _in_image(relations[k + 2], composite.column(c)):
                    witness = [int(c == j) for j in range(composite.cols)]
                    failures.append(ExactnessFailure(n, names[k + 1], "composite is nonzero", witness))
                    break

        # ker ⊆ im at every stage, including G (injectivity) and B^L G (surjectivity)
        for k in range(len(orders)):
            size = len(orders[k])
            if k < len(maps):
                F = maps[k]
                system = F.hstack(-relations[k + 1])
                kernel = [v[:size] for v in integer_kernel(system)]
            else:
                kernel = [[int(i == j) for j in range(size)] for i in range(size)]
            incoming = maps[k - 1].hstack(relations[k]) if k else relations[k]
            for vector in kernel:
                if not _in_image(incoming, vector):
                    failures.append(ExactnessFailure(n, names[k], "kernel not contained in image", list(vector)))
                    break
        logger.debug(f"Bar resolution of {G}: degree {n} checked, {len(failures)} failures so far")

    report = ExactnessReport(str(G), L, N, names, failures)
    logger.info(f"Bar resolution of {G} with L = {L}, N = {N}: {'exact' if report.exact else 'NOT exact'}")
    return report
